#include "trn/mip.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace trn {

namespace {

std::string sanitize(const std::string& name) {
  std::string out;
  for (char ch : name)
    out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') ? ch : '_';
  return out.empty() ? std::string("_") : out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

double default_horizon(const Stn& stn) {
  double sum = 1.0;
  for (const Stc& c : stn.constraints) {
    if (c.lower > -kInf) sum += std::abs(c.lower);
    if (c.upper < kInf) sum += std::abs(c.upper);
  }
  return sum;
}

MipModel encode_mip(const Trn& trn, std::optional<double> horizon) {
  const Stn* stn = std::get_if<Stn>(&trn.atn);
  if (!stn)
    throw UnsupportedAtnError(
        "only plain STNs have a MIP formulation; STNU and pSTN inputs do not");
  validate(*stn);
  for (const auto& rc : trn.resources) {
    if (rc.start < 0 || rc.start >= stn->num_events() || rc.end < 0 ||
        rc.end >= stn->num_events())
      throw MalformedNetworkError("resource endpoint is not a declared event");
    if (rc.start == rc.end)
      throw MalformedNetworkError("resource constraint over an empty interval");
  }

  MipModel m;
  m.horizon = horizon.value_or(default_horizon(*stn));
  m.resource_events = resource_events(trn.resources);
  m.event_names = stn->events;

  std::set<std::string> used;
  for (const std::string& name : stn->events) {
    std::string var = "t_" + sanitize(name);
    while (used.count(var)) var += "_";
    used.insert(var);
    m.event_vars.push_back(var);
  }

  const auto deltas = delta_map(trn.resources);
  const auto& re = m.resource_events;
  std::map<std::pair<EventId, EventId>, std::string> xvar;
  for (EventId a : re)
    for (EventId b : re) {
      if (a == b) continue;
      std::string var = "x_" + sanitize(stn->events[a]) + "_" + sanitize(stn->events[b]);
      while (used.count(var)) var += "_";
      used.insert(var);
      m.binary_pairs.emplace_back(a, b);
      m.binary_vars.push_back(var);
      xvar[{a, b}] = var;
    }

  auto row_name = [&](const std::string& tag, EventId a, EventId b) {
    return tag + "_" + sanitize(stn->events[a]) + "_" + sanitize(stn->events[b]);
  };

  // x_{a,b} = 1 forces t_a <= t_b; x_{a,b} = 0 forces t_b <= t_a.
  for (EventId a : re)
    for (EventId b : re) {
      if (a == b) continue;
      m.rows.push_back({row_name("eq4", a, b),
                        {{m.event_vars[a], 1.0},
                         {m.event_vars[b], -1.0},
                         {xvar[{a, b}], m.horizon}},
                        'G',
                        0.0});
      m.rows.push_back({row_name("eq5", a, b),
                        {{m.event_vars[a], 1.0},
                         {m.event_vars[b], -1.0},
                         {xvar[{a, b}], m.horizon}},
                        'L',
                        m.horizon});
    }
  for (size_t i = 0; i < re.size(); ++i)
    for (size_t j = i + 1; j < re.size(); ++j) {
      const EventId a = re[i], b = re[j];
      m.rows.push_back({row_name("eq6", a, b),
                        {{xvar[{a, b}], 1.0}, {xvar[{b, a}], 1.0}},
                        'E',
                        1.0});
    }
  // Net usage the moment e1 fires, summed over everything at or before it.
  for (EventId e1 : re) {
    MipModel::Row row{"eq8_" + sanitize(stn->events[e1]), {}, 'L', -deltas.at(e1)};
    for (EventId e2 : re) {
      if (e2 == e1) continue;
      row.terms.push_back({xvar[{e2, e1}], deltas.at(e2)});
    }
    m.rows.push_back(row);
  }
  for (size_t i = 0; i < stn->constraints.size(); ++i) {
    const Stc& c = stn->constraints[i];
    const std::string idx = std::to_string(i);
    if (c.upper < kInf)
      m.rows.push_back({"eq9u_" + idx,
                        {{m.event_vars[c.to], 1.0}, {m.event_vars[c.from], -1.0}},
                        'L',
                        c.upper});
    if (c.lower > -kInf)
      m.rows.push_back({"eq9l_" + idx,
                        {{m.event_vars[c.to], 1.0}, {m.event_vars[c.from], -1.0}},
                        'G',
                        c.lower});
  }
  return m;
}

std::string export_lp(const MipModel& model) {
  std::ostringstream out;
  out << "Minimize\n obj: 0\nSubject To\n";
  for (const auto& row : model.rows) {
    out << " " << row.name << ":";
    for (size_t i = 0; i < row.terms.size(); ++i) {
      const auto& t = row.terms[i];
      const bool neg = t.coef < 0.0;
      const double mag = std::abs(t.coef);
      out << (neg ? " -" : (i == 0 ? "" : " +"));
      out << " ";
      if (mag != 1.0) out << fmt(mag) << " ";
      out << t.var;
    }
    out << (row.sense == 'L' ? " <=" : row.sense == 'G' ? " >=" : " =");
    out << " " << fmt(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const auto& var : model.event_vars)
    out << " 0 <= " << var << " <= " << fmt(model.horizon) << "\n";
  out << "Binaries\n";
  for (const auto& var : model.binary_vars) out << " " << var << "\n";
  out << "End\n";
  return out.str();
}

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& tmpl) {
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    const size_t suffix = tmpl.size() - tmpl.rfind('X') - 1;
    int fd = suffix > 0 ? mkstemps(buf.data(), static_cast<int>(suffix))
                        : mkstemp(buf.data());
    if (fd < 0) throw Error("cannot create temporary file");
    close(fd);
    path.assign(buf.data());
  }
  ~TempFile() { ::unlink(path.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
};

std::vector<std::string> tokenize(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

MipSolution solve_external(const MipModel& model, const std::string& command,
                           std::optional<double> deadline_s) {
  const std::vector<std::string> args = tokenize(command);
  if (args.empty()) throw SolverNotFoundError("empty solver command");

  TempFile lp("/tmp/trn_mip_XXXXXX.lp");
  TempFile out("/tmp/trn_mip_out_XXXXXX");
  {
    std::ofstream f(lp.path);
    f << export_lp(model);
    if (!f) throw Error("cannot write LP file");
  }

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  storage.push_back(lp.path);
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);

  const pid_t pid = fork();
  if (pid < 0) throw Error("fork failed");
  if (pid == 0) {
    int fd = open(out.path.c_str(), O_WRONLY | O_TRUNC);
    if (fd >= 0) {
      dup2(fd, STDOUT_FILENO);
      close(fd);
    }
    execvp(argv[0], argv.data());
    _exit(127);
  }

  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  for (;;) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (deadline_s) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      if (elapsed > *deadline_s) {
        kill(pid, SIGKILL);
        waitpid(pid, &status, 0);
        throw SolverTimeoutError("external solver exceeded its deadline");
      }
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
    throw SolverNotFoundError("solver command not found: " + args[0]);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw SolverRunError("solver exited abnormally");

  std::ifstream f(out.path);
  MipSolution solution;
  solution.feasible = true;
  std::string line;
  bool saw_anything = false;
  while (std::getline(f, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#' || first[0] == '\\') continue;
    saw_anything = true;
    if (first == "infeasible") {
      solution.feasible = false;
      solution.values.clear();
      return solution;
    }
    std::string second, rest;
    if (!(ls >> second) || (ls >> rest))
      throw SolutionParseError("unexpected solver output line: " + line);
    try {
      size_t used = 0;
      const double value = std::stod(second, &used);
      if (used != second.size()) throw std::invalid_argument(second);
      solution.values[first] = value;
    } catch (const std::exception&) {
      throw SolutionParseError("unparseable value in line: " + line);
    }
  }
  if (!saw_anything) throw SolutionParseError("solver produced no output");
  return solution;
}

std::pair<Schedule, Ordering> decode_solution(const MipModel& model,
                                              const MipSolution& solution) {
  if (!solution.feasible) throw Error("cannot decode an infeasible solution");
  Schedule s;
  for (size_t e = 0; e < model.event_vars.size(); ++e) {
    auto it = solution.values.find(model.event_vars[e]);
    s[static_cast<EventId>(e)] = it == solution.values.end() ? 0.0 : it->second;
  }

  std::map<std::pair<EventId, EventId>, bool> x;
  for (size_t i = 0; i < model.binary_pairs.size(); ++i) {
    auto it = solution.values.find(model.binary_vars[i]);
    const double v = it == solution.values.end() ? 0.0 : it->second;
    x[model.binary_pairs[i]] = v >= 0.5;
  }
  const auto& re = model.resource_events;
  for (size_t i = 0; i < re.size(); ++i)
    for (size_t j = i + 1; j < re.size(); ++j)
      if (x[{re[i], re[j]}] == x[{re[j], re[i]}])
        throw InconsistentBinariesError("pair variables are not complementary");

  Ordering sigma;
  std::set<int> seen;
  for (EventId e : re) {
    int rank = 1;
    for (EventId other : re)
      if (other != e && x[{other, e}]) ++rank;
    if (!seen.insert(rank).second)
      throw InconsistentBinariesError("binaries do not induce a total order");
    sigma.assign(e, rank);
  }
  return {std::move(s), std::move(sigma)};
}

}  // namespace trn

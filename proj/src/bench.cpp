#include "trn/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>
#include <tuple>

#include "trn/cp_solver.hpp"
#include "trn/mip.hpp"
#include "trn/rng.hpp"

namespace trn {

std::string to_string(BenchSolver s) {
  switch (s) {
    case BenchSolver::kCp: return "cp";
    case BenchSolver::kMip: return "mip";
    case BenchSolver::kExhaustive: return "exhaustive";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kConsistent: return "consistent";
    case Outcome::kInconsistent: return "inconsistent";
    case Outcome::kTimeout: return "timeout";
    case Outcome::kError: return "error";
  }
  return "?";
}

namespace {

std::string to_string(Density d) {
  return d == Density::kSparse ? "sparse" : "dense";
}

Outcome outcome_from_string(const std::string& s) {
  if (s == "consistent") return Outcome::kConsistent;
  if (s == "inconsistent") return Outcome::kInconsistent;
  if (s == "timeout") return Outcome::kTimeout;
  if (s == "error") return Outcome::kError;
  throw Error("unknown outcome \"" + s + "\"");
}

struct WorkItem {
  int n{};
  int r{};
  Density density{};
  int trial{};
  std::uint64_t seed{};
  BenchSolver solver{};
};

std::uint64_t trial_seed(std::uint64_t base, int n, int r, Density density,
                         int trial) {
  std::uint64_t s = hash_combine(base, static_cast<std::uint64_t>(n));
  s = hash_combine(s, static_cast<std::uint64_t>(r));
  s = hash_combine(s, density == Density::kSparse ? 0u : 1u);
  return hash_combine(s, static_cast<std::uint64_t>(trial));
}

BenchRecord run_one(const WorkItem& item, double timeout_s,
                    const std::string& mip_command) {
  BenchRecord rec{to_string(item.solver), item.n, item.r,
                  to_string(item.density), item.trial, item.seed,
                  Outcome::kError, 0.0};
  const auto start = std::chrono::steady_clock::now();
  auto stamp = [&] {
    rec.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  };
  try {
    GenParams params{item.n, derived_temporal_count(item.n, item.density),
                     item.r, item.seed};
    const GeneratedInstance instance = generate(params);
    SolverConfig config;
    config.deadline_s = timeout_s;
    config.exhaustive_cap = num_events(instance.trn.atn);
    bool consistent = false;
    if (item.solver == BenchSolver::kCp) {
      consistent = solve(instance.trn, config).consistent;
    } else if (item.solver == BenchSolver::kExhaustive) {
      consistent = solve_exhaustive(instance.trn, config).consistent;
    } else {
      const MipModel model = encode_mip(instance.trn);
      consistent = solve_external(model, mip_command, timeout_s).feasible;
    }
    stamp();
    rec.outcome = consistent ? Outcome::kConsistent : Outcome::kInconsistent;
  } catch (const TimeoutError&) {
    stamp();
    rec.outcome = Outcome::kTimeout;
  } catch (const SolverTimeoutError&) {
    stamp();
    rec.outcome = Outcome::kTimeout;
  } catch (const std::exception&) {
    stamp();
    rec.outcome = Outcome::kError;
  }
  return rec;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  std::string mip_command = config.mip_command;
  const bool wants_mip =
      std::count(config.solvers.begin(), config.solvers.end(), BenchSolver::kMip) > 0;
  if (wants_mip && mip_command.empty()) {
    const char* env = std::getenv("TRN_MIP_SOLVER");
    if (!env || !*env)
      throw Error("mip runs need a solver command (TRN_MIP_SOLVER unset)");
    mip_command = env;
  }

  std::vector<WorkItem> work;
  for (Density density : config.densities)
    for (int n : config.n_values)
      for (int r : config.r_values)
        for (int trial = 0; trial < config.trials_per_cell; ++trial) {
          const std::uint64_t seed =
              trial_seed(config.base_seed, n, r, density, trial);
          for (BenchSolver solver : config.solvers)
            work.push_back({n, r, density, trial, seed, solver});
        }

  std::vector<BenchRecord> records(work.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      records[i] = run_one(work[i], config.timeout_s, mip_command);
    }
  };
  unsigned n_threads = 1;
  if (config.parallel) {
    const unsigned hw = std::thread::hardware_concurrency();
    n_threads = hw > 1 ? hw - 1 : 1;
  }
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Cross-solver verdict agreement per trial.
  std::map<std::tuple<int, int, std::string, int>, std::vector<const BenchRecord*>>
      by_trial;
  for (const auto& rec : records)
    by_trial[{rec.n, rec.r, rec.density, rec.trial}].push_back(&rec);
  std::vector<BenchRecord> extra;
  for (const auto& [key, recs] : by_trial) {
    (void)key;
    bool saw_consistent = false, saw_inconsistent = false;
    for (const auto* r : recs) {
      saw_consistent |= r->outcome == Outcome::kConsistent;
      saw_inconsistent |= r->outcome == Outcome::kInconsistent;
    }
    if (saw_consistent && saw_inconsistent) {
      BenchRecord d = *recs.front();
      d.solver = "disagreement";
      d.outcome = Outcome::kError;
      d.elapsed_s = 0.0;
      extra.push_back(d);
    }
  }
  records.insert(records.end(), extra.begin(), extra.end());
  return records;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "solver,N,R,density,trial,seed,outcome,elapsed_s\n";
  out << std::setprecision(17);
  for (const auto& r : records)
    out << r.solver << ',' << r.n << ',' << r.r << ',' << r.density << ','
        << r.trial << ',' << r.seed << ',' << to_string(r.outcome) << ','
        << r.elapsed_s << '\n';
  return out.str();
}

std::vector<BenchRecord> records_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) ||
      line != "solver,N,R,density,trial,seed,outcome,elapsed_s")
    throw Error("unrecognized records CSV header");
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 8) throw Error("malformed records CSV line: " + line);
    BenchRecord r;
    r.solver = fields[0];
    r.n = std::stoi(fields[1]);
    r.r = std::stoi(fields[2]);
    r.density = fields[3];
    r.trial = std::stoi(fields[4]);
    r.seed = std::stoull(fields[5]);
    r.outcome = outcome_from_string(fields[6]);
    r.elapsed_s = std::stod(fields[7]);
    out.push_back(r);
  }
  return out;
}

std::vector<RatioCell> ratio_table(const std::vector<BenchRecord>& records) {
  struct Acc {
    std::vector<double> cp, mip;
  };
  std::map<std::tuple<std::string, int, int>, Acc> cells;
  for (const auto& r : records) {
    if (r.solver != "cp" && r.solver != "mip") continue;
    if (r.outcome != Outcome::kConsistent && r.outcome != Outcome::kInconsistent)
      continue;
    auto& acc = cells[{r.density, r.n, r.r}];
    (r.solver == "cp" ? acc.cp : acc.mip).push_back(r.elapsed_s);
  }
  auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  auto stddev_of = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  std::vector<RatioCell> out;
  for (const auto& [key, acc] : cells) {
    if (acc.cp.empty() && acc.mip.empty()) continue;
    RatioCell cell;
    cell.density = std::get<0>(key);
    cell.n = std::get<1>(key);
    cell.r = std::get<2>(key);
    cell.cp_finished = static_cast<int>(acc.cp.size());
    cell.mip_finished = static_cast<int>(acc.mip.size());
    cell.cp_mean = mean_of(acc.cp);
    cell.cp_stddev = stddev_of(acc.cp);
    cell.mip_mean = mean_of(acc.mip);
    cell.mip_stddev = stddev_of(acc.mip);
    cell.ratio = acc.cp.empty() ? 0.0
                : acc.mip.empty() ? kInf
                                  : cell.mip_mean / cell.cp_mean;
    out.push_back(cell);
  }
  return out;
}

std::string ratio_to_csv(const std::vector<RatioCell>& cells) {
  std::ostringstream out;
  out << "density,N,R,cp_mean_s,cp_stddev_s,cp_finished,mip_mean_s,"
         "mip_stddev_s,mip_finished,ratio\n";
  out << std::setprecision(17);
  for (const auto& c : cells)
    out << c.density << ',' << c.n << ',' << c.r << ',' << c.cp_mean << ','
        << c.cp_stddev << ',' << c.cp_finished << ',' << c.mip_mean << ','
        << c.mip_stddev << ',' << c.mip_finished << ',' << c.ratio << '\n';
  return out.str();
}

std::string ratio_to_text(const std::vector<RatioCell>& cells) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "density" << std::right << std::setw(5)
      << "N" << std::setw(5) << "R" << std::setw(16) << "cp mean(sd)"
      << std::setw(18) << "mip mean(sd)" << std::setw(10) << "ratio" << '\n';
  auto fmt_pair = [](double mean, double sd, int finished) {
    if (finished == 0) return std::string("-");
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << mean << "(" << sd << ")";
    return s.str();
  };
  for (const auto& c : cells) {
    std::ostringstream ratio;
    if (c.cp_finished == 0)
      ratio << "0";
    else if (c.mip_finished == 0)
      ratio << "inf";
    else
      ratio << std::fixed << std::setprecision(2) << c.ratio;
    out << std::left << std::setw(8) << c.density << std::right << std::setw(5)
        << c.n << std::setw(5) << c.r << std::setw(16)
        << fmt_pair(c.cp_mean, c.cp_stddev, c.cp_finished) << std::setw(18)
        << fmt_pair(c.mip_mean, c.mip_stddev, c.mip_finished) << std::setw(10)
        << ratio.str() << '\n';
  }
  return out.str();
}

}  // namespace trn

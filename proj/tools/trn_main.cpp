#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "trn/bench.hpp"
#include "trn/cp_solver.hpp"
#include "trn/instance_gen.hpp"
#include "trn/json_io.hpp"
#include "trn/mip.hpp"
#include "trn/smart_house.hpp"

namespace {

constexpr int kExitConsistent = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitInputError = 3;

std::string mip_command_or_die(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("TRN_MIP_SOLVER");
  if (env && *env) return env;
  throw trn::SolverNotFoundError(
      "no MIP solver configured; pass --mip-solver or set TRN_MIP_SOLVER");
}

void write_schedule(const trn::Trn& trn, const trn::Schedule& schedule,
                    std::optional<double> risk, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw trn::Error("cannot write " + path);
  f << trn::schedule_to_json(trn, schedule, risk).dump(2) << "\n";
}

void print_schedule(const trn::Trn& trn, const trn::Schedule& schedule) {
  const trn::Stn& base = trn::base_stn(trn.atn);
  for (const auto& [e, t] : schedule)
    std::cout << "  " << base.events.at(e) << " = " << t << "\n";
}

int run_check(const trn::Trn& trn, const std::string& solver,
              std::optional<double> timeout, const std::string& mip_flag,
              bool naive_order, const std::string& schedule_out, bool verbose) {
  if (solver == "mip") {
    const trn::MipModel model = trn::encode_mip(trn);
    const trn::MipSolution sol =
        trn::solve_external(model, mip_command_or_die(mip_flag), timeout);
    if (!sol.feasible) {
      std::cout << "inconsistent\n";
      return kExitInconsistent;
    }
    auto [schedule, sigma] = trn::decode_solution(model, sol);
    std::cout << "consistent\n";
    if (verbose) print_schedule(trn, schedule);
    write_schedule(trn, schedule, std::nullopt, schedule_out);
    return kExitConsistent;
  }

  trn::SolverConfig config;
  config.deadline_s = timeout;
  if (naive_order) config.variable_order = trn::VariableOrder::kByEventId;
  if (solver == "exhaustive")
    config.exhaustive_cap = trn::num_events(trn.atn);
  const trn::SolveResult result = solver == "exhaustive"
                                      ? trn::solve_exhaustive(trn, config)
                                      : trn::solve(trn, config);
  std::cerr << "nodes=" << result.stats.nodes_expanded
            << " orders=" << result.stats.orders_checked
            << " prune_resource=" << result.stats.prunes_by_resource
            << " prune_time=" << result.stats.prunes_by_time
            << " elapsed_s=" << result.stats.elapsed_s << "\n";
  if (!result.consistent) {
    std::cout << "inconsistent\n";
    return kExitInconsistent;
  }
  std::cout << "consistent";
  if (result.risk_bound) std::cout << " risk_bound=" << *result.risk_bound;
  std::cout << "\n";
  if (verbose && result.schedule) print_schedule(trn, *result.schedule);
  if (result.schedule)
    write_schedule(trn, *result.schedule, result.risk_bound, schedule_out);
  return kExitConsistent;
}

trn::BenchConfig bench_config_from(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw trn::DocumentError("cannot open " + path);
  nlohmann::json doc;
  try {
    f >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw trn::DocumentError(std::string("invalid JSON: ") + e.what());
  }
  trn::BenchConfig config;
  config.densities.clear();
  config.solvers.clear();
  for (const auto& [key, value] : doc.items()) {
    if (key == "n_values")
      config.n_values = value.get<std::vector<int>>();
    else if (key == "r_values")
      config.r_values = value.get<std::vector<int>>();
    else if (key == "densities")
      for (const auto& d : value) {
        const std::string s = d.get<std::string>();
        if (s != "sparse" && s != "dense")
          throw trn::DocumentError("density must be sparse or dense");
        config.densities.push_back(s == "sparse" ? trn::Density::kSparse
                                                 : trn::Density::kDense);
      }
    else if (key == "trials_per_cell")
      config.trials_per_cell = value.get<int>();
    else if (key == "timeout_s")
      config.timeout_s = value.get<double>();
    else if (key == "solvers")
      for (const auto& s : value) {
        const std::string name = s.get<std::string>();
        if (name == "cp")
          config.solvers.push_back(trn::BenchSolver::kCp);
        else if (name == "mip")
          config.solvers.push_back(trn::BenchSolver::kMip);
        else if (name == "exhaustive")
          config.solvers.push_back(trn::BenchSolver::kExhaustive);
        else
          throw trn::DocumentError("unknown solver \"" + name + "\"");
      }
    else if (key == "base_seed")
      config.base_seed = value.get<std::uint64_t>();
    else if (key == "parallel")
      config.parallel = value.get<bool>();
    else
      throw trn::DocumentError("unknown bench config field \"" + key + "\"");
  }
  if (config.n_values.empty() || config.r_values.empty())
    throw trn::DocumentError("bench config needs n_values and r_values");
  if (config.densities.empty()) config.densities = {trn::Density::kSparse};
  if (config.solvers.empty()) config.solvers = {trn::BenchSolver::kCp};
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time resource network solver"};
  app.require_subcommand(1);

  std::string in_path, out_path, solver = "cp", mip_flag, schedule_out;
  std::string config_path, ratio_csv, demo_name;
  std::optional<double> timeout, horizon;
  bool naive_order = false, serial = false, verbose = false;

  auto* check = app.add_subcommand("check", "decide time-resource consistency");
  check->add_option("file", in_path, "instance JSON")->required();
  check->add_option("--solver", solver, "cp | mip | exhaustive")
      ->check(CLI::IsMember({"cp", "mip", "exhaustive"}));
  check->add_option("--timeout", timeout, "wall-clock limit in seconds");
  check->add_option("--mip-solver", mip_flag, "external solver command");
  check->add_option("--schedule-out", schedule_out, "write witness JSON here");
  check->add_flag("--naive-order", naive_order, "disable the generators-first heuristic");
  check->add_flag("-v,--verbose", verbose, "print the witness schedule");

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  int gen_n = 10, gen_r = 4;
  std::optional<int> gen_t;
  std::string gen_density = "sparse";
  std::uint64_t gen_seed = 0;
  gen->add_option("-n,--events", gen_n, "number of events");
  gen->add_option("-t,--temporal", gen_t, "number of STCs (default from density)");
  gen->add_option("-r,--resources", gen_r, "number of resource constraints");
  gen->add_option("--density", gen_density, "sparse | dense")
      ->check(CLI::IsMember({"sparse", "dense"}));
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--out", out_path, "output path")->required();

  auto* bench = app.add_subcommand("bench", "run the benchmark grid");
  bench->add_option("--config", config_path, "bench config JSON")->required();
  bench->add_option("-o,--out", out_path, "records CSV path")->required();
  bench->add_option("--ratio-csv", ratio_csv, "also write the ratio table CSV");
  bench->add_flag("--serial", serial, "single-threaded run");

  auto* export_lp = app.add_subcommand("export-lp", "write the big-M encoding");
  export_lp->add_option("file", in_path, "instance JSON")->required();
  export_lp->add_option("-o,--out", out_path, "LP output path")->required();
  export_lp->add_option("--horizon", horizon, "override the big-M horizon");

  auto* demo = app.add_subcommand("demo", "built-in demo scenarios");
  demo->add_option("name", demo_name, "demo name (smart-house)")->required();
  demo->add_option("--schedule-out", schedule_out, "write witness JSON here");
  demo->add_option("--timeout", timeout, "wall-clock limit in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (check->parsed()) {
      return run_check(trn::load_trn(in_path), solver, timeout, mip_flag,
                       naive_order, schedule_out, verbose);
    }
    if (gen->parsed()) {
      const trn::Density density = gen_density == "sparse"
                                       ? trn::Density::kSparse
                                       : trn::Density::kDense;
      trn::GenParams params{
          gen_n, gen_t.value_or(trn::derived_temporal_count(gen_n, density)),
          gen_r, gen_seed};
      const trn::GeneratedInstance instance = trn::generate(params);
      trn::save_trn(instance.trn, out_path);
      std::cerr << trn::schedule_to_json(instance.trn, instance.latent).dump()
                << "\n";
      return 0;
    }
    if (bench->parsed()) {
      trn::BenchConfig config = bench_config_from(config_path);
      if (serial) config.parallel = false;
      const auto records = trn::run_bench(config);
      std::ofstream f(out_path);
      if (!f) throw trn::Error("cannot write " + out_path);
      f << trn::records_to_csv(records);
      const auto cells = trn::ratio_table(records);
      if (!ratio_csv.empty()) {
        std::ofstream rf(ratio_csv);
        if (!rf) throw trn::Error("cannot write " + ratio_csv);
        rf << trn::ratio_to_csv(cells);
      }
      std::cout << trn::ratio_to_text(cells);
      return 0;
    }
    if (export_lp->parsed()) {
      const trn::Trn trn = trn::load_trn(in_path);
      const trn::MipModel model = trn::encode_mip(trn, horizon);
      std::ofstream f(out_path);
      if (!f) throw trn::Error("cannot write " + out_path);
      f << trn::export_lp(model);
      return 0;
    }
    if (demo->parsed()) {
      if (demo_name != "smart-house")
        throw trn::Error("unknown demo \"" + demo_name + "\"");
      const trn::Trn trn = trn::smart_house_trn();
      trn::SolverConfig config;
      config.deadline_s = timeout;
      const trn::SolveResult result = trn::solve(trn, config);
      if (!result.consistent) {
        std::cout << "inconsistent\n";
        return kExitInconsistent;
      }
      std::cout << "consistent";
      if (result.risk_bound) std::cout << " risk_bound=" << *result.risk_bound;
      std::cout << "\n";
      if (result.schedule) {
        print_schedule(trn, *result.schedule);
        write_schedule(trn, *result.schedule, result.risk_bound, schedule_out);
      }
      return kExitConsistent;
    }
  } catch (const trn::TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return kExitTimeout;
  } catch (const trn::SolverTimeoutError& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return kExitTimeout;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

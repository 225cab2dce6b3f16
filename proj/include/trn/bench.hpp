#pragma once

#include <cstdint>
#include <string>

#include "trn/instance_gen.hpp"

namespace trn {

enum class BenchSolver { kCp, kMip, kExhaustive };
enum class Outcome { kConsistent, kInconsistent, kTimeout, kError };

std::string to_string(BenchSolver s);
std::string to_string(Outcome o);

struct BenchConfig {
  std::vector<int> n_values;
  std::vector<int> r_values;
  std::vector<Density> densities{Density::kSparse};
  int trials_per_cell{5};
  double timeout_s{30.0};
  std::vector<BenchSolver> solvers{BenchSolver::kCp};
  std::uint64_t base_seed{0};
  bool parallel{true};
  std::string mip_command;  // empty: TRN_MIP_SOLVER environment variable
};

struct BenchRecord {
  std::string solver;
  int n{};
  int r{};
  std::string density;
  int trial{};
  std::uint64_t seed{};
  Outcome outcome{};
  double elapsed_s{};
};

// One record per (cell, trial, solver); verdict disagreements within a trial
// append an extra record with solver "disagreement" and outcome error.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

std::string records_to_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> records_from_csv(const std::string& csv);

struct RatioCell {
  int n{};
  int r{};
  std::string density;
  double cp_mean{};    // over finished trials
  double cp_stddev{};
  double mip_mean{};
  double mip_stddev{};
  int cp_finished{};
  int mip_finished{};
  // mip_mean / cp_mean; 0 when nothing CP finished, +inf when nothing MIP
  // finished. Cells where both sides are empty are dropped from the table.
  double ratio{};
};

std::vector<RatioCell> ratio_table(const std::vector<BenchRecord>& records);
std::string ratio_to_csv(const std::vector<RatioCell>& cells);
std::string ratio_to_text(const std::vector<RatioCell>& cells);

}  // namespace trn

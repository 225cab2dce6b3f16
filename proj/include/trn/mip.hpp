#pragma once

#include <string>
#include <utility>

#include "trn/cp_solver.hpp"

namespace trn {

// Big-M order encoding. Continuous variable t_e per event, binary x_{a,b}
// per ordered pair of resource events with x_{a,b} = 1 iff s(a) <= s(b).
struct MipModel {
  struct Term {
    std::string var;
    double coef{};
  };
  struct Row {
    std::string name;
    std::vector<Term> terms;
    char sense{};  // 'L' (<=), 'G' (>=), 'E' (=)
    double rhs{};
  };

  std::vector<std::string> event_vars;  // index = EventId
  std::vector<std::string> event_names;
  std::vector<std::pair<EventId, EventId>> binary_pairs;
  std::vector<std::string> binary_vars;  // aligned with binary_pairs
  std::vector<EventId> resource_events;
  std::vector<Row> rows;
  double horizon{};
};

// Only plain STNs have this formulation; throws UnsupportedAtnError for
// STNU / pSTN inputs. horizon defaults to the sum of finite bound
// magnitudes plus one.
MipModel encode_mip(const Trn& trn, std::optional<double> horizon = std::nullopt);

double default_horizon(const Stn& stn);

// Deterministic LP-format text (Minimize 0 objective; Subject To, Bounds,
// Binaries, End sections).
std::string export_lp(const MipModel& model);

struct MipSolution {
  bool feasible{false};
  std::map<std::string, double> values;
};

// Writes the LP file, runs `command <lp-path>`, parses stdout lines of the
// form `<var> <value>` (or an `infeasible` token). Kills the child at the
// deadline.
MipSolution solve_external(const MipModel& model, const std::string& command,
                           std::optional<double> deadline_s = std::nullopt);

// Rounds binaries, validates pairing and rank totality, returns the schedule
// and the induced ordering of resource events.
std::pair<Schedule, Ordering> decode_solution(const MipModel& model,
                                              const MipSolution& solution);

}  // namespace trn

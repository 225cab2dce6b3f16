#pragma once

#include <cstdint>
#include <optional>

#include "trn/resource.hpp"

namespace trn {

enum class VariableOrder {
  kGeneratorsFirst,  // candidates sorted by delta ascending
  kByEventId,
};

struct SolverConfig {
  std::optional<double> deadline_s;  // wall clock; absent = unbounded
  VariableOrder variable_order{VariableOrder::kGeneratorsFirst};
  int exhaustive_cap{9};  // max resource events solve_exhaustive accepts
};

struct SearchStats {
  std::int64_t nodes_expanded{0};
  std::int64_t orders_checked{0};  // complete orders reaching a full check
  std::int64_t prunes_by_resource{0};
  std::int64_t prunes_by_time{0};
  double elapsed_s{0.0};
};

struct SolveResult {
  bool consistent{false};
  std::optional<Ordering> ordering;
  std::optional<Schedule> schedule;
  std::optional<double> risk_bound;
  SearchStats stats;
};

// Precedence chain t(e_r1) <= t(e_r2) <= ... over sigma's events in rank
// order (gaps allowed).
std::vector<Stc> encode_as_stcs(const Ordering& sigma);

// First element is the sum of negative deltas over unranked events (the best
// any completion can have banked), followed by the running totals after each
// ranked event.
std::vector<double> resource_prefix_totals(const Ordering& partial,
                                           const std::map<EventId, double>& deltas);

// False iff no completion of the partial order can be resource-consistent.
bool prune_resource(const Ordering& partial,
                    const std::map<EventId, double>& deltas,
                    double eps = kUsageEps);
bool prune_resource(const Ordering& partial,
                    const std::vector<ResourceConstraint>& rcs,
                    double eps = kUsageEps);

// False iff the partial order's precedence chain already breaks the ATN.
bool prune_time(const Ordering& partial, const Atn& atn);

// Ordering search over the resource events with both pruners.
SolveResult solve(const Trn& trn, const SolverConfig& config = {});

// Baseline: enumerate every permutation of all events, filter by resource
// prefix feasibility, then full temporal check.
SolveResult solve_exhaustive(const Trn& trn, const SolverConfig& config = {});

}  // namespace trn

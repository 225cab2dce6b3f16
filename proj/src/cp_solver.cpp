#include "trn/cp_solver.hpp"

#include <algorithm>
#include <chrono>

namespace trn {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  std::optional<Clock::time_point> at;

  static Deadline from(const Clock::time_point& start,
                       const std::optional<double>& limit_s) {
    Deadline d;
    if (limit_s)
      d.at = start + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(*limit_s));
    return d;
  }
  void check() const {
    if (at && Clock::now() > *at)
      throw TimeoutError("solver deadline exceeded");
  }
};

double seconds_since(const Clock::time_point& start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<Stc> encode_as_stcs(const Ordering& sigma) {
  std::vector<Stc> out;
  const auto& by_rank = sigma.by_rank();
  auto it = by_rank.begin();
  if (it == by_rank.end()) return out;
  EventId prev = it->second;
  for (++it; it != by_rank.end(); ++it) {
    out.push_back(Stc{prev, it->second, 0.0, kInf});
    prev = it->second;
  }
  return out;
}

std::vector<double> resource_prefix_totals(const Ordering& partial,
                                           const std::map<EventId, double>& deltas) {
  double banked = 0.0;
  for (const auto& [e, d] : deltas)
    if (d < 0.0 && !partial.assigned(e)) banked += d;
  std::vector<double> totals;
  totals.reserve(partial.size() + 1);
  totals.push_back(banked);
  double running = banked;
  for (const auto& [rank, e] : partial.by_rank()) {
    (void)rank;
    auto it = deltas.find(e);
    running += it == deltas.end() ? 0.0 : it->second;
    totals.push_back(running);
  }
  return totals;
}

bool prune_resource(const Ordering& partial,
                    const std::map<EventId, double>& deltas, double eps) {
  for (double total : resource_prefix_totals(partial, deltas))
    if (total > eps) return false;
  return true;
}

bool prune_resource(const Ordering& partial,
                    const std::vector<ResourceConstraint>& rcs, double eps) {
  return prune_resource(partial, delta_map(rcs), eps);
}

bool prune_time(const Ordering& partial, const Atn& atn) {
  return tc_check(atn, encode_as_stcs(partial)).consistent;
}

namespace {

// The earliest schedule for an accepted order can separate events the order
// walk treated as simultaneous, letting a window that should be empty carry
// usage. Pinning the offending rank edges to zero length and re-extracting
// recovers a schedule that realizes the order as checked. Best effort: the
// verdict and the order are already settled, only the schedule moves.
TcResult realize(const Trn& trn, const Ordering& sigma, TcResult tc) {
  if (!tc.consistent || !tc.schedule || trn.resources.empty()) return tc;
  for (const auto& rc : trn.resources)
    if (!tc.schedule->count(rc.start) || !tc.schedule->count(rc.end)) return tc;
  if (resource_consistent_schedule(*tc.schedule, trn.resources)) return tc;

  const std::vector<EventId> seq = sigma.sequence();
  std::map<EventId, int> pos;
  for (int i = 0; i < static_cast<int>(seq.size()); ++i) pos[seq[i]] = i;
  std::vector<double> usage(seq.size(), 0.0);
  for (const auto& rc : trn.resources) {
    auto a = pos.find(rc.start);
    auto b = pos.find(rc.end);
    if (a == pos.end() || b == pos.end()) continue;
    for (int p = a->second; p < b->second; ++p) usage[p] += rc.rate;
  }
  std::vector<Stc> chain = encode_as_stcs(sigma);
  for (int p = 0; p < static_cast<int>(chain.size()); ++p)
    if (usage[p] > kUsageEps) chain[p].upper = 0.0;
  TcResult tied = tc_check(trn.atn, chain);
  if (tied.consistent && tied.schedule &&
      resource_consistent_schedule(*tied.schedule, trn.resources))
    return tied;
  return tc;
}

struct Search {
  const Trn& trn;
  std::map<EventId, double> deltas;
  std::vector<EventId> candidates;
  Ordering partial;
  SearchStats stats;
  Deadline deadline;
  TcResult witness;

  bool dfs(int next_rank) {
    if (partial.size() == static_cast<int>(candidates.size())) {
      ++stats.orders_checked;
      witness = realize(trn, partial, tc_check(trn.atn, encode_as_stcs(partial)));
      return witness.consistent;
    }
    for (EventId e : candidates) {
      if (partial.assigned(e)) continue;
      deadline.check();
      ++stats.nodes_expanded;
      partial.assign(e, next_rank);
      if (!prune_resource(partial, deltas)) {
        ++stats.prunes_by_resource;
        partial.unassign(e);
        continue;
      }
      if (!prune_time(partial, trn.atn)) {
        ++stats.prunes_by_time;
        partial.unassign(e);
        continue;
      }
      if (dfs(next_rank + 1)) return true;
      partial.unassign(e);
    }
    return false;
  }
};

SolveResult wrap_tc(TcResult tc, SearchStats stats) {
  SolveResult r;
  r.consistent = tc.consistent;
  r.schedule = std::move(tc.schedule);
  r.risk_bound = tc.risk_bound;
  r.stats = stats;
  return r;
}

}  // namespace

SolveResult solve(const Trn& trn, const SolverConfig& config) {
  const auto start = Clock::now();
  Search search{trn, delta_map(trn.resources), {}, {}, {},
                Deadline::from(start, config.deadline_s), {}};
  if (search.deltas.empty()) {
    // No resource events: verdict is the plain temporal one.
    SolveResult r = wrap_tc(tc_check(trn.atn), {});
    r.stats.elapsed_s = seconds_since(start);
    return r;
  }
  for (const auto& [e, d] : search.deltas) {
    (void)d;
    search.candidates.push_back(e);
  }
  if (config.variable_order == VariableOrder::kGeneratorsFirst) {
    std::stable_sort(search.candidates.begin(), search.candidates.end(),
                     [&](EventId a, EventId b) {
                       return search.deltas[a] < search.deltas[b];
                     });
  }

  const bool found = search.dfs(1);
  search.stats.elapsed_s = seconds_since(start);
  SolveResult result = wrap_tc(found ? search.witness : TcResult{}, search.stats);
  if (found) result.ordering = search.partial;
  return result;
}

SolveResult solve_exhaustive(const Trn& trn, const SolverConfig& config) {
  const auto start = Clock::now();
  const Deadline deadline = Deadline::from(start, config.deadline_s);
  const auto re = resource_events(trn.resources);
  if (static_cast<int>(re.size()) > config.exhaustive_cap)
    throw CapExceededError("instance has more resource events than the exhaustive cap");

  std::vector<EventId> events(num_events(trn.atn));
  for (int i = 0; i < static_cast<int>(events.size()); ++i) events[i] = i;

  SearchStats stats;
  do {
    deadline.check();
    ++stats.nodes_expanded;
    ++stats.orders_checked;
    Ordering sigma = Ordering::from_sequence(events);
    if (!resource_consistent_order(sigma, trn.resources)) continue;
    TcResult tc = realize(trn, sigma, tc_check(trn.atn, encode_as_stcs(sigma)));
    if (tc.consistent) {
      stats.elapsed_s = seconds_since(start);
      SolveResult result = wrap_tc(std::move(tc), stats);
      result.ordering = sigma;
      return result;
    }
  } while (std::next_permutation(events.begin(), events.end()));

  stats.elapsed_s = seconds_since(start);
  return wrap_tc(TcResult{}, stats);
}

}  // namespace trn

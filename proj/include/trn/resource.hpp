#pragma once

#include <map>
#include <vector>

#include "trn/atn.hpp"

namespace trn {

// Piecewise-constant usage: rate is consumed (positive) or generated
// (negative) over the half-open interval [s(start), s(end)).
struct ResourceConstraint {
  EventId start{};
  EventId end{};
  double rate{};
};

// Time resource network: an ATN plus resource constraints over its events.
struct Trn {
  Atn atn;
  std::vector<ResourceConstraint> resources;
};

// Injective partial assignment of events to 1-based ranks.
class Ordering {
 public:
  void assign(EventId e, int rank);
  void unassign(EventId e);
  bool assigned(EventId e) const { return rank_of_.count(e) > 0; }
  std::optional<int> rank_of(EventId e) const;
  int size() const { return static_cast<int>(by_rank_.size()); }
  bool empty() const { return by_rank_.empty(); }
  // rank -> event, ascending; ranks may have gaps.
  const std::map<int, EventId>& by_rank() const { return by_rank_; }
  // Events in rank order.
  std::vector<EventId> sequence() const;
  // Ranks 1..n in the given event order.
  static Ordering from_sequence(const std::vector<EventId>& events);

  bool operator==(const Ordering&) const = default;

 private:
  std::map<int, EventId> by_rank_;
  std::map<EventId, int> rank_of_;
};

// Events appearing as an endpoint of some resource constraint, ascending.
std::vector<EventId> resource_events(const std::vector<ResourceConstraint>& rcs);

// Net usage change when e fires: rates starting at e minus rates ending at e.
double delta(EventId e, const std::vector<ResourceConstraint>& rcs);
std::map<EventId, double> delta_map(const std::vector<ResourceConstraint>& rcs);

// Slack for the <= 0 usage comparisons. Prefix sums of delta telescope to an
// exact real zero over a full order, so the accumulated total lands within a
// few ulp of zero on either side and a strict test would flip on noise.
inline constexpr double kUsageEps = 1e-9;

// Net resource usage under schedule s at time t.
// Requires s to cover every resource event (MissingEventError).
double usage_at(const Schedule& s, const std::vector<ResourceConstraint>& rcs,
                double t);

// True iff net usage stays <= 0 everywhere (checked at event times, which is
// exact for piecewise-constant usage).
bool resource_consistent_schedule(const Schedule& s,
                                  const std::vector<ResourceConstraint>& rcs,
                                  double eps = kUsageEps);

// True iff every prefix sum of delta in rank order stays <= 0.
// sigma must assign every resource event (MissingEventError).
bool resource_consistent_order(const Ordering& sigma,
                               const std::vector<ResourceConstraint>& rcs,
                               double eps = kUsageEps);

}  // namespace trn

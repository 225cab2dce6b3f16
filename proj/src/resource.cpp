#include "trn/resource.hpp"

#include <algorithm>
#include <set>

namespace trn {

void Ordering::assign(EventId e, int rank) {
  if (rank_of_.count(e))
    throw Error("event already ranked");
  if (by_rank_.count(rank))
    throw Error("rank already taken");
  by_rank_[rank] = e;
  rank_of_[e] = rank;
}

void Ordering::unassign(EventId e) {
  auto it = rank_of_.find(e);
  if (it == rank_of_.end()) return;
  by_rank_.erase(it->second);
  rank_of_.erase(it);
}

std::optional<int> Ordering::rank_of(EventId e) const {
  auto it = rank_of_.find(e);
  if (it == rank_of_.end()) return std::nullopt;
  return it->second;
}

std::vector<EventId> Ordering::sequence() const {
  std::vector<EventId> out;
  out.reserve(by_rank_.size());
  for (const auto& [rank, e] : by_rank_) {
    (void)rank;
    out.push_back(e);
  }
  return out;
}

Ordering Ordering::from_sequence(const std::vector<EventId>& events) {
  Ordering o;
  int rank = 1;
  for (EventId e : events) o.assign(e, rank++);
  return o;
}

std::vector<EventId> resource_events(const std::vector<ResourceConstraint>& rcs) {
  std::set<EventId> s;
  for (const auto& rc : rcs) {
    s.insert(rc.start);
    s.insert(rc.end);
  }
  return {s.begin(), s.end()};
}

double delta(EventId e, const std::vector<ResourceConstraint>& rcs) {
  double d = 0.0;
  for (const auto& rc : rcs) {
    if (rc.start == e) d += rc.rate;
    if (rc.end == e) d -= rc.rate;
  }
  return d;
}

std::map<EventId, double> delta_map(const std::vector<ResourceConstraint>& rcs) {
  std::map<EventId, double> m;
  for (EventId e : resource_events(rcs)) m[e] = delta(e, rcs);
  return m;
}

double usage_at(const Schedule& s, const std::vector<ResourceConstraint>& rcs,
                double t) {
  double u = 0.0;
  for (const auto& rc : rcs) {
    auto a = s.find(rc.start), b = s.find(rc.end);
    if (a == s.end() || b == s.end())
      throw MissingEventError("schedule does not cover every resource event");
    if (a->second <= t && t < b->second) u += rc.rate;
  }
  return u;
}

bool resource_consistent_schedule(const Schedule& s,
                                  const std::vector<ResourceConstraint>& rcs,
                                  double eps) {
  for (EventId e : resource_events(rcs)) {
    auto it = s.find(e);
    if (it == s.end())
      throw MissingEventError("schedule does not cover every resource event");
    if (usage_at(s, rcs, it->second) > eps) return false;
  }
  return true;
}

bool resource_consistent_order(const Ordering& sigma,
                               const std::vector<ResourceConstraint>& rcs,
                               double eps) {
  const auto deltas = delta_map(rcs);
  for (const auto& [e, d] : deltas) {
    (void)d;
    if (!sigma.assigned(e))
      throw MissingEventError("ordering does not rank every resource event");
  }
  double running = 0.0;
  for (const auto& [rank, e] : sigma.by_rank()) {
    (void)rank;
    auto it = deltas.find(e);
    if (it == deltas.end()) continue;
    running += it->second;
    if (running > eps) return false;
  }
  return true;
}

}  // namespace trn

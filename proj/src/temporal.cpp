#include "trn/temporal.hpp"

#include <algorithm>
#include <cmath>

namespace trn {

std::optional<EventId> Stn::find_event(std::string_view name) const {
  auto it = std::find(events.begin(), events.end(), name);
  if (it == events.end()) return std::nullopt;
  return static_cast<EventId>(it - events.begin());
}

void validate(const Stn& stn) {
  const int n = stn.num_events();
  for (const Stc& c : stn.constraints) {
    if (c.from < 0 || c.from >= n || c.to < 0 || c.to >= n)
      throw MalformedNetworkError("constraint endpoint is not a declared event");
    if (c.lower > c.upper)
      throw MalformedNetworkError("empty bound interval on " + stn.events[c.from] +
                                  " -> " + stn.events[c.to]);
    if (std::isnan(c.lower) || std::isnan(c.upper))
      throw MalformedNetworkError("NaN bound");
  }
}

bool DistanceMatrix::consistent(double eps) const {
  return d.diagonal().minCoeff() >= -eps;
}

DistanceMatrix apsp(const Stn& stn) {
  validate(stn);
  const int n = stn.num_events();
  DistanceMatrix out;
  out.d = Eigen::MatrixXd::Constant(n, n, kInf);
  out.d.diagonal().setZero();
  auto relax_edge = [&](EventId u, EventId v, double w) {
    if (w < out.d(u, v)) out.d(u, v) = w;
  };
  for (const Stc& c : stn.constraints) {
    if (c.upper < kInf) relax_edge(c.from, c.to, c.upper);
    if (c.lower > -kInf) relax_edge(c.to, c.from, -c.lower);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double dik = out.d(i, k);
      if (dik == kInf) continue;
      out.d.row(i) = out.d.row(i).array().min(dik + out.d.row(k).array()).matrix();
    }
  }
  return out;
}

bool stn_consistent(const Stn& stn, double eps) {
  if (stn.num_events() == 0) return true;
  return apsp(stn).consistent(eps);
}

Schedule extract_schedule(const Stn& stn, EventId reference) {
  const int n = stn.num_events();
  if (reference < 0 || reference >= n)
    throw MissingEventError("reference event is not declared");
  DistanceMatrix m = apsp(stn);
  if (!m.consistent())
    throw InconsistentNetworkError("cannot extract a schedule from an inconsistent network");
  // Distances from a virtual source with zero-weight edges to every event;
  // guarantees validity even when the graph is disconnected.
  Eigen::VectorXd dist(n);
  for (int e = 0; e < n; ++e) dist(e) = std::min(0.0, m.d.col(e).minCoeff());
  Schedule s;
  for (int e = 0; e < n; ++e) s[e] = dist(e) - dist(reference);
  return s;
}

bool check_schedule(const Stn& stn, const Schedule& s) {
  validate(stn);
  for (const Stc& c : stn.constraints) {
    auto f = s.find(c.from), t = s.find(c.to);
    if (f == s.end() || t == s.end())
      throw MissingEventError("schedule does not cover every constrained event");
    const double diff = t->second - f->second;
    if (diff < c.lower || diff > c.upper) return false;
  }
  return true;
}

}  // namespace trn

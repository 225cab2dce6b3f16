#pragma once

#include <Eigen/Dense>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trn/errors.hpp"

namespace trn {

using EventId = int;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Simple temporal constraint: lower <= t(to) - t(from) <= upper.
// Either bound may be infinite.
struct Stc {
  EventId from{};
  EventId to{};
  double lower{-kInf};
  double upper{kInf};
};

// Simple temporal network. Events are dense indices 0..n-1 with display names.
struct Stn {
  std::vector<std::string> events;
  std::vector<Stc> constraints;

  EventId add_event(std::string name) {
    events.push_back(std::move(name));
    return static_cast<EventId>(events.size()) - 1;
  }
  void add_constraint(EventId from, EventId to, double lower, double upper) {
    constraints.push_back(Stc{from, to, lower, upper});
  }
  int num_events() const { return static_cast<int>(events.size()); }
  std::optional<EventId> find_event(std::string_view name) const;
};

// Throws MalformedNetworkError if a constraint endpoint is undeclared or a
// bound pair is empty (lower > upper).
void validate(const Stn& stn);

// Assignment of times to events. Partial in general; ops that need totality
// say so.
using Schedule = std::map<EventId, double>;

// All-pairs shortest path over the distance graph. d(i,j) = +inf when j is
// unreachable from i.
struct DistanceMatrix {
  Eigen::MatrixXd d;

  int size() const { return static_cast<int>(d.rows()); }
  bool consistent(double eps = 0.0) const;
};

DistanceMatrix apsp(const Stn& stn);

bool stn_consistent(const Stn& stn, double eps = 0.0);

// Witness schedule with s(reference) = 0; requires a consistent network
// (throws InconsistentNetworkError otherwise).
Schedule extract_schedule(const Stn& stn, EventId reference = 0);

// True iff the (total) schedule satisfies every constraint.
// Throws MissingEventError if the schedule misses a constrained event.
bool check_schedule(const Stn& stn, const Schedule& s);

}  // namespace trn

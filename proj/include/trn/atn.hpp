#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "trn/temporal.hpp"

namespace trn {

// Contingent link: once the agent fixes t(from), nature picks
// t(to) - t(from) somewhere in [lower, upper].
struct ContingentLink {
  EventId from{};
  EventId to{};
  double lower{};
  double upper{};
};

// STN with uncertainty, checked here under strong controllability.
struct Stnu {
  Stn base;
  std::vector<ContingentLink> contingent;
};

struct NormalDist {
  double mean{};
  double stddev{};
};

// Probabilistic uncertain duration: t(to) = t(from) + w, w ~ dist.
struct UncertainDuration {
  EventId from{};
  EventId to{};
  NormalDist dist;
};

// Probabilistic STN with a joint success-probability target.
struct Pstn {
  Stn base;
  std::vector<UncertainDuration> udns;
  double probability{0.95};
};

using Atn = std::variant<Stn, Stnu, Pstn>;

struct TcResult {
  bool consistent{false};
  // Witness over the controllable events (all events for a plain STN).
  std::optional<Schedule> schedule;
  // pSTN only: certified upper bound on the failure probability.
  std::optional<double> risk_bound;
};

const Stn& base_stn(const Atn& atn);
int num_events(const Atn& atn);
std::vector<EventId> received_events(const Atn& atn);

// Temporal-consistency umbrella: STN consistency, STNU strong
// controllability, or conservative pSTN chance checking, with extra
// STCs (ordering chains) folded in.
TcResult tc_check(const Atn& atn, const std::vector<Stc>& extra_stcs = {});

TcResult stnu_strongly_controllable(const Stnu& stnu,
                                    const std::vector<Stc>& extra_stcs = {});

TcResult pstn_consistent(const Pstn& pstn,
                         const std::vector<Stc>& extra_stcs = {});

}  // namespace trn

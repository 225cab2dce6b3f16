#include "trn/atn.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "trn/gaussian.hpp"

namespace trn {

const Stn& base_stn(const Atn& atn) {
  return std::visit([](const auto& a) -> const Stn& {
    using T = std::decay_t<decltype(a)>;
    if constexpr (std::is_same_v<T, Stn>)
      return a;
    else
      return a.base;
  }, atn);
}

int num_events(const Atn& atn) { return base_stn(atn).num_events(); }

std::vector<EventId> received_events(const Atn& atn) {
  std::vector<EventId> out;
  if (const auto* stnu = std::get_if<Stnu>(&atn)) {
    for (const auto& l : stnu->contingent) out.push_back(l.to);
  } else if (const auto* pstn = std::get_if<Pstn>(&atn)) {
    for (const auto& u : pstn->udns) out.push_back(u.to);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct ReceivedInterval {
  EventId activation{};
  double lower{};
  double upper{};
};

// Rewrites every requirement constraint over activations of its endpoints:
// for x with activation a_x offset [lx, ux], the bound l <= t(y) - t(x) <= u
// becomes l - (ly - ux) <= t(a_y) - t(a_x) <= u - (uy - lx), which must hold
// for every outcome nature can pick.
TcResult strong_controllability(const Stn& base,
                                const std::map<EventId, ReceivedInterval>& received,
                                const std::vector<Stc>& extra_stcs) {
  validate(base);
  const int n = base.num_events();
  for (const auto& [to, iv] : received) {
    if (to < 0 || to >= n || iv.activation < 0 || iv.activation >= n)
      throw MalformedNetworkError("contingent endpoint is not a declared event");
    if (received.count(iv.activation))
      throw MalformedNetworkError("contingent activation " +
                                  base.events[iv.activation] +
                                  " is itself a received event");
    if (iv.lower > iv.upper)
      throw MalformedNetworkError("empty contingent interval on " + base.events[to]);
  }

  Stn projected;
  std::vector<EventId> to_sub(n, -1);
  std::vector<EventId> to_full;
  for (EventId e = 0; e < n; ++e) {
    if (received.count(e)) continue;
    to_sub[e] = projected.add_event(base.events[e]);
    to_full.push_back(e);
  }

  auto offsets = [&](EventId e) -> ReceivedInterval {
    auto it = received.find(e);
    if (it != received.end()) return it->second;
    return ReceivedInterval{e, 0.0, 0.0};
  };
  // A rewritten interval can come out empty when nature's spread exceeds the
  // requirement's width; no activation times help, so that is a verdict, not
  // a malformed input.
  bool unsatisfiable = false;
  auto rewrite = [&](const Stc& c) {
    const ReceivedInterval x = offsets(c.from), y = offsets(c.to);
    double lower = c.lower, upper = c.upper;
    if (lower > -kInf) lower -= y.lower - x.upper;
    if (upper < kInf) upper -= y.upper - x.lower;
    if (lower > upper) {
      unsatisfiable = true;
      return;
    }
    projected.add_constraint(to_sub[x.activation], to_sub[y.activation], lower, upper);
  };
  for (const Stc& c : base.constraints) rewrite(c);
  for (const Stc& c : extra_stcs) {
    if (c.from < 0 || c.from >= n || c.to < 0 || c.to >= n)
      throw MalformedNetworkError("extra constraint endpoint is not a declared event");
    rewrite(c);
  }
  if (unsatisfiable) return TcResult{};

  TcResult result;
  DistanceMatrix m = apsp(projected);
  result.consistent = m.consistent();
  if (result.consistent && projected.num_events() > 0) {
    Schedule sub = extract_schedule(projected, 0);
    Schedule full;
    for (const auto& [e, t] : sub) full[to_full[e]] = t;
    result.schedule = std::move(full);
  } else if (result.consistent) {
    result.schedule = Schedule{};
  }
  return result;
}

}  // namespace

TcResult stnu_strongly_controllable(const Stnu& stnu,
                                    const std::vector<Stc>& extra_stcs) {
  std::map<EventId, ReceivedInterval> received;
  for (const auto& l : stnu.contingent) {
    if (received.count(l.to))
      throw MalformedNetworkError("event " + stnu.base.events.at(l.to) +
                                  " is the target of two contingent links");
    received[l.to] = ReceivedInterval{l.from, l.lower, l.upper};
  }
  return strong_controllability(stnu.base, received, extra_stcs);
}

TcResult pstn_consistent(const Pstn& pstn, const std::vector<Stc>& extra_stcs) {
  validate(pstn.base);
  if (!(pstn.probability > 0.0 && pstn.probability < 1.0))
    throw MalformedNetworkError("success probability must lie in (0,1)");
  const int n = pstn.base.num_events();
  std::map<EventId, const UncertainDuration*> udn_of;
  for (const auto& u : pstn.udns) {
    if (u.from < 0 || u.from >= n || u.to < 0 || u.to >= n)
      throw MalformedNetworkError("uncertain duration endpoint is not a declared event");
    if (!(u.dist.stddev > 0.0))
      throw MalformedNetworkError("uncertain duration needs a positive stddev");
    if (udn_of.count(u.to))
      throw MalformedNetworkError("event " + pstn.base.events[u.to] +
                                  " is the target of two uncertain durations");
    udn_of[u.to] = &u;
  }
  for (const auto& [to, u] : udn_of) {
    (void)to;
    if (udn_of.count(u->from))
      throw MalformedNetworkError("uncertain activation " +
                                  pstn.base.events[u->from] +
                                  " is itself a received event");
  }

  std::vector<Stc> all = pstn.base.constraints;
  all.insert(all.end(), extra_stcs.begin(), extra_stcs.end());

  // Chance constraints: free constraints touching a received event. Each gets
  // an equal slice of the risk budget, split across its received endpoints.
  struct Tails {
    double budget{0.0};
    bool upper{false};
    bool lower{false};
  };
  std::map<EventId, Tails> tails;
  int k = 0;
  for (const Stc& c : all) {
    const bool from_received = udn_of.count(c.from) > 0;
    const bool to_received = udn_of.count(c.to) > 0;
    if (!from_received && !to_received) continue;
    ++k;
    if (c.upper < kInf) {
      if (to_received) tails[c.to].upper = true;
      if (from_received) tails[c.from].lower = true;
    }
    if (c.lower > -kInf) {
      if (to_received) tails[c.to].lower = true;
      if (from_received) tails[c.from].upper = true;
    }
  }
  if (k > 0) {
    const double per_constraint = (1.0 - pstn.probability) / k;
    for (const Stc& c : all) {
      const bool from_received = udn_of.count(c.from) > 0;
      const bool to_received = udn_of.count(c.to) > 0;
      if (!from_received && !to_received) continue;
      const int endpoints = (from_received && to_received && c.from != c.to) ? 2 : 1;
      if (from_received) tails[c.from].budget += per_constraint / endpoints;
      if (to_received && c.to != c.from) tails[c.to].budget += per_constraint / endpoints;
    }
  }

  // Squeeze each Gaussian into a fixed interval holding all budget not spent;
  // a tail nothing constrains costs no risk.
  std::map<EventId, ReceivedInterval> received;
  double spent = 0.0;
  for (const auto& [to, u] : udn_of) {
    const Tails t = tails.count(to) ? tails[to] : Tails{};
    const double mean = u->dist.mean, sd = u->dist.stddev;
    double lo = mean, hi = mean;
    if (t.budget > 0.0 && t.upper && t.lower) {
      lo = mean + gaussian_quantile(t.budget / 2.0) * sd;
      hi = mean + gaussian_quantile(1.0 - t.budget / 2.0) * sd;
      spent += t.budget;
    } else if (t.budget > 0.0 && t.upper) {
      hi = mean + gaussian_quantile(1.0 - t.budget) * sd;
      lo = std::min(lo, hi);  // unconstrained side, value never read
      spent += t.budget;
    } else if (t.budget > 0.0 && t.lower) {
      lo = mean + gaussian_quantile(t.budget) * sd;
      hi = std::max(hi, lo);
      spent += t.budget;
    }
    received[to] = ReceivedInterval{u->from, lo, hi};
  }

  TcResult result = strong_controllability(pstn.base, received, extra_stcs);
  if (result.consistent) result.risk_bound = spent;
  return result;
}

TcResult tc_check(const Atn& atn, const std::vector<Stc>& extra_stcs) {
  return std::visit([&](const auto& a) -> TcResult {
    using T = std::decay_t<decltype(a)>;
    if constexpr (std::is_same_v<T, Stn>) {
      Stn augmented = a;
      for (const Stc& c : extra_stcs) augmented.constraints.push_back(c);
      TcResult r;
      r.consistent = stn_consistent(augmented);
      if (r.consistent && augmented.num_events() > 0)
        r.schedule = extract_schedule(augmented, 0);
      else if (r.consistent)
        r.schedule = Schedule{};
      return r;
    } else if constexpr (std::is_same_v<T, Stnu>) {
      return stnu_strongly_controllable(a, extra_stcs);
    } else {
      return pstn_consistent(a, extra_stcs);
    }
  }, atn);
}

}  // namespace trn

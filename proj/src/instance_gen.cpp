#include "trn/instance_gen.hpp"

#include <cmath>
#include <stdexcept>

#include "trn/rng.hpp"

namespace trn {

namespace {

constexpr int kMaxRetries = 1000;

// Distinct pair oriented so latent(x) < latent(y); equal times are resampled.
std::pair<EventId, EventId> draw_pair(SplitMix64& rng, const Schedule& latent,
                                      int n) {
  for (int tries = 0; tries < kMaxRetries; ++tries) {
    const EventId x = rng.uniform_int(0, n - 1);
    const EventId y = rng.uniform_int(0, n - 1);
    if (x == y || latent.at(x) == latent.at(y)) continue;
    return latent.at(x) < latent.at(y) ? std::make_pair(x, y)
                                       : std::make_pair(y, x);
  }
  throw GenerationError("could not draw a usable event pair");
}

}  // namespace

int derived_temporal_count(int n_events, Density density) {
  return density == Density::kSparse ? 2 * n_events
                                     : n_events * n_events / 2;
}

GeneratedInstance generate(const GenParams& params) {
  if (params.n_events < 2) throw std::invalid_argument("need at least two events");
  if (params.n_temporal < 1) throw std::invalid_argument("need at least one STC");
  if (params.n_resource < 2)
    throw std::invalid_argument("need at least two resource constraints");

  auto latent_rng = substream(params.seed, 1);
  auto temporal_rng = substream(params.seed, 2);
  auto split_rng = substream(params.seed, 3);
  auto generate_rng = substream(params.seed, 4);
  auto consume_rng = substream(params.seed, 5);

  Stn stn;
  Schedule latent;
  for (int i = 0; i < params.n_events; ++i) {
    const EventId e = stn.add_event("e" + std::to_string(i));
    latent[e] = latent_rng.uniform_open();
  }

  for (int i = 0; i < params.n_temporal; ++i) {
    const auto [x, y] = draw_pair(temporal_rng, latent, params.n_events);
    const double d = latent.at(y) - latent.at(x);
    const double slack = temporal_rng.exponential(1.0 / std::sqrt(d));
    if (temporal_rng.uniform01() < 0.5)
      stn.add_constraint(x, y, d - slack, kInf);
    else
      stn.add_constraint(x, y, -kInf, d + slack);
  }

  std::vector<ResourceConstraint> resources;
  const int n_generating = split_rng.uniform_int(1, params.n_resource - 1);
  for (int i = 0; i < n_generating; ++i) {
    const auto [x, y] = draw_pair(generate_rng, latent, params.n_events);
    resources.push_back({x, y, -generate_rng.uniform_open()});
  }

  auto usage_in_window = [&](double lo, double hi) {
    // Usage is piecewise constant with breakpoints at event times, so the
    // window maximum is attained at an event time in [lo, hi).
    double worst = -kInf;
    for (const auto& [e, t] : latent) {
      (void)e;
      if (lo <= t && t < hi)
        worst = std::max(worst, usage_at(latent, resources, t));
    }
    return worst;
  };

  const int n_consuming = params.n_resource - n_generating;
  for (int i = 0; i < n_consuming; ++i) {
    bool placed = false;
    for (int tries = 0; tries < kMaxRetries && !placed; ++tries) {
      const auto [x, y] = draw_pair(consume_rng, latent, params.n_events);
      const double headroom = -usage_in_window(latent.at(x), latent.at(y));
      if (headroom <= 0.0) continue;
      const double rate = consume_rng.uniform_open() * headroom;
      if (rate == 0.0 || rate == headroom) continue;
      resources.push_back({x, y, rate});
      placed = true;
    }
    if (!placed)
      throw GenerationError("no headroom left for another consuming constraint");
  }

  GeneratedInstance out{Trn{Atn{std::move(stn)}, std::move(resources)},
                        std::move(latent)};
  return out;
}

}  // namespace trn

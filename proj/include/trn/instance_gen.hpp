#pragma once

#include <cstdint>

#include "trn/resource.hpp"

namespace trn {

enum class Density { kSparse, kDense };

// sparse: T = 2N; dense: T = N^2 / 2.
int derived_temporal_count(int n_events, Density density);

struct GenParams {
  int n_events{};       // N >= 2
  int n_temporal{};     // T >= 1
  int n_resource{};     // R >= 2
  std::uint64_t seed{};
};

// Instances are consistent by construction: every constraint is built around
// a hidden latent schedule, which therefore witnesses both temporal and
// resource feasibility.
struct GeneratedInstance {
  Trn trn;
  Schedule latent;
};

GeneratedInstance generate(const GenParams& params);

}  // namespace trn

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "trn/temporal.hpp"

using namespace trn;

namespace {

Stn chain_abc() {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  const EventId c = stn.add_event("C");
  stn.add_constraint(a, b, 1.0, 2.0);
  stn.add_constraint(b, c, 1.0, 2.0);
  return stn;
}

}  // namespace

TEST_CASE("apsp on the two-link chain") {
  const Stn stn = chain_abc();
  const DistanceMatrix m = apsp(stn);
  CHECK(m.d(0, 2) == 4.0);
  CHECK(m.d(2, 0) == -2.0);
  CHECK(m.d(0, 1) == 2.0);
  CHECK(m.d(1, 0) == -1.0);
  CHECK(m.consistent());
}

TEST_CASE("apsp leaves unreachable pairs infinite") {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  stn.add_constraint(a, b, 3.0, kInf);
  const DistanceMatrix m = apsp(stn);
  CHECK(m.d(0, 1) == kInf);
  CHECK(m.d(1, 0) == -3.0);
  CHECK(stn_consistent(stn));
}

TEST_CASE("conflicting bounds are inconsistent") {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  stn.add_constraint(a, b, 3.0, 5.0);
  stn.add_constraint(a, b, -10.0, 2.0);
  CHECK_FALSE(stn_consistent(stn));
}

TEST_CASE("epsilon knob tolerates marginal negativity") {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  stn.add_constraint(a, b, 0.0, 0.0);
  stn.add_constraint(a, b, 1e-12, 1e-12);
  CHECK_FALSE(stn_consistent(stn));
  CHECK(stn_consistent(stn, 1e-9));
}

TEST_CASE("empty and single-event networks are consistent") {
  Stn stn;
  CHECK(stn_consistent(stn));
  stn.add_event("A");
  CHECK(stn_consistent(stn));
  CHECK(extract_schedule(stn, 0).at(0) == 0.0);
}

TEST_CASE("validate rejects bad constraints") {
  Stn stn;
  stn.add_event("A");
  stn.add_constraint(0, 1, 0.0, 1.0);
  CHECK_THROWS_AS(validate(stn), MalformedNetworkError);
  stn.constraints.clear();
  stn.add_event("B");
  stn.add_constraint(0, 1, 2.0, 1.0);
  CHECK_THROWS_AS(validate(stn), MalformedNetworkError);
}

TEST_CASE("extract_schedule reproduces the worked examples") {
  Stn pair;
  const EventId a = pair.add_event("A");
  const EventId b = pair.add_event("B");
  pair.add_constraint(a, b, 3.0, 5.0);
  const Schedule s = extract_schedule(pair, a);
  CHECK(s.at(a) == 0.0);
  CHECK(s.at(b) == 3.0);

  const Schedule chain = extract_schedule(chain_abc(), 0);
  CHECK(chain.at(0) == 0.0);
  CHECK(chain.at(1) == 1.0);
  CHECK(chain.at(2) == 2.0);
}

TEST_CASE("extract_schedule handles disconnected components") {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  const EventId c = stn.add_event("C");
  const EventId d = stn.add_event("D");
  stn.add_constraint(a, b, 1.0, 1.0);
  stn.add_constraint(c, d, 2.0, 3.0);
  const Schedule s = extract_schedule(stn, a);
  CHECK(s.at(a) == 0.0);
  CHECK(check_schedule(stn, s));
}

TEST_CASE("extract_schedule refuses inconsistent networks") {
  Stn stn;
  stn.add_event("A");
  stn.add_event("B");
  stn.add_constraint(0, 1, 3.0, 5.0);
  stn.add_constraint(0, 1, -10.0, 2.0);
  CHECK_THROWS_AS(extract_schedule(stn, 0), InconsistentNetworkError);
}

TEST_CASE("check_schedule needs every constrained event") {
  Stn stn;
  stn.add_event("A");
  stn.add_event("B");
  stn.add_constraint(0, 1, 0.0, 1.0);
  CHECK_THROWS_AS(check_schedule(stn, Schedule{{0, 0.0}}), MissingEventError);
}

TEST_CASE("apsp agrees with Bellman-Ford on random networks") {
  SplitMix64 rng(20260822);
  for (int trial = 0; trial < 60; ++trial) {
    const Stn stn = test::random_stn(rng, 2 + rng.uniform_int(0, 4),
                                     rng.uniform_int(1, 10));
    if (!test::bf_consistent(stn)) {
      CHECK_FALSE(stn_consistent(stn));
      continue;
    }
    const auto oracle = test::bf_distances(stn);
    const DistanceMatrix m = apsp(stn);
    for (int i = 0; i < stn.num_events(); ++i)
      for (int j = 0; j < stn.num_events(); ++j) {
        if (oracle[i][j] == kInf)
          CHECK(m.d(i, j) == kInf);
        else
          CHECK(m.d(i, j) == doctest::Approx(oracle[i][j]).epsilon(1e-12));
      }
  }
}

TEST_CASE("consistency matches integer grid search on tiny networks") {
  SplitMix64 rng(7);
  int consistent_seen = 0, inconsistent_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Stn stn;
    const int n = 2 + rng.uniform_int(0, 1);
    for (int i = 0; i < n; ++i) stn.add_event("e" + std::to_string(i));
    const int m = rng.uniform_int(1, 4);
    for (int i = 0; i < m; ++i) {
      EventId a = rng.uniform_int(0, n - 1), b = rng.uniform_int(0, n - 1);
      while (b == a) b = rng.uniform_int(0, n - 1);
      int lo = rng.uniform_int(-3, 3), hi = rng.uniform_int(-3, 3);
      if (lo > hi) std::swap(lo, hi);
      stn.add_constraint(a, b, lo, hi);
    }
    const bool brute = test::grid_consistent(stn, -9, 9);
    CHECK(stn_consistent(stn) == brute);
    (brute ? consistent_seen : inconsistent_seen)++;
  }
  CHECK(consistent_seen > 0);
  CHECK(inconsistent_seen > 0);
}

TEST_CASE("extracted schedules satisfy their networks") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    const Stn stn = test::random_stn(rng, 2 + rng.uniform_int(0, 6),
                                     rng.uniform_int(1, 12));
    if (!stn_consistent(stn)) continue;
    const EventId ref = rng.uniform_int(0, stn.num_events() - 1);
    const Schedule s = extract_schedule(stn, ref);
    CHECK(s.at(ref) == 0.0);
    CHECK(check_schedule(stn, s));
  }
}

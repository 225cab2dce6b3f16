#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "trn/cp_solver.hpp"
#include "trn/instance_gen.hpp"

using namespace trn;

namespace {

// Consumer A..B nested in generator C..D, with strict spacing so only the
// properly nested order is time-feasible.
Trn nested_trn() {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  const EventId c = stn.add_event("C");
  const EventId d = stn.add_event("D");
  stn.add_constraint(c, a, 1.0, 2.0);
  stn.add_constraint(a, b, 1.0, 2.0);
  stn.add_constraint(b, d, 1.0, 2.0);
  return Trn{Atn{std::move(stn)},
             {{a, b, 1.0}, {c, d, -2.0}}};
}

}  // namespace

TEST_CASE("encode_as_stcs chains ranked events") {
  Ordering sigma;
  sigma.assign(7, 2);
  sigma.assign(1, 5);
  sigma.assign(4, 9);
  const auto chain = encode_as_stcs(sigma);
  REQUIRE(chain.size() == 2);
  CHECK(chain[0].from == 7);
  CHECK(chain[0].to == 1);
  CHECK(chain[0].lower == 0.0);
  CHECK(chain[0].upper == kInf);
  CHECK(chain[1].from == 1);
  CHECK(chain[1].to == 4);
  CHECK(encode_as_stcs(Ordering{}).empty());
}

TEST_CASE("prefix totals replay the worked pruning example") {
  std::map<EventId, double> deltas{{1, 4.0}, {2, -6.0}, {3, 3.0}, {4, 4.0}};
  Ordering partial;
  partial.assign(3, 2);
  partial.assign(1, 3);

  const auto totals = resource_prefix_totals(partial, deltas);
  CHECK(totals == std::vector<double>{-6.0, -3.0, 1.0});
  CHECK_FALSE(prune_resource(partial, deltas));

  deltas[1] = 2.0;
  CHECK(resource_prefix_totals(partial, deltas) ==
        std::vector<double>{-6.0, -3.0, -1.0});
  CHECK(prune_resource(partial, deltas));
}

TEST_CASE("prune_resource banks unassigned generation up front") {
  // Deltas: 0 -> +4, 1 -> -6, 2 -> +3, 3 -> +4, 4 -> -5.
  const std::vector<ResourceConstraint> rcs{
      {0, 4, 4.0}, {4, 1, 6.0}, {2, 4, 3.0}, {3, 4, 4.0}};

  CHECK(prune_resource(Ordering{}, rcs));

  Ordering one;
  one.assign(0, 1);
  // Bank -11 from unassigned 1 and 4, then +4: never above zero.
  CHECK(prune_resource(one, rcs));

  // Bank -5, then +4 +4 +3 crosses zero at rank 3.
  CHECK_FALSE(prune_resource(Ordering::from_sequence({0, 3, 2, 1}), rcs));
}

TEST_CASE("prune_time rejects chains breaking the network") {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  stn.add_constraint(b, a, 1.0, kInf);  // B strictly before A
  const Atn atn = stn;
  Ordering wrong;
  wrong.assign(a, 1);
  wrong.assign(b, 2);
  CHECK_FALSE(prune_time(wrong, atn));
  Ordering right;
  right.assign(b, 1);
  right.assign(a, 2);
  CHECK(prune_time(right, atn));
  CHECK(prune_time(Ordering{}, atn));
}

TEST_CASE("a lone consumer with forced direction is inconsistent") {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  stn.add_constraint(a, b, 1.0, kInf);
  const Trn trn{Atn{std::move(stn)}, {{a, b, 1.0}}};
  const SolveResult r = solve(trn);
  CHECK_FALSE(r.consistent);
  CHECK(r.stats.prunes_by_resource + r.stats.prunes_by_time > 0);
  CHECK_FALSE(solve_exhaustive(trn).consistent);
}

TEST_CASE("a lone consumer without direction collapses to nothing") {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  const Trn trn{Atn{std::move(stn)}, {{a, b, 1.0}}};
  const SolveResult r = solve(trn);
  CHECK(r.consistent);
  REQUIRE(r.schedule.has_value());
  // The only viable order reverses the consumer into an empty interval.
  CHECK(r.schedule->at(b) <= r.schedule->at(a));
}

TEST_CASE("nested instance solves and only the nested order survives") {
  const Trn trn = nested_trn();
  const SolveResult r = solve(trn);
  CHECK(r.consistent);
  REQUIRE(r.ordering.has_value());
  CHECK(r.ordering->sequence() == std::vector<EventId>{2, 0, 1, 3});
  REQUIRE(r.schedule.has_value());
  CHECK(check_schedule(base_stn(trn.atn), *r.schedule));
  CHECK(resource_consistent_schedule(*r.schedule, trn.resources));

  std::vector<EventId> events{0, 1, 2, 3};
  std::vector<std::vector<EventId>> passing;
  std::sort(events.begin(), events.end());
  do {
    const Ordering sigma = Ordering::from_sequence(events);
    if (resource_consistent_order(sigma, trn.resources) &&
        tc_check(trn.atn, encode_as_stcs(sigma)).consistent)
      passing.push_back(events);
  } while (std::next_permutation(events.begin(), events.end()));
  REQUIRE(passing.size() == 1);
  CHECK(passing[0] == std::vector<EventId>{2, 0, 1, 3});
}

TEST_CASE("consumption forced before generation is inconsistent") {
  Stn stn;
  const EventId a = stn.add_event("A");
  const EventId b = stn.add_event("B");
  const EventId c = stn.add_event("C");
  const EventId d = stn.add_event("D");
  stn.add_constraint(a, b, 1.0, kInf);
  stn.add_constraint(b, c, 1.0, kInf);
  const Trn trn{Atn{std::move(stn)}, {{a, b, 1.0}, {c, d, -2.0}}};
  CHECK_FALSE(solve(trn).consistent);
  CHECK_FALSE(solve_exhaustive(trn).consistent);
}

TEST_CASE("no resource constraints reduces to the temporal verdict") {
  Stn stn;
  stn.add_event("A");
  stn.add_event("B");
  stn.add_constraint(0, 1, 1.0, 2.0);
  Trn trn{Atn{stn}, {}};
  CHECK(solve(trn).consistent);
  CHECK(solve_exhaustive(trn).consistent);
  stn.add_constraint(0, 1, 3.0, 4.0);
  Trn bad{Atn{stn}, {}};
  CHECK_FALSE(solve(bad).consistent);
  CHECK_FALSE(solve_exhaustive(bad).consistent);
}

TEST_CASE("solver carries pstn risk bounds through") {
  Pstn pstn;
  const EventId start = pstn.base.add_event("start");
  const EventId work_start = pstn.base.add_event("work_start");
  const EventId work_end = pstn.base.add_event("work_end");
  const EventId boost_start = pstn.base.add_event("boost_start");
  const EventId boost_end = pstn.base.add_event("boost_end");
  const EventId recv = pstn.base.add_event("recv");
  pstn.base.add_constraint(start, work_start, 0.0, kInf);
  pstn.base.add_constraint(work_start, work_end, 5.0, 5.0);
  pstn.base.add_constraint(work_end, recv, 0.0, kInf);
  pstn.base.add_constraint(start, boost_start, 0.0, kInf);
  pstn.base.add_constraint(boost_start, boost_end, 20.0, 20.0);
  pstn.udns.push_back({start, recv, {30.0, 2.0}});
  pstn.probability = 0.95;
  const Trn trn{Atn{std::move(pstn)},
                {{work_start, work_end, 1.0}, {boost_start, boost_end, -1.0}}};
  const SolveResult r = solve(trn);
  CHECK(r.consistent);
  REQUIRE(r.risk_bound.has_value());
  CHECK(*r.risk_bound == doctest::Approx(0.05).epsilon(1e-9));
  REQUIRE(r.schedule.has_value());
  CHECK_FALSE(r.schedule->count(recv));
  CHECK(resource_consistent_schedule(*r.schedule, trn.resources));
}

TEST_CASE("deadline aborts the search") {
  GenParams params{12, 24, 2, 5};
  const Trn trn = generate(params).trn;
  SolverConfig config;
  config.deadline_s = 1e-9;
  config.exhaustive_cap = 12;
  CHECK_THROWS_AS(solve_exhaustive(trn, config), TimeoutError);
}

TEST_CASE("exhaustive cap refuses oversized instances") {
  SplitMix64 rng(3);
  const auto rcs = test::random_resources(rng, 12, 30);
  Stn stn;
  for (int i = 0; i < 12; ++i) stn.add_event("e" + std::to_string(i));
  const Trn trn{Atn{std::move(stn)}, rcs};
  REQUIRE(resource_events(trn.resources).size() > 9);
  CHECK_THROWS_AS(solve_exhaustive(trn), CapExceededError);
}

TEST_CASE("solvers agree on generated and mutated instances") {
  int consistent_seen = 0, inconsistent_seen = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenParams params{4 + static_cast<int>(seed % 4), 10,
                     2 + static_cast<int>(seed % 3), 1000 + seed};
    Trn trn = generate(params).trn;
    if (seed % 2) {
      // Inflate one consuming rate past anything the generators cover, and
      // pin its direction so reversing it cannot rescue the instance.
      for (auto& rc : trn.resources)
        if (rc.rate > 0.0) {
          rc.rate += 50.0;
          std::get<Stn>(trn.atn).add_constraint(rc.start, rc.end, 0.1, kInf);
          break;
        }
    }
    SolverConfig config;
    config.variable_order = seed % 3 ? VariableOrder::kGeneratorsFirst
                                     : VariableOrder::kByEventId;
    const SolveResult cp = solve(trn, config);
    const SolveResult ex = solve_exhaustive(trn, config);
    CHECK(cp.consistent == ex.consistent);
    CHECK(cp.stats.orders_checked <= ex.stats.orders_checked);
    (cp.consistent ? consistent_seen : inconsistent_seen)++;
    if (cp.consistent) {
      REQUIRE(cp.schedule.has_value());
      CHECK(check_schedule(base_stn(trn.atn), *cp.schedule));
      CHECK(resource_consistent_schedule(*cp.schedule, trn.resources));
    }
  }
  CHECK(consistent_seen > 0);
  CHECK(inconsistent_seen > 0);
}

TEST_CASE("search statistics stay coherent") {
  const SolveResult r = solve(nested_trn());
  CHECK(r.stats.nodes_expanded >= r.stats.orders_checked);
  CHECK(r.stats.orders_checked == 1);
  CHECK(r.stats.elapsed_s >= 0.0);
}

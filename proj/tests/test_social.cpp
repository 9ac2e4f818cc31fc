#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dtn/node.hpp"
#include "dtn/social.hpp"

using namespace dtn;

TEST_CASE("encounter set records meetings and counts") {
  EncounterSet ens;
  ens.record_meeting(3, 10.0);
  ens.record_meeting(3, 20.0);
  const EnsEntry* e = ens.find(3, 25.0);
  REQUIRE(e != nullptr);
  CHECK(e->encounter_count == 2);
  CHECK(e->last_meeting == 20.0);
}

TEST_CASE("entries expire at the retention horizon") {
  EncounterSet ens(3600.0);
  ens.record_meeting(7, 0.0);
  CHECK(ens.contains(7, 3600.0));   // boundary is inclusive
  CHECK(!ens.contains(7, 3600.1));
  CHECK(ens.peer_ids(3600.1).empty());
  // re-meeting revives the entry
  ens.record_meeting(7, 4000.0);
  CHECK(ens.contains(7, 4001.0));
}

TEST_CASE("connection duration accumulates, unknown peer throws") {
  EncounterSet ens;
  ens.record_meeting(2, 1.0);
  ens.add_connection_duration(2, 30.0);
  ens.add_connection_duration(2, 12.5);
  CHECK(ens.find(2, 2.0)->total_connection_duration == doctest::Approx(42.5));
  CHECK_THROWS_AS(ens.add_connection_duration(99, 1.0), UnknownPeer);
}

TEST_CASE("density is the joint neighbourhood over the population") {
  EncounterSet a_ens, b_ens;
  for (NodeId p : {1, 2, 3}) a_ens.record_meeting(p, 0.0);
  for (NodeId p : {3, 4}) b_ens.record_meeting(p, 0.0);
  // union {1,2,3,4} plus endpoints {0,9} -> 6 of 10
  CHECK(estimate_density(a_ens, b_ens, 0, 9, 10, 1.0) == doctest::Approx(0.6));

  SUBCASE("two isolated nodes") {
    EncounterSet empty_a, empty_b;
    CHECK(estimate_density(empty_a, empty_b, 0, 1, 10, 0.0) == doctest::Approx(0.2));
  }
  SUBCASE("clamped to one") {
    CHECK(estimate_density(a_ens, b_ens, 0, 9, 4, 1.0) == doctest::Approx(1.0));
  }
  SUBCASE("expired entries drop out of the union") {
    // only endpoints remain once everything ages past the horizon
    CHECK(estimate_density(a_ens, b_ens, 0, 9, 10, 4000.0) == doctest::Approx(0.2));
  }
}

TEST_CASE("popularity saturates at the threshold") {
  CHECK(compute_popularity(0, 50) == doctest::Approx(0.0));
  CHECK(compute_popularity(25, 50) == doctest::Approx(0.5));
  CHECK(compute_popularity(50, 50) == doctest::Approx(1.0));
  CHECK(compute_popularity(75, 50) == doctest::Approx(1.0));
}

TEST_CASE("popularity smoothing") {
  CHECK(update_popularity_ewma(0.4, 1.0, 0.5) == doctest::Approx(0.7));
  CHECK(update_popularity_ewma(0.0, 0.6, 0.5) == doctest::Approx(0.3));
  // alpha = 1 forgets history entirely
  CHECK(update_popularity_ewma(0.9, 0.1, 1.0) == doctest::Approx(0.1));
}

TEST_CASE("tie strength blends frequency, closeness and recency") {
  TieNorms norms;  // f_max 20, c_max 2000, tau 2000
  EnsEntry e;
  e.encounter_count = 10;
  e.total_connection_duration = 1000.0;
  e.last_meeting = 0.0;
  const double expected = (0.5 + 0.5 + std::exp(-1.0)) / 3.0;
  CHECK(compute_tie_strength(e, 2000.0, norms) == doctest::Approx(expected));

  SUBCASE("all components saturate") {
    e.encounter_count = 100;
    e.total_connection_duration = 99999.0;
    CHECK(compute_tie_strength(e, e.last_meeting, norms) == doctest::Approx(1.0));
  }
  SUBCASE("stale contact decays toward (f+c)/3") {
    e.last_meeting = 0.0;
    const double v = compute_tie_strength(e, 1e7, norms);
    CHECK(v == doctest::Approx((0.5 + 0.5) / 3.0).epsilon(1e-6));
  }
}

TEST_CASE("ens exchange is symmetric") {
  NodeState a, b;
  a.id = 0;
  b.id = 1;
  a.buffer = Buffer(1000);
  b.buffer = Buffer(1000);
  a.initial_energy = a.energy = 100.0;
  b.initial_energy = b.energy = 50.0;
  b.energy = 25.0;  // half battery

  // give b some history so a learns remote peers
  b.ens.record_meeting(5, 0.0);
  b.ens.record_meeting(6, 0.0);

  exchange_ens(a, b, 10.0, 10);

  CHECK(a.ens.contains(1, 10.0));
  CHECK(b.ens.contains(0, 10.0));
  CHECK(a.popularity.recent_count == 1);
  CHECK(b.popularity.recent_count == 1);
  CHECK(a.ens.find(1, 10.0)->remaining_energy == doctest::Approx(0.5));
  CHECK(b.ens.find(0, 10.0)->remaining_energy == doctest::Approx(1.0));

  // a adopted b's neighbourhood view for density purposes only
  CHECK(a.remote_peers.count(5) == 1);
  CHECK(a.remote_peers.count(6) == 1);
  CHECK(!a.ens.contains(5, 10.0));

  // union {5,6} + endpoints {0,1} = 4 of 10
  CHECK(a.density == doctest::Approx(0.4));
  CHECK(b.density == a.density);
}

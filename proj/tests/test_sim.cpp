#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "dtn/sim.hpp"
#include "dtn/sweep.hpp"

using namespace dtn;

namespace {

Scenario tiny_scenario(const std::string& router, int count = 20) {
  Scenario s = parse_scenario(
      "scenario.name = tiny\n"
      "scenario.duration = 3000\n"
      "world.width = 200\n"
      "world.height = 200\n"
      "group1.count = " +
      std::to_string(count) +
      "\n"
      "group1.buffer = 2000000\n"
      "messages.interval_min = 25\n"
      "messages.interval_max = 35\n");
  s.router = router;
  return s;
}

}  // namespace

TEST_CASE("link detection with a closed range boundary") {
  std::vector<NodeState> nodes(3);
  for (int i = 0; i < 3; ++i) {
    nodes[i].id = i;
    nodes[i].radio_range = 10.0;
  }
  nodes[0].pos = {0.0, 0.0};
  nodes[1].pos = {10.0, 0.0};  // exactly at range
  nodes[2].pos = {30.0, 0.0};

  auto events = detect_link_events(nodes, {}, 5.0);
  REQUIRE(events.size() == 1);
  CHECK(events[0].up);
  CHECK(events[0].a == 0);
  CHECK(events[0].b == 1);

  SUBCASE("asymmetric ranges use the smaller one") {
    nodes[1].radio_range = 5.0;
    CHECK(detect_link_events(nodes, {}, 5.0).empty());
  }
  SUBCASE("separations emit downs before new ups") {
    nodes[1].pos = {100.0, 0.0};
    nodes[2].pos = {1.0, 0.0};
    auto evs = detect_link_events(nodes, {{0, 1}}, 6.0);
    REQUIRE(evs.size() == 2);
    CHECK(!evs[0].up);  // (0,1) went away
    CHECK(evs[0].b == 1);
    CHECK(evs[1].up);  // (0,2) appeared
    CHECK(evs[1].b == 2);
  }
}

TEST_CASE("two adjacent nodes deliver one message at line rate") {
  // a 1 m world keeps both nodes permanently in radio range; a fixed
  // creation interval of 5000 s puts exactly one message in a 7000 s run
  Scenario s = parse_scenario(
      "scenario.name = pair\n"
      "scenario.duration = 7000\n"
      "world.width = 1\n"
      "world.height = 1\n"
      "group1.count = 2\n"
      "group1.bandwidth = 250000\n"
      "messages.interval_min = 5000\n"
      "messages.interval_max = 5000\n"
      "messages.size_min = 250000\n"
      "messages.size_max = 250000\n");

  SimReport r = run_simulation(s);
  CHECK(r.created == 1);
  CHECK(r.delivered == 1);
  CHECK(r.relayed == 1);
  CHECK(r.delivery_probability == doctest::Approx(1.0));
  REQUIRE(r.overhead_ratio.has_value());
  CHECK(*r.overhead_ratio == doctest::Approx(0.0));
  // one buffer's worth over a 250 kB/s link
  CHECK(r.avg_latency == doctest::Approx(1.0));
  CHECK(r.avg_hops == doctest::Approx(1.0));
  CHECK(r.dropped == 0);
}

TEST_CASE("no workload, no activity") {
  Scenario s = parse_scenario(
      "scenario.duration = 500\n"
      "group1.count = 5\n"
      "messages.interval_min = 100000\n"
      "messages.interval_max = 100000\n");
  SimReport r = run_simulation(s);
  CHECK(r.created == 0);
  CHECK(r.delivered == 0);
  CHECK(r.relayed == 0);
  CHECK(r.delivery_probability == 0.0);
  CHECK(!r.overhead_ratio.has_value());
  CHECK(!r.series.empty());  // samples still taken
}

TEST_CASE("identical seeds reproduce byte-identical output") {
  for (const char* router : {"epidemic", "carl"}) {
    Scenario s = tiny_scenario(router);
    SimReport r1 = run_simulation(s);
    SimReport r2 = run_simulation(s);
    CHECK(report_csv(r1) == report_csv(r2));
    CHECK(series_csv(r1) == series_csv(r2));
  }
}

TEST_CASE("reports carry the configured identity") {
  Scenario s = tiny_scenario("prophet");
  s.seed = 77;
  SimReport r = run_simulation(s);
  CHECK(r.scenario == "tiny");
  CHECK(r.router == "prophet");
  CHECK(r.seed == 77);
  CHECK(r.duration == 3000.0);
  CHECK(r.created > 0);
  // one sample per report interval within the horizon
  CHECK(r.series.size() == 10);
  CHECK(r.series.front().time == doctest::Approx(300.0));
}

TEST_CASE("replica budgets are never exceeded") {
  for (const char* router : {"snw", "carl"}) {
    Simulation sim(tiny_scenario(router));
    SimReport r = sim.run();
    CHECK(r.created > 0);
    CHECK(sim.budget_violations() == 0);
  }
}

TEST_CASE("every router runs the default-shaped scenario") {
  for (const char* router : {"epidemic", "prophet", "snw", "carl"}) {
    Scenario s = tiny_scenario(router);
    SimReport r = run_simulation(s);
    CHECK(r.created > 0);
    CHECK(r.delivered >= 0);
    CHECK(r.delivered <= r.created);
  }
}

TEST_CASE("sweep produces the cartesian product and a summary") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "dtn_sweep_test";
  fs::remove_all(dir);

  Scenario base = tiny_scenario("epidemic", 10);
  base.duration = 600.0;
  SweepResult res = run_sweep(base, SweepAxis::Duration, {"400", "600"},
                              {"epidemic", "snw"}, {1, 2}, dir.string());
  CHECK(res.runs.size() == 8);

  // summary: header + one row per (value, router)
  int lines = 0;
  for (char c : res.summary_csv) lines += c == '\n';
  CHECK(lines == 5);
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "report_tiny_400_epidemic_1.csv"));
  CHECK(fs::exists(dir / "series_tiny_600_snw_2.csv"));

  // the axis is actually applied
  CHECK(res.runs.front().duration == doctest::Approx(400.0));
  CHECK(res.runs.back().duration == doctest::Approx(600.0));
  fs::remove_all(dir);

  SUBCASE("axis parsing") {
    CHECK(parse_axis("buffer") == SweepAxis::Buffer);
    CHECK_THROWS_AS(parse_axis("bogus"), std::invalid_argument);
    Scenario b = apply_axis(base, SweepAxis::Buffer, "123456");
    CHECK(b.groups[0].buffer_capacity == 123456);
    CHECK(b.name == "tiny_123456");
    CHECK_THROWS_AS(apply_axis(base, SweepAxis::Mobility, "flying"), ValidationError);
  }
}

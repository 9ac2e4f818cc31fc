#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dtn/metrics.hpp"

using namespace dtn;

TEST_CASE("a simple two-hop trace") {
  MetricsCollector c;
  c.on_created("m1", 0.0);
  c.on_relayed();  // src -> relay
  c.on_relayed();  // relay -> dst
  c.on_delivered("m1", 0.0, 2, 40.0);

  SimReport r = c.finalize("s", "epidemic", 1, 100.0);
  CHECK(r.created == 1);
  CHECK(r.relayed == 2);
  CHECK(r.delivered == 1);
  CHECK(r.delivery_probability == doctest::Approx(1.0));
  REQUIRE(r.overhead_ratio.has_value());
  CHECK(*r.overhead_ratio == doctest::Approx(1.0));  // (2-1)/1
  CHECK(r.avg_latency == doctest::Approx(40.0));
  CHECK(r.avg_hops == doctest::Approx(2.0));
}

TEST_CASE("aggregate ratios") {
  MetricsCollector c;
  for (int i = 0; i < 10; ++i) c.on_created("m" + std::to_string(i), 0.0);
  for (int i = 0; i < 24; ++i) c.on_relayed();
  c.on_delivered("m0", 0.0, 1, 10.0);
  c.on_delivered("m1", 0.0, 3, 20.0);
  c.on_delivered("m2", 0.0, 2, 30.0);
  c.on_delivered("m3", 0.0, 2, 60.0);

  SimReport r = c.finalize("s", "carl", 2, 500.0);
  CHECK(r.delivery_probability == doctest::Approx(0.4));
  REQUIRE(r.overhead_ratio.has_value());
  CHECK(*r.overhead_ratio == doctest::Approx(5.0));  // (24-4)/4
  CHECK(r.avg_latency == doctest::Approx(30.0));
  CHECK(r.avg_hops == doctest::Approx(2.0));
}

TEST_CASE("only the first delivery of a message counts") {
  MetricsCollector c;
  c.on_created("m", 0.0);
  CHECK(!c.delivered_before("m"));
  c.on_delivered("m", 0.0, 1, 10.0);
  CHECK(c.delivered_before("m"));
  c.on_delivered("m", 0.0, 4, 99.0);  // duplicate arrival, ignored

  SimReport r = c.finalize("s", "epidemic", 1, 100.0);
  CHECK(r.delivered == 1);
  CHECK(r.avg_latency == doctest::Approx(10.0));
  CHECK(r.avg_hops == doctest::Approx(1.0));
}

TEST_CASE("drop reasons are tallied separately") {
  MetricsCollector c;
  c.on_dropped(DropReason::BufferEviction);
  c.on_dropped(DropReason::BufferEviction);
  c.on_dropped(DropReason::TtlExpiry);
  c.on_dropped(DropReason::TransferAbort);
  SimReport r = c.finalize("s", "snw", 1, 10.0);
  CHECK(r.dropped_buffer == 2);
  CHECK(r.dropped_expired == 1);
  CHECK(r.dropped_aborted == 1);
  CHECK(r.dropped == 4);
}

TEST_CASE("no deliveries leaves ratio metrics unavailable") {
  MetricsCollector c;
  c.on_created("m", 0.0);
  c.on_relayed();
  SimReport r = c.finalize("s", "epidemic", 1, 10.0);
  CHECK(r.delivery_probability == doctest::Approx(0.0));
  CHECK(!r.overhead_ratio.has_value());
  CHECK(r.avg_latency == 0.0);

  // and the CSV spells it NA
  const std::string csv = report_csv(r);
  CHECK(csv.find(",NA,") != std::string::npos);
}

TEST_CASE("report CSV layout") {
  MetricsCollector c;
  c.on_created("m", 0.0);
  c.on_delivered("m", 0.0, 1, 12.5);
  c.on_relayed();
  SimReport r = c.finalize("scen", "epidemic", 7, 100.0);
  const std::string csv = report_csv(r);

  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header ==
        "scenario,router,seed,duration,created,delivered,relayed,dropped,"
        "dropped_buffer,dropped_expired,dropped_aborted,delivery_probability,"
        "overhead_ratio,avg_latency,avg_hops");
  CHECK(row ==
        "scen,epidemic,7,100.000000,1,1,1,0,0,0,0,1.000000,0.000000,12.500000,"
        "1.000000");
}

TEST_CASE("series samples snapshot cumulative counters") {
  MetricsCollector c;
  c.on_created("m1", 0.0);
  SeriesSample s1;
  s1.time = 300.0;
  s1.buffered_bytes = 1000;
  s1.buffered_messages = 1;
  c.on_sample(s1);

  c.on_created("m2", 310.0);
  c.on_delivered("m1", 0.0, 1, 400.0);
  SeriesSample s2;
  s2.time = 600.0;
  c.on_sample(s2);

  SimReport r = c.finalize("s", "epidemic", 1, 700.0);
  REQUIRE(r.series.size() == 2);
  CHECK(r.series[0].created_so_far == 1);
  CHECK(r.series[0].delivered_so_far == 0);
  CHECK(r.series[1].created_so_far == 2);
  CHECK(r.series[1].delivered_so_far == 1);

  const std::string csv = series_csv(r);
  CHECK(csv ==
        "time,buffered_bytes,buffered_messages,created,delivered\n"
        "300.000000,1000,1,1,0\n"
        "600.000000,0,0,2,1\n");
}

TEST_CASE("report files land under the requested directory") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "dtn_metrics_test";
  fs::remove_all(dir);

  MetricsCollector c;
  c.on_created("m", 0.0);
  SimReport r = c.finalize("alpha", "snw", 3, 10.0);
  write_report_files(r, dir.string());

  CHECK(fs::exists(dir / "report_alpha_snw_3.csv"));
  CHECK(fs::exists(dir / "series_alpha_snw_3.csv"));

  std::ifstream f(dir / "report_alpha_snw_3.csv");
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == report_csv(r));
  fs::remove_all(dir);
}

#include "dtn/metrics.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dtn {

void MetricsCollector::on_created(const std::string&, Seconds) { created_ += 1; }

void MetricsCollector::on_relayed() { relayed_ += 1; }

void MetricsCollector::on_delivered(const std::string& id, Seconds created_at, int hops,
                                    Seconds now) {
  if (delivered_ids_.count(id)) return;
  delivered_ids_[id] = true;
  deliveries_[id] = {now - created_at, hops};
}

void MetricsCollector::on_dropped(DropReason reason) {
  switch (reason) {
    case DropReason::BufferEviction: dropped_buffer_ += 1; break;
    case DropReason::TtlExpiry: dropped_expired_ += 1; break;
    case DropReason::TransferAbort: dropped_aborted_ += 1; break;
  }
}

void MetricsCollector::on_sample(const SeriesSample& sample) {
  SeriesSample s = sample;
  s.created_so_far = created_;
  s.delivered_so_far = static_cast<int>(deliveries_.size());
  series_.push_back(s);
}

SimReport MetricsCollector::finalize(const std::string& scenario,
                                     const std::string& router, std::uint64_t seed,
                                     Seconds now) const {
  SimReport r;
  r.scenario = scenario;
  r.router = router;
  r.seed = seed;
  r.duration = now;
  r.created = created_;
  r.delivered = static_cast<int>(deliveries_.size());
  r.relayed = relayed_;
  r.dropped_buffer = dropped_buffer_;
  r.dropped_expired = dropped_expired_;
  r.dropped_aborted = dropped_aborted_;
  r.dropped = dropped_buffer_ + dropped_expired_ + dropped_aborted_;

  r.delivery_probability =
      r.created > 0 ? static_cast<double>(r.delivered) / r.created : 0.0;
  if (r.delivered > 0) {
    r.overhead_ratio = static_cast<double>(r.relayed - r.delivered) / r.delivered;
    double lat = 0.0, hops = 0.0;
    for (const auto& [id, d] : deliveries_) {
      lat += d.first;
      hops += d.second;
    }
    r.avg_latency = lat / r.delivered;
    r.avg_hops = hops / r.delivered;
  }
  r.series = series_;
  return r;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string report_csv(const SimReport& r) {
  std::string out =
      "scenario,router,seed,duration,created,delivered,relayed,dropped,"
      "dropped_buffer,dropped_expired,dropped_aborted,delivery_probability,"
      "overhead_ratio,avg_latency,avg_hops\n";
  out += r.scenario + "," + r.router + "," + std::to_string(r.seed) + "," +
         fmt(r.duration) + "," + std::to_string(r.created) + "," +
         std::to_string(r.delivered) + "," + std::to_string(r.relayed) + "," +
         std::to_string(r.dropped) + "," + std::to_string(r.dropped_buffer) + "," +
         std::to_string(r.dropped_expired) + "," + std::to_string(r.dropped_aborted) +
         "," + fmt(r.delivery_probability) + "," +
         (r.overhead_ratio ? fmt(*r.overhead_ratio) : std::string("NA")) + "," +
         fmt(r.avg_latency) + "," + fmt(r.avg_hops) + "\n";
  return out;
}

std::string series_csv(const SimReport& r) {
  std::string out = "time,buffered_bytes,buffered_messages,created,delivered\n";
  for (const SeriesSample& s : r.series) {
    out += fmt(s.time) + "," + std::to_string(s.buffered_bytes) + "," +
           std::to_string(s.buffered_messages) + "," +
           std::to_string(s.created_so_far) + "," +
           std::to_string(s.delivered_so_far) + "\n";
  }
  return out;
}

void write_report_files(const SimReport& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string stem =
      r.scenario + "_" + r.router + "_" + std::to_string(r.seed);
  {
    std::ofstream f(fs::path(out_dir) / ("report_" + stem + ".csv"),
                    std::ios::binary);
    if (!f) throw std::runtime_error("cannot write report CSV in " + out_dir);
    f << report_csv(r);
  }
  {
    std::ofstream f(fs::path(out_dir) / ("series_" + stem + ".csv"), std::ios::binary);
    if (!f) throw std::runtime_error("cannot write series CSV in " + out_dir);
    f << series_csv(r);
  }
}

}  // namespace dtn

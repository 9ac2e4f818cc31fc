#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtn/social.hpp"

namespace dtn {

enum class DropReason { BufferEviction, TtlExpiry, TransferAbort };

struct SeriesSample {
  Seconds time = 0.0;
  std::uint64_t buffered_bytes = 0;
  int buffered_messages = 0;
  int created_so_far = 0;
  int delivered_so_far = 0;
};

struct SimReport {
  std::string scenario;
  std::string router;
  std::uint64_t seed = 0;
  Seconds duration = 0.0;

  int created = 0;
  int delivered = 0;
  int relayed = 0;  // completed transfers, final hop included
  int dropped = 0;
  int dropped_buffer = 0;
  int dropped_expired = 0;
  int dropped_aborted = 0;

  double delivery_probability = 0.0;
  std::optional<double> overhead_ratio;  // unavailable when delivered == 0
  double avg_latency = 0.0;
  double avg_hops = 0.0;

  std::vector<SeriesSample> series;
};

class MetricsCollector {
 public:
  void on_created(const std::string& id, Seconds now);
  void on_relayed();
  // First delivery only; duplicates must be filtered by the caller.
  void on_delivered(const std::string& id, Seconds created_at, int hops, Seconds now);
  void on_dropped(DropReason reason);
  void on_sample(const SeriesSample& sample);

  bool delivered_before(const std::string& id) const {
    return delivered_ids_.count(id) > 0;
  }

  SimReport finalize(const std::string& scenario, const std::string& router,
                     std::uint64_t seed, Seconds now) const;

 private:
  int created_ = 0;
  int relayed_ = 0;
  int dropped_buffer_ = 0;
  int dropped_expired_ = 0;
  int dropped_aborted_ = 0;
  std::map<std::string, std::pair<Seconds, int>> deliveries_;  // id -> (latency, hops)
  std::map<std::string, bool> delivered_ids_;
  std::vector<SeriesSample> series_;
};

// CSV emission. Values use fixed 6-digit formatting; unavailable
// overhead is written as NA.
std::string report_csv(const SimReport& r);
std::string series_csv(const SimReport& r);

void write_report_files(const SimReport& r, const std::string& out_dir);

}  // namespace dtn

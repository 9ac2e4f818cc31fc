#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

namespace dtn {

using NodeId = int;
using Seconds = double;

struct EnsEntry {
  Seconds last_meeting = 0.0;
  double remaining_energy = 1.0;       // fraction
  std::uint64_t available_buffer = 0;  // bytes
  Seconds total_connection_duration = 0.0;
  int encounter_count = 0;
};

// Encountered Node Set: one entry per peer met within the retention
// window. Entries older than the horizon are ignored at read time.
class EncounterSet {
 public:
  explicit EncounterSet(Seconds horizon = 3600.0) : horizon_(horizon) {}

  // Records a meeting with `peer` at `now`, creating the entry on first
  // contact.
  EnsEntry& record_meeting(NodeId peer, Seconds now);

  void add_connection_duration(NodeId peer, Seconds session_length);

  const EnsEntry* find(NodeId peer, Seconds now) const;
  bool contains(NodeId peer, Seconds now) const { return find(peer, now) != nullptr; }

  // Peer ids with a live (non-expired) entry.
  std::set<NodeId> peer_ids(Seconds now) const;

  const std::map<NodeId, EnsEntry>& raw_entries() const { return entries_; }
  Seconds horizon() const { return horizon_; }

 private:
  std::map<NodeId, EnsEntry> entries_;
  Seconds horizon_;
};

struct UnknownPeer : std::runtime_error {
  explicit UnknownPeer(NodeId peer)
      : std::runtime_error("no ENS entry for peer " + std::to_string(peer)) {}
};

struct PopularityState {
  double value = 0.0;      // EWMA-smoothed, in [0,1]
  int recent_count = 0;    // encounters in the current window
  Seconds window_start = 0.0;
};

struct TieNorms {
  double frequency_max = 20.0;     // encounter count that saturates f
  Seconds closeness_max = 2000.0;  // connection duration that saturates c
  Seconds recency_tau = 2000.0;    // e-folding time of the recency term
};

// |ENS_a ∪ ENS_b ∪ {a,b}| / n_total, clamped to [0,1].
double estimate_density(const EncounterSet& ens_a, const EncounterSet& ens_b,
                        NodeId a, NodeId b, int n_total, Seconds now);

// min(recent_count / threshold, 1)
double compute_popularity(int recent_count, int threshold);

// (1-alpha)*prev + alpha*current
double update_popularity_ewma(double prev, double current, double alpha);

// Equal-weight mean of normalized frequency, closeness and exponential
// recency.
double compute_tie_strength(const EnsEntry& entry, Seconds now, const TieNorms& norm);

}  // namespace dtn

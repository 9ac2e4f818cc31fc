#include "dtn/social.hpp"

#include <algorithm>
#include <cmath>

namespace dtn {

EnsEntry& EncounterSet::record_meeting(NodeId peer, Seconds now) {
  EnsEntry& e = entries_[peer];
  e.last_meeting = now;
  e.encounter_count += 1;
  return e;
}

void EncounterSet::add_connection_duration(NodeId peer, Seconds session_length) {
  auto it = entries_.find(peer);
  if (it == entries_.end()) throw UnknownPeer(peer);
  it->second.total_connection_duration += session_length;
}

const EnsEntry* EncounterSet::find(NodeId peer, Seconds now) const {
  auto it = entries_.find(peer);
  if (it == entries_.end()) return nullptr;
  if (now - it->second.last_meeting > horizon_) return nullptr;
  return &it->second;
}

std::set<NodeId> EncounterSet::peer_ids(Seconds now) const {
  std::set<NodeId> ids;
  for (const auto& [peer, e] : entries_) {
    if (now - e.last_meeting <= horizon_) ids.insert(peer);
  }
  return ids;
}

double estimate_density(const EncounterSet& ens_a, const EncounterSet& ens_b,
                        NodeId a, NodeId b, int n_total, Seconds now) {
  std::set<NodeId> joint = ens_a.peer_ids(now);
  joint.merge(ens_b.peer_ids(now));
  joint.insert(a);
  joint.insert(b);
  const double d = static_cast<double>(joint.size()) / n_total;
  return std::clamp(d, 0.0, 1.0);
}

double compute_popularity(int recent_count, int threshold) {
  return std::min(static_cast<double>(recent_count) / threshold, 1.0);
}

double update_popularity_ewma(double prev, double current, double alpha) {
  return (1.0 - alpha) * prev + alpha * current;
}

double compute_tie_strength(const EnsEntry& entry, Seconds now, const TieNorms& norm) {
  const double f = std::min(entry.encounter_count / norm.frequency_max, 1.0);
  const double c = std::min(entry.total_connection_duration / norm.closeness_max, 1.0);
  const double r = std::exp(-(now - entry.last_meeting) / norm.recency_tau);
  return (f + c + r) / 3.0;
}

}  // namespace dtn

#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>

#include "dtn/social.hpp"

namespace dtn {

struct QParams {
  double alpha = 0.3;
  double gamma = 0.9;
  double beta = 0.98;
  Seconds aging_unit = 30.0;
};

struct QCell {
  double value = 0.0;
  Seconds last_connection_change = 0.0;
};

// Per-node routing table: destination -> (next hop -> QCell).
// Aging (value * beta^k) is applied lazily at read time.
class QTable {
 public:
  explicit QTable(NodeId owner = -1) : owner_(owner) {}

  NodeId owner() const { return owner_; }

  // Eq.-style exponential update toward R + gamma * fuzz_topp * max_q_m.
  // Missing cells start at zero.
  void update_on_connect(NodeId dest, NodeId next_hop, double fuzz_topp,
                         double max_q_m, int reward, Seconds now, const QParams& p);

  // Aged value for one cell; 0 if absent.
  double aged_value(NodeId dest, NodeId next_hop, Seconds now, const QParams& p) const;

  // Best aged value toward dest over all known next hops; 0 if none.
  double best_value(NodeId dest, Seconds now, const QParams& p) const;

  // Best candidate among currently connected peers, ties broken by
  // lowest node id. Applies lazy aging in place to the consulted cells.
  std::optional<std::pair<NodeId, double>> best_next_hop(NodeId dest,
                                                         const std::set<NodeId>& candidates,
                                                         Seconds now, const QParams& p);

  const std::map<NodeId, std::map<NodeId, QCell>>& entries() const { return entries_; }

  friend void merge_q_tables(QTable& sender, QTable& receiver, Seconds now,
                             const QParams& p);

 private:
  // Writes back the aged value and stamps the cell.
  static void age_in_place(QCell& cell, Seconds now, const QParams& p);

  NodeId owner_;
  std::map<NodeId, std::map<NodeId, QCell>> entries_;
};

// Applies Eq.-style aging to one cell: value *= beta^k with
// k = (now - last_connection_change) / aging_unit.
QCell q_decay(QCell cell, Seconds now, const QParams& p);

// 1 if the candidate is the destination or has it in its encounter set.
int compute_reward(NodeId candidate, NodeId dest, const EncounterSet& candidate_ens,
                   Seconds now);

// Post-transfer table reconciliation: each destination known to either
// side ends up with the larger best value on both sides; the next hop
// points at the node owning the larger value.
void merge_q_tables(QTable& sender, QTable& receiver, Seconds now, const QParams& p);

}  // namespace dtn

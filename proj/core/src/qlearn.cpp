#include "dtn/qlearn.hpp"

#include <algorithm>
#include <cmath>

namespace dtn {

void QTable::age_in_place(QCell& cell, Seconds now, const QParams& p) {
  cell = q_decay(cell, now, p);
}

QCell q_decay(QCell cell, Seconds now, const QParams& p) {
  const double k = (now - cell.last_connection_change) / p.aging_unit;
  if (k > 0.0 && cell.value > 0.0) {
    cell.value *= std::pow(p.beta, k);
  }
  cell.last_connection_change = now;
  return cell;
}

int compute_reward(NodeId candidate, NodeId dest, const EncounterSet& candidate_ens,
                   Seconds now) {
  if (candidate == dest) return 1;
  return candidate_ens.contains(dest, now) ? 1 : 0;
}

void QTable::update_on_connect(NodeId dest, NodeId next_hop, double fuzz_topp,
                               double max_q_m, int reward, Seconds now,
                               const QParams& p) {
  if (dest == owner_) return;
  QCell& cell = entries_[dest][next_hop];
  age_in_place(cell, now, p);
  const double target = reward + p.gamma * fuzz_topp * max_q_m;
  cell.value = p.alpha * target + (1.0 - p.alpha) * cell.value;
  cell.value = std::clamp(cell.value, 0.0, 1.0);
  cell.last_connection_change = now;
}

double QTable::aged_value(NodeId dest, NodeId next_hop, Seconds now,
                          const QParams& p) const {
  auto row = entries_.find(dest);
  if (row == entries_.end()) return 0.0;
  auto it = row->second.find(next_hop);
  if (it == row->second.end()) return 0.0;
  return q_decay(it->second, now, p).value;
}

double QTable::best_value(NodeId dest, Seconds now, const QParams& p) const {
  auto row = entries_.find(dest);
  if (row == entries_.end()) return 0.0;
  double best = 0.0;
  for (const auto& [hop, cell] : row->second) {
    best = std::max(best, q_decay(cell, now, p).value);
  }
  return best;
}

std::optional<std::pair<NodeId, double>> QTable::best_next_hop(
    NodeId dest, const std::set<NodeId>& candidates, Seconds now, const QParams& p) {
  auto row = entries_.find(dest);
  if (row == entries_.end()) return std::nullopt;
  std::optional<std::pair<NodeId, double>> best;
  for (NodeId c : candidates) {
    auto it = row->second.find(c);
    if (it == row->second.end()) continue;
    age_in_place(it->second, now, p);
    if (!best || it->second.value > best->second) {
      best = {c, it->second.value};
    }
  }
  return best;
}

void merge_q_tables(QTable& sender, QTable& receiver, Seconds now, const QParams& p) {
  std::set<NodeId> dests;
  for (const auto& [d, _] : sender.entries_) dests.insert(d);
  for (const auto& [d, _] : receiver.entries_) dests.insert(d);

  for (NodeId d : dests) {
    const double sv = sender.best_value(d, now, p);
    const double rv = receiver.best_value(d, now, p);
    if (rv > sv && d != sender.owner_) {
      sender.entries_[d][receiver.owner_] = {rv, now};
    } else if (sv > rv && d != receiver.owner_) {
      receiver.entries_[d][sender.owner_] = {sv, now};
    }
  }
}

}  // namespace dtn

#pragma once

#include <map>
#include <set>
#include <string>

#include "dtn/buffer.hpp"
#include "dtn/qlearn.hpp"
#include "dtn/social.hpp"

namespace dtn {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// One mobile node. Mobility bookkeeping lives in the engine; everything
// the routers consult is here.
struct NodeState {
  NodeId id = -1;
  int group = 0;
  Vec2 pos;

  double radio_range = 30.0;    // m
  double bandwidth = 250'000;   // bytes/s
  double initial_energy = 1.0;
  double energy = 1.0;

  Buffer buffer;
  EncounterSet ens;
  // Peer ids learned from partners' ENS during exchange; used for
  // density estimation only, never merged into own encounter history.
  std::set<NodeId> remote_peers;
  double density = 0.0;

  PopularityState popularity;
  QTable qtable;

  // PRoPHET delivery predictabilities.
  std::map<NodeId, double> prophet_p;
  Seconds prophet_last_aged = 0.0;

  // Ids of messages known to have reached their destination.
  std::set<std::string> acked_ids;

  double battery_fraction() const {
    return initial_energy > 0.0 ? energy / initial_energy : 0.0;
  }
  double buffer_free_fraction() const {
    return buffer.capacity() > 0
               ? static_cast<double>(buffer.free_bytes()) / buffer.capacity()
               : 0.0;
  }
  bool forwarding_enabled() const { return energy > 0.0; }
};

// Both sides record the meeting and adopt each other's peer-id view for
// density estimation; each node's cached density is refreshed.
void exchange_ens(NodeState& a, NodeState& b, Seconds now, int n_total);

}  // namespace dtn

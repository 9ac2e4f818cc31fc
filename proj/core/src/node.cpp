#include "dtn/node.hpp"

namespace dtn {

void exchange_ens(NodeState& a, NodeState& b, Seconds now, int n_total) {
  auto record = [now](NodeState& self, const NodeState& peer) {
    EnsEntry& e = self.ens.record_meeting(peer.id, now);
    e.remaining_energy = peer.battery_fraction();
    e.available_buffer = peer.buffer.free_bytes();
    self.popularity.recent_count += 1;
  };
  record(a, b);
  record(b, a);

  // Remote entries feed density only; they are kept apart from the
  // node's own encounter history.
  for (NodeId p : b.ens.peer_ids(now)) {
    if (p != a.id) a.remote_peers.insert(p);
  }
  for (NodeId p : a.ens.peer_ids(now)) {
    if (p != b.id) b.remote_peers.insert(p);
  }

  const double d = estimate_density(a.ens, b.ens, a.id, b.id, n_total, now);
  a.density = d;
  b.density = d;
}

}  // namespace dtn

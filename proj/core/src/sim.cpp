#include "dtn/sim.hpp"

#include <algorithm>
#include <cmath>

namespace dtn {

std::vector<LinkEvent> detect_link_events(const std::vector<NodeState>& nodes,
                                          const std::set<std::pair<NodeId, NodeId>>& live,
                                          Seconds now) {
  auto in_range = [&](NodeId a, NodeId b) {
    const double dx = nodes[a].pos.x - nodes[b].pos.x;
    const double dy = nodes[a].pos.y - nodes[b].pos.y;
    const double range = std::min(nodes[a].radio_range, nodes[b].radio_range);
    return dx * dx + dy * dy <= range * range;
  };

  std::vector<LinkEvent> events;
  for (const auto& [a, b] : live) {
    if (!in_range(a, b)) events.push_back({false, a, b, now});
  }
  const NodeId n = static_cast<NodeId>(nodes.size());
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (!live.count({a, b}) && in_range(a, b)) events.push_back({true, a, b, now});
    }
  }
  return events;  // downs first (live set iterates sorted), then ups sorted
}

Simulation::Simulation(Scenario scenario)
    : sc_(std::move(scenario)), workload_rng_(0) {
  validate_scenario(sc_);
  n_total_ = sc_.total_nodes();
  router_ = make_router(sc_.router, sc_.router_params, flcs_);
  carl_ = dynamic_cast<CarlDtnRouter*>(router_.get());

  clock_.end = sc_.duration;

  SeededRng master(sc_.seed);
  workload_rng_ = master.fork(0x10000000);

  models_.reserve(sc_.groups.size());
  for (const GroupSpec& g : sc_.groups) {
    models_.push_back(mobility_model_for(sc_, g));
  }

  NodeId id = 0;
  for (std::size_t gi = 0; gi < sc_.groups.size(); ++gi) {
    const GroupSpec& g = sc_.groups[gi];
    for (int k = 0; k < g.count; ++k, ++id) {
      NodeState n;
      n.id = id;
      n.group = static_cast<int>(gi);
      n.radio_range = g.radio_range;
      n.bandwidth = g.bandwidth;
      n.initial_energy = g.initial_energy;
      n.energy = g.initial_energy;
      n.buffer = Buffer(g.buffer_capacity);
      n.ens = EncounterSet(sc_.social.ens_horizon);
      n.qtable = QTable(id);
      nodes_.push_back(std::move(n));
      node_model_.push_back(static_cast<int>(gi));
      node_rngs_.push_back(master.fork(static_cast<std::uint64_t>(id) + 1));

      MobilityState ms;
      init_position(nodes_.back().pos, ms, models_[gi], node_rngs_.back());
      mobility_.push_back(std::move(ms));
    }
  }

  schedule(0.0, EventKind::LinkCheck);
  schedule(sc_.link_check_interval, EventKind::MovementTick);
  schedule(workload_rng_.uniform(sc_.messages.interval_min, sc_.messages.interval_max),
           EventKind::MessageCreate);
  schedule(sc_.ttl_sweep_interval, EventKind::TtlSweep);
  schedule(sc_.report_interval, EventKind::ReportSample);
}

void Simulation::schedule(Seconds time, EventKind kind, NodeId a, NodeId b,
                          std::uint64_t session) {
  queue_.push(Event{time, kind, seq_++, a, b, session});
}

SimReport Simulation::run() {
  while (!queue_.empty() && queue_.top().time <= clock_.end) {
    const Event ev = queue_.top();
    queue_.pop();
    clock_.now = ev.time;
    process(ev);
  }
  clock_.now = clock_.end;
  return metrics_.finalize(sc_.name, sc_.router, sc_.seed, clock_.end);
}

void Simulation::process(const Event& ev) {
  switch (ev.kind) {
    case EventKind::MovementTick: handle_movement(ev.time); break;
    case EventKind::LinkCheck: handle_link_check(ev.time); break;
    case EventKind::TransferComplete: handle_transfer_complete(ev); break;
    case EventKind::MessageCreate: handle_message_create(ev.time); break;
    case EventKind::TtlSweep: handle_ttl_sweep(ev.time); break;
    case EventKind::ReportSample: handle_report_sample(ev.time); break;
  }
}

void Simulation::handle_movement(Seconds now) {
  const Seconds dt = now - last_move_;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    step_movement(nodes_[i].pos, mobility_[i], dt, models_[node_model_[i]],
                  node_rngs_[i]);
    nodes_[i].energy =
        std::max(0.0, nodes_[i].energy - sc_.energy_drain_idle * dt);
  }
  last_move_ = now;
  roll_popularity_windows(now);
  // Link detection runs at the same timestamp, after movement.
  schedule(now, EventKind::LinkCheck);
  schedule(now + sc_.link_check_interval, EventKind::MovementTick);
}

void Simulation::roll_popularity_windows(Seconds now) {
  for (NodeState& n : nodes_) {
    while (now - n.popularity.window_start >= sc_.social.popularity_window) {
      const double current =
          compute_popularity(n.popularity.recent_count, sc_.social.popularity_threshold);
      n.popularity.value =
          update_popularity_ewma(n.popularity.value, current, sc_.social.popularity_alpha);
      n.popularity.recent_count = 0;
      n.popularity.window_start += sc_.social.popularity_window;
    }
  }
}

void Simulation::handle_link_check(Seconds now) {
  std::set<std::pair<NodeId, NodeId>> live;
  for (const auto& [key, _] : links_) live.insert(key);
  for (const LinkEvent& ev : detect_link_events(nodes_, live, now)) {
    if (ev.up) handle_link_up(ev.a, ev.b, now);
    else handle_link_down(ev.a, ev.b, now);
  }
}

void Simulation::handle_link_down(NodeId a, NodeId b, Seconds now) {
  auto it = links_.find({a, b});
  if (it == links_.end()) return;
  const Seconds session_length = now - it->second.established;
  nodes_[a].ens.add_connection_duration(b, session_length);
  nodes_[b].ens.add_connection_duration(a, session_length);
  if (it->second.inflight) {
    // Atomic transfers: the interrupted copy is discarded entirely.
    metrics_.on_dropped(DropReason::TransferAbort);
  }
  links_.erase(it);
}

void Simulation::handle_link_up(NodeId a, NodeId b, Seconds now) {
  NodeState& na = nodes_[a];
  NodeState& nb = nodes_[b];

  LiveLink link;
  link.established = now;
  link.bandwidth = std::min(na.bandwidth, nb.bandwidth);
  link.session = next_session_++;

  exchange_ens(na, nb, now, n_total_);

  // Delivery acknowledgments piggyback on link establishment; delivered
  // copies are purged network-wide.
  std::set<std::string> acks = na.acked_ids;
  acks.insert(nb.acked_ids.begin(), nb.acked_ids.end());
  na.acked_ids = acks;
  nb.acked_ids = acks;
  for (NodeState* n : {&na, &nb}) {
    auto purged = n->buffer.remove_if(
        [&](const Message& m) { return acks.count(m.id) > 0; });
    for (const Message& m : purged) budget_remove(m.id, m.copies);
  }

  router_->on_contact_start(na, nb, now);
  if (carl_) {
    carl_->q_update_for_contact(na, nb, n_total_, now);
    carl_->q_update_for_contact(nb, na, n_total_, now);
  }

  auto [it, inserted] = links_.emplace(std::make_pair(a, b), std::move(link));
  enqueue_decisions(it->second, a, router_->decide(na, nb, now));
  enqueue_decisions(it->second, b, router_->decide(nb, na, now));
  start_next_transfer(it->first, it->second);
}

void Simulation::enqueue_decisions(LiveLink& link, NodeId sender,
                                   const std::vector<RouterDecision>& decisions) {
  for (const RouterDecision& d : decisions) {
    link.queue.push_back({sender, d.msg_id, d.copies_to_send, d.sender_keeps});
  }
}

void Simulation::start_next_transfer(const std::pair<NodeId, NodeId>& key,
                                     LiveLink& link) {
  while (!link.inflight && !link.queue.empty()) {
    PendingSend next = link.queue.front();
    link.queue.pop_front();
    NodeState& sender = nodes_[next.sender];
    const NodeId receiver_id = next.sender == key.first ? key.second : key.first;
    NodeState& receiver = nodes_[receiver_id];
    const Message* m = sender.buffer.find(next.msg_id);
    if (!m || m->expired(clock_.now)) continue;
    if (receiver.buffer.holds(next.msg_id) || receiver.acked_ids.count(next.msg_id))
      continue;

    InFlight fl;
    static_cast<PendingSend&>(fl) = next;
    const Seconds duration =
        link.bandwidth > 0.0 ? static_cast<double>(m->size) / link.bandwidth : 0.0;
    fl.done_at = clock_.now + duration;
    link.inflight = fl;
    schedule(fl.done_at, EventKind::TransferComplete, key.first, key.second,
             link.session);
  }
}

void Simulation::handle_transfer_complete(const Event& ev) {
  auto it = links_.find({ev.a, ev.b});
  if (it == links_.end() || it->second.session != ev.session) return;  // stale
  LiveLink& link = it->second;
  if (!link.inflight) return;
  const InFlight fl = *link.inflight;
  link.inflight.reset();

  NodeState& sender = nodes_[fl.sender];
  const NodeId receiver_id = fl.sender == ev.a ? ev.b : ev.a;
  NodeState& receiver = nodes_[receiver_id];
  Message* m = sender.buffer.find(fl.msg_id);
  if (m && !receiver.acked_ids.count(fl.msg_id)) {
    const Message snapshot = *m;
    bool completed = false;
    bool first_delivery = false;

    if (receiver.id == m->dst) {
      first_delivery = !metrics_.delivered_before(m->id);
      metrics_.on_delivered(m->id, m->created_at, m->hop_count + 1, clock_.now);
      receiver.acked_ids.insert(m->id);
      completed = true;
    } else if (!receiver.buffer.holds(m->id)) {
      Message copy = *m;
      copy.hop_count += 1;
      copy.copies = router_->budgeted() ? fl.copies : 1;
      copy.priority = flcs_.message_priority(copy, clock_.now, sc_.router_params.hop_cap);
      const std::string incoming_id = copy.id;
      auto res = receiver.buffer.admit(
          std::move(copy), router_->eviction_policy(),
          [&](const Message& x) { return receiver.acked_ids.count(x.id) > 0; },
          [&](const Message& x) {
            return flcs_.message_priority(x, clock_.now, sc_.router_params.hop_cap);
          });
      if (res.admitted) {
        drop_messages(res.evicted, DropReason::BufferEviction);
        budget_add(incoming_id, router_->budgeted() ? fl.copies : 1);
        completed = true;
      }
    }

    if (completed) {
      metrics_.on_relayed();
      sender.energy = std::max(0.0, sender.energy - sc_.energy_drain_transfer);
      receiver.energy = std::max(0.0, receiver.energy - sc_.energy_drain_transfer);

      // Sender-side budget accounting.
      if (!fl.sender_keeps) {
        budget_remove(m->id, m->copies);
        sender.buffer.erase(fl.msg_id);
        m = nullptr;
      } else if (router_->budgeted()) {
        budget_remove(m->id, fl.copies);
        m->copies = std::max(1, m->copies - fl.copies);
      }
      budget_check(snapshot.id);
      router_->after_transfer(sender, receiver, snapshot, first_delivery, clock_.now);
    }
  }

  start_next_transfer(it->first, link);
}

void Simulation::handle_message_create(Seconds now) {
  // src/dst drawn uniformly, dst distinct from src
  const NodeId src = static_cast<NodeId>(workload_rng_.below(n_total_));
  NodeId dst = static_cast<NodeId>(workload_rng_.below(n_total_ - 1));
  if (dst >= src) dst += 1;

  Message m;
  m.id = "m" + std::to_string(next_msg_++);
  m.src = src;
  m.dst = dst;
  m.size = sc_.messages.size_min +
           workload_rng_.below(sc_.messages.size_max - sc_.messages.size_min + 1);
  m.created_at = now;
  m.initial_ttl = sc_.message_ttl_seconds();
  m.copies = router_->initial_copies(nodes_[src]);
  m.priority = flcs_.message_priority(m, now, sc_.router_params.hop_cap);

  metrics_.on_created(m.id, now);

  NodeState& node = nodes_[src];
  const std::string id = m.id;
  const int copies = m.copies;
  auto res = node.buffer.admit(
      std::move(m), router_->eviction_policy(),
      [&](const Message& x) { return node.acked_ids.count(x.id) > 0; },
      [&](const Message& x) {
        return flcs_.message_priority(x, now, sc_.router_params.hop_cap);
      });
  if (res.admitted) {
    drop_messages(res.evicted, DropReason::BufferEviction);
    budget_[id] = {0, copies};
    budget_add(id, copies);

    // Offer the new message on any live contact of the source.
    for (auto& [key, link] : links_) {
      if (key.first != src && key.second != src) continue;
      const NodeId peer = key.first == src ? key.second : key.first;
      const Message* stored = node.buffer.find(id);
      if (!stored) break;
      if (auto d = router_->decide_one(node, nodes_[peer], *stored, now)) {
        enqueue_decisions(link, src, {*d});
        start_next_transfer(key, link);
      }
    }
  } else {
    metrics_.on_dropped(DropReason::BufferEviction);
  }

  schedule(now + workload_rng_.uniform(sc_.messages.interval_min,
                                       sc_.messages.interval_max),
           EventKind::MessageCreate);
}

void Simulation::handle_ttl_sweep(Seconds now) {
  for (NodeState& n : nodes_) {
    auto expired = n.buffer.remove_if([&](const Message& m) { return m.expired(now); });
    drop_messages(expired, DropReason::TtlExpiry);
  }
  schedule(now + sc_.ttl_sweep_interval, EventKind::TtlSweep);
}

void Simulation::handle_report_sample(Seconds now) {
  SeriesSample s;
  s.time = now;
  for (const NodeState& n : nodes_) {
    s.buffered_bytes += n.buffer.occupancy();
    s.buffered_messages += static_cast<int>(n.buffer.messages().size());
  }
  metrics_.on_sample(s);
  schedule(now + sc_.report_interval, EventKind::ReportSample);
}

void Simulation::drop_messages(const std::vector<Message>& msgs, DropReason reason) {
  for (const Message& m : msgs) {
    metrics_.on_dropped(reason);
    budget_remove(m.id, m.copies);
  }
}

void Simulation::budget_add(const std::string& id, int copies) {
  if (!router_->budgeted()) return;
  // No check here: mid-transfer the receiver is credited before the
  // sender is debited. Balance is audited once the transaction settles.
  budget_[id].first += copies;
}

void Simulation::budget_remove(const std::string& id, int copies) {
  if (!router_->budgeted()) return;
  auto it = budget_.find(id);
  if (it == budget_.end()) return;
  it->second.first -= copies;
}

void Simulation::budget_check(const std::string& id) {
  if (!router_->budgeted()) return;
  auto it = budget_.find(id);
  if (it != budget_.end() && it->second.first > it->second.second) {
    budget_violations_ += 1;
  }
}

SimReport run_simulation(const Scenario& scenario) {
  Simulation sim(scenario);
  return sim.run();
}

}  // namespace dtn

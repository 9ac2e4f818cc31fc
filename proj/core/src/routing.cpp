#include "dtn/routing.hpp"

#include <algorithm>
#include <cmath>

namespace dtn {

int initial_copy_budget(double density, int l_max) {
  const int l = static_cast<int>(std::ceil(density * l_max));
  return std::clamp(l, 1, l_max);
}

double FlcSet::message_priority(const Message& m, Seconds now, int hop_cap) {
  const double ttl_frac =
      m.initial_ttl > 0.0 ? std::clamp(m.ttl_remaining(now) / m.initial_ttl, 0.0, 1.0)
                          : 0.0;
  const double hops = std::clamp(static_cast<double>(m.hop_count) / hop_cap, 0.0, 1.0);
  return flc3.eval(ttl_frac, hops);
}

double FlcSet::social_value(const NodeState& node, NodeId dest, Seconds now,
                            const RouterParams& p) {
  const EnsEntry* e = node.ens.find(dest, now);
  const double tie = e ? compute_tie_strength(*e, now, p.tie) : 0.0;
  return flc2.eval(node.popularity.value, tie);
}

double FlcSet::transfer_opportunity(const NodeState& node, NodeId dest, Seconds now,
                                    const RouterParams& p) {
  const double ability = flc1.eval(node.buffer_free_fraction(), node.battery_fraction());
  const double social = social_value(node, dest, now, p);
  return flc4.eval(ability, social);
}

namespace {

bool peer_wants(const NodeState& b, const Message& m) {
  return !b.buffer.holds(m.id) && !b.acked_ids.count(m.id);
}

}  // namespace

// ---------------------------------------------------------------- epidemic

std::optional<RouterDecision> EpidemicRouter::decide_one(NodeState& a, NodeState& b,
                                                         const Message& m, Seconds now) {
  if (!a.forwarding_enabled() || m.expired(now) || !peer_wants(b, m)) return std::nullopt;
  return RouterDecision{m.id, 1, true};
}

std::vector<RouterDecision> EpidemicRouter::decide(NodeState& a, NodeState& b,
                                                   Seconds now) {
  std::vector<RouterDecision> out;
  for (const Message& m : a.buffer.messages()) {
    if (auto d = decide_one(a, b, m, now)) out.push_back(*d);
  }
  return out;
}

// ----------------------------------------------------------------- prophet

void ProphetRouter::age_table(NodeState& n, Seconds now, const RouterParams& p) {
  const double k = (now - n.prophet_last_aged) / p.prophet_aging_unit;
  if (k > 0.0) {
    const double factor = std::pow(p.gamma_aging, k);
    for (auto& [dest, prob] : n.prophet_p) prob *= factor;
  }
  n.prophet_last_aged = now;
}

void ProphetRouter::on_contact_start(NodeState& a, NodeState& b, Seconds now) {
  age_table(a, now, p_);
  age_table(b, now, p_);

  double& pab = a.prophet_p[b.id];
  pab = pab + (1.0 - pab) * p_.p_init;
  double& pba = b.prophet_p[a.id];
  pba = pba + (1.0 - pba) * p_.p_init;

  auto transitivity = [this](NodeState& x, NodeState& y, double pxy) {
    for (const auto& [dest, pyd] : y.prophet_p) {
      if (dest == x.id) continue;
      double& pxd = x.prophet_p[dest];
      pxd = pxd + (1.0 - pxd) * pxy * pyd * p_.beta_transitivity;
    }
  };
  transitivity(a, b, pab);
  transitivity(b, a, pba);
}

std::optional<RouterDecision> ProphetRouter::decide_one(NodeState& a, NodeState& b,
                                                        const Message& m, Seconds now) {
  if (!a.forwarding_enabled() || m.expired(now) || !peer_wants(b, m)) return std::nullopt;
  if (b.id == m.dst) return RouterDecision{m.id, 1, true};
  auto pa = a.prophet_p.find(m.dst);
  auto pb = b.prophet_p.find(m.dst);
  const double p_a = pa == a.prophet_p.end() ? 0.0 : pa->second;
  const double p_b = pb == b.prophet_p.end() ? 0.0 : pb->second;
  if (p_b > p_a) return RouterDecision{m.id, 1, true};
  return std::nullopt;
}

std::vector<RouterDecision> ProphetRouter::decide(NodeState& a, NodeState& b,
                                                  Seconds now) {
  std::vector<RouterDecision> out;
  for (const Message& m : a.buffer.messages()) {
    if (auto d = decide_one(a, b, m, now)) out.push_back(*d);
  }
  return out;
}

// -------------------------------------------------------------------- snw

std::optional<RouterDecision> SprayAndWaitRouter::decide_one(NodeState& a, NodeState& b,
                                                             const Message& m,
                                                             Seconds now) {
  if (!a.forwarding_enabled() || m.expired(now) || !peer_wants(b, m)) return std::nullopt;
  if (b.id == m.dst) return RouterDecision{m.id, m.copies, false};
  if (m.copies > 1) {
    // Binary spray: sender keeps the ceiling.
    return RouterDecision{m.id, m.copies / 2, true};
  }
  return std::nullopt;  // wait phase
}

std::vector<RouterDecision> SprayAndWaitRouter::decide(NodeState& a, NodeState& b,
                                                       Seconds now) {
  std::vector<RouterDecision> out;
  for (const Message& m : a.buffer.messages()) {
    if (auto d = decide_one(a, b, m, now)) out.push_back(*d);
  }
  return out;
}

// ------------------------------------------------------------------- carl

int CarlDtnRouter::initial_copies(const NodeState& src) const {
  return initial_copy_budget(src.density, p_.l_max);
}

std::optional<RouterDecision> CarlDtnRouter::decide_one(NodeState& a, NodeState& b,
                                                        const Message& m, Seconds now) {
  if (!a.forwarding_enabled() || m.expired(now) || !peer_wants(b, m)) return std::nullopt;
  if (b.id == m.dst) return RouterDecision{m.id, m.copies, false};

  const double priority = flcs_->message_priority(m, now, p_.hop_cap);
  if (priority < p_.priority_threshold) return std::nullopt;

  const double social_a = flcs_->social_value(a, m.dst, now, p_);
  const double social_b = flcs_->social_value(b, m.dst, now, p_);
  const double q_a = a.qtable.best_value(m.dst, now, p_.q);
  const double q_b = b.qtable.best_value(m.dst, now, p_.q);

  if (m.copies > 1) {
    if (social_b > social_a || q_b > q_a) {
      return RouterDecision{m.id, m.copies / 2, true};
    }
  } else {
    if (social_b > social_a && q_b > q_a) {
      return RouterDecision{m.id, 1, false};
    }
  }
  return std::nullopt;
}

std::vector<RouterDecision> CarlDtnRouter::decide(NodeState& a, NodeState& b,
                                                  Seconds now) {
  // Outgoing queue is ordered by descending recomputed priority.
  std::vector<Message*> order;
  for (Message& m : a.buffer.messages()) {
    m.priority = flcs_->message_priority(m, now, p_.hop_cap);
    order.push_back(&m);
  }
  std::stable_sort(order.begin(), order.end(), [](const Message* l, const Message* r) {
    if (l->priority != r->priority) return l->priority > r->priority;
    return l->id < r->id;
  });

  std::vector<RouterDecision> out;
  for (const Message* m : order) {
    if (auto d = decide_one(a, b, *m, now)) out.push_back(*d);
  }
  return out;
}

void CarlDtnRouter::after_transfer(NodeState& sender, NodeState& receiver,
                                   const Message& m, bool first_delivery, Seconds now) {
  const bool final_recipient = receiver.id == m.dst;
  if (final_recipient || first_delivery) {
    merge_q_tables(sender.qtable, receiver.qtable, now, p_.q);
  }
}

void CarlDtnRouter::q_update_for_contact(NodeState& self, NodeState& peer, int n_total,
                                         Seconds now) {
  for (NodeId d = 0; d < n_total; ++d) {
    if (d == self.id) continue;
    const int reward = compute_reward(peer.id, d, peer.ens, now);
    const double max_q_m = peer.qtable.best_value(d, now, p_.q);
    const double fuzz = flcs_->transfer_opportunity(peer, d, now, p_);
    self.qtable.update_on_connect(d, peer.id, fuzz, max_q_m, reward, now, p_.q);
  }
}

// ------------------------------------------------------------------ factory

std::unique_ptr<Router> make_router(const std::string& name, const RouterParams& params,
                                    FlcSet& flcs) {
  if (name == "epidemic") return std::make_unique<EpidemicRouter>();
  if (name == "prophet") return std::make_unique<ProphetRouter>(params);
  if (name == "snw") return std::make_unique<SprayAndWaitRouter>(params);
  if (name == "carl") return std::make_unique<CarlDtnRouter>(params, flcs);
  throw std::invalid_argument("unknown router: " + name);
}

}  // namespace dtn

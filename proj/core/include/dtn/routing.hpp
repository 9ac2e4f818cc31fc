#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dtn/fuzzy.hpp"
#include "dtn/node.hpp"

namespace dtn {

struct RouterDecision {
  std::string msg_id;
  int copies_to_send = 1;
  // Replication routers keep their copy; budget routers hand over part
  // of the budget and drop their copy when it reaches zero.
  bool sender_keeps = true;
};

struct RouterParams {
  int l_max = 8;
  int hop_cap = 10;
  double priority_threshold = 0.375;  // center of the Normal term

  QParams q;
  TieNorms tie;
  int popularity_threshold = 50;

  // PRoPHET
  double p_init = 0.75;
  double beta_transitivity = 0.25;
  double gamma_aging = 0.98;
  Seconds prophet_aging_unit = 30.0;
};

// L = clamp(ceil(density * l_max), 1, l_max)
int initial_copy_budget(double density, int l_max);

// Shared, memoized controllers; one set per simulation run.
struct FlcSet {
  FlcSet()
      : flc1(fuzzy::flc1_rulebase()),
        flc2(fuzzy::flc2_rulebase()),
        flc3(fuzzy::flc3_rulebase()),
        flc4(fuzzy::flc4_rulebase()) {}
  fuzzy::CachedFlc flc1, flc2, flc3, flc4;

  double message_priority(const Message& m, Seconds now, int hop_cap);
  // FLC4 over (FLC1, FLC2) for `node`, tie strength taken toward `dest`.
  double transfer_opportunity(const NodeState& node, NodeId dest, Seconds now,
                              const RouterParams& p);
  double social_value(const NodeState& node, NodeId dest, Seconds now,
                      const RouterParams& p);
};

class Router {
 public:
  virtual ~Router() = default;
  virtual std::string name() const = 0;

  // Hook run once per contact before any decisions (PRoPHET table
  // updates live here).
  virtual void on_contact_start(NodeState& a, NodeState& b, Seconds now) {}

  // Decisions for messages in a's buffer offered to b, in send order.
  virtual std::vector<RouterDecision> decide(NodeState& a, NodeState& b,
                                             Seconds now) = 0;

  // Decision for a single message (used when a message appears while a
  // contact is live).
  virtual std::optional<RouterDecision> decide_one(NodeState& a, NodeState& b,
                                                   const Message& m, Seconds now) = 0;

  // Hook run after a completed transfer (CARL's Q-table merge).
  virtual void after_transfer(NodeState& sender, NodeState& receiver,
                              const Message& m, bool first_delivery, Seconds now) {}

  virtual int initial_copies(const NodeState& src) const { return 1; }
  virtual EvictionPolicy eviction_policy() const { return EvictionPolicy::OldestFirst; }
  // Whether the per-message replica budget is meaningful (CARL, S&W).
  virtual bool budgeted() const { return false; }
};

std::unique_ptr<Router> make_router(const std::string& name, const RouterParams& params,
                                    FlcSet& flcs);

class EpidemicRouter : public Router {
 public:
  std::string name() const override { return "epidemic"; }
  std::vector<RouterDecision> decide(NodeState& a, NodeState& b, Seconds now) override;
  std::optional<RouterDecision> decide_one(NodeState& a, NodeState& b,
                                           const Message& m, Seconds now) override;
};

class ProphetRouter : public Router {
 public:
  explicit ProphetRouter(const RouterParams& p) : p_(p) {}
  std::string name() const override { return "prophet"; }
  void on_contact_start(NodeState& a, NodeState& b, Seconds now) override;
  std::vector<RouterDecision> decide(NodeState& a, NodeState& b, Seconds now) override;
  std::optional<RouterDecision> decide_one(NodeState& a, NodeState& b,
                                           const Message& m, Seconds now) override;

  static void age_table(NodeState& n, Seconds now, const RouterParams& p);

 private:
  RouterParams p_;
};

class SprayAndWaitRouter : public Router {
 public:
  explicit SprayAndWaitRouter(const RouterParams& p) : p_(p) {}
  std::string name() const override { return "snw"; }
  std::vector<RouterDecision> decide(NodeState& a, NodeState& b, Seconds now) override;
  std::optional<RouterDecision> decide_one(NodeState& a, NodeState& b,
                                           const Message& m, Seconds now) override;
  int initial_copies(const NodeState&) const override { return p_.l_max; }
  bool budgeted() const override { return true; }

 private:
  RouterParams p_;
};

class CarlDtnRouter : public Router {
 public:
  CarlDtnRouter(const RouterParams& p, FlcSet& flcs) : p_(p), flcs_(&flcs) {}
  std::string name() const override { return "carl"; }
  std::vector<RouterDecision> decide(NodeState& a, NodeState& b, Seconds now) override;
  std::optional<RouterDecision> decide_one(NodeState& a, NodeState& b,
                                           const Message& m, Seconds now) override;
  void after_transfer(NodeState& sender, NodeState& receiver, const Message& m,
                      bool first_delivery, Seconds now) override;
  int initial_copies(const NodeState& src) const override;
  EvictionPolicy eviction_policy() const override {
    return EvictionPolicy::HighestPriorityFirst;
  }
  bool budgeted() const override { return true; }

  // Q-table refresh on link establishment; one call per direction.
  void q_update_for_contact(NodeState& self, NodeState& peer, int n_total, Seconds now);

 private:
  RouterParams p_;
  FlcSet* flcs_;
};

}  // namespace dtn

#pragma once

#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <set>

#include "dtn/metrics.hpp"
#include "dtn/mobility.hpp"
#include "dtn/routing.hpp"
#include "dtn/scenario.hpp"

namespace dtn {

// Tiebreak rank at equal timestamps: connections settle before routing.
enum class EventKind : int {
  MovementTick = 0,
  LinkCheck = 1,  // emits LinkDown then LinkUp internally
  TransferComplete = 2,
  MessageCreate = 3,
  TtlSweep = 4,
  ReportSample = 5,
};

struct SimClock {
  Seconds now = 0.0;
  Seconds end = 0.0;
};

struct LinkEvent {
  bool up = false;
  NodeId a = -1;
  NodeId b = -1;
  Seconds time = 0.0;
};

// Range comparison is closed: distance == range counts as connected.
// Emits LinkDown for live pairs now out of range, then LinkUp for new
// pairs, each sorted by (a, b).
std::vector<LinkEvent> detect_link_events(const std::vector<NodeState>& nodes,
                                          const std::set<std::pair<NodeId, NodeId>>& live,
                                          Seconds now);

class Simulation {
 public:
  explicit Simulation(Scenario scenario);

  SimReport run();

  const std::vector<NodeState>& nodes() const { return nodes_; }
  const SimClock& clock() const { return clock_; }
  // Replica-budget overruns observed in-engine (must stay zero).
  int budget_violations() const { return budget_violations_; }

 private:
  struct Event {
    Seconds time;
    EventKind kind;
    std::uint64_t seq;
    // payload
    NodeId a = -1, b = -1;
    std::uint64_t session = 0;

    bool operator>(const Event& o) const {
      if (time != o.time) return time > o.time;
      if (kind != o.kind) return kind > o.kind;
      return seq > o.seq;
    }
  };

  struct PendingSend {
    NodeId sender = -1;
    std::string msg_id;
    int copies = 1;
    bool sender_keeps = true;
  };

  struct InFlight : PendingSend {
    Seconds done_at = 0.0;
  };

  struct LiveLink {
    Seconds established = 0.0;
    double bandwidth = 0.0;
    std::uint64_t session = 0;
    std::deque<PendingSend> queue;
    std::optional<InFlight> inflight;
  };

  void schedule(Seconds time, EventKind kind, NodeId a = -1, NodeId b = -1,
                std::uint64_t session = 0);
  void process(const Event& ev);

  void handle_movement(Seconds now);
  void handle_link_check(Seconds now);
  void handle_link_up(NodeId a, NodeId b, Seconds now);
  void handle_link_down(NodeId a, NodeId b, Seconds now);
  void handle_transfer_complete(const Event& ev);
  void handle_message_create(Seconds now);
  void handle_ttl_sweep(Seconds now);
  void handle_report_sample(Seconds now);

  void enqueue_decisions(LiveLink& link, NodeId sender,
                         const std::vector<RouterDecision>& decisions);
  void start_next_transfer(const std::pair<NodeId, NodeId>& key, LiveLink& link);
  void roll_popularity_windows(Seconds now);

  void budget_add(const std::string& id, int copies);
  void budget_remove(const std::string& id, int copies);
  void budget_check(const std::string& id);
  void drop_messages(const std::vector<Message>& msgs, DropReason reason);

  Scenario sc_;
  int n_total_ = 0;
  FlcSet flcs_;
  std::unique_ptr<Router> router_;
  CarlDtnRouter* carl_ = nullptr;  // non-null when router is CARL

  std::vector<NodeState> nodes_;
  std::vector<MobilityState> mobility_;
  std::vector<MobilityModel> models_;       // one per group
  std::vector<int> node_model_;             // node -> group index
  std::vector<SeededRng> node_rngs_;
  SeededRng workload_rng_;

  SimClock clock_;
  Seconds last_move_ = 0.0;
  std::uint64_t seq_ = 0;
  std::uint64_t next_session_ = 1;
  int next_msg_ = 0;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::map<std::pair<NodeId, NodeId>, LiveLink> links_;

  MetricsCollector metrics_;

  std::map<std::string, std::pair<int, int>> budget_;  // id -> (current, initial)
  int budget_violations_ = 0;
};

SimReport run_simulation(const Scenario& scenario);

}  // namespace dtn

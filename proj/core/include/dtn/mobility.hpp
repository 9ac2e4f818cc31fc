#pragma once

#include <memory>
#include <vector>

#include "dtn/node.hpp"
#include "dtn/rng.hpp"

namespace dtn {

enum class MobilityVariant { RandomWaypoint, RandomWalk, WaypointGraph };

// Waypoints connected by straight edges; must be connected.
struct WaypointGraph {
  std::vector<Vec2> points;
  std::vector<std::vector<int>> adjacency;

  bool connected() const;
  // Shortest path by euclidean edge length (Dijkstra); includes both ends.
  std::vector<int> shortest_path(int from, int to) const;

  // Regular grid over the world, 4-connected.
  static WaypointGraph grid(double width, double height, int nx, int ny);
};

struct MobilityModel {
  MobilityVariant variant = MobilityVariant::RandomWaypoint;
  double speed_min = 0.5;  // m/s
  double speed_max = 1.5;
  double pause_min = 0.0;  // s
  double pause_max = 10.0;
  double world_width = 1000.0;
  double world_height = 1000.0;
  double walk_leg_min = 20.0;  // random-walk leg length, m
  double walk_leg_max = 100.0;
  std::shared_ptr<const WaypointGraph> graph;
};

// Per-node movement bookkeeping.
struct MobilityState {
  Vec2 target;
  double speed = 0.0;
  Seconds pause_remaining = 0.0;
  bool has_target = false;

  // random walk
  double dir_x = 0.0, dir_y = 0.0;
  double leg_remaining = 0.0;

  // waypoint graph
  int at_waypoint = -1;
  std::vector<int> path;   // waypoint indices still ahead, front is next
  std::size_t path_pos = 0;
};

// Places a node at a model-appropriate start position.
void init_position(Vec2& pos, MobilityState& st, const MobilityModel& model,
                   SeededRng& rng);

// Advances the position by dt. dt == 0 is a no-op.
void step_movement(Vec2& pos, MobilityState& st, Seconds dt, const MobilityModel& model,
                   SeededRng& rng);

}  // namespace dtn

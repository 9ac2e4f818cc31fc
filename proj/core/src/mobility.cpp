#include "dtn/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace dtn {

bool WaypointGraph::connected() const {
  if (points.empty()) return false;
  std::vector<bool> seen(points.size(), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        frontier.push(v);
      }
    }
  }
  return count == points.size();
}

std::vector<int> WaypointGraph::shortest_path(int from, int to) const {
  const auto n = points.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[from] = 0.0;
  heap.push({0.0, from});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == to) break;
    for (int v : adjacency[u]) {
      const double w = std::hypot(points[v].x - points[u].x, points[v].y - points[u].y);
      if (dist[u] + w < dist[v]) {
        dist[v] = dist[u] + w;
        prev[v] = u;
        heap.push({dist[v], v});
      }
    }
  }
  std::vector<int> path;
  for (int v = to; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

WaypointGraph WaypointGraph::grid(double width, double height, int nx, int ny) {
  WaypointGraph g;
  g.points.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      g.points.push_back({width * (i + 0.5) / nx, height * (j + 0.5) / ny});
    }
  }
  g.adjacency.resize(g.points.size());
  auto idx = [nx](int i, int j) { return j * nx + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (i + 1 < nx) {
        g.adjacency[idx(i, j)].push_back(idx(i + 1, j));
        g.adjacency[idx(i + 1, j)].push_back(idx(i, j));
      }
      if (j + 1 < ny) {
        g.adjacency[idx(i, j)].push_back(idx(i, j + 1));
        g.adjacency[idx(i, j + 1)].push_back(idx(i, j));
      }
    }
  }
  return g;
}

namespace {

void reflect(double& coord, double& dir, double limit) {
  while (coord < 0.0 || coord > limit) {
    if (coord < 0.0) {
      coord = -coord;
      dir = -dir;
    } else {
      coord = 2.0 * limit - coord;
      dir = -dir;
    }
  }
}

void step_rwp(Vec2& pos, MobilityState& st, Seconds dt, const MobilityModel& model,
              SeededRng& rng) {
  while (dt > 0.0) {
    if (st.pause_remaining > 0.0) {
      const Seconds hold = std::min(dt, st.pause_remaining);
      st.pause_remaining -= hold;
      dt -= hold;
      continue;
    }
    if (!st.has_target) {
      st.target = {rng.uniform(0.0, model.world_width),
                   rng.uniform(0.0, model.world_height)};
      st.speed = rng.uniform(model.speed_min, model.speed_max);
      st.has_target = true;
    }
    const double dx = st.target.x - pos.x;
    const double dy = st.target.y - pos.y;
    const double distance = std::hypot(dx, dy);
    const double reach = st.speed * dt;
    if (reach >= distance) {
      pos = st.target;
      st.has_target = false;
      dt -= st.speed > 0.0 ? distance / st.speed : dt;
      st.pause_remaining = rng.uniform(model.pause_min, model.pause_max);
    } else {
      pos.x += dx / distance * reach;
      pos.y += dy / distance * reach;
      dt = 0.0;
    }
  }
}

void step_rwk(Vec2& pos, MobilityState& st, Seconds dt, const MobilityModel& model,
              SeededRng& rng) {
  while (dt > 0.0) {
    if (st.pause_remaining > 0.0) {
      const Seconds hold = std::min(dt, st.pause_remaining);
      st.pause_remaining -= hold;
      dt -= hold;
      continue;
    }
    if (st.leg_remaining <= 0.0) {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      st.dir_x = std::cos(angle);
      st.dir_y = std::sin(angle);
      st.leg_remaining = rng.uniform(model.walk_leg_min, model.walk_leg_max);
      st.speed = rng.uniform(model.speed_min, model.speed_max);
    }
    const double reach = std::min(st.speed * dt, st.leg_remaining);
    pos.x += st.dir_x * reach;
    pos.y += st.dir_y * reach;
    reflect(pos.x, st.dir_x, model.world_width);
    reflect(pos.y, st.dir_y, model.world_height);
    st.leg_remaining -= reach;
    dt -= st.speed > 0.0 ? reach / st.speed : dt;
    if (st.leg_remaining <= 0.0) {
      st.pause_remaining = rng.uniform(model.pause_min, model.pause_max);
    }
  }
}

void step_graph(Vec2& pos, MobilityState& st, Seconds dt, const MobilityModel& model,
                SeededRng& rng) {
  const WaypointGraph& g = *model.graph;
  while (dt > 0.0) {
    if (st.pause_remaining > 0.0) {
      const Seconds hold = std::min(dt, st.pause_remaining);
      st.pause_remaining -= hold;
      dt -= hold;
      continue;
    }
    if (st.path_pos >= st.path.size()) {
      const int target = static_cast<int>(rng.below(g.points.size()));
      st.path = g.shortest_path(st.at_waypoint, target);
      st.path_pos = st.path.empty() ? 0 : 1;  // element 0 is the current waypoint
      st.speed = rng.uniform(model.speed_min, model.speed_max);
      if (st.path_pos >= st.path.size()) {
        // already at target
        st.pause_remaining = rng.uniform(model.pause_min, model.pause_max);
        continue;
      }
    }
    const Vec2 next = g.points[st.path[st.path_pos]];
    const double dx = next.x - pos.x;
    const double dy = next.y - pos.y;
    const double distance = std::hypot(dx, dy);
    const double reach = st.speed * dt;
    if (reach >= distance) {
      pos = next;
      st.at_waypoint = st.path[st.path_pos];
      st.path_pos += 1;
      dt -= st.speed > 0.0 ? distance / st.speed : dt;
      if (st.path_pos >= st.path.size()) {
        st.pause_remaining = rng.uniform(model.pause_min, model.pause_max);
      }
    } else {
      pos.x += dx / distance * reach;
      pos.y += dy / distance * reach;
      dt = 0.0;
    }
  }
}

}  // namespace

void init_position(Vec2& pos, MobilityState& st, const MobilityModel& model,
                   SeededRng& rng) {
  if (model.variant == MobilityVariant::WaypointGraph) {
    st.at_waypoint = static_cast<int>(rng.below(model.graph->points.size()));
    pos = model.graph->points[st.at_waypoint];
  } else {
    pos = {rng.uniform(0.0, model.world_width), rng.uniform(0.0, model.world_height)};
  }
}

void step_movement(Vec2& pos, MobilityState& st, Seconds dt, const MobilityModel& model,
                   SeededRng& rng) {
  if (dt <= 0.0) return;
  switch (model.variant) {
    case MobilityVariant::RandomWaypoint:
      step_rwp(pos, st, dt, model, rng);
      break;
    case MobilityVariant::RandomWalk:
      step_rwk(pos, st, dt, model, rng);
      break;
    case MobilityVariant::WaypointGraph:
      step_graph(pos, st, dt, model, rng);
      break;
  }
}

}  // namespace dtn

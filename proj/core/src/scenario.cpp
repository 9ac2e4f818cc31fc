#include "dtn/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace dtn {

int Scenario::total_nodes() const {
  int n = 0;
  for (const GroupSpec& g : groups) n += g.count;
  return n;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ValidationError(key, "not a number: " + v);
  }
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const std::int64_t i = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ValidationError(key, "not an integer: " + v);
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  const std::int64_t i = to_int(key, v);
  if (i < 0) throw ValidationError(key, "must be non-negative");
  return static_cast<std::uint64_t>(i);
}

void apply_group_key(GroupSpec& g, const std::string& full, const std::string& key,
                     const std::string& v) {
  if (key == "count") g.count = static_cast<int>(to_int(full, v));
  else if (key == "mobility") g.mobility = v;
  else if (key == "speed_min") g.speed_min = to_double(full, v);
  else if (key == "speed_max") g.speed_max = to_double(full, v);
  else if (key == "pause_min") g.pause_min = to_double(full, v);
  else if (key == "pause_max") g.pause_max = to_double(full, v);
  else if (key == "walk_leg_min") g.walk_leg_min = to_double(full, v);
  else if (key == "walk_leg_max") g.walk_leg_max = to_double(full, v);
  else if (key == "graph_nx") g.graph_nx = static_cast<int>(to_int(full, v));
  else if (key == "graph_ny") g.graph_ny = static_cast<int>(to_int(full, v));
  else if (key == "buffer") g.buffer_capacity = to_u64(full, v);
  else if (key == "energy") g.initial_energy = to_double(full, v);
  else if (key == "range") g.radio_range = to_double(full, v);
  else if (key == "bandwidth") g.bandwidth = to_double(full, v);
  else throw ValidationError(full, "unknown key");
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::map<int, GroupSpec> groups;  // 1-based config index

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "empty key");
    if (v.empty()) throw ParseError(lineno, "empty value for " + key);

    if (key.rfind("group", 0) == 0) {
      const auto dot = key.find('.');
      if (dot == std::string::npos) throw ParseError(lineno, "malformed group key");
      const std::string idx_str = key.substr(5, dot - 5);
      int idx = 0;
      try {
        idx = std::stoi(idx_str);
      } catch (const std::exception&) {
        throw ParseError(lineno, "malformed group index in " + key);
      }
      if (idx < 1) throw ValidationError(key, "group index starts at 1");
      apply_group_key(groups[idx], key, key.substr(dot + 1), v);
      continue;
    }

    if (key == "scenario.name") s.name = v;
    else if (key == "scenario.duration") s.duration = to_double(key, v);
    else if (key == "scenario.seed") s.seed = to_u64(key, v);
    else if (key == "scenario.report_interval") s.report_interval = to_double(key, v);
    else if (key == "scenario.link_check_interval")
      s.link_check_interval = to_double(key, v);
    else if (key == "scenario.ttl_sweep_interval")
      s.ttl_sweep_interval = to_double(key, v);
    else if (key == "world.width") s.world_width = to_double(key, v);
    else if (key == "world.height") s.world_height = to_double(key, v);
    else if (key == "messages.interval_min") s.messages.interval_min = to_double(key, v);
    else if (key == "messages.interval_max") s.messages.interval_max = to_double(key, v);
    else if (key == "messages.size_min") s.messages.size_min = to_u64(key, v);
    else if (key == "messages.size_max") s.messages.size_max = to_u64(key, v);
    else if (key == "messages.ttl") s.messages.ttl_minutes = to_double(key, v);
    else if (key == "energy.drain_idle") s.energy_drain_idle = to_double(key, v);
    else if (key == "energy.drain_transfer") s.energy_drain_transfer = to_double(key, v);
    else if (key == "router.name") s.router = v;
    else if (key == "router.l_max")
      s.router_params.l_max = static_cast<int>(to_int(key, v));
    else if (key == "router.hop_cap")
      s.router_params.hop_cap = static_cast<int>(to_int(key, v));
    else if (key == "router.priority_threshold")
      s.router_params.priority_threshold = to_double(key, v);
    else if (key == "router.p_init") s.router_params.p_init = to_double(key, v);
    else if (key == "router.beta_transitivity")
      s.router_params.beta_transitivity = to_double(key, v);
    else if (key == "router.gamma_aging")
      s.router_params.gamma_aging = to_double(key, v);
    else if (key == "router.prophet_aging_unit")
      s.router_params.prophet_aging_unit = to_double(key, v);
    else if (key == "qlearn.alpha") s.router_params.q.alpha = to_double(key, v);
    else if (key == "qlearn.gamma") s.router_params.q.gamma = to_double(key, v);
    else if (key == "qlearn.beta") s.router_params.q.beta = to_double(key, v);
    else if (key == "qlearn.aging_unit")
      s.router_params.q.aging_unit = to_double(key, v);
    else if (key == "social.popularity_window")
      s.social.popularity_window = to_double(key, v);
    else if (key == "social.popularity_alpha")
      s.social.popularity_alpha = to_double(key, v);
    else if (key == "social.popularity_threshold")
      s.social.popularity_threshold = static_cast<int>(to_int(key, v));
    else if (key == "social.ens_horizon") s.social.ens_horizon = to_double(key, v);
    else if (key == "social.tie_frequency_max")
      s.social.tie.frequency_max = to_double(key, v);
    else if (key == "social.tie_closeness_max")
      s.social.tie.closeness_max = to_double(key, v);
    else if (key == "social.tie_recency_tau")
      s.social.tie.recency_tau = to_double(key, v);
    else throw ValidationError(key, "unknown key");
  }

  if (!groups.empty()) {
    s.groups.clear();
    int expected = 1;
    for (const auto& [idx, g] : groups) {
      if (idx != expected)
        throw ValidationError("group" + std::to_string(idx), "group indices must be contiguous from 1");
      s.groups.push_back(g);
      ++expected;
    }
  }

  // Keep the routers' social knobs in sync with the social block.
  s.router_params.tie = s.social.tie;
  s.router_params.popularity_threshold = s.social.popularity_threshold;

  validate_scenario(s);
  return s;
}

void validate_scenario(const Scenario& s) {
  auto positive = [](const std::string& key, double v) {
    if (!(v > 0.0)) throw ValidationError(key, "must be positive");
  };
  positive("scenario.duration", s.duration);
  positive("scenario.report_interval", s.report_interval);
  positive("scenario.link_check_interval", s.link_check_interval);
  positive("scenario.ttl_sweep_interval", s.ttl_sweep_interval);
  positive("world.width", s.world_width);
  positive("world.height", s.world_height);
  if (s.groups.empty()) throw ValidationError("group1", "at least one node group");
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    const GroupSpec& g = s.groups[i];
    const std::string p = "group" + std::to_string(i + 1) + ".";
    if (g.count < 1) throw ValidationError(p + "count", "must be >= 1");
    if (g.mobility != "rwp" && g.mobility != "rwk" && g.mobility != "waypoint_graph")
      throw ValidationError(p + "mobility", "unknown model: " + g.mobility);
    positive(p + "speed_min", g.speed_min);
    if (g.speed_max < g.speed_min)
      throw ValidationError(p + "speed_max", "below speed_min");
    if (g.pause_min < 0.0) throw ValidationError(p + "pause_min", "must be >= 0");
    if (g.pause_max < g.pause_min)
      throw ValidationError(p + "pause_max", "below pause_min");
    positive(p + "walk_leg_min", g.walk_leg_min);
    if (g.walk_leg_max < g.walk_leg_min)
      throw ValidationError(p + "walk_leg_max", "below walk_leg_min");
    if (g.graph_nx < 1 || g.graph_ny < 1)
      throw ValidationError(p + "graph_nx", "grid must be at least 1x1");
    if (g.buffer_capacity == 0) throw ValidationError(p + "buffer", "must be positive");
    positive(p + "energy", g.initial_energy);
    positive(p + "range", g.radio_range);
    positive(p + "bandwidth", g.bandwidth);
  }
  positive("messages.interval_min", s.messages.interval_min);
  if (s.messages.interval_max < s.messages.interval_min)
    throw ValidationError("messages.interval_max", "below interval_min");
  if (s.messages.size_min == 0) throw ValidationError("messages.size_min", "must be positive");
  if (s.messages.size_max < s.messages.size_min)
    throw ValidationError("messages.size_max", "below size_min");
  positive("ttl", s.messages.ttl_minutes);
  if (s.energy_drain_idle < 0.0)
    throw ValidationError("energy.drain_idle", "must be >= 0");
  if (s.energy_drain_transfer < 0.0)
    throw ValidationError("energy.drain_transfer", "must be >= 0");
  if (s.router != "carl" && s.router != "epidemic" && s.router != "prophet" &&
      s.router != "snw")
    throw ValidationError("router.name", "unknown router: " + s.router);
  if (s.router_params.l_max < 1) throw ValidationError("router.l_max", "must be >= 1");
  if (s.router_params.hop_cap < 1)
    throw ValidationError("router.hop_cap", "must be >= 1");
  const QParams& q = s.router_params.q;
  if (!(q.alpha > 0.0 && q.alpha <= 1.0))
    throw ValidationError("qlearn.alpha", "must be in (0,1]");
  if (!(q.gamma > 0.0 && q.gamma < 1.0))
    throw ValidationError("qlearn.gamma", "must be in (0,1)");
  if (!(q.beta > 0.0 && q.beta < 1.0))
    throw ValidationError("qlearn.beta", "must be in (0,1)");
  positive("qlearn.aging_unit", q.aging_unit);
  if (!(s.social.popularity_alpha >= 0.0 && s.social.popularity_alpha <= 1.0))
    throw ValidationError("social.popularity_alpha", "must be in [0,1]");
  if (s.social.popularity_threshold < 1)
    throw ValidationError("social.popularity_threshold", "must be >= 1");
  positive("social.popularity_window", s.social.popularity_window);
  positive("social.ens_horizon", s.social.ens_horizon);
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string render_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "scenario.name = " << s.name << "\n";
  out << "scenario.duration = " << num(s.duration) << "\n";
  out << "scenario.seed = " << s.seed << "\n";
  out << "scenario.report_interval = " << num(s.report_interval) << "\n";
  out << "scenario.link_check_interval = " << num(s.link_check_interval) << "\n";
  out << "scenario.ttl_sweep_interval = " << num(s.ttl_sweep_interval) << "\n";
  out << "world.width = " << num(s.world_width) << "\n";
  out << "world.height = " << num(s.world_height) << "\n";
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    const GroupSpec& g = s.groups[i];
    const std::string p = "group" + std::to_string(i + 1) + ".";
    out << p << "count = " << g.count << "\n";
    out << p << "mobility = " << g.mobility << "\n";
    out << p << "speed_min = " << num(g.speed_min) << "\n";
    out << p << "speed_max = " << num(g.speed_max) << "\n";
    out << p << "pause_min = " << num(g.pause_min) << "\n";
    out << p << "pause_max = " << num(g.pause_max) << "\n";
    out << p << "walk_leg_min = " << num(g.walk_leg_min) << "\n";
    out << p << "walk_leg_max = " << num(g.walk_leg_max) << "\n";
    out << p << "graph_nx = " << g.graph_nx << "\n";
    out << p << "graph_ny = " << g.graph_ny << "\n";
    out << p << "buffer = " << g.buffer_capacity << "\n";
    out << p << "energy = " << num(g.initial_energy) << "\n";
    out << p << "range = " << num(g.radio_range) << "\n";
    out << p << "bandwidth = " << num(g.bandwidth) << "\n";
  }
  out << "messages.interval_min = " << num(s.messages.interval_min) << "\n";
  out << "messages.interval_max = " << num(s.messages.interval_max) << "\n";
  out << "messages.size_min = " << s.messages.size_min << "\n";
  out << "messages.size_max = " << s.messages.size_max << "\n";
  out << "messages.ttl = " << num(s.messages.ttl_minutes) << "\n";
  out << "energy.drain_idle = " << num(s.energy_drain_idle) << "\n";
  out << "energy.drain_transfer = " << num(s.energy_drain_transfer) << "\n";
  out << "router.name = " << s.router << "\n";
  out << "router.l_max = " << s.router_params.l_max << "\n";
  out << "router.hop_cap = " << s.router_params.hop_cap << "\n";
  out << "router.priority_threshold = " << num(s.router_params.priority_threshold)
      << "\n";
  out << "router.p_init = " << num(s.router_params.p_init) << "\n";
  out << "router.beta_transitivity = " << num(s.router_params.beta_transitivity) << "\n";
  out << "router.gamma_aging = " << num(s.router_params.gamma_aging) << "\n";
  out << "router.prophet_aging_unit = " << num(s.router_params.prophet_aging_unit)
      << "\n";
  out << "qlearn.alpha = " << num(s.router_params.q.alpha) << "\n";
  out << "qlearn.gamma = " << num(s.router_params.q.gamma) << "\n";
  out << "qlearn.beta = " << num(s.router_params.q.beta) << "\n";
  out << "qlearn.aging_unit = " << num(s.router_params.q.aging_unit) << "\n";
  out << "social.popularity_window = " << num(s.social.popularity_window) << "\n";
  out << "social.popularity_alpha = " << num(s.social.popularity_alpha) << "\n";
  out << "social.popularity_threshold = " << s.social.popularity_threshold << "\n";
  out << "social.ens_horizon = " << num(s.social.ens_horizon) << "\n";
  out << "social.tie_frequency_max = " << num(s.social.tie.frequency_max) << "\n";
  out << "social.tie_closeness_max = " << num(s.social.tie.closeness_max) << "\n";
  out << "social.tie_recency_tau = " << num(s.social.tie.recency_tau) << "\n";
  return out.str();
}

MobilityModel mobility_model_for(const Scenario& s, const GroupSpec& g) {
  MobilityModel m;
  if (g.mobility == "rwp") m.variant = MobilityVariant::RandomWaypoint;
  else if (g.mobility == "rwk") m.variant = MobilityVariant::RandomWalk;
  else m.variant = MobilityVariant::WaypointGraph;
  m.speed_min = g.speed_min;
  m.speed_max = g.speed_max;
  m.pause_min = g.pause_min;
  m.pause_max = g.pause_max;
  m.world_width = s.world_width;
  m.world_height = s.world_height;
  m.walk_leg_min = g.walk_leg_min;
  m.walk_leg_max = g.walk_leg_max;
  if (m.variant == MobilityVariant::WaypointGraph) {
    m.graph = std::make_shared<WaypointGraph>(
        WaypointGraph::grid(s.world_width, s.world_height, g.graph_nx, g.graph_ny));
  }
  return m;
}

}  // namespace dtn

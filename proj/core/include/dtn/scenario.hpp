#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtn/mobility.hpp"
#include "dtn/routing.hpp"

namespace dtn {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& key, const std::string& what)
      : std::runtime_error(key + ": " + what), key(key) {}
  std::string key;
};

struct GroupSpec {
  int count = 60;
  std::string mobility = "rwp";  // rwp | rwk | waypoint_graph
  double speed_min = 0.5;
  double speed_max = 1.5;
  double pause_min = 0.0;
  double pause_max = 10.0;
  double walk_leg_min = 20.0;
  double walk_leg_max = 100.0;
  int graph_nx = 6;
  int graph_ny = 6;
  std::uint64_t buffer_capacity = 2'000'000;
  double initial_energy = 43200.0;
  double radio_range = 30.0;
  double bandwidth = 250'000.0;
};

struct Workload {
  double interval_min = 25.0;  // s between message creations
  double interval_max = 35.0;
  std::uint64_t size_min = 100'000;
  std::uint64_t size_max = 1'000'000;
  double ttl_minutes = 300.0;
};

struct SocialParams {
  Seconds popularity_window = 200.0;
  double popularity_alpha = 0.5;
  int popularity_threshold = 50;
  Seconds ens_horizon = 3600.0;
  TieNorms tie;
};

struct Scenario {
  std::string name = "default";
  Seconds duration = 43000.0;
  std::uint64_t seed = 1;
  Seconds report_interval = 300.0;
  Seconds link_check_interval = 1.0;
  Seconds ttl_sweep_interval = 50.0;

  double world_width = 1000.0;
  double world_height = 1000.0;

  std::vector<GroupSpec> groups{GroupSpec{}};
  Workload messages;

  double energy_drain_idle = 0.5;      // per second
  double energy_drain_transfer = 1.0;  // per completed transfer, each side

  std::string router = "epidemic";
  RouterParams router_params;
  SocialParams social;

  int total_nodes() const;
  Seconds message_ttl_seconds() const { return messages.ttl_minutes * 60.0; }
};

// key = value lines, # comments, group-scoped prefixes (group1.count).
// Unknown keys are errors.
Scenario parse_scenario(const std::string& text);

// Emits every key; parse(render(s)) round-trips.
std::string render_scenario(const Scenario& s);

void validate_scenario(const Scenario& s);

MobilityModel mobility_model_for(const Scenario& s, const GroupSpec& g);

}  // namespace dtn

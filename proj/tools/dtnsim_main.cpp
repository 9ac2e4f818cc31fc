#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dtn/fuzzy.hpp"
#include "dtn/sim.hpp"
#include "dtn/sweep.hpp"

namespace {

constexpr int kExitRunFailure = 1;
constexpr int kExitConfigError = 2;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("DTNSIM_OUT")) return env;
  return ".";
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_run(const std::string& file, const std::string& out) {
  dtn::Scenario sc;
  try {
    sc = dtn::parse_scenario(read_file(file));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    dtn::SimReport r = dtn::run_simulation(sc);
    dtn::write_report_files(r, output_dir(out));
    std::cout << dtn::report_csv(r);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kExitRunFailure;
  }
}

int cmd_sweep(const std::string& file, const std::string& axis_name,
              const std::string& values, const std::string& seeds,
              const std::string& routers, const std::string& out) {
  dtn::Scenario base;
  dtn::SweepAxis axis;
  std::vector<std::string> value_list, router_list;
  std::vector<std::uint64_t> seed_list;
  try {
    base = dtn::parse_scenario(read_file(file));
    axis = dtn::parse_axis(axis_name);
    value_list = split_csv(values);
    router_list = routers.empty()
                      ? std::vector<std::string>{"epidemic", "prophet", "snw", "carl"}
                      : split_csv(routers);
    for (const std::string& s : split_csv(seeds)) seed_list.push_back(std::stoull(s));
    if (value_list.empty() || seed_list.empty())
      throw std::invalid_argument("need at least one value and one seed");
    for (const std::string& v : value_list) dtn::apply_axis(base, axis, v);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    dtn::SweepResult res = dtn::run_sweep(base, axis, value_list, router_list,
                                          seed_list, output_dir(out));
    std::cout << res.summary_csv;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "sweep failed: " << e.what() << "\n";
    return kExitRunFailure;
  }
}

// Crisp output of each controller over an input grid, for plotting.
int cmd_dump_fuzzy(int flc, int grid, const std::string& out_path) {
  std::ostringstream csv;
  csv << "flc,in1,in2,crisp\n";
  auto dump = [&](int which, double (*eval)(double, double)) {
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const double x = static_cast<double>(i) / (grid - 1);
        const double y = static_cast<double>(j) / (grid - 1);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f\n", which, x, y, eval(x, y));
        csv << buf;
      }
    }
  };
  if (flc == 0 || flc == 1) dump(1, dtn::fuzzy::eval_flc1);
  if (flc == 0 || flc == 2) dump(2, dtn::fuzzy::eval_flc2);
  if (flc == 0 || flc == 3) dump(3, dtn::fuzzy::eval_flc3);
  if (flc == 0 || flc == 4) dump(4, dtn::fuzzy::eval_flc4);
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitRunFailure;
    }
    f << csv.str();
  }
  return 0;
}

int cmd_dump_qtable(const std::string& file, int node) {
  dtn::Scenario sc;
  try {
    sc = dtn::parse_scenario(read_file(file));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (node < 0 || node >= sc.total_nodes()) {
    std::cerr << "config error: node " << node << " out of range\n";
    return kExitConfigError;
  }
  try {
    dtn::Simulation sim(sc);
    sim.run();
    const dtn::NodeState& n = sim.nodes()[static_cast<std::size_t>(node)];
    const dtn::Seconds now = sim.clock().now;
    std::cout << "owner,dest,next_hop,value,age\n";
    for (const auto& [dest, row] : n.qtable.entries()) {
      for (const auto& [hop, cell] : row) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.6f,%.6f\n", n.id, dest, hop,
                      cell.value, now - cell.last_connection_change);
        std::cout << buf;
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kExitRunFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-tolerant network routing simulator"};
  app.require_subcommand(1);

  std::string file, out, axis, values, seeds, routers;
  int flc = 0, grid = 51, node = 0;

  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("file", file, "scenario file")->required();
  run->add_option("--out", out, "output directory (or $DTNSIM_OUT)");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("file", file, "base scenario file")->required();
  sweep->add_option("--axis", axis, "duration|buffer|ttl|mobility")->required();
  sweep->add_option("--values", values, "comma-separated axis values")->required();
  sweep->add_option("--seeds", seeds, "comma-separated seeds")->required();
  sweep->add_option("--routers", routers, "comma-separated router names");
  sweep->add_option("--out", out, "output directory (or $DTNSIM_OUT)");

  CLI::App* dumpf = app.add_subcommand("dump-fuzzy", "Dump controller crisp outputs");
  dumpf->add_option("--flc", flc, "controller 1-4, 0 for all");
  dumpf->add_option("--grid", grid, "grid resolution per axis");
  dumpf->add_option("--out", out, "CSV path (stdout if omitted)");

  CLI::App* dumpq = app.add_subcommand("dump-qtable", "Run a scenario, dump a Q-table");
  dumpq->add_option("file", file, "scenario file")->required();
  dumpq->add_option("--node", node, "node id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  if (run->parsed()) return cmd_run(file, out);
  if (sweep->parsed()) return cmd_sweep(file, axis, values, seeds, routers, out);
  if (dumpf->parsed()) return cmd_dump_fuzzy(flc, grid, out);
  if (dumpq->parsed()) return cmd_dump_qtable(file, node);
  return kExitConfigError;
}

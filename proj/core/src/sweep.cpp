#include "dtn/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dtn/sim.hpp"

namespace dtn {

SweepAxis parse_axis(const std::string& name) {
  if (name == "duration") return SweepAxis::Duration;
  if (name == "buffer") return SweepAxis::Buffer;
  if (name == "ttl") return SweepAxis::Ttl;
  if (name == "mobility") return SweepAxis::Mobility;
  throw std::invalid_argument("unknown sweep axis: " + name);
}

Scenario apply_axis(const Scenario& base, SweepAxis axis, const std::string& value) {
  Scenario s = base;
  switch (axis) {
    case SweepAxis::Duration:
      s.duration = std::stod(value);
      break;
    case SweepAxis::Buffer:
      for (GroupSpec& g : s.groups) g.buffer_capacity = std::stoull(value);
      break;
    case SweepAxis::Ttl:
      s.messages.ttl_minutes = std::stod(value);
      break;
    case SweepAxis::Mobility:
      for (GroupSpec& g : s.groups) g.mobility = value;
      break;
  }
  s.name = base.name + "_" + value;
  validate_scenario(s);
  return s;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

SweepResult run_sweep(const Scenario& base, SweepAxis axis,
                      const std::vector<std::string>& values,
                      const std::vector<std::string>& routers,
                      const std::vector<std::uint64_t>& seeds,
                      const std::string& out_dir) {
  SweepResult result;
  std::string summary =
      "axis_value,router,runs,delivery_mean,delivery_stddev,overhead_mean,"
      "overhead_stddev\n";

  for (const std::string& value : values) {
    const Scenario with_value = apply_axis(base, axis, value);
    for (const std::string& router : routers) {
      std::vector<double> deliveries, overheads;
      for (std::uint64_t seed : seeds) {
        Scenario s = with_value;
        s.router = router;
        s.seed = seed;
        SimReport r = run_simulation(s);
        write_report_files(r, out_dir);
        deliveries.push_back(r.delivery_probability);
        if (r.overhead_ratio) overheads.push_back(*r.overhead_ratio);
        result.runs.push_back(std::move(r));
      }
      auto mean_std = [](const std::vector<double>& xs) -> std::pair<double, double> {
        if (xs.empty()) return {0.0, 0.0};
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= static_cast<double>(xs.size());
        return {mean, std::sqrt(var)};
      };
      const auto [dm, ds] = mean_std(deliveries);
      summary += value + "," + router + "," + std::to_string(seeds.size()) + "," +
                 fmt(dm) + "," + fmt(ds) + ",";
      if (overheads.empty()) {
        summary += "NA,NA\n";
      } else {
        const auto [om, os] = mean_std(overheads);
        summary += fmt(om) + "," + fmt(os) + "\n";
      }
    }
  }

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::ofstream f(fs::path(out_dir) / "summary.csv", std::ios::binary);
  if (!f) throw std::runtime_error("cannot write summary.csv in " + out_dir);
  f << summary;
  result.summary_csv = summary;
  return result;
}

}  // namespace dtn

#pragma once

#include <string>
#include <vector>

#include "dtn/metrics.hpp"
#include "dtn/scenario.hpp"

namespace dtn {

enum class SweepAxis { Duration, Buffer, Ttl, Mobility };

SweepAxis parse_axis(const std::string& name);

// Applies one axis value to a copy of the base scenario. Buffer values
// are bytes, duration and ttl in the scenario's native units, mobility
// values are model names.
Scenario apply_axis(const Scenario& base, SweepAxis axis, const std::string& value);

struct SweepResult {
  std::vector<SimReport> runs;  // |values| * |routers| * |seeds|
  std::string summary_csv;
};

// Runs the cartesian product of axis values, routers and seeds. Per-run
// report/series CSVs land in out_dir along with summary.csv.
SweepResult run_sweep(const Scenario& base, SweepAxis axis,
                      const std::vector<std::string>& values,
                      const std::vector<std::string>& routers,
                      const std::vector<std::uint64_t>& seeds,
                      const std::string& out_dir);

}  // namespace dtn

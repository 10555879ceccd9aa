// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "fsg/errors.hpp"
#include "fsg_cli/cli.hpp"

namespace fsg::cli {

SchemeConfig RunConfig::scheme() const {
  problem.validate();
  const GridSpec grid = GridSpec::from_mesh_size(a, b, h);
  const TimeSpec time = TimeSpec::from_step(final_time, tau);
  SchemeConfig cfg{grid, time, FractionalOrder(alpha), solve, startup_tol, startup_max_iter};
  cfg.validate();
  if (energy_stride < 1) throw ValidationError("energy stride must be >= 1");
  return cfg;
}

std::size_t RunConfig::resolved_snapshot_stride() const {
  if (snapshot_stride > 0) return snapshot_stride;
  const auto steps = static_cast<std::size_t>(std::llround(final_time / tau));
  return std::max<std::size_t>(steps / 100, 1);
}

RunConfig run_preset(const std::string& name) {
  RunConfig cfg;
  cfg.preset = name;
  if (name == "custom" || name == "table") {
    cfg.problem = ProblemSpec::breather(1.1);
    return cfg;
  }
  if (name == "fig3" || name == "fig5") {
    cfg.problem = name == "fig3" ? ProblemSpec::breather(1.0) : ProblemSpec::sech_pulse();
    cfg.a = -100.0;
    cfg.b = 100.0;
    cfg.h = 0.1;
    cfg.tau = 0.05;
    cfg.final_time = 20.0;
    cfg.snapshot_stride = 20;
    return cfg;
  }
  throw ValidationError("unknown run preset '" + name + "' (expected custom|table|fig3|fig5)");
}

LadderPreset ladder_preset(const std::string& name) {
  if (name == "table1") return {name, ProblemSpec::breather(1.1), {1.3, 1.75, 1.99, 2.0}};
  if (name == "table2") return {name, ProblemSpec::sech_pulse(), {1.3, 1.6, 1.9, 2.0}};
  if (name == "custom") return {name, ProblemSpec::breather(1.1), {2.0}};
  throw ValidationError("unknown convergence preset '" + name + "' (expected table1|table2|custom)");
}

EnergyPreset energy_preset(const std::string& name) {
  if (name == "fig2" || name == "custom") {
    return {name, ProblemSpec::breather(1.1), {1.3, 1.6, 1.75, 1.9, 1.99, 2.0}};
  }
  if (name == "fig4") {
    EnergyPreset p{name, ProblemSpec::sech_pulse(), {1.3, 1.6, 1.9, 2.0}};
    p.h = 0.05;
    return p;
  }
  throw ValidationError("unknown energy preset '" + name + "' (expected fig2|fig4|custom)");
}

}  // namespace fsg::cli

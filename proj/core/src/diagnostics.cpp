// SPDX-License-Identifier: Apache-2.0
#include "fsg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "fsg/errors.hpp"

namespace fsg {

double discrete_energy(const IeqState& state, const FracOperator& op) {
  const double h = op.grid().h();
  return 0.5 * (grid_norm_sq(h, state.v) + op.energy_seminorm_sq(state.u) +
                2.0 * grid_norm_sq(h, state.w));
}

double continuous_energy_on_grid(std::span<const double> u, std::span<const double> ut,
                                 const FracOperator& op) {
  const double h = op.grid().h();
  double potential = 0.0;
  for (double x : u) potential += 1.0 - std::cos(x);
  return 0.5 * (grid_norm_sq(h, ut) + op.energy_seminorm_sq(u)) + h * potential;
}

double auxiliary_drift(const IeqState& state) {
  double d = 0.0;
  for (std::size_t j = 0; j < state.size(); ++j) {
    d = std::max(d, std::abs(state.w[j] - std::sqrt(2.0 - std::cos(state.u[j]))));
  }
  return d;
}

void EnergySeries::record(std::size_t n, double t, double energy) {
  if (!entries_.empty() && n <= entries_.back().n) {
    throw ValidationError("EnergySeries: step indices must be strictly increasing");
  }
  if (entries_.empty() && energy == 0.0) {
    throw ValidationError("EnergySeries: initial energy is zero, relative error undefined");
  }
  const double e0 = entries_.empty() ? energy : entries_.front().energy;
  entries_.push_back(Entry{n, t, energy, std::abs((energy - e0) / e0)});
}

double EnergySeries::initial_energy() const {
  if (entries_.empty()) throw ValidationError("EnergySeries: empty");
  return entries_.front().energy;
}

double EnergySeries::max_relative_error() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.relative_error);
  return m;
}

Observer energy_recorder(const FracOperator& op, EnergySeries& series, std::size_t stride) {
  return Observer{stride, [&op, &series](const StepEvent& ev) {
                    series.record(ev.n, ev.t, discrete_energy(ev.state, op));
                  }};
}

double max_norm_error_exact(std::span<const double> numeric, const GridSpec& grid, double t,
                            double omega) {
  if (numeric.size() != grid.interior_size()) {
    throw ValidationError("max_norm_error_exact: length does not match grid");
  }
  double e = 0.0;
  for (std::size_t j = 0; j < numeric.size(); ++j) {
    e = std::max(e, std::abs(exact_breather(grid.node(j + 1), t, omega) - numeric[j]));
  }
  return e;
}

double max_norm_error_self(std::span<const double> coarse, const GridSpec& coarse_grid,
                           std::span<const double> fine, const GridSpec& fine_grid) {
  if (fine_grid.left() != coarse_grid.left() || fine_grid.right() != coarse_grid.right() ||
      fine_grid.subintervals() != 2 * coarse_grid.subintervals()) {
    throw ValidationError("max_norm_error_self: fine grid is not the bisected coarse grid");
  }
  if (coarse.size() != coarse_grid.interior_size() || fine.size() != fine_grid.interior_size()) {
    throw ValidationError("max_norm_error_self: vector lengths do not match grids");
  }
  double e = 0.0;
  // coarse interior node j (1-based) is fine node 2j; stored at index 2j-1.
  for (std::size_t j = 1; j <= coarse.size(); ++j) {
    e = std::max(e, std::abs(coarse[j - 1] - fine[2 * j - 1]));
  }
  return e;
}

std::vector<std::optional<double>> convergence_orders(std::span<const double> errors) {
  std::vector<std::optional<double>> p(errors.size());
  for (std::size_t i = 1; i < errors.size(); ++i) p[i] = std::log2(errors[i - 1] / errors[i]);
  return p;
}

ErrorReport convergence_ladder(const LadderSpec& spec) {
  if (spec.levels < 1) throw ValidationError("convergence_ladder: need at least one level");
  spec.problem.validate();
  const FractionalOrder alpha(spec.alpha);
  const bool exact = spec.problem.kind == ProblemKind::Breather && spec.alpha == 2.0;
  const std::size_t runs = exact ? spec.levels : spec.levels + 1;

  const GridSpec base_grid = GridSpec::from_mesh_size(spec.a, spec.b, spec.base_h);
  const TimeSpec base_time = TimeSpec::from_step(spec.final_time, spec.base_tau);
  std::vector<GridSpec> grids{base_grid};
  std::vector<TimeSpec> times{base_time};
  for (std::size_t i = 1; i < runs; ++i) {
    grids.push_back(grids.back().refined());
    times.push_back(times.back().refined());
  }

  auto run_level = [&](std::size_t i) {
    const SchemeConfig cfg{grids[i], times[i], alpha, spec.solve};
    const auto data = initial_data(spec.problem, grids[i]);
    try {
      return run(cfg, data.phi, data.psi).final_state.u;
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "ladder level " << i << ": " << e.what();
      throw SolverError(os.str());
    }
  };

  std::vector<std::vector<double>> finals(runs);
  if (spec.parallel && runs > 1) {
    std::vector<std::future<std::vector<double>>> jobs;
    for (std::size_t i = 0; i < runs; ++i) jobs.push_back(std::async(std::launch::async, run_level, i));
    for (std::size_t i = 0; i < runs; ++i) finals[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < runs; ++i) finals[i] = run_level(i);
  }

  ErrorReport report;
  report.mode = exact ? ErrorMode::ExactSolution : ErrorMode::SelfComparison;
  std::vector<double> errors(spec.levels);
  for (std::size_t i = 0; i < spec.levels; ++i) {
    errors[i] = exact ? max_norm_error_exact(finals[i], grids[i], spec.final_time, spec.problem.omega)
                      : max_norm_error_self(finals[i], grids[i], finals[i + 1], grids[i + 1]);
  }
  const auto orders = convergence_orders(errors);
  for (std::size_t i = 0; i < spec.levels; ++i) {
    report.ladder.push_back({grids[i].h(), times[i].tau(), errors[i], orders[i]});
  }
  return report;
}

}  // namespace fsg

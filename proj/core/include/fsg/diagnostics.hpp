// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fsg/frac_operator.hpp"
#include "fsg/grid.hpp"
#include "fsg/ieq_scheme.hpp"
#include "fsg/problems.hpp"

namespace fsg {

/// E^n = 1/2 (||V||^2 + ||Lambda^alpha U||^2 + 2 ||W||^2).
double discrete_energy(const IeqState& state, const FracOperator& op);

/// Continuous energy 1/2 int (u_t^2 + |(-Delta)^{alpha/4} u|^2 + 2(1 - cos u)) dx
/// evaluated with the grid quadrature and the discrete seminorm. At the
/// initial level it differs from discrete_energy by h (M-1), the constant
/// introduced by w^2 = 2 - cos u.
double continuous_energy_on_grid(std::span<const double> u, std::span<const double> ut,
                                 const FracOperator& op);

/// ||W - sqrt(2 - cos U)||_inf. Recorded only; W is never re-projected.
double auxiliary_drift(const IeqState& state);

/// Time series of E^n and RE^n = |(E^n - E^0) / E^0|.
class EnergySeries {
 public:
  struct Entry {
    std::size_t n;
    double t;
    double energy;
    double relative_error;
  };

  /// Entries must arrive with strictly increasing n; the first one fixes E^0.
  void record(std::size_t n, double t, double energy);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  double initial_energy() const;
  double max_relative_error() const;

 private:
  std::vector<Entry> entries_;
};

/// Observer recording discrete_energy at the given stride.
Observer energy_recorder(const FracOperator& op, EnergySeries& series, std::size_t stride = 1);

/// max_j |u(x_j, t) - U_j| against the breather (alpha = 2 only).
double max_norm_error_exact(std::span<const double> numeric, const GridSpec& grid, double t,
                            double omega);

/// max_j |U_{M,j} - U_{2M,2j}| over the coarse interior nodes. The fine grid
/// must be the coarse grid with every cell bisected.
double max_norm_error_self(std::span<const double> coarse, const GridSpec& coarse_grid,
                           std::span<const double> fine, const GridSpec& fine_grid);

enum class ErrorMode { ExactSolution, SelfComparison };

struct ErrorReport {
  struct Row {
    double h;
    double tau;
    double error;
    std::optional<double> order;
  };
  ErrorMode mode = ErrorMode::SelfComparison;
  std::vector<Row> ladder;
};

/// p_i = log2(e_{i-1} / e_i); the first entry is empty.
std::vector<std::optional<double>> convergence_orders(std::span<const double> errors);

struct LadderSpec {
  ProblemSpec problem;
  double alpha = 2.0;
  double a = -20.0;
  double b = 20.0;
  double base_h = 0.2;
  double base_tau = 0.02;
  std::size_t levels = 4;
  double final_time = 1.0;
  SolveConfig solve{};
  /// Levels run on separate threads when true.
  bool parallel = true;
};

/// Runs the scheme at (h, tau), (h/2, tau/2), ... and reports errors and
/// orders. Exact mode is used for the breather at alpha = 2; otherwise each
/// level is compared with the next finer run, so levels + 1 runs are made.
ErrorReport convergence_ladder(const LadderSpec& spec);

}  // namespace fsg

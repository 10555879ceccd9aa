// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fsg/frac_operator.hpp"
#include "fsg/grid.hpp"
#include "fsg/linear_solvers.hpp"

namespace fsg {

/// Grid values of (u, u_t, w) at one time level, interior nodes only.
struct IeqState {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;
  double t = 0.0;
  std::size_t n = 0;

  std::size_t size() const noexcept { return u.size(); }
};

/// Initial level with the auxiliary variable w = sqrt(2 - cos u) (C_0 = 1).
IeqState make_initial_state(std::span<const double> phi, std::span<const double> psi);

/// B(x) = sin(x) / sqrt(2 - cos(x)); |B| <= 1 for all x.
double b_func(double x);

struct SchemeConfig {
  GridSpec grid;
  TimeSpec time;
  FractionalOrder alpha;
  SolveConfig solve{};
  double startup_tol = 1e-14;
  std::size_t startup_max_iter = 200;

  double tau() const noexcept { return time.tau(); }
  void validate() const;
};

/// Per-step solver bookkeeping. `fixed_point_iterations` is nonzero only for
/// the startup step; `solve` accumulates over its inner linear solves.
struct StepReport {
  SolveStats solve;
  std::size_t linear_solves = 0;
  std::size_t fixed_point_iterations = 0;
};

/// Linearly implicit Crank-Nicolson stepper for the quadratised system
///   u_t = v,  v_t = -A_h u - B(u) w,  w_t = B(u) v / 2.
///
/// Each step reduces to one SPD solve for the half-step displacement,
///   (I + tau^2/4 A_h + tau^2/8 diag(B^2)) U^{n+1/2}
///       = U^n + tau/2 V^n - tau^2/4 B.W^n + tau^2/8 B^2.U^n,
/// after which V and W at the half step follow explicitly and every variable
/// is extrapolated as X^{n+1} = 2 X^{n+1/2} - X^n.
class IeqStepper {
 public:
  explicit IeqStepper(SchemeConfig cfg);

  const SchemeConfig& config() const noexcept { return cfg_; }
  const FracOperator& op() const noexcept { return op_; }

  /// First step: same reduction with B evaluated at the unknown U^{1/2},
  /// solved by fixed-point iteration. Throws SolverError on non-convergence.
  IeqState startup_step(const IeqState& s0, StepReport* report = nullptr) const;

  /// Regular step, B evaluated at the extrapolation (3U^n - U^{n-1})/2.
  IeqState cn_step(const IeqState& prev, const IeqState& cur, StepReport* report = nullptr) const;

  /// Half-step displacement for given B values; exposed for the block-system check.
  std::vector<double> solve_half_step(const IeqState& cur, std::span<const double> b_values,
                                      std::span<const double> guess, StepReport* report) const;
  /// Completes a step from U^{n+1/2}.
  IeqState finish_step(const IeqState& cur, std::span<const double> b_values,
                       std::span<const double> u_half) const;

 private:
  SchemeConfig cfg_;
  FracOperator op_;
};

struct StepEvent {
  std::size_t n;
  double t;
  const IeqState& state;
  const StepReport& report;
};

/// Observer invoked at n = 0, at every multiple of `stride`, and at n = N.
struct Observer {
  std::size_t stride = 1;
  std::function<void(const StepEvent&)> callback;
};

struct RunSummary {
  std::size_t steps = 0;
  std::size_t startup_iterations = 0;
  std::size_t total_linear_iterations = 0;
  std::size_t max_linear_iterations = 0;
  double max_residual = 0.0;
  double seconds = 0.0;
  std::size_t fft_embedding_size = 0;
};

struct RunResult {
  IeqState final_state;
  RunSummary summary;
};

/// Runs startup_step then N-1 regular steps from u(x,0) = phi, u_t(x,0) = psi.
/// Step failures are rethrown with the step index prepended.
RunResult run(const SchemeConfig& cfg, std::span<const double> phi, std::span<const double> psi,
              std::span<const Observer> observers = {});

}  // namespace fsg

// SPDX-License-Identifier: Apache-2.0
#include "fsg/ieq_scheme.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "fsg/errors.hpp"

namespace fsg {

IeqState make_initial_state(std::span<const double> phi, std::span<const double> psi) {
  if (phi.size() != psi.size()) throw ValidationError("initial data: phi/psi length mismatch");
  IeqState s;
  s.u.assign(phi.begin(), phi.end());
  s.v.assign(psi.begin(), psi.end());
  s.w.resize(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) s.w[j] = std::sqrt(2.0 - std::cos(phi[j]));
  return s;
}

double b_func(double x) { return std::sin(x) / std::sqrt(2.0 - std::cos(x)); }

void SchemeConfig::validate() const {
  solve.validate();
  if (!(startup_tol > 0.0)) throw ValidationError("startup_tol must be > 0");
  if (startup_max_iter < 1) throw ValidationError("startup_max_iter must be >= 1");
}

IeqStepper::IeqStepper(SchemeConfig cfg) : cfg_(std::move(cfg)), op_(cfg_.alpha, cfg_.grid) {
  cfg_.validate();
}

std::vector<double> IeqStepper::solve_half_step(const IeqState& cur,
                                                std::span<const double> b_values,
                                                std::span<const double> guess,
                                                StepReport* report) const {
  const std::size_t n = cur.size();
  const double tau = cfg_.tau();
  const double q = 0.25 * tau * tau;
  std::vector<double> diag(n), rhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double b = b_values[j];
    diag[j] = 0.5 * q * b * b;
    rhs[j] = cur.u[j] + 0.5 * tau * cur.v[j] - q * b * cur.w[j] + diag[j] * cur.u[j];
  }
  const StepMatrix mat(op_, tau, std::move(diag));
  SolveResult res = solve(mat, rhs, cfg_.solve, guess);
  if (report) {
    report->solve.iterations += res.stats.iterations;
    report->solve.residual = std::max(report->solve.residual, res.stats.residual);
    report->solve.seconds += res.stats.seconds;
    ++report->linear_solves;
  }
  return std::move(res.x);
}

IeqState IeqStepper::finish_step(const IeqState& cur, std::span<const double> b_values,
                                 std::span<const double> u_half) const {
  const std::size_t n = cur.size();
  const double tau = cfg_.tau();
  IeqState next;
  next.u.resize(n);
  next.v.resize(n);
  next.w.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double du = u_half[j] - cur.u[j];
    const double v_half = 2.0 * du / tau;
    const double w_half = cur.w[j] + 0.5 * b_values[j] * du;
    next.u[j] = 2.0 * u_half[j] - cur.u[j];
    next.v[j] = 2.0 * v_half - cur.v[j];
    next.w[j] = 2.0 * w_half - cur.w[j];
  }
  next.n = cur.n + 1;
  next.t = static_cast<double>(next.n) * tau;
  return next;
}

IeqState IeqStepper::startup_step(const IeqState& s0, StepReport* report) const {
  const std::size_t n = s0.size();
  if (n != op_.size()) throw ValidationError("startup_step: state size does not match grid");
  const double tau = cfg_.tau();

  std::vector<double> u_half(n), b(n);
  for (std::size_t j = 0; j < n; ++j) u_half[j] = s0.u[j] + 0.5 * tau * s0.v[j];

  for (std::size_t k = 1; k <= cfg_.startup_max_iter; ++k) {
    std::transform(u_half.begin(), u_half.end(), b.begin(), b_func);
    std::vector<double> next = solve_half_step(s0, b, u_half, report);
    double change = 0.0;
    for (std::size_t j = 0; j < n; ++j) change = std::max(change, std::abs(next[j] - u_half[j]));
    u_half = std::move(next);
    if (change <= cfg_.startup_tol) {
      if (report) report->fixed_point_iterations = k;
      // B at the converged midpoint, so that the W update is consistent.
      std::transform(u_half.begin(), u_half.end(), b.begin(), b_func);
      return finish_step(s0, b, u_half);
    }
    if (k == cfg_.startup_max_iter) {
      std::ostringstream os;
      os << "startup fixed-point iteration did not converge in " << cfg_.startup_max_iter
         << " iterations (last change " << change << ", tolerance " << cfg_.startup_tol << ")";
      throw SolverError(os.str());
    }
  }
  throw SolverError("startup: unreachable");
}

IeqState IeqStepper::cn_step(const IeqState& prev, const IeqState& cur,
                             StepReport* report) const {
  const std::size_t n = cur.size();
  if (n != op_.size() || prev.size() != n) {
    throw ValidationError("cn_step: state size does not match grid");
  }
  std::vector<double> b(n), guess(n);
  for (std::size_t j = 0; j < n; ++j) {
    b[j] = b_func(1.5 * cur.u[j] - 0.5 * prev.u[j]);
    guess[j] = 0.5 * (cur.u[j] + prev.u[j]);
  }
  const auto u_half = solve_half_step(cur, b, guess, report);
  return finish_step(cur, b, u_half);
}

namespace {

void notify(std::span<const Observer> observers, const IeqState& s, const StepReport& rep,
            std::size_t total_steps) {
  for (const auto& obs : observers) {
    const std::size_t stride = std::max<std::size_t>(obs.stride, 1);
    if (s.n % stride == 0 || s.n == total_steps) obs.callback(StepEvent{s.n, s.t, s, rep});
  }
}

void accumulate(RunSummary& sum, const StepReport& rep) {
  sum.total_linear_iterations += rep.solve.iterations;
  sum.max_linear_iterations = std::max(sum.max_linear_iterations, rep.solve.iterations);
  sum.max_residual = std::max(sum.max_residual, rep.solve.residual);
}

}  // namespace

RunResult run(const SchemeConfig& cfg, std::span<const double> phi, std::span<const double> psi,
              std::span<const Observer> observers) {
  const auto start = std::chrono::steady_clock::now();
  const IeqStepper stepper(cfg);
  if (phi.size() != cfg.grid.interior_size()) {
    throw ValidationError("run: initial data length does not match grid");
  }
  const std::size_t total = cfg.time.steps();

  RunResult result;
  result.summary.fft_embedding_size = stepper.op().matrix().embedding_size();

  IeqState prev = make_initial_state(phi, psi);
  notify(observers, prev, StepReport{}, total);

  IeqState cur;
  try {
    StepReport rep;
    cur = stepper.startup_step(prev, &rep);
    result.summary.startup_iterations = rep.fixed_point_iterations;
    accumulate(result.summary, rep);
    notify(observers, cur, rep, total);
  } catch (const std::exception& e) {
    throw SolverError("step 1: " + std::string(e.what()));
  }

  for (std::size_t step = 2; step <= total; ++step) {
    StepReport rep;
    try {
      IeqState next = stepper.cn_step(prev, cur, &rep);
      prev = std::move(cur);
      cur = std::move(next);
    } catch (const std::exception& e) {
      throw SolverError("step " + std::to_string(step) + ": " + e.what());
    }
    accumulate(result.summary, rep);
    notify(observers, cur, rep, total);
  }

  result.summary.steps = total;
  result.summary.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.final_state = std::move(cur);
  return result;
}

}  // namespace fsg

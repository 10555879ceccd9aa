// SPDX-License-Identifier: Apache-2.0
#include "fsg/linear_solvers.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "fsg/errors.hpp"

namespace fsg {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    std::ostringstream os;
    os << what << ": length " << got << " != system size " << want;
    throw ValidationError(os.str());
  }
}

}  // namespace

std::string_view to_string(SolveMethod m) { return m == SolveMethod::Direct ? "direct" : "cg"; }

std::string_view to_string(PreconditionerKind p) {
  return p == PreconditionerKind::Circulant ? "circulant" : "none";
}

SolveMethod parse_solve_method(std::string_view s) {
  if (s == "direct" || s == "D-IEQ") return SolveMethod::Direct;
  if (s == "cg" || s == "fft" || s == "F-IEQ") return SolveMethod::CG;
  throw ValidationError("unknown solver '" + std::string(s) + "' (expected direct|cg)");
}

PreconditionerKind parse_preconditioner(std::string_view s) {
  if (s == "none") return PreconditionerKind::None;
  if (s == "circulant") return PreconditionerKind::Circulant;
  throw ValidationError("unknown preconditioner '" + std::string(s) + "' (expected none|circulant)");
}

void SolveConfig::validate() const {
  if (!(cg_rel_tol > 0.0)) throw ValidationError("cg_rel_tol must be > 0");
}

// ---------------------------------------------------------------------------

StepMatrix::StepMatrix(const SymmetricToeplitz& toeplitz, double weight, std::vector<double> diag)
    : toeplitz_(&toeplitz), weight_(weight), diag_(std::move(diag)) {
  check_size(diag_.size(), toeplitz.size(), "StepMatrix diagonal");
  if (!(weight >= 0.0)) throw ValidationError("StepMatrix: weight must be >= 0");
  for (double d : diag_) {
    if (!(d >= 0.0)) throw ValidationError("StepMatrix: diagonal term must be >= 0");
  }
}

StepMatrix::StepMatrix(const FracOperator& op, double tau, std::vector<double> diag)
    : StepMatrix(op.matrix(), 0.25 * tau * tau * op.scale(), std::move(diag)) {
  if (!(tau > 0.0)) throw ValidationError("StepMatrix: tau must be > 0");
}

void StepMatrix::apply(std::span<const double> x, std::span<double> y, FftWorkspace& ws) const {
  check_size(x.size(), size(), "StepMatrix::apply");
  toeplitz_->apply_fft(x, y, ws);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + weight_ * y[i] + diag_[i] * x[i];
}

void StepMatrix::apply_dense(std::span<const double> x, std::span<double> y) const {
  check_size(x.size(), size(), "StepMatrix::apply_dense");
  toeplitz_->apply_dense(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + weight_ * y[i] + diag_[i] * x[i];
}

Eigen::MatrixXd StepMatrix::to_dense() const {
  Eigen::MatrixXd m = weight_ * toeplitz_->to_dense();
  for (std::size_t i = 0; i < size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    m(k, k) += 1.0 + diag_[i];
  }
  return m;
}

// ---------------------------------------------------------------------------

CirculantPreconditioner::CirculantPreconditioner(const StepMatrix& m) : n_(m.size()) {
  const auto t = m.toeplitz().first_column();
  column_.resize(n_);
  column_[0] = t[0];
  for (std::size_t k = 1; k < n_; ++k) column_[k] = (k <= n_ / 2) ? t[k] : t[n_ - k];
  circulant_ = std::make_shared<const SymmetricCirculant>(column_);

  const auto d = m.diag();
  const double mean_diag =
      n_ ? std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n_) : 0.0;
  const auto lam = circulant_->eigenvalues();
  eigenvalues_.resize(lam.size());
  inverse_.resize(lam.size());
  for (std::size_t k = 0; k < lam.size(); ++k) {
    eigenvalues_[k] = 1.0 + m.weight() * lam[k] + mean_diag;
    if (!(eigenvalues_[k] > 0.0)) identity_ = true;
    inverse_[k] = 1.0 / eigenvalues_[k];
  }
  if (identity_) {
    std::clog << "warning: circulant preconditioner has a nonpositive eigenvalue; "
                 "falling back to identity\n";
  }
}

void CirculantPreconditioner::apply(std::span<const double> r, std::span<double> z,
                                    FftWorkspace& ws) const {
  check_size(r.size(), n_, "CirculantPreconditioner::apply");
  if (identity_) {
    std::copy(r.begin(), r.end(), z.begin());
    return;
  }
  circulant_->apply_spectral(inverse_, r, z, ws);
}

CirculantPreconditioner build_circulant_preconditioner(const StepMatrix& m) {
  return CirculantPreconditioner(m);
}

// ---------------------------------------------------------------------------

namespace {

SolveResult solve_direct(const StepMatrix& m, std::span<const double> rhs) {
  const auto n = static_cast<Eigen::Index>(m.size());
  const double bn = norm2(rhs);
  if (bn == 0.0) return SolveResult{std::vector<double>(m.size(), 0.0), {}};
  const Eigen::LLT<Eigen::MatrixXd> llt(m.to_dense());
  if (llt.info() != Eigen::Success) {
    throw SolverError("direct solve: Cholesky factorisation failed (matrix not SPD)");
  }
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
  const Eigen::VectorXd x = llt.solve(b);

  SolveResult out;
  out.x.assign(x.data(), x.data() + n);
  std::vector<double> r(m.size());
  m.apply_dense(out.x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs[i];
  out.stats.iterations = 1;
  out.stats.residual = norm2(r) / bn;
  return out;
}

SolveResult solve_cg(const StepMatrix& m, std::span<const double> rhs, const SolveConfig& cfg,
                     std::span<const double> x0) {
  const std::size_t n = m.size();
  SolveResult out;
  out.x.assign(n, 0.0);
  const double bn = norm2(rhs);
  if (bn == 0.0) return out;
  if (!x0.empty()) {
    check_size(x0.size(), n, "CG initial guess");
    std::copy(x0.begin(), x0.end(), out.x.begin());
  }

  std::optional<CirculantPreconditioner> precond;
  std::optional<FftWorkspace> pws;
  if (cfg.precond == PreconditionerKind::Circulant) {
    precond.emplace(m);
    pws.emplace(precond->make_workspace());
  }
  auto apply_precond = [&](std::span<const double> r, std::span<double> z) {
    if (precond) {
      precond->apply(r, z, *pws);
    } else {
      std::copy(r.begin(), r.end(), z.begin());
    }
  };

  auto ws = m.make_workspace();
  std::vector<double>& x = out.x;
  std::vector<double> r(n), z(n), p(n), ap(n);

  auto true_residual = [&]() {
    m.apply(x, ap, ws);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
    return norm2(r);
  };

  const double target = cfg.cg_rel_tol * bn;
  const std::size_t max_iter = cfg.max_iterations(n);
  double rn = true_residual();
  std::size_t it = 0;

  // Outer loop restarts from the true residual whenever the recursive one has
  // drifted below the target without the true one following.
  while (rn > target) {
    apply_precond(r, z);
    std::copy(z.begin(), z.end(), p.begin());
    double rz = dot(r, z);
    while (rn > target) {
      if (it == max_iter) {
        std::ostringstream os;
        os << "CG did not converge in " << max_iter << " iterations (relative residual "
           << rn / bn << ", tolerance " << cfg.cg_rel_tol << ")";
        throw SolverError(os.str());
      }
      ++it;
      m.apply(p, ap, ws);
      const double step = rz / dot(p, ap);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += step * p[i];
        r[i] -= step * ap[i];
      }
      rn = norm2(r);
      if (rn <= target) break;
      apply_precond(r, z);
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    rn = true_residual();
  }
  out.stats.iterations = it;
  out.stats.residual = rn / bn;
  return out;
}

}  // namespace

SolveResult solve(const StepMatrix& m, std::span<const double> rhs, const SolveConfig& cfg,
                  std::span<const double> initial_guess) {
  cfg.validate();
  check_size(rhs.size(), m.size(), "solve rhs");
  const auto start = std::chrono::steady_clock::now();
  SolveResult res = cfg.method == SolveMethod::Direct ? solve_direct(m, rhs)
                                                      : solve_cg(m, rhs, cfg, initial_guess);
  res.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

// ---------------------------------------------------------------------------

BlockSystem assemble_block_system(const FracOperator& op, std::span<const double> b_values,
                                  std::span<const double> u, std::span<const double> v,
                                  std::span<const double> w, double tau) {
  const std::size_t n = op.size();
  if (n + 1 > 128) throw ValidationError("assemble_block_system: only for M <= 128");
  check_size(b_values.size(), n, "assemble_block_system B");
  check_size(u.size(), n, "assemble_block_system U");
  check_size(v.size(), n, "assemble_block_system V");
  check_size(w.size(), n, "assemble_block_system W");

  const auto N = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd lap = op.scale() * op.matrix().to_dense();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
  Eigen::MatrixXd diag_b = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) diag_b(i, i) = b_values[static_cast<std::size_t>(i)];

  BlockSystem sys;
  sys.matrix = Eigen::MatrixXd::Zero(3 * N, 3 * N);
  sys.matrix.block(0, 0, N, N) = I;
  sys.matrix.block(0, N, N, N) = -0.5 * tau * I;
  sys.matrix.block(N, 0, N, N) = 0.5 * tau * lap;
  sys.matrix.block(N, N, N, N) = I;
  sys.matrix.block(N, 2 * N, N, N) = 0.5 * tau * diag_b;
  sys.matrix.block(2 * N, N, N, N) = -0.5 * tau * diag_b;
  sys.matrix.block(2 * N, 2 * N, N, N) = 2.0 * I;

  sys.rhs.resize(3 * N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto k = static_cast<std::size_t>(i);
    sys.rhs(i) = u[k];
    sys.rhs(N + i) = v[k];
    sys.rhs(2 * N + i) = 2.0 * w[k];
  }
  return sys;
}

}  // namespace fsg

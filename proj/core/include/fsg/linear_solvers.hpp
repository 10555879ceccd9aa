// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fsg/frac_operator.hpp"
#include "fsg/toeplitz.hpp"

namespace fsg {

/// Direct: dense Cholesky of the reduced system ("D-IEQ").
/// CG: conjugate gradients with FFT mat-vecs ("F-IEQ").
enum class SolveMethod { Direct, CG };
enum class PreconditionerKind { None, Circulant };

std::string_view to_string(SolveMethod m);
std::string_view to_string(PreconditionerKind p);
SolveMethod parse_solve_method(std::string_view s);
PreconditionerKind parse_preconditioner(std::string_view s);

struct SolveConfig {
  SolveMethod method = SolveMethod::CG;
  double cg_rel_tol = 1e-12;
  /// 0 selects the default of 10 * (M - 1).
  std::size_t cg_max_iter = 0;
  PreconditionerKind precond = PreconditionerKind::None;

  void validate() const;
  std::size_t max_iterations(std::size_t n) const { return cg_max_iter ? cg_max_iter : 10 * n; }
};

struct SolveStats {
  std::size_t iterations = 0;
  /// ||M x - b||_2 / ||b||_2 of the returned solution (0 when b = 0).
  double residual = 0.0;
  double seconds = 0.0;
};

/// M_sys = I + weight * T + diag(d), with T symmetric positive definite
/// Toeplitz and d >= 0. For a time step of the scheme, weight = tau^2/4 h^{-alpha}
/// and d = (tau^2/8) B^2. The matrix is never formed on the FFT path.
///
/// Holds a reference to the Toeplitz part; it must outlive the StepMatrix.
class StepMatrix {
 public:
  StepMatrix(const SymmetricToeplitz& toeplitz, double weight, std::vector<double> diag);
  StepMatrix(const FracOperator& op, double tau, std::vector<double> diag);

  std::size_t size() const noexcept { return diag_.size(); }
  double weight() const noexcept { return weight_; }
  std::span<const double> diag() const noexcept { return diag_; }
  const SymmetricToeplitz& toeplitz() const noexcept { return *toeplitz_; }

  FftWorkspace make_workspace() const { return toeplitz_->make_workspace(); }
  void apply(std::span<const double> x, std::span<double> y, FftWorkspace& ws) const;
  void apply_dense(std::span<const double> x, std::span<double> y) const;
  Eigen::MatrixXd to_dense() const;

 private:
  const SymmetricToeplitz* toeplitz_;
  double weight_;
  std::vector<double> diag_;
};

/// Strang circulant approximation of M_sys: the Toeplitz part is replaced by
/// its Strang circulant and diag(d) by mean(d) I. Applying it costs one
/// forward and one inverse FFT of length M-1. If any circulant eigenvalue is
/// nonpositive it degrades to the identity and logs a warning.
class CirculantPreconditioner {
 public:
  explicit CirculantPreconditioner(const StepMatrix& m);

  bool is_identity() const noexcept { return identity_; }
  std::size_t size() const noexcept { return n_; }
  /// Eigenvalues of the approximation of M_sys (frequencies 0..n/2).
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

  FftWorkspace make_workspace() const { return FftWorkspace(n_); }
  void apply(std::span<const double> r, std::span<double> z, FftWorkspace& ws) const;

 private:
  std::size_t n_;
  bool identity_ = false;
  std::vector<double> eigenvalues_;
  std::vector<double> inverse_;
  std::vector<double> column_;
  std::shared_ptr<const SymmetricCirculant> circulant_;
};

CirculantPreconditioner build_circulant_preconditioner(const StepMatrix& m);

struct SolveResult {
  std::vector<double> x;
  SolveStats stats;
};

/// Solves M_sys x = rhs. `initial_guess` (optional) warm-starts CG; it is
/// ignored by the direct path. Throws SolverError if CG does not reach
/// cg_rel_tol within the iteration budget.
SolveResult solve(const StepMatrix& m, std::span<const double> rhs, const SolveConfig& cfg,
                  std::span<const double> initial_guess = {});

/// Dense 3(M-1) x 3(M-1) system A Z = F for Z = (U, V, W) at the half step,
///
///   [ I            -tau/2 I        0            ] [U]   [ U^n  ]
///   [ tau/2 A_h     I              tau/2 diag(B)] [V] = [ V^n  ]
///   [ 0            -tau/2 diag(B)  2I           ] [W]   [ 2W^n ]
///
/// with A_h the discrete fractional Laplacian. Test-size only (M <= 128).
struct BlockSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;

  /// Antisymmetric part (A - A^T)/2.
  Eigen::MatrixXd antisymmetric_part() const { return 0.5 * (matrix - matrix.transpose()); }
  /// Symmetric part (A + A^T)/2.
  Eigen::MatrixXd symmetric_part() const { return 0.5 * (matrix + matrix.transpose()); }
  Eigen::VectorXd solve() const { return matrix.partialPivLu().solve(rhs); }
};

BlockSystem assemble_block_system(const FracOperator& op, std::span<const double> b_values,
                                  std::span<const double> u, std::span<const double> v,
                                  std::span<const double> w, double tau);

}  // namespace fsg

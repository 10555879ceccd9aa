// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fsg/grid.hpp"
#include "fsg/toeplitz.hpp"

namespace fsg {

/// One-sided coefficients c_0, ..., c_{L-1} of the fractional centred
/// difference; c_{-k} = c_k.
struct SymbolKernel {
  FractionalOrder alpha;
  std::vector<double> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
  double operator[](std::size_t k) const { return coeffs[k]; }
};

/// c_0 = Gamma(alpha+1) / Gamma(alpha/2+1)^2 (through log-Gamma), then
/// c_{k+1} = c_k (k - alpha/2) / (k + alpha/2 + 1). The recurrence runs in
/// extended precision so every entry is within a few ulps of the exact value.
SymbolKernel generate_kernel(FractionalOrder alpha, std::size_t length);

/// Discrete fractional Laplacian on the interior nodes of a grid:
///   (A u)_j = h^{-alpha} sum_k c_{j-k} u_k,   1 <= j, k <= M-1,
/// i.e. a scaled symmetric positive definite Toeplitz matrix C.
class FracOperator {
 public:
  FracOperator(FractionalOrder alpha, GridSpec grid);

  FractionalOrder alpha() const noexcept { return kernel_.alpha; }
  const GridSpec& grid() const noexcept { return grid_; }
  const SymbolKernel& kernel() const noexcept { return kernel_; }
  const SymmetricToeplitz& matrix() const noexcept { return matrix_; }
  std::size_t size() const noexcept { return matrix_.size(); }
  /// h^{-alpha}
  double scale() const noexcept { return scale_; }

  FftWorkspace make_workspace() const { return matrix_.make_workspace(); }

  std::vector<double> apply_dense(std::span<const double> u) const;
  void apply_dense(std::span<const double> u, std::span<double> out) const;
  std::vector<double> apply_fft(std::span<const double> u) const;
  void apply_fft(std::span<const double> u, std::span<double> out, FftWorkspace& ws) const;

  /// ||Lambda^alpha u||^2 = h (A u, u) = h^{1-alpha} u^T C u.
  double energy_seminorm_sq(std::span<const double> u) const;
  double energy_seminorm_sq(std::span<const double> u, FftWorkspace& ws) const;

 private:
  void check_length(std::size_t n) const;

  GridSpec grid_;
  SymbolKernel kernel_;
  SymmetricToeplitz matrix_;
  double scale_;
};

/// Discrete inner product (u, v) = h sum_j u_j v_j.
double grid_inner(double h, std::span<const double> u, std::span<const double> v);
double grid_norm_sq(double h, std::span<const double> u);
double max_norm(std::span<const double> u);

}  // namespace fsg

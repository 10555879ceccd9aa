// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fsg {

namespace detail {
struct RealFftPlan;
}

/// Caller-owned FFT scratch for one transform length. Not shareable between
/// threads; obtain one per thread from the operator that will use it.
class FftWorkspace {
 public:
  explicit FftWorkspace(std::size_t length);
  ~FftWorkspace();
  FftWorkspace(FftWorkspace&&) noexcept;
  FftWorkspace& operator=(FftWorkspace&&) noexcept;
  FftWorkspace(const FftWorkspace&) = delete;
  FftWorkspace& operator=(const FftWorkspace&) = delete;

  std::size_t length() const noexcept { return length_; }
  double* real() noexcept { return real_; }
  std::complex<double>* spectrum() noexcept { return spectrum_; }

 private:
  std::size_t length_ = 0;
  double* real_ = nullptr;
  std::complex<double>* spectrum_ = nullptr;
};

/// Symmetric circulant matrix of order n, diagonalised by the real DFT.
/// Because the generating column satisfies s_k = s_{n-k}, all eigenvalues are real.
class SymmetricCirculant {
 public:
  /// `column` must have length n >= 1 with column[k] == column[n-k].
  explicit SymmetricCirculant(std::vector<double> column);

  std::size_t size() const noexcept { return n_; }
  /// Eigenvalues indexed by the non-redundant frequencies 0..n/2.
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

  FftWorkspace make_workspace() const { return FftWorkspace(n_); }

  /// y = f(Lambda) x, where `weights[k]` multiplies frequency k (length n/2+1).
  void apply_spectral(std::span<const double> weights, std::span<const double> x,
                      std::span<double> y, FftWorkspace& ws) const;

 private:
  std::size_t n_;
  std::vector<double> column_;
  std::vector<double> eigenvalues_;
  std::shared_ptr<const detail::RealFftPlan> plan_;
};

/// Real symmetric Toeplitz matrix T_{ij} = t_{|i-j|} of order n, with an exact
/// O(n^2) product and an O(n log n) product through circulant embedding.
///
/// The embedding length is the smallest power of two >= 2n. The embedded
/// column is [t_0, ..., t_{n-1}, 0, ..., 0, t_{n-1}, ..., t_1].
class SymmetricToeplitz {
 public:
  explicit SymmetricToeplitz(std::vector<double> first_column);

  std::size_t size() const noexcept { return column_.size(); }
  std::span<const double> first_column() const noexcept { return column_; }
  std::size_t embedding_size() const noexcept { return embedding_; }

  FftWorkspace make_workspace() const { return FftWorkspace(embedding_); }

  void apply_dense(std::span<const double> x, std::span<double> y) const;
  void apply_fft(std::span<const double> x, std::span<double> y, FftWorkspace& ws) const;

  Eigen::MatrixXd to_dense() const;

 private:
  std::vector<double> column_;
  std::size_t embedding_;
  std::vector<double> symbol_;  // embedding eigenvalues, already divided by the length
  std::shared_ptr<const detail::RealFftPlan> plan_;
};

/// Smallest power of two >= n (n >= 1).
std::size_t next_power_of_two(std::size_t n);

}  // namespace fsg

// SPDX-License-Identifier: Apache-2.0
#include "fsg/toeplitz.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace fsg {

namespace {

// FFTW's planner is not reentrant; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

namespace detail {

// Paired r2c / c2r plans of one length. Plans are created on scratch buffers
// from fftw_malloc, so any FftWorkspace of the same length satisfies the
// alignment requirement of fftw_execute_dft_*.
struct RealFftPlan {
  explicit RealFftPlan(std::size_t n) : length(n) {
    FftWorkspace probe(n);
    const int len = static_cast<int>(n);
    auto* spec = reinterpret_cast<fftw_complex*>(probe.spectrum());
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_r2c_1d(len, probe.real(), spec, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(len, spec, probe.real(), FFTW_ESTIMATE);
    if (forward == nullptr || backward == nullptr) {
      throw std::runtime_error("FFTW plan creation failed");
    }
  }
  ~RealFftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  RealFftPlan(const RealFftPlan&) = delete;
  RealFftPlan& operator=(const RealFftPlan&) = delete;

  void r2c(FftWorkspace& ws) const {
    fftw_execute_dft_r2c(forward, ws.real(), reinterpret_cast<fftw_complex*>(ws.spectrum()));
  }
  // c2r destroys its input; the spectrum is scratch anyway.
  void c2r(FftWorkspace& ws) const {
    fftw_execute_dft_c2r(backward, reinterpret_cast<fftw_complex*>(ws.spectrum()), ws.real());
  }

  std::size_t length;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

}  // namespace detail

namespace {

// Plans are immutable once built, so one per transform length is shared by
// every operator that needs it.
std::shared_ptr<const detail::RealFftPlan> shared_plan(std::size_t n) {
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::shared_ptr<const detail::RealFftPlan>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const detail::RealFftPlan>(n);
  return slot;
}

}  // namespace

FftWorkspace::FftWorkspace(std::size_t length) : length_(length) {
  real_ = static_cast<double*>(fftw_malloc(sizeof(double) * length));
  spectrum_ = reinterpret_cast<std::complex<double>*>(
      fftw_malloc(sizeof(fftw_complex) * (length / 2 + 1)));
  if (real_ == nullptr || spectrum_ == nullptr) {
    fftw_free(real_);
    fftw_free(spectrum_);
    throw std::bad_alloc();
  }
}

FftWorkspace::~FftWorkspace() {
  fftw_free(real_);
  fftw_free(spectrum_);
}

FftWorkspace::FftWorkspace(FftWorkspace&& other) noexcept
    : length_(std::exchange(other.length_, 0)),
      real_(std::exchange(other.real_, nullptr)),
      spectrum_(std::exchange(other.spectrum_, nullptr)) {}

FftWorkspace& FftWorkspace::operator=(FftWorkspace&& other) noexcept {
  if (this != &other) {
    fftw_free(real_);
    fftw_free(spectrum_);
    length_ = std::exchange(other.length_, 0);
    real_ = std::exchange(other.real_, nullptr);
    spectrum_ = std::exchange(other.spectrum_, nullptr);
  }
  return *this;
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// ---------------------------------------------------------------------------

SymmetricCirculant::SymmetricCirculant(std::vector<double> column)
    : n_(column.size()), column_(std::move(column)) {
  if (n_ == 0) throw std::invalid_argument("SymmetricCirculant: empty column");
  for (std::size_t k = 1; k < n_; ++k) {
    if (column_[k] != column_[n_ - k]) {
      throw std::invalid_argument("SymmetricCirculant: column is not symmetric");
    }
  }
  plan_ = shared_plan(n_);
  FftWorkspace ws(n_);
  std::copy(column_.begin(), column_.end(), ws.real());
  plan_->r2c(ws);
  eigenvalues_.resize(n_ / 2 + 1);
  for (std::size_t k = 0; k < eigenvalues_.size(); ++k) eigenvalues_[k] = ws.spectrum()[k].real();
}

void SymmetricCirculant::apply_spectral(std::span<const double> weights,
                                        std::span<const double> x, std::span<double> y,
                                        FftWorkspace& ws) const {
  if (x.size() != n_ || y.size() != n_ || weights.size() != n_ / 2 + 1 || ws.length() != n_) {
    throw std::invalid_argument("SymmetricCirculant::apply_spectral: size mismatch");
  }
  std::copy(x.begin(), x.end(), ws.real());
  plan_->r2c(ws);
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t k = 0; k < weights.size(); ++k) ws.spectrum()[k] *= weights[k] * inv_n;
  plan_->c2r(ws);
  std::copy(ws.real(), ws.real() + n_, y.begin());
}

// ---------------------------------------------------------------------------

SymmetricToeplitz::SymmetricToeplitz(std::vector<double> first_column)
    : column_(std::move(first_column)) {
  const std::size_t n = column_.size();
  if (n == 0) throw std::invalid_argument("SymmetricToeplitz: empty column");
  embedding_ = next_power_of_two(2 * n);
  plan_ = shared_plan(embedding_);

  FftWorkspace ws(embedding_);
  std::fill(ws.real(), ws.real() + embedding_, 0.0);
  for (std::size_t k = 0; k < n; ++k) ws.real()[k] = column_[k];
  for (std::size_t k = 1; k < n; ++k) ws.real()[embedding_ - k] = column_[k];
  plan_->r2c(ws);
  symbol_.resize(embedding_ / 2 + 1);
  const double inv_len = 1.0 / static_cast<double>(embedding_);
  for (std::size_t k = 0; k < symbol_.size(); ++k) symbol_[k] = ws.spectrum()[k].real() * inv_len;
}

void SymmetricToeplitz::apply_dense(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = column_.size();
  if (x.size() != n || y.size() != n) {
    throw std::invalid_argument("SymmetricToeplitz::apply_dense: size mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += column_[i > j ? i - j : j - i] * x[j];
    }
    y[i] = acc;
  }
}

void SymmetricToeplitz::apply_fft(std::span<const double> x, std::span<double> y,
                                  FftWorkspace& ws) const {
  const std::size_t n = column_.size();
  if (x.size() != n || y.size() != n) {
    throw std::invalid_argument("SymmetricToeplitz::apply_fft: size mismatch");
  }
  if (ws.length() != embedding_) {
    throw std::invalid_argument("SymmetricToeplitz::apply_fft: workspace length mismatch");
  }
  double* buf = ws.real();
  std::copy(x.begin(), x.end(), buf);
  std::fill(buf + n, buf + embedding_, 0.0);
  plan_->r2c(ws);
  for (std::size_t k = 0; k < symbol_.size(); ++k) ws.spectrum()[k] *= symbol_[k];
  plan_->c2r(ws);
  std::copy(buf, buf + n, y.begin());
}

Eigen::MatrixXd SymmetricToeplitz::to_dense() const {
  const auto n = static_cast<Eigen::Index>(column_.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = column_[static_cast<std::size_t>(std::abs(i - j))];
    }
  }
  return m;
}

}  // namespace fsg

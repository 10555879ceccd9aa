// SPDX-License-Identifier: Apache-2.0
#include "fsg/frac_operator.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "fsg/errors.hpp"

namespace fsg {

SymbolKernel generate_kernel(FractionalOrder alpha, std::size_t length) {
  if (length < 1) throw ValidationError("generate_kernel: length must be >= 1");
  const long double a = alpha.value();
  const long double half = a / 2.0L;

  std::vector<double> coeffs(length);
  long double c = std::exp(std::lgamma(a + 1.0L) - 2.0L * std::lgamma(half + 1.0L));
  coeffs[0] = static_cast<double>(c);
  for (std::size_t k = 0; k + 1 < length; ++k) {
    const auto kk = static_cast<long double>(k);
    c *= (kk - half) / (kk + half + 1.0L);
    coeffs[k + 1] = static_cast<double>(c);
  }
  return SymbolKernel{alpha, std::move(coeffs)};
}

FracOperator::FracOperator(FractionalOrder alpha, GridSpec grid)
    : grid_(grid),
      kernel_(generate_kernel(alpha, grid.interior_size())),
      matrix_(kernel_.coeffs),
      scale_(std::pow(grid.h(), -alpha.value())) {}

void FracOperator::check_length(std::size_t n) const {
  if (n != size()) {
    std::ostringstream os;
    os << "FracOperator: vector length " << n << " != interior size " << size();
    throw ValidationError(os.str());
  }
}

std::vector<double> FracOperator::apply_dense(std::span<const double> u) const {
  std::vector<double> out(u.size());
  apply_dense(u, out);
  return out;
}

void FracOperator::apply_dense(std::span<const double> u, std::span<double> out) const {
  check_length(u.size());
  check_length(out.size());
  matrix_.apply_dense(u, out);
  for (double& v : out) v *= scale_;
}

std::vector<double> FracOperator::apply_fft(std::span<const double> u) const {
  std::vector<double> out(u.size());
  auto ws = make_workspace();
  apply_fft(u, out, ws);
  return out;
}

void FracOperator::apply_fft(std::span<const double> u, std::span<double> out,
                             FftWorkspace& ws) const {
  check_length(u.size());
  check_length(out.size());
  matrix_.apply_fft(u, out, ws);
  for (double& v : out) v *= scale_;
}

double FracOperator::energy_seminorm_sq(std::span<const double> u) const {
  auto ws = make_workspace();
  return energy_seminorm_sq(u, ws);
}

double FracOperator::energy_seminorm_sq(std::span<const double> u, FftWorkspace& ws) const {
  check_length(u.size());
  std::vector<double> au(u.size());
  apply_fft(u, au, ws);
  return grid_inner(grid_.h(), au, u);
}

double grid_inner(double h, std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw ValidationError("grid_inner: length mismatch");
  return h * std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
}

double grid_norm_sq(double h, std::span<const double> u) { return grid_inner(h, u, u); }

double max_norm(std::span<const double> u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace fsg

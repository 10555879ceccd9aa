// SPDX-License-Identifier: Apache-2.0
#include "fsg/grid.hpp"

#include <cmath>
#include <sstream>

#include "fsg/errors.hpp"

namespace fsg {

namespace {

// Rounds `ratio` to an integer count and rejects it unless it is integral to 1e-9.
std::size_t integral_count(double ratio, const char* what) {
  if (!std::isfinite(ratio) || ratio < 0.5) {
    std::ostringstream os;
    os << what << " must be a positive integer multiple (got ratio " << ratio << ")";
    throw ValidationError(os.str());
  }
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * rounded) {
    std::ostringstream os;
    os << what << " does not divide evenly (ratio " << ratio << ")";
    throw ValidationError(os.str());
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "fractional order alpha=" << alpha << " outside 1 < alpha <= 2";
    throw ValidationError(os.str());
  }
}

GridSpec::GridSpec(double a, double b, std::size_t subintervals)
    : a_(a), b_(b), m_(subintervals), h_(0.0) {
  if (!(std::isfinite(a) && std::isfinite(b) && b > a)) {
    throw ValidationError("grid: need finite endpoints with b > a");
  }
  if (m_ < 2) throw ValidationError("grid: need at least 2 subintervals");
  h_ = (b - a) / static_cast<double>(m_);
}

GridSpec GridSpec::from_mesh_size(double a, double b, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("grid: mesh size h must be > 0");
  if (!(b > a)) throw ValidationError("grid: need b > a");
  return GridSpec(a, b, integral_count((b - a) / h, "mesh size h into (b - a)"));
}

std::vector<double> GridSpec::interior_nodes() const {
  std::vector<double> x(interior_size());
  for (std::size_t j = 1; j < m_; ++j) x[j - 1] = node(j);
  return x;
}

TimeSpec::TimeSpec(double final_time, std::size_t steps)
    : t_(final_time), n_(steps), tau_(0.0) {
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    throw ValidationError("time: final time T must be > 0");
  }
  if (steps < 1) throw ValidationError("time: need at least one step");
  tau_ = t_ / static_cast<double>(n_);
}

TimeSpec TimeSpec::from_step(double final_time, double tau) {
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    throw ValidationError("time: final time T must be > 0");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("time: tau must be > 0");
  return TimeSpec(final_time, integral_count(final_time / tau, "time step tau into T"));
}

}  // namespace fsg

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace fsg {

/// Fractional order of the Laplacian, restricted to 1 < alpha <= 2.
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);

  double value() const noexcept { return alpha_; }
  operator double() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Uniform grid on [a, b] with M subintervals. Only the M-1 interior nodes
/// carry unknowns; the values at x_0 = a and x_M = b are identically zero.
class GridSpec {
 public:
  GridSpec(double a, double b, std::size_t subintervals);

  /// Builds a grid from a mesh size; (b - a) / h must be an integer to 1e-9.
  static GridSpec from_mesh_size(double a, double b, double h);

  double left() const noexcept { return a_; }
  double right() const noexcept { return b_; }
  std::size_t subintervals() const noexcept { return m_; }
  std::size_t interior_size() const noexcept { return m_ - 1; }
  double h() const noexcept { return h_; }

  /// Coordinate of node j, 0 <= j <= M.
  double node(std::size_t j) const noexcept { return a_ + static_cast<double>(j) * h_; }
  std::vector<double> interior_nodes() const;

  /// The grid with every cell bisected.
  GridSpec refined() const { return GridSpec(a_, b_, 2 * m_); }

 private:
  double a_;
  double b_;
  std::size_t m_;
  double h_;
};

/// Uniform time stepping on (0, T] with N steps of size tau = T / N.
class TimeSpec {
 public:
  TimeSpec(double final_time, std::size_t steps);

  /// Builds a time spec from tau; T / tau must be an integer to 1e-9.
  static TimeSpec from_step(double final_time, double tau);

  double final_time() const noexcept { return t_; }
  std::size_t steps() const noexcept { return n_; }
  double tau() const noexcept { return tau_; }
  TimeSpec refined() const { return TimeSpec(t_, 2 * n_); }

 private:
  double t_;
  std::size_t n_;
  double tau_;
};

}  // namespace fsg

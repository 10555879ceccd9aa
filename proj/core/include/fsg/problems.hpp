// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fsg/grid.hpp"

namespace fsg {

/// Overflow-safe hyperbolic secant, 2 e^{-|x|} / (1 + e^{-2|x|}).
double sech(double x);

enum class ProblemKind {
  /// u(x,0) = 0, u_t(x,0) = (4/omega) sech(x/omega).
  Breather,
  /// u(x,0) = 3.2 sech(x), u_t(x,0) = 0.
  SechPulse,
};

/// Benchmark initial-value problems. The grid is supplied separately so the
/// same problem can be run on several domains and resolutions.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::Breather;
  double omega = 1.1;

  static ProblemSpec breather(double omega);
  static ProblemSpec sech_pulse();
  /// Accepts "5.1" / "breather" and "5.2" / "sech".
  static ProblemSpec from_name(std::string_view name, double omega = 1.1);

  std::string_view name() const noexcept;
  void validate() const;

  double phi(double x) const;
  double psi(double x) const;
};

struct InitialData {
  std::vector<double> phi;
  std::vector<double> psi;
};

/// phi and psi sampled on the interior nodes of `grid`.
InitialData initial_data(const ProblemSpec& spec, const GridSpec& grid);

/// Breather solution of the classical (alpha = 2) equation,
///   u(x,t) = 4 atan(phi(t; omega) sech(x / omega)),
/// with phi = sin(s t)/sqrt(omega^2-1), s = sqrt(omega^2-1)/omega for omega > 1,
/// phi = t for omega = 1 and the sinh analogue for omega < 1.
double exact_breather(double x, double t, double omega);

/// exact_breather sampled on the interior nodes.
std::vector<double> exact_breather_on(const GridSpec& grid, double t, double omega);

}  // namespace fsg

// SPDX-License-Identifier: Apache-2.0
#include "fsg/problems.hpp"

#include <cmath>
#include <string>

#include "fsg/errors.hpp"

namespace fsg {

double sech(double x) {
  const double e = std::exp(-std::abs(x));
  return 2.0 * e / (1.0 + e * e);
}

ProblemSpec ProblemSpec::breather(double omega) {
  ProblemSpec p{ProblemKind::Breather, omega};
  p.validate();
  return p;
}

ProblemSpec ProblemSpec::sech_pulse() { return ProblemSpec{ProblemKind::SechPulse, 1.0}; }

ProblemSpec ProblemSpec::from_name(std::string_view name, double omega) {
  if (name == "5.1" || name == "breather") return breather(omega);
  if (name == "5.2" || name == "sech") return sech_pulse();
  throw ValidationError("unknown example '" + std::string(name) + "' (expected 5.1 or 5.2)");
}

std::string_view ProblemSpec::name() const noexcept {
  return kind == ProblemKind::Breather ? "5.1" : "5.2";
}

void ProblemSpec::validate() const {
  if (kind == ProblemKind::Breather && !(omega > 0.0)) {
    throw ValidationError("breather problem needs omega > 0");
  }
}

double ProblemSpec::phi(double x) const {
  return kind == ProblemKind::Breather ? 0.0 : 3.2 * sech(x);
}

double ProblemSpec::psi(double x) const {
  return kind == ProblemKind::Breather ? 4.0 / omega * sech(x / omega) : 0.0;
}

InitialData initial_data(const ProblemSpec& spec, const GridSpec& grid) {
  spec.validate();
  InitialData d;
  const auto x = grid.interior_nodes();
  d.phi.resize(x.size());
  d.psi.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    d.phi[j] = spec.phi(x[j]);
    d.psi[j] = spec.psi(x[j]);
  }
  return d;
}

double exact_breather(double x, double t, double omega) {
  if (!(omega > 0.0)) throw ValidationError("exact_breather: omega must be > 0");
  double amp;
  if (omega > 1.0) {
    const double r = std::sqrt(omega * omega - 1.0);
    amp = std::sin(r / omega * t) / r;
  } else if (omega == 1.0) {
    amp = t;
  } else {
    const double r = std::sqrt(1.0 - omega * omega);
    amp = std::sinh(r / omega * t) / r;
  }
  return 4.0 * std::atan(amp * sech(x / omega));
}

std::vector<double> exact_breather_on(const GridSpec& grid, double t, double omega) {
  auto x = grid.interior_nodes();
  for (double& xi : x) xi = exact_breather(xi, t, omega);
  return x;
}

}  // namespace fsg

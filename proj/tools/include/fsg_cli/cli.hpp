// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsg/diagnostics.hpp"
#include "fsg/ieq_scheme.hpp"
#include "fsg/linear_solvers.hpp"
#include "fsg/problems.hpp"

namespace fsg::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2 };

/// Fully resolved settings of one simulation.
struct RunConfig {
  std::string preset = "custom";
  ProblemSpec problem;
  double alpha = 2.0;
  double a = -20.0;
  double b = 20.0;
  double h = 0.2;
  double tau = 0.02;
  double final_time = 1.0;
  SolveConfig solve{};
  double startup_tol = 1e-14;
  std::size_t startup_max_iter = 200;
  /// 0 selects N / 100 (at least 1).
  std::size_t snapshot_stride = 0;
  std::size_t energy_stride = 1;
  std::filesystem::path out_dir = "out";

  /// Builds the scheme configuration; throws ValidationError on any bad field.
  SchemeConfig scheme() const;
  std::size_t resolved_snapshot_stride() const;
};

/// Named run presets: fig3 (breather, omega = 1) and fig5 (sech pulse), both
/// on (-100, 100) with h = 0.1, tau = 0.05; table (breather on (-20, 20)).
RunConfig run_preset(const std::string& name);

struct LadderPreset {
  std::string name;
  ProblemSpec problem;
  std::vector<double> alphas;
  double a = -20.0;
  double b = 20.0;
  double base_h = 0.2;
  double base_tau = 0.02;
  std::size_t levels = 4;
  double final_time = 1.0;
};

/// table1 (breather, omega = 1.1) and table2 (sech pulse).
LadderPreset ladder_preset(const std::string& name);

struct EnergyPreset {
  std::string name;
  ProblemSpec problem;
  std::vector<double> alphas;
  double a = -40.0;
  double b = 40.0;
  double h = 0.1;
  double tau = 0.05;
  double final_time = 50.0;
};

/// fig2 (breather, omega = 1.1, h = 0.1, tau = 0.05) and fig4 (sech pulse,
/// h = tau = 0.05), both on (-40, 40).
EnergyPreset energy_preset(const std::string& name);

struct BenchSpec {
  ProblemSpec problem = ProblemSpec::breather(1.1);
  std::vector<std::size_t> sizes{100, 200, 400};
  std::vector<double> taus{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> alphas{1.3};
  double h = 0.1;
  double final_time = 10.0;
  std::size_t repetitions = 3;
  SolveConfig cg{};
};

struct BenchRow {
  double alpha;
  std::size_t subintervals;
  double tau;
  double direct_seconds;
  double fft_seconds;
  double max_diff;
};

/// Median wall-clock time of the direct and FFT-CG paths for every
/// (alpha, M, tau). The domain is (-M h / 2, M h / 2).
std::vector<BenchRow> run_bench(const BenchSpec& spec);

/// Simulation with snapshot, energy and metadata output.
RunResult cmd_run(const RunConfig& cfg);

/// Fixed-width scientific notation with 16 significant digits.
std::string format_real(double x);

/// Shortest round-trip text for alpha, used in file names.
std::string alpha_tag(double alpha);

/// Parses argv and dispatches. Returns an ExitCode; diagnostics go to `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fsg::cli

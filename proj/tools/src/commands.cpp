// SPDX-License-Identifier: Apache-2.0
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <json.hpp>

#include "fsg/errors.hpp"
#include "fsg_cli/cli.hpp"

#ifndef FSG_VERSION
#define FSG_VERSION "unknown"
#endif

namespace fsg::cli {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open '" + path.string() + "' for writing");
  return f;
}

void write_snapshot(const std::filesystem::path& path, const GridSpec& grid, const IeqState& s) {
  auto f = open_output(path);
  f << "x,U,V,W\n";
  for (std::size_t j = 0; j < s.size(); ++j) {
    f << format_real(grid.node(j + 1)) << ',' << format_real(s.u[j]) << ','
      << format_real(s.v[j]) << ',' << format_real(s.w[j]) << '\n';
  }
}

void write_energy(const std::filesystem::path& path, const EnergySeries& series) {
  auto f = open_output(path);
  f << "n,t,E,RE\n";
  for (const auto& e : series.entries()) {
    f << e.n << ',' << format_real(e.t) << ',' << format_real(e.energy) << ','
      << format_real(e.relative_error) << '\n';
  }
}

nlohmann::ordered_json config_json(const RunConfig& cfg, const SchemeConfig& scheme) {
  nlohmann::ordered_json j;
  j["preset"] = cfg.preset;
  j["example"] = std::string(cfg.problem.name());
  if (cfg.problem.kind == ProblemKind::Breather) j["omega"] = cfg.problem.omega;
  j["alpha"] = cfg.alpha;
  j["domain"] = {cfg.a, cfg.b};
  j["h"] = scheme.grid.h();
  j["M"] = scheme.grid.subintervals();
  j["tau"] = scheme.tau();
  j["N"] = scheme.time.steps();
  j["T"] = cfg.final_time;
  j["solver"] = std::string(to_string(cfg.solve.method));
  j["preconditioner"] = std::string(to_string(cfg.solve.precond));
  j["cg_rel_tol"] = cfg.solve.cg_rel_tol;
  j["cg_max_iter"] = cfg.solve.max_iterations(scheme.grid.interior_size());
  j["startup_tol"] = cfg.startup_tol;
  j["startup_max_iter"] = cfg.startup_max_iter;
  j["snapshot_stride"] = cfg.resolved_snapshot_stride();
  j["energy_stride"] = cfg.energy_stride;
  return j;
}

template <class F>
double seconds_of(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string format_real(double x) { return fmt::format("{:.15e}", x); }

std::string alpha_tag(double alpha) { return fmt::format("{}", alpha); }

RunResult cmd_run(const RunConfig& cfg) {
  const SchemeConfig scheme = cfg.scheme();
  std::filesystem::create_directories(cfg.out_dir);

  const IeqStepper probe(scheme);
  const auto data = initial_data(cfg.problem, scheme.grid);
  EnergySeries series;
  double max_drift = 0.0;
  const std::vector<Observer> observers{
      energy_recorder(probe.op(), series, cfg.energy_stride),
      {cfg.resolved_snapshot_stride(),
       [&](const StepEvent& ev) {
         write_snapshot(cfg.out_dir / fmt::format("solution_{}.csv", ev.n), scheme.grid, ev.state);
       }},
      {1, [&](const StepEvent& ev) { max_drift = std::max(max_drift, auxiliary_drift(ev.state)); }},
  };
  RunResult result = run(scheme, data.phi, data.psi, observers);
  write_energy(cfg.out_dir / "energy.csv", series);

  nlohmann::ordered_json meta;
  meta["version"] = FSG_VERSION;
  meta["config"] = config_json(cfg, scheme);
  meta["fft_embedding_size"] = result.summary.fft_embedding_size;
  meta["startup_iterations"] = result.summary.startup_iterations;
  meta["solver_stats"] = {
      {"steps", result.summary.steps},
      {"total_linear_iterations", result.summary.total_linear_iterations},
      {"max_linear_iterations", result.summary.max_linear_iterations},
      {"max_relative_residual", result.summary.max_residual},
  };
  meta["energy"] = {
      {"initial", series.initial_energy()},
      {"max_relative_error", series.max_relative_error()},
      {"max_auxiliary_drift", max_drift},
  };
  open_output(cfg.out_dir / "meta.json") << meta.dump(2) << '\n';
  return result;
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  if (spec.sizes.empty()) throw ValidationError("bench: sizes list is empty");
  if (spec.taus.empty()) throw ValidationError("bench: tau list is empty");
  if (spec.alphas.empty()) throw ValidationError("bench: alpha list is empty");
  if (spec.repetitions < 1) throw ValidationError("bench: need at least one repetition");
  spec.problem.validate();

  std::vector<BenchRow> rows;
  for (double alpha : spec.alphas) {
    for (std::size_t m : spec.sizes) {
      const double half = 0.5 * static_cast<double>(m) * spec.h;
      const GridSpec grid(-half, half, m);
      const auto data = initial_data(spec.problem, grid);
      for (double tau : spec.taus) {
        SchemeConfig cfg{grid, TimeSpec::from_step(spec.final_time, tau), FractionalOrder(alpha),
                         spec.cg};
        cfg.solve.method = SolveMethod::CG;
        SchemeConfig direct_cfg = cfg;
        direct_cfg.solve.method = SolveMethod::Direct;

        std::vector<double> t_direct, t_fft;
        std::vector<double> u_direct, u_fft;
        for (std::size_t r = 0; r < spec.repetitions; ++r) {
          t_direct.push_back(seconds_of(
              [&] { u_direct = run(direct_cfg, data.phi, data.psi).final_state.u; }));
          t_fft.push_back(seconds_of([&] { u_fft = run(cfg, data.phi, data.psi).final_state.u; }));
        }
        double diff = 0.0;
        for (std::size_t j = 0; j < u_fft.size(); ++j) {
          diff = std::max(diff, std::abs(u_fft[j] - u_direct[j]));
        }
        rows.push_back({alpha, m, tau, median(t_direct), median(t_fft), diff});
      }
    }
  }
  return rows;
}

}  // namespace fsg::cli

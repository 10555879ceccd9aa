// SPDX-License-Identifier: Apache-2.0
#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <utility>

#include "fsg/errors.hpp"
#include "fsg_cli/cli.hpp"

#ifndef FSG_VERSION
#define FSG_VERSION "unknown"
#endif

namespace fsg::cli {

namespace {

// Values bound to CLI11; copied into the resolved config only when given on
// the command line or in the config file.
struct ProblemFlags {
  std::string example;
  double omega = 1.1;
  std::pair<double, double> domain{0.0, 0.0};
  CLI::Option* example_opt = nullptr;
  CLI::Option* omega_opt = nullptr;
  CLI::Option* domain_opt = nullptr;

  void add(CLI::App& app) {
    example_opt = app.add_option("--example", example, "Problem: 5.1|breather or 5.2|sech");
    omega_opt = app.add_option("--omega", omega, "Breather frequency (> 0)");
    domain_opt = app.add_option("--domain", domain, "Domain endpoints a b");
  }

  ProblemSpec resolve(ProblemSpec base) const {
    if (example_opt->count()) {
      base = ProblemSpec::from_name(example, omega_opt->count() ? omega : base.omega);
    } else if (omega_opt->count()) {
      base.omega = omega;
    }
    base.validate();
    return base;
  }

  void apply_domain(double& a, double& b) const {
    if (domain_opt->count()) {
      a = domain.first;
      b = domain.second;
    }
  }
};

struct SolverFlags {
  std::string method = "cg";
  std::string precond = "none";
  double cg_tol = 1e-12;
  std::size_t cg_max_iter = 0;
  CLI::Option* method_opt = nullptr;
  CLI::Option* precond_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* iter_opt = nullptr;

  void add(CLI::App& app) {
    method_opt = app.add_option("--solver", method, "Linear solver: cg (FFT) or direct");
    precond_opt = app.add_option("--precond", precond, "CG preconditioner: none or circulant");
    tol_opt = app.add_option("--cg-tol", cg_tol, "CG relative residual tolerance");
    iter_opt = app.add_option("--cg-max-iter", cg_max_iter, "CG iteration cap (0 = 10 (M-1))");
  }

  SolveConfig resolve(SolveConfig s) const {
    if (method_opt->count()) s.method = parse_solve_method(method);
    if (precond_opt->count()) s.precond = parse_preconditioner(precond);
    if (tol_opt->count()) s.cg_rel_tol = cg_tol;
    if (iter_opt->count()) s.cg_max_iter = cg_max_iter;
    s.validate();
    return s;
  }
};

// Bench lists are read as text so that an empty list reaches validation
// instead of becoming a single zero.
template <class T>
std::vector<T> parse_list(const std::vector<std::string>& items, const char* what) {
  std::vector<T> out;
  for (const auto& item : items) {
    if (item.empty()) continue;
    T value{};
    if (!CLI::detail::lexical_cast(item, value)) {
      throw ValidationError(fmt::format("{}: cannot parse '{}'", what, item));
    }
    out.push_back(value);
  }
  return out;
}

template <class T>
void apply(const CLI::Option* opt, T& target, const T& value) {
  if (opt->count()) target = value;
}

void print_config_help(std::ostream& out) {
  out << "Config files are flat key = value documents (TOML/INI). Keys match the long\n"
         "flag names of a subcommand, either in a [run] style section or prefixed as\n"
         "run.alpha = 1.5. Flags given on the command line override the file.\n";
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional sine-Gordon solver (linearly implicit, energy conserving)", "fsg"};
  // "--h" is the mesh size, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(FSG_VERSION));
  app.set_config("--config", "", "Read options from a key = value file");
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 invalid input, 2 numerical failure.");

  // run -------------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "Single simulation with snapshots, energy and metadata");
  std::string run_preset_name = "custom";
  ProblemFlags run_problem;
  SolverFlags run_solver;
  double alpha = 2.0, h = 0.2, tau = 0.02, final_time = 1.0, startup_tol = 1e-14;
  std::size_t steps = 0, startup_iter = 200, snap_stride = 0, energy_stride = 1;
  std::string out_dir = "out";
  run_cmd->add_option("--preset", run_preset_name, "custom|table|fig3|fig5");
  run_problem.add(*run_cmd);
  auto* alpha_opt = run_cmd->add_option("--alpha", alpha, "Fractional order, 1 < alpha <= 2");
  auto* h_opt = run_cmd->add_option("--h", h, "Mesh size");
  auto* tau_opt = run_cmd->add_option("--tau", tau, "Time step");
  auto* steps_opt = run_cmd->add_option("--steps", steps, "Number of time steps (alternative to --tau)");
  auto* t_opt = run_cmd->add_option("--T", final_time, "Final time");
  run_solver.add(*run_cmd);
  auto* st_opt = run_cmd->add_option("--startup-tol", startup_tol, "Startup fixed-point tolerance");
  auto* si_opt = run_cmd->add_option("--startup-max-iter", startup_iter, "Startup iteration cap");
  auto* ss_opt = run_cmd->add_option("--snapshot-stride", snap_stride, "Steps between snapshots (0 = N/100)");
  auto* es_opt = run_cmd->add_option("--energy-stride", energy_stride, "Steps between energy records");
  auto* out_opt = run_cmd->add_option("--out", out_dir, "Output directory");

  // convergence -----------------------------------------------------------
  auto* conv_cmd = app.add_subcommand("convergence", "Error and order ladder under joint refinement");
  std::string conv_preset_name = "table1";
  ProblemFlags conv_problem;
  SolverFlags conv_solver;
  std::vector<double> conv_alphas;
  double conv_h = 0.2, conv_tau = 0.02, conv_t = 1.0;
  std::size_t conv_levels = 4;
  std::string conv_out = "out";
  bool conv_serial = false;
  conv_cmd->add_option("--preset", conv_preset_name, "table1|table2|custom");
  conv_problem.add(*conv_cmd);
  auto* ca_opt = conv_cmd->add_option("--alpha", conv_alphas, "Fractional orders")->delimiter(',');
  auto* ch_opt = conv_cmd->add_option("--h", conv_h, "Coarsest mesh size");
  auto* ct_opt = conv_cmd->add_option("--tau", conv_tau, "Coarsest time step");
  auto* cT_opt = conv_cmd->add_option("--T", conv_t, "Final time");
  auto* cl_opt = conv_cmd->add_option("--levels", conv_levels, "Number of ladder rows");
  conv_solver.add(*conv_cmd);
  auto* co_opt = conv_cmd->add_option("--out", conv_out, "Output directory");
  conv_cmd->add_flag("--serial", conv_serial, "Run ladder levels one after another");

  // energy ----------------------------------------------------------------
  auto* energy_cmd = app.add_subcommand("energy", "Relative energy error series per alpha");
  std::string energy_preset_name = "fig2";
  ProblemFlags energy_problem;
  SolverFlags energy_solver;
  std::vector<double> en_alphas;
  double en_h = 0.1, en_tau = 0.05, en_t = 50.0;
  std::size_t en_stride = 1;
  std::string en_out = "out";
  energy_cmd->add_option("--preset", energy_preset_name, "fig2|fig4|custom");
  energy_problem.add(*energy_cmd);
  auto* ea_opt = energy_cmd->add_option("--alpha", en_alphas, "Fractional orders")->delimiter(',');
  auto* eh_opt = energy_cmd->add_option("--h", en_h, "Mesh size");
  auto* et_opt = energy_cmd->add_option("--tau", en_tau, "Time step");
  auto* eT_opt = energy_cmd->add_option("--T", en_t, "Final time");
  energy_cmd->add_option("--energy-stride", en_stride, "Steps between records");
  energy_solver.add(*energy_cmd);
  auto* eo_opt = energy_cmd->add_option("--out", en_out, "Output directory");

  // bench -----------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "Wall-clock comparison of direct and FFT-CG solves");
  BenchSpec bench;
  ProblemFlags bench_problem;
  std::string bench_out = "out";
  bench_problem.add(*bench_cmd);
  std::vector<std::string> sizes_text, taus_text, alphas_text;
  auto* sizes_opt = bench_cmd->add_option("--sizes", sizes_text, "Subinterval counts M (default 100,200,400)")
                        ->delimiter(',')->expected(0, -1);
  auto* taus_opt = bench_cmd->add_option("--taus", taus_text, "Time steps (default 0.1,0.05,0.025,0.0125)")
                       ->delimiter(',')->expected(0, -1);
  auto* alphas_opt = bench_cmd->add_option("--alphas", alphas_text, "Fractional orders (default 1.3)")
                         ->delimiter(',')->expected(0, -1);
  bench_cmd->add_option("--h", bench.h, "Mesh size");
  bench_cmd->add_option("--T", bench.final_time, "Final time");
  bench_cmd->add_option("--reps", bench.repetitions, "Repetitions per timing (median reported)");
  bench_cmd->add_option("--out", bench_out, "Output directory");

  app.add_subcommand("config-help", "Describe the config file format")->callback([&] {
    print_config_help(out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (run_cmd->parsed()) {
      RunConfig cfg = run_preset(run_preset_name);
      cfg.problem = run_problem.resolve(cfg.problem);
      run_problem.apply_domain(cfg.a, cfg.b);
      apply(alpha_opt, cfg.alpha, alpha);
      apply(h_opt, cfg.h, h);
      apply(t_opt, cfg.final_time, final_time);
      apply(tau_opt, cfg.tau, tau);
      if (steps_opt->count()) {
        if (steps == 0) throw ValidationError("--steps must be >= 1");
        const double from_steps = cfg.final_time / static_cast<double>(steps);
        if (tau_opt->count() && std::abs(from_steps - tau) > 1e-12 * tau) {
          throw ValidationError(fmt::format("--steps {} and --tau {} disagree with --T {}", steps,
                                            tau, cfg.final_time));
        }
        cfg.tau = from_steps;
      }
      cfg.solve = run_solver.resolve(cfg.solve);
      apply(st_opt, cfg.startup_tol, startup_tol);
      apply(si_opt, cfg.startup_max_iter, startup_iter);
      apply(ss_opt, cfg.snapshot_stride, snap_stride);
      apply(es_opt, cfg.energy_stride, energy_stride);
      if (out_opt->count()) cfg.out_dir = out_dir;

      const auto res = cmd_run(cfg);
      out << fmt::format("run: {} steps, startup {} fixed-point iterations, {} CG iterations total\n",
                         res.summary.steps, res.summary.startup_iterations,
                         res.summary.total_linear_iterations);
      out << "wrote " << (cfg.out_dir / "meta.json").string() << '\n';
    } else if (conv_cmd->parsed()) {
      LadderPreset p = ladder_preset(conv_preset_name);
      p.problem = conv_problem.resolve(p.problem);
      conv_problem.apply_domain(p.a, p.b);
      apply(ca_opt, p.alphas, conv_alphas);
      apply(ch_opt, p.base_h, conv_h);
      apply(ct_opt, p.base_tau, conv_tau);
      apply(cT_opt, p.final_time, conv_t);
      apply(cl_opt, p.levels, conv_levels);
      if (p.alphas.empty()) throw ValidationError("convergence: no alpha values");
      const SolveConfig solve = conv_solver.resolve(SolveConfig{});
      const std::filesystem::path dir = co_opt->count() ? conv_out : "out";
      std::filesystem::create_directories(dir);
      std::ofstream csv(dir / "convergence.csv");
      if (!csv) throw ValidationError("cannot write " + (dir / "convergence.csv").string());
      csv << "alpha,h,tau,error,order\n";
      for (double a : p.alphas) {
        LadderSpec spec{p.problem, a, p.a, p.b, p.base_h, p.base_tau, p.levels, p.final_time,
                        solve, !conv_serial};
        const auto rep = convergence_ladder(spec);
        out << fmt::format("alpha = {} ({})\n", alpha_tag(a),
                           rep.mode == ErrorMode::ExactSolution ? "exact solution" : "self comparison");
        for (const auto& row : rep.ladder) {
          const std::string order = row.order ? format_real(*row.order) : "";
          csv << alpha_tag(a) << ',' << format_real(row.h) << ',' << format_real(row.tau) << ','
              << format_real(row.error) << ',' << order << '\n';
          out << fmt::format("  h = {:<8.5g} tau = {:<8.5g} error = {:.4e}  order = {}\n", row.h,
                             row.tau, row.error,
                             row.order ? fmt::format("{:.4f}", *row.order) : std::string("-"));
        }
      }
    } else if (energy_cmd->parsed()) {
      EnergyPreset p = energy_preset(energy_preset_name);
      p.problem = energy_problem.resolve(p.problem);
      energy_problem.apply_domain(p.a, p.b);
      apply(ea_opt, p.alphas, en_alphas);
      apply(eh_opt, p.h, en_h);
      apply(et_opt, p.tau, en_tau);
      apply(eT_opt, p.final_time, en_t);
      if (p.alphas.empty()) throw ValidationError("energy: no alpha values");
      const SolveConfig solve = energy_solver.resolve(SolveConfig{});
      const std::filesystem::path dir = eo_opt->count() ? en_out : "out";
      std::filesystem::create_directories(dir);
      for (double a : p.alphas) {
        const SchemeConfig cfg{GridSpec::from_mesh_size(p.a, p.b, p.h),
                               TimeSpec::from_step(p.final_time, p.tau), FractionalOrder(a), solve};
        const IeqStepper probe(cfg);
        const auto data = initial_data(p.problem, cfg.grid);
        EnergySeries series;
        const std::vector<Observer> obs{energy_recorder(probe.op(), series, en_stride)};
        run(cfg, data.phi, data.psi, obs);
        const auto path = dir / fmt::format("energy_{}.csv", alpha_tag(a));
        std::ofstream f(path);
        if (!f) throw ValidationError("cannot write " + path.string());
        f << "n,t,E,RE\n";
        for (const auto& e : series.entries()) {
          f << e.n << ',' << format_real(e.t) << ',' << format_real(e.energy) << ','
            << format_real(e.relative_error) << '\n';
        }
        out << fmt::format("alpha = {}: E0 = {:.10e}, max RE = {:.3e}\n", alpha_tag(a),
                           series.initial_energy(), series.max_relative_error());
      }
    } else if (bench_cmd->parsed()) {
      bench.problem = bench_problem.resolve(bench.problem);
      if (sizes_opt->count()) bench.sizes = parse_list<std::size_t>(sizes_text, "--sizes");
      if (taus_opt->count()) bench.taus = parse_list<double>(taus_text, "--taus");
      if (alphas_opt->count()) bench.alphas = parse_list<double>(alphas_text, "--alphas");
      const auto rows = run_bench(bench);
      const std::filesystem::path dir = bench_out;
      std::filesystem::create_directories(dir);
      std::ofstream csv(dir / "bench.csv");
      if (!csv) throw ValidationError("cannot write " + (dir / "bench.csv").string());
      csv << "alpha,M,tau,direct_seconds,fft_seconds,max_diff\n";
      for (const auto& r : rows) {
        csv << alpha_tag(r.alpha) << ',' << r.subintervals << ',' << format_real(r.tau) << ','
            << format_real(r.direct_seconds) << ',' << format_real(r.fft_seconds) << ','
            << format_real(r.max_diff) << '\n';
        out << fmt::format("alpha = {} M = {:<5} tau = {:<7g} direct {:.4f} s  fft-cg {:.4f} s  diff {:.2e}\n",
                           alpha_tag(r.alpha), r.subintervals, r.tau, r.direct_seconds,
                           r.fft_seconds, r.max_diff);
        if (r.subintervals >= 400 && r.fft_seconds > r.direct_seconds) {
          err << fmt::format("warning: FFT-CG slower than direct at M = {}, tau = {}\n",
                             r.subintervals, r.tau);
        }
      }
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const SolverError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}

}  // namespace fsg::cli

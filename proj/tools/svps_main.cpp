// Command-line front end: population sizing, single schedule runs, grid
// sweeps, and the cross-instance scalability study. Every replication draws
// its RNG stream from (master seed, instance, phase, cell, run index), so
// outputs are byte-identical for any worker count.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svps/config.hpp"
#include "svps/csv.hpp"
#include "svps/errors.hpp"
#include "svps/experiment.hpp"
#include "svps/version.hpp"

namespace {

using namespace svps;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::string instance_suffix(int l, int m) {
  return "_l" + std::to_string(l) + "_m" + std::to_string(m);
}

SweepGrid grid_from_config(const ExperimentConfig& cfg) {
  SweepGrid grid = SweepGrid::defaults();
  if (!cfg.tau_values.empty()) grid.tau_values = cfg.tau_values;
  if (!cfg.rho_values.empty()) grid.rho_values = cfg.rho_values;
  return grid;
}

InstanceSettings settings_from_config(const ExperimentConfig& cfg) {
  InstanceSettings settings;
  settings.criterion = ReliabilityCriterion{cfg.runs, cfg.required_successes};
  settings.bisection = BisectionSettings{cfg.bisection_initial_n, cfg.bisection_threshold};
  settings.gmax_statistic = cfg.gmax_statistic;
  settings.grid = grid_from_config(cfg);
  settings.t_variant = cfg.t_test_variant;
  settings.max_generations_multiplier = cfg.max_generations_multiplier;
  return settings;
}

void print_report_line(const char* label, const ReliabilityReport& report) {
  std::printf("%s n=%d runs=%d successes=%d success_rate=%s aes_mean=%s aes_std=%s\n", label,
              report.size, report.runs, report.successes,
              format_double(report.success_rate).c_str(), format_double(report.aes_mean).c_str(),
              format_double(report.aes_std).c_str());
}

struct CliOptions {
  ExperimentConfig cfg;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> out;

  void finalize() {
    if (!config_path.empty()) {
      ExperimentConfig loaded = load_config_file(config_path);
      cfg = loaded;
    }
    if (seed) cfg.master_seed = *seed;
    if (workers) cfg.worker_count = *workers;
    if (out) cfg.output_dir = *out;
    cfg.validate();
  }
};

int cmd_size(const CliOptions& opt, int l, int m) {
  const ExperimentConfig& cfg = opt.cfg;
  const TrapProblem problem = make_problem(l, m);
  const Executor exec(cfg.worker_count);
  const InstanceSettings settings = settings_from_config(cfg);

  const SizingResult sizing = run_sizing(problem, settings.criterion, settings.ga,
                                         settings.bisection, settings.gmax_statistic,
                                         cfg.master_seed, exec);

  const auto path =
      std::filesystem::path(cfg.output_dir) / ("sizing" + instance_suffix(l, m) + ".csv");
  write_csv(path, sizing_audit_table(sizing, cfg.master_seed));

  std::printf("l=%d m=%d n_bisection=%d n_refined=%d g_max=%d\n", l, m, sizing.n_bisection,
              sizing.n_refined, sizing.g_max_estimate);
  std::printf("audit: %s\n", path.string().c_str());
  return kExitOk;
}

int cmd_run(const CliOptions& opt, int l, int m, int n, double tau, double rho,
            std::optional<int> gmax, std::optional<int> runs) {
  const ExperimentConfig& cfg = opt.cfg;
  if (!gmax.has_value()) {
    if (rho < 1.0) {
      throw std::invalid_argument("a shrinking schedule (rho < 1) needs --gmax");
    }
    gmax = 1;  // irrelevant at rho = 1
  }
  const SvpsSchedule schedule(n, tau, rho, *gmax);

  const TrapProblem problem = make_problem(l, m);
  GAConfig ga;
  if (rho < 1.0) ga.max_generations = cfg.max_generations_multiplier * *gmax;
  const int run_count = runs.value_or(cfg.runs);
  const ReliabilityCriterion crit{run_count,
                                  std::min(cfg.required_successes, run_count)};
  crit.validate();

  const SeedScope scope{cfg.master_seed, static_cast<std::uint64_t>(l),
                        static_cast<std::uint64_t>(m), SeedPhase::manual,
                        static_cast<std::uint64_t>(n), 0};
  const Executor exec(cfg.worker_count);
  const ReliabilityReport report = run_batch(problem, schedule, run_count, ga, scope, exec);

  std::printf("l=%d m=%d tau=%s rho=%s gmax=%d\n", l, m, format_double(tau).c_str(),
              format_double(rho).c_str(), *gmax);
  print_report_line("result:", report);
  return report.passed(crit) ? kExitOk : kExitRuntime;
}

int cmd_sweep(const CliOptions& opt, int l, int m, std::optional<int> n, std::optional<int> gmax,
              std::optional<double> tau_only, std::optional<double> rho_only) {
  ExperimentConfig cfg = opt.cfg;
  if (tau_only) cfg.tau_values = {*tau_only};
  if (rho_only) cfg.rho_values = {*rho_only};

  const TrapProblem problem = make_problem(l, m);
  const Executor exec(cfg.worker_count);
  const InstanceSettings settings = settings_from_config(cfg);

  InstanceReport report;
  report.block_len = l;
  report.num_blocks = m;
  if (n.has_value() && gmax.has_value()) {
    // Sizes supplied by the caller: skip bisection and refinement.
    report.sizing.n_bisection = *n;
    report.sizing.n_refined = *n;
    report.sizing.g_max_estimate = *gmax;

    GAConfig capped = settings.ga;
    capped.max_generations = settings.max_generations_multiplier * *gmax;
    const SeedScope baseline_scope{cfg.master_seed, static_cast<std::uint64_t>(l),
                                   static_cast<std::uint64_t>(m), SeedPhase::baseline,
                                   static_cast<std::uint64_t>(*n), 0};
    report.baseline =
        reliability(problem, *n, settings.criterion, capped, baseline_scope, exec);
    report.sweep = run_sweep(problem, *n, *gmax, report.baseline, settings.grid,
                             settings.criterion, capped, settings.t_variant, cfg.master_seed,
                             exec);
    if (const SweepRecord* best = pick_best(report.sweep)) report.best = *best;
  } else {
    report = run_instance(l, m, settings, cfg.master_seed, exec);
    const auto audit_path =
        std::filesystem::path(cfg.output_dir) / ("sizing" + instance_suffix(l, m) + ".csv");
    write_csv(audit_path, sizing_audit_table(report.sizing, cfg.master_seed));
  }

  const std::filesystem::path dir(cfg.output_dir);
  write_csv(dir / "sweep.csv", sweep_table(report, cfg.master_seed));
  write_csv(dir / "feasible_map.csv",
            feasible_map_table(feasible_set_map(report.sweep), cfg.master_seed));
  append_csv(dir / "summary.csv", summary_table(report, cfg.master_seed));

  std::printf("l=%d m=%d n_refined=%d g_max=%d\n", l, m, report.sizing.n_refined,
              report.sizing.g_max_estimate);
  print_report_line("baseline:", report.baseline);
  if (report.best.has_value()) {
    std::printf("best: tau=%s rho=%s aes_mean=%s evals_saved=%s significant=%d\n",
                format_double(report.best->tau).c_str(), format_double(report.best->rho).c_str(),
                format_double(report.best->report.aes_mean).c_str(),
                format_double(report.best->evals_saved).c_str(),
                report.best->significant ? 1 : 0);
  } else {
    std::printf("best: none (no feasible cell)\n");
  }
  return kExitOk;
}

int cmd_scalability(const CliOptions& opt) {
  const ExperimentConfig& cfg = opt.cfg;
  const Executor exec(cfg.worker_count);
  const InstanceSettings settings = settings_from_config(cfg);
  const std::filesystem::path dir(cfg.output_dir);

  ScalabilityOutcome outcome;
  for (int l : cfg.l_values) {
    for (int m : cfg.m_values) {
      try {
        InstanceReport report = run_instance(l, m, settings, cfg.master_seed, exec);
        const std::string suffix = instance_suffix(l, m);
        write_csv(dir / ("sizing" + suffix + ".csv"),
                  sizing_audit_table(report.sizing, cfg.master_seed));
        write_csv(dir / ("sweep" + suffix + ".csv"), sweep_table(report, cfg.master_seed));
        write_csv(dir / ("feasible_map" + suffix + ".csv"),
                  feasible_map_table(feasible_set_map(report.sweep), cfg.master_seed));
        append_csv(dir / "summary.csv", summary_table(report, cfg.master_seed));

        std::printf("l=%d m=%d n_refined=%d g_max=%d baseline_aes=%s best_aes=%s saved=%s\n", l,
                    m, report.sizing.n_refined, report.sizing.g_max_estimate,
                    format_double(report.baseline.aes_mean).c_str(),
                    format_double(report.best ? report.best->report.aes_mean
                                              : std::numeric_limits<double>::quiet_NaN())
                        .c_str(),
                    format_double(report.best ? report.best->evals_saved
                                              : std::numeric_limits<double>::quiet_NaN())
                        .c_str());
        outcome.instances.push_back(std::move(report));
      } catch (const std::exception& e) {
        outcome.failures.push_back({l, m, e.what()});
        std::fprintf(stderr, "instance l=%d m=%d failed: %s\n", l, m, e.what());
      }
    }
  }

  for (const InstanceReport& inst : outcome.instances) {
    if (inst.best.has_value()) {
      outcome.savings_points.emplace_back(static_cast<double>(inst.n_refined()),
                                          inst.best->evals_saved);
    }
  }
  std::size_t positive = 0;
  for (const auto& [np, saved] : outcome.savings_points) {
    if (np > 0.0 && saved > 0.0) ++positive;
  }
  if (positive >= 3) {
    outcome.savings_fit = fit_power_law(outcome.savings_points);
    std::printf("powerlaw: exponent=%s coefficient=%s r_squared=%s points=%d\n",
                format_double(outcome.savings_fit->exponent).c_str(),
                format_double(outcome.savings_fit->coefficient).c_str(),
                format_double(outcome.savings_fit->r_squared).c_str(),
                outcome.savings_fit->points_used);
  } else {
    std::fprintf(stderr, "warning: %zu instance(s) with positive savings, need 3 for a fit\n",
                 positive);
  }
  write_csv(dir / "powerlaw.csv", powerlaw_table(outcome, cfg.master_seed));

  return outcome.instances.empty() ? kExitRuntime : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Population sizing and deterministic shrinkage schedules for trap-function GAs"};
  app.set_version_flag("--version", std::string("svps ") + kVersion);
  app.require_subcommand(1);

  CliOptions opt;
  app.add_option("--config", opt.config_path, "key = value settings file")
      ->check(CLI::ExistingFile);
  std::uint64_t seed_arg = 0;
  unsigned workers_arg = 0;
  std::string out_arg;
  auto* seed_flag = app.add_option("--seed", seed_arg, "master seed (64-bit)");
  auto* workers_flag =
      app.add_option("--workers", workers_arg, "worker threads (0 = all cores)");
  auto* out_flag = app.add_option("--out", out_arg, "output directory for CSV files");

  int l = 0;
  int m = 0;
  auto add_instance_flags = [&](CLI::App* sub) {
    sub->fallthrough();  // global flags may come after the subcommand
    sub->add_option("--l", l, "bits per trap block (>= 2)")->required();
    sub->add_option("--m", m, "number of concatenated blocks")->required();
  };

  CLI::App* size_cmd = app.add_subcommand(
      "size", "estimate the minimal reliable population size and the schedule horizon");
  add_instance_flags(size_cmd);

  CLI::App* run_cmd =
      app.add_subcommand("run", "run replications of one population-size schedule");
  add_instance_flags(run_cmd);
  int n_arg = 0;
  double tau_arg = 1.0;
  double rho_arg = 1.0;
  int gmax_arg = 0;
  int runs_arg = 0;
  run_cmd->add_option("--n", n_arg, "initial population size")->required();
  run_cmd->add_option("--tau", tau_arg, "shrinkage speed (> 0)");
  run_cmd->add_option("--rho", rho_arg, "shrinkage severity in (0, 1]");
  auto* gmax_opt = run_cmd->add_option("--gmax", gmax_arg, "schedule horizon in generations");
  auto* runs_opt = run_cmd->add_option("--runs", runs_arg, "replication count");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "sweep the (tau, rho) grid against the fixed-size baseline for one instance");
  add_instance_flags(sweep_cmd);
  int sweep_n = 0;
  int sweep_gmax = 0;
  double tau_only = 0.0;
  double rho_only = 0.0;
  auto* sweep_n_opt =
      sweep_cmd->add_option("--n", sweep_n, "population size (skips sizing, needs --gmax)");
  auto* sweep_gmax_opt =
      sweep_cmd->add_option("--gmax", sweep_gmax, "schedule horizon (skips sizing, needs --n)");
  auto* tau_only_opt = sweep_cmd->add_option("--tau-only", tau_only, "restrict the grid to one tau");
  auto* rho_only_opt = sweep_cmd->add_option("--rho-only", rho_only, "restrict the grid to one rho");

  CLI::App* scal_cmd = app.add_subcommand(
      "scalability", "full study over the configured (l, m) grid, with the savings power law");
  scal_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*seed_flag) opt.seed = seed_arg;
    if (*workers_flag) opt.workers = workers_arg;
    if (*out_flag) opt.out = out_arg;
    opt.finalize();

    if (*size_cmd) return cmd_size(opt, l, m);
    if (*run_cmd) {
      return cmd_run(opt, l, m, n_arg, tau_arg, rho_arg,
                     *gmax_opt ? std::optional<int>(gmax_arg) : std::nullopt,
                     *runs_opt ? std::optional<int>(runs_arg) : std::nullopt);
    }
    if (*sweep_cmd) {
      if (sweep_n_opt->count() != sweep_gmax_opt->count()) {
        throw std::invalid_argument("--n and --gmax must be given together");
      }
      return cmd_sweep(opt, l, m,
                       *sweep_n_opt ? std::optional<int>(sweep_n) : std::nullopt,
                       *sweep_gmax_opt ? std::optional<int>(sweep_gmax) : std::nullopt,
                       *tau_only_opt ? std::optional<double>(tau_only) : std::nullopt,
                       *rho_only_opt ? std::optional<double>(rho_only) : std::nullopt);
    }
    if (*scal_cmd) return cmd_scalability(opt);
    std::fprintf(stderr, "error: no subcommand selected\n");
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const estimation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}

#include "svps/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "svps/errors.hpp"
#include "svps/rng.hpp"

namespace svps {

SweepGrid SweepGrid::defaults() {
  SweepGrid grid;
  for (double tau = 0.125; tau <= 32.0; tau *= 1.5) grid.tau_values.push_back(tau);
  for (int k = 0; 25 + 5 * k <= 100; ++k) grid.rho_values.push_back((25 + 5 * k) / 100.0);
  return grid;
}

void SweepGrid::validate() const {
  if (tau_values.empty() || rho_values.empty()) {
    throw std::invalid_argument("sweep grid: tau and rho lists must be nonempty");
  }
  for (double tau : tau_values) {
    if (!(tau > 0.0)) throw std::invalid_argument("sweep grid: tau must be positive");
  }
  for (double rho : rho_values) {
    if (!(rho > 0.0) || rho > 1.0) {
      throw std::invalid_argument("sweep grid: rho must lie in (0, 1]");
    }
  }
}

std::vector<SweepRecord> run_sweep(const TrapProblem& problem, int n_refined, int g_max,
                                   const ReliabilityReport& baseline, const SweepGrid& grid,
                                   const ReliabilityCriterion& crit, const GAConfig& config,
                                   TTestVariant t_variant, std::uint64_t master_seed,
                                   const Executor& exec) {
  grid.validate();
  crit.validate();
  config.validate();

  const std::size_t n_tau = grid.tau_values.size();
  const std::size_t n_rho = grid.rho_values.size();
  const std::size_t n_cells = n_tau * n_rho;
  const std::size_t runs = static_cast<std::size_t>(crit.runs);

  std::vector<SvpsSchedule> schedules;
  schedules.reserve(n_cells);
  for (std::size_t ti = 0; ti < n_tau; ++ti) {
    for (std::size_t ri = 0; ri < n_rho; ++ri) {
      schedules.push_back(
          SvpsSchedule{n_refined, grid.tau_values[ti], grid.rho_values[ri], g_max});
    }
  }

  // One flat task per (cell, replication) so a single pool saturates even
  // when cells are few; slot indexing keeps results scheduling-independent.
  std::vector<RunOutcome> outcomes(n_cells * runs);
  exec.for_each(n_cells * runs, [&](std::size_t task) {
    const std::size_t cell = task / runs;
    const std::size_t rep = task % runs;
    const SeedScope scope{master_seed,
                          static_cast<std::uint64_t>(problem.params().block_len),
                          static_cast<std::uint64_t>(problem.num_blocks()),
                          SeedPhase::sweep,
                          cell / n_rho,   // tau index
                          cell % n_rho};  // rho index
    outcomes[task] = run(problem, schedules[cell], config, scope.seed_for_run(rep));
  });

  const SampleStats baseline_stats{baseline.aes_mean, baseline.aes_std, baseline.successes};
  std::vector<SweepRecord> records;
  records.reserve(n_cells);
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    SweepRecord rec;
    rec.tau = grid.tau_values[cell / n_rho];
    rec.rho = grid.rho_values[cell % n_rho];
    rec.report.size = n_refined;
    rec.report.runs = crit.runs;
    rec.report.outcomes.assign(outcomes.begin() + static_cast<std::ptrdiff_t>(cell * runs),
                               outcomes.begin() + static_cast<std::ptrdiff_t>((cell + 1) * runs));

    std::vector<double> aes;
    std::vector<double> gens;
    for (const RunOutcome& outcome : rec.report.outcomes) {
      if (!outcome.success) continue;
      ++rec.report.successes;
      aes.push_back(static_cast<double>(*outcome.evaluations_to_solution));
      gens.push_back(static_cast<double>(outcome.generations));
    }
    rec.report.success_rate = static_cast<double>(rec.report.successes) / crit.runs;
    const SampleStats aes_stats = summarize(aes);
    rec.report.aes_mean = aes_stats.mean;
    rec.report.aes_std = aes_stats.stddev;
    rec.report.generations_mean = summarize(gens).mean;

    rec.feasible = rec.report.passed(crit);
    if (rec.report.successes > 0) rec.evals_saved = baseline.aes_mean - rec.report.aes_mean;
    if (rec.report.successes >= 2 && baseline.successes >= 2) {
      const TTestResult t = two_sample_t_test(aes_stats, baseline_stats, t_variant);
      rec.t_stat = t.t;
      rec.significant = rec.feasible && t.significant && rec.report.aes_mean < baseline.aes_mean;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

const SweepRecord* pick_best(const std::vector<SweepRecord>& records) {
  const SweepRecord* best = nullptr;
  for (const SweepRecord& rec : records) {
    if (!rec.feasible) continue;
    if (best == nullptr || rec.report.aes_mean < best->report.aes_mean ||
        (rec.report.aes_mean == best->report.aes_mean &&
         (rec.rho > best->rho || (rec.rho == best->rho && rec.tau > best->tau)))) {
      best = &rec;
    }
  }
  return best;
}

std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (n < 2) return std::nullopt;

  auto ranks = [](const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };

  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
    sxy += (rx[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

FeasibleMap feasible_set_map(const std::vector<SweepRecord>& records) {
  FeasibleMap map;
  map.cells.reserve(records.size());
  for (const SweepRecord& rec : records) {
    map.cells.push_back({rec.tau, rec.rho, rec.feasible, rec.evals_saved});
  }
  std::sort(map.cells.begin(), map.cells.end(), [](const FeasibleCell& a, const FeasibleCell& b) {
    return a.tau != b.tau ? a.tau < b.tau : a.rho < b.rho;
  });

  std::vector<double> taus;
  std::vector<double> min_rhos;
  for (const FeasibleCell& cell : map.cells) {
    if (!cell.feasible) continue;
    if (!taus.empty() && taus.back() == cell.tau) continue;  // cells are sorted, first is min rho
    taus.push_back(cell.tau);
    min_rhos.push_back(cell.rho);
  }
  map.rank_correlation = spearman(taus, min_rhos);
  return map;
}

InstanceReport run_instance(int block_len, int num_blocks, const InstanceSettings& settings,
                            std::uint64_t master_seed, const Executor& exec) {
  const TrapProblem problem = make_problem(block_len, num_blocks);

  InstanceReport report;
  report.block_len = block_len;
  report.num_blocks = num_blocks;
  report.sizing = run_sizing(problem, settings.criterion, settings.ga, settings.bisection,
                             settings.gmax_statistic, master_seed, exec);

  GAConfig capped = settings.ga;
  if (settings.max_generations_multiplier >= 1) {
    capped.max_generations = settings.max_generations_multiplier * report.sizing.g_max_estimate;
  }

  const SeedScope baseline_scope{master_seed,
                                 static_cast<std::uint64_t>(block_len),
                                 static_cast<std::uint64_t>(num_blocks),
                                 SeedPhase::baseline,
                                 static_cast<std::uint64_t>(report.sizing.n_refined),
                                 0};
  report.baseline = reliability(problem, report.sizing.n_refined, settings.criterion, capped,
                                baseline_scope, exec);

  report.sweep = run_sweep(problem, report.sizing.n_refined, report.sizing.g_max_estimate,
                           report.baseline, settings.grid, settings.criterion, capped,
                           settings.t_variant, master_seed, exec);
  if (const SweepRecord* best = pick_best(report.sweep)) report.best = *best;
  return report;
}

ScalabilityOutcome scalability(const std::vector<int>& l_values, const std::vector<int>& m_values,
                               const InstanceSettings& settings, std::uint64_t master_seed,
                               const Executor& exec) {
  ScalabilityOutcome outcome;
  for (int l : l_values) {
    for (int m : m_values) {
      try {
        outcome.instances.push_back(run_instance(l, m, settings, master_seed, exec));
      } catch (const std::exception& e) {
        outcome.failures.push_back({l, m, e.what()});
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
  for (const auto& [n, saved] : outcome.savings_points) {
    if (n > 0.0 && saved > 0.0) ++positive;
  }
  if (positive >= 3) outcome.savings_fit = fit_power_law(outcome.savings_points);
  return outcome;
}

}  // namespace svps

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "svps/ga.hpp"
#include "svps/parallel.hpp"
#include "svps/rng.hpp"
#include "svps/schedule.hpp"
#include "svps/trap.hpp"

namespace svps {

/// "Reliable" means at least required_successes of runs replications reach
/// the optimum; the default asks for 49 of 50.
struct ReliabilityCriterion {
  int runs = 50;
  int required_successes = 49;

  void validate() const;
  double required_rate() const { return static_cast<double>(required_successes) / runs; }
};

struct ReliabilityReport {
  int size = 0;  // initial population size tested
  int runs = 0;
  int successes = 0;
  double success_rate = 0.0;
  // AES statistics are over successful runs only; NaN when there are none.
  double aes_mean = std::numeric_limits<double>::quiet_NaN();
  double aes_std = std::numeric_limits<double>::quiet_NaN();
  double generations_mean = std::numeric_limits<double>::quiet_NaN();
  std::vector<RunOutcome> outcomes;

  bool passed(const ReliabilityCriterion& crit) const {
    return successes >= crit.required_successes;
  }
};

/// Runs `runs` independent replications under the schedule; replication i is
/// seeded with scope.seed_for_run(i), so the aggregate is a pure function of
/// the scope regardless of worker count.
ReliabilityReport run_batch(const TrapProblem& problem, const SvpsSchedule& schedule, int runs,
                            const GAConfig& config, const SeedScope& scope, const Executor& exec);

/// Fixed-size reliability probe: run_batch under a constant schedule of n.
ReliabilityReport reliability(const TrapProblem& problem, int n, const ReliabilityCriterion& crit,
                              const GAConfig& config, const SeedScope& scope, const Executor& exec);

struct BisectionSettings {
  int initial_size = 8;
  double threshold = 1.0 / 16.0;  // stop when (max - min) / min falls to this
  int ceiling = 1 << 20;

  void validate() const;
};

/// Minimum size accepted by a monotone reliability predicate: double from
/// initial_size until the probe passes, then halve the bracket until its
/// relative width reaches the threshold. Returns the smallest size that
/// actually passed a probe. Doubling past the ceiling raises
/// estimation_error.
int bisection_search(const std::function<bool(int)>& reliable, const BisectionSettings& settings);

/// Descends from a passing size in steps of max(1, round(0.01 n)), keeping
/// each size whose probe still passes; stops on the first failure. Never
/// returns below 2 or above start.
int refinement_search(const std::function<bool(int)>& reliable, int start);

enum class GmaxStatistic { mean, median, max };

/// Schedule horizon from the fixed-size runtimes: the chosen statistic of
/// generations over successful runs, ceiled to an integer, at least 1.
/// Raises estimation_error when the report has no successful run.
int estimate_gmax(const ReliabilityReport& report, GmaxStatistic statistic = GmaxStatistic::mean);

struct SizingRecord {
  std::string phase;  // "bisection" or "refine"
  ReliabilityReport report;
};

struct SizingResult {
  int n_bisection = 0;
  int n_refined = 0;
  int g_max_estimate = 0;
  std::vector<SizingRecord> reports;  // audit trail, probe order

  /// Stored report for the refined size (the probe that made it pass).
  const ReliabilityReport& final_report() const;
};

/// Full sizing pipeline: bisection, then 1% refinement, then the horizon
/// estimate from the refined size's own reliability report.
SizingResult run_sizing(const TrapProblem& problem, const ReliabilityCriterion& crit,
                        const GAConfig& config, const BisectionSettings& settings,
                        GmaxStatistic statistic, std::uint64_t master_seed, const Executor& exec);

}  // namespace svps

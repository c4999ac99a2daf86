#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "svps/ga.hpp"
#include "svps/parallel.hpp"
#include "svps/powerlaw.hpp"
#include "svps/sizing.hpp"
#include "svps/stats.hpp"
#include "svps/trap.hpp"

namespace svps {

struct SweepGrid {
  std::vector<double> tau_values;
  std::vector<double> rho_values;

  /// tau: 0.125 multiplied by 1.5 while staying <= 32 (14 values);
  /// rho: 0.25 to 1.00 in steps of 0.05 (16 values, exact 1.0 endpoint).
  static SweepGrid defaults();
  void validate() const;
};

struct SweepRecord {
  double tau = 0.0;
  double rho = 0.0;
  ReliabilityReport report;  // per-run outcomes for this cell
  bool feasible = false;     // success rate meets the criterion
  double t_stat = std::numeric_limits<double>::quiet_NaN();
  // Feasible, beats the baseline mean, and the t-test rejects equality.
  bool significant = false;
  // baseline aes_mean minus this cell's aes_mean (NaN without successes).
  double evals_saved = std::numeric_limits<double>::quiet_NaN();
};

/// Runs the full (tau, rho) grid at schedule (n_refined, tau, rho, g_max).
/// Replication streams are keyed by (tau index, rho index, run index), so
/// any scheduling yields the same records. Records come back sorted by
/// (tau, rho) ascending.
std::vector<SweepRecord> run_sweep(const TrapProblem& problem, int n_refined, int g_max,
                                   const ReliabilityReport& baseline, const SweepGrid& grid,
                                   const ReliabilityCriterion& crit, const GAConfig& config,
                                   TTestVariant t_variant, std::uint64_t master_seed,
                                   const Executor& exec);

/// Lowest-AES feasible record; ties prefer larger rho, then larger tau.
/// Null when nothing is feasible.
const SweepRecord* pick_best(const std::vector<SweepRecord>& records);

struct FeasibleCell {
  double tau = 0.0;
  double rho = 0.0;
  bool feasible = false;
  double evals_saved = std::numeric_limits<double>::quiet_NaN();
};

struct FeasibleMap {
  std::vector<FeasibleCell> cells;  // (tau, rho) ascending
  // Spearman rank correlation between tau and the minimum feasible rho at
  // that tau; empty when fewer than two taus have a feasible cell or the
  // ranks are degenerate.
  std::optional<double> rank_correlation;
};

FeasibleMap feasible_set_map(const std::vector<SweepRecord>& records);

/// Spearman rank correlation with average ranks for ties; empty for fewer
/// than two points or zero rank variance.
std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y);

struct InstanceReport {
  int block_len = 0;   // l
  int num_blocks = 0;  // m
  SizingResult sizing;
  ReliabilityReport baseline;  // fixed-size GA at n_refined
  std::vector<SweepRecord> sweep;
  std::optional<SweepRecord> best;

  int n_refined() const { return sizing.n_refined; }
  int g_max() const { return sizing.g_max_estimate; }
};

struct InstanceSettings {
  ReliabilityCriterion criterion;
  GAConfig ga;  // max_generations applies to sizing probes
  BisectionSettings bisection;
  GmaxStatistic gmax_statistic = GmaxStatistic::mean;
  SweepGrid grid = SweepGrid::defaults();
  TTestVariant t_variant = TTestVariant::welch;
  // Baseline and sweep runs are capped at this multiple of the estimated
  // horizon; fixation catches nearly all failures before the cap.
  int max_generations_multiplier = 10;
};

/// Full per-instance pipeline: bisection, refinement, horizon estimate,
/// fixed-size baseline at the refined size, then the grid sweep.
InstanceReport run_instance(int block_len, int num_blocks, const InstanceSettings& settings,
                            std::uint64_t master_seed, const Executor& exec);

struct InstanceFailure {
  int block_len = 0;
  int num_blocks = 0;
  std::string message;
};

struct ScalabilityOutcome {
  std::vector<InstanceReport> instances;
  std::vector<InstanceFailure> failures;
  // One point per instance with a best cell: (n_refined, best evals_saved).
  std::vector<std::pair<double, double>> savings_points;
  // Fitted when at least three points have positive savings.
  std::optional<PowerLawFit> savings_fit;
};

/// Runs every (l, m) instance of the grid; a sizing failure on one instance
/// is recorded and the rest continue.
ScalabilityOutcome scalability(const std::vector<int>& l_values, const std::vector<int>& m_values,
                               const InstanceSettings& settings, std::uint64_t master_seed,
                               const Executor& exec);

}  // namespace svps

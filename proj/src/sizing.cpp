#include "svps/sizing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svps/errors.hpp"
#include "svps/stats.hpp"

namespace svps {

void ReliabilityCriterion::validate() const {
  if (runs < 1) throw std::invalid_argument("reliability: runs must be >= 1");
  if (required_successes < 0 || required_successes > runs) {
    throw std::invalid_argument("reliability: required_successes must lie in [0, runs]");
  }
}

void BisectionSettings::validate() const {
  if (initial_size < 2) throw std::invalid_argument("bisection: initial_size must be >= 2");
  if (!(threshold > 0.0)) throw std::invalid_argument("bisection: threshold must be positive");
  if (ceiling < initial_size) throw std::invalid_argument("bisection: ceiling below initial_size");
}

ReliabilityReport run_batch(const TrapProblem& problem, const SvpsSchedule& schedule, int runs,
                            const GAConfig& config, const SeedScope& scope, const Executor& exec) {
  if (runs < 1) throw std::invalid_argument("run_batch: runs must be >= 1");
  config.validate();

  ReliabilityReport report;
  report.size = schedule.initial_size;
  report.runs = runs;
  report.outcomes.resize(static_cast<std::size_t>(runs));
  exec.for_each(static_cast<std::size_t>(runs), [&](std::size_t i) {
    report.outcomes[i] =
        run(problem, schedule, config, scope.seed_for_run(static_cast<std::uint64_t>(i)));
  });

  std::vector<double> aes;
  std::vector<double> gens;
  for (const RunOutcome& outcome : report.outcomes) {
    if (!outcome.success) continue;
    ++report.successes;
    aes.push_back(static_cast<double>(*outcome.evaluations_to_solution));
    gens.push_back(static_cast<double>(outcome.generations));
  }
  report.success_rate = static_cast<double>(report.successes) / runs;
  const SampleStats aes_stats = summarize(aes);
  report.aes_mean = aes_stats.mean;
  report.aes_std = aes_stats.stddev;
  report.generations_mean = summarize(gens).mean;
  return report;
}

ReliabilityReport reliability(const TrapProblem& problem, int n, const ReliabilityCriterion& crit,
                              const GAConfig& config, const SeedScope& scope,
                              const Executor& exec) {
  crit.validate();
  return run_batch(problem, SvpsSchedule::constant(n), crit.runs, config, scope, exec);
}

int bisection_search(const std::function<bool(int)>& reliable, const BisectionSettings& settings) {
  settings.validate();

  int n = settings.initial_size;
  while (!reliable(n)) {
    if (n > settings.ceiling / 2) {
      throw estimation_error("bisection: no reliable size at or below the ceiling");
    }
    n *= 2;
  }

  // n passed; the size half below either failed or was never probed.
  int min = std::max(2, n / 2);
  int max = n;
  int best = n;
  while (static_cast<double>(max - min) / min > settings.threshold) {
    const int mid = min + (max - min) / 2;
    if (mid == min) break;  // bracket exhausted at integer resolution
    if (reliable(mid)) {
      max = mid;
      best = mid;
    } else {
      min = mid;
    }
  }
  return best;
}

int refinement_search(const std::function<bool(int)>& reliable, int start) {
  if (start < 2) throw std::invalid_argument("refine: start must be >= 2");
  int n = start;
  while (n > 2) {
    const int step = std::max(1, static_cast<int>(std::llround(0.01 * n)));
    const int candidate = std::max(2, n - step);
    if (!reliable(candidate)) break;
    n = candidate;
  }
  return n;
}

int estimate_gmax(const ReliabilityReport& report, GmaxStatistic statistic) {
  std::vector<double> gens;
  for (const RunOutcome& outcome : report.outcomes) {
    if (outcome.success) gens.push_back(static_cast<double>(outcome.generations));
  }
  if (gens.empty()) {
    throw estimation_error("estimate_gmax: no successful run to take a runtime from");
  }

  double value = 0.0;
  switch (statistic) {
    case GmaxStatistic::mean:
      value = summarize(gens).mean;
      break;
    case GmaxStatistic::median: {
      std::sort(gens.begin(), gens.end());
      const std::size_t h = gens.size() / 2;
      value = gens.size() % 2 == 1 ? gens[h] : 0.5 * (gens[h - 1] + gens[h]);
      break;
    }
    case GmaxStatistic::max:
      value = *std::max_element(gens.begin(), gens.end());
      break;
  }
  return std::max(1, static_cast<int>(std::ceil(value)));
}

const ReliabilityReport& SizingResult::final_report() const {
  // Walk backwards: the most recent probe at n_refined is the one that passed.
  for (auto it = reports.rbegin(); it != reports.rend(); ++it) {
    if (it->report.size == n_refined) return it->report;
  }
  throw std::logic_error("sizing: no stored report for the refined size");
}

SizingResult run_sizing(const TrapProblem& problem, const ReliabilityCriterion& crit,
                        const GAConfig& config, const BisectionSettings& settings,
                        GmaxStatistic statistic, std::uint64_t master_seed, const Executor& exec) {
  crit.validate();
  settings.validate();

  SizingResult result;
  auto probe = [&](int n, SeedPhase phase, const char* label) {
    SeedScope scope{master_seed, static_cast<std::uint64_t>(problem.params().block_len),
                    static_cast<std::uint64_t>(problem.num_blocks()), phase,
                    static_cast<std::uint64_t>(n), 0};
    ReliabilityReport report = reliability(problem, n, crit, config, scope, exec);
    const bool ok = report.passed(crit);
    result.reports.push_back({label, std::move(report)});
    return ok;
  };

  result.n_bisection = bisection_search(
      [&](int n) { return probe(n, SeedPhase::bisection, "bisection"); }, settings);
  result.n_refined = refinement_search(
      [&](int n) { return probe(n, SeedPhase::refine, "refine"); }, result.n_bisection);
  result.g_max_estimate = estimate_gmax(result.final_report(), statistic);
  return result;
}

}  // namespace svps

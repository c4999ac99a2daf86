#include <stdexcept>
#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "svps/errors.hpp"
#include "svps/rng.hpp"
#include "svps/sizing.hpp"
#include "svps/trap.hpp"

using namespace svps;

TEST_CASE("bisection brackets the threshold of a monotone oracle") {
  RandomStream rng(808);
  BisectionSettings settings;
  for (int rep = 0; rep < 100; ++rep) {
    const int n_star = 10 + static_cast<int>(rng.below(4991));
    std::vector<int> probes;
    const int got = bisection_search(
        [&](int n) {
          probes.push_back(n);
          return n >= n_star;
        },
        settings);
    CHECK(got >= n_star);
    CHECK(got <= static_cast<int>(std::ceil(n_star * (1.0 + 1.0 / 16.0))) + 1);
    for (std::size_t i = 1; i < probes.size(); ++i) CHECK(probes[i] != probes[i - 1]);
  }
}

TEST_CASE("bisection worked example: threshold 100 from initial 10") {
  BisectionSettings settings;
  settings.initial_size = 10;
  const int got = bisection_search([](int n) { return n >= 100; }, settings);
  CHECK(got >= 100);
  CHECK(got <= 107);
}

TEST_CASE("an immediately reliable oracle stays at or below the initial size") {
  BisectionSettings settings;  // initial 8
  const int got = bisection_search([](int) { return true; }, settings);
  CHECK(got <= 8);
  CHECK(got >= 2);
}

TEST_CASE("doubling past the ceiling raises an estimation error") {
  BisectionSettings settings;
  settings.ceiling = 1 << 12;
  CHECK_THROWS_AS(bisection_search([](int) { return false; }, settings), estimation_error);
}

TEST_CASE("bisection validates its settings") {
  BisectionSettings bad;
  bad.initial_size = 1;
  CHECK_THROWS_AS(bisection_search([](int) { return true; }, bad), std::invalid_argument);
  bad = BisectionSettings{};
  bad.threshold = 0.0;
  CHECK_THROWS_AS(bisection_search([](int) { return true; }, bad), std::invalid_argument);
}

TEST_CASE("refinement walks down in one-percent steps") {
  int probes = 0;
  const int got = refinement_search(
      [&](int n) {
        ++probes;
        return n >= 50;
      },
      64);
  CHECK((got == 50 || got == 51));
  CHECK(probes >= 13);
}

TEST_CASE("refinement returns the start when the first step fails") {
  const int got = refinement_search([](int n) { return n >= 64; }, 64);
  CHECK(got == 64);
}

TEST_CASE("refinement never descends below two") {
  CHECK(refinement_search([](int) { return true; }, 10) == 2);
  CHECK(refinement_search([](int) { return true; }, 2) == 2);
}

TEST_CASE("refinement uses a step of one percent at larger sizes") {
  std::vector<int> probes;
  refinement_search(
      [&](int n) {
        probes.push_back(n);
        return n >= 995;
      },
      1000);
  REQUIRE(!probes.empty());
  CHECK(probes[0] == 990);  // 1000 - round(0.01 * 1000)
}

TEST_CASE("horizon estimate is the ceiled mean of successful generations") {
  ReliabilityReport report;
  report.runs = 4;
  auto succeed_at = [](int gens) {
    RunOutcome o;
    o.success = true;
    o.evaluations_to_solution = 100;
    o.total_evaluations = 100;
    o.generations = gens;
    o.termination = Termination::optimum_found;
    return o;
  };
  RunOutcome failed;
  failed.success = false;
  failed.generations = 3;  // failures are left out of the estimate

  report.outcomes = {succeed_at(10), succeed_at(11), succeed_at(13), failed};
  report.successes = 3;
  CHECK(estimate_gmax(report) == 12);  // ceil(34 / 3)
  CHECK(estimate_gmax(report, GmaxStatistic::median) == 11);
  CHECK(estimate_gmax(report, GmaxStatistic::max) == 13);

  report.outcomes = {succeed_at(12), succeed_at(12)};
  CHECK(estimate_gmax(report) == 12);

  report.outcomes = {succeed_at(0)};
  CHECK(estimate_gmax(report) == 1);  // floored at one generation

  report.outcomes = {failed};
  CHECK_THROWS_AS(estimate_gmax(report), estimation_error);
}

TEST_CASE("reliability saturates on an oversized population and starves on a tiny one") {
  const TrapProblem problem = make_problem(2, 2);
  ReliabilityCriterion crit{20, 20};
  GAConfig config;
  const Executor exec(1);

  const SeedScope big_scope{5, 2, 2, SeedPhase::manual, 400, 0};
  const ReliabilityReport big = reliability(problem, 400, crit, config, big_scope, exec);
  CHECK(big.success_rate == 1.0);
  CHECK(big.passed(crit));
  CHECK(big.size == 400);
  CHECK(big.runs == 20);

  const TrapProblem hard = make_problem(4, 16);
  const SeedScope tiny_scope{5, 4, 16, SeedPhase::manual, 2, 0};
  const ReliabilityReport tiny = reliability(hard, 2, crit, config, tiny_scope, exec);
  CHECK(tiny.success_rate < 0.1);
  CHECK_FALSE(tiny.passed(crit));
}

TEST_CASE("reliability aggregates do not depend on the worker count") {
  const TrapProblem problem = make_problem(3, 2);
  ReliabilityCriterion crit{30, 29};
  GAConfig config;
  const SeedScope scope{77, 3, 2, SeedPhase::manual, 40, 0};

  const ReliabilityReport serial = reliability(problem, 40, crit, config, scope, Executor(1));
  const ReliabilityReport pooled = reliability(problem, 40, crit, config, scope, Executor(4));
  CHECK(serial.successes == pooled.successes);
  CHECK(serial.aes_mean == pooled.aes_mean);
  CHECK(serial.aes_std == pooled.aes_std);
  REQUIRE(serial.outcomes.size() == pooled.outcomes.size());
  for (std::size_t i = 0; i < serial.outcomes.size(); ++i) {
    CHECK(serial.outcomes[i] == pooled.outcomes[i]);
  }
}

TEST_CASE("the full sizing pipeline on the smallest instance") {
  const TrapProblem problem = make_problem(2, 2);
  ReliabilityCriterion crit;
  GAConfig config;
  BisectionSettings settings;
  const Executor exec(1);

  const SizingResult sizing =
      run_sizing(problem, crit, config, settings, GmaxStatistic::mean, 2024, exec);

  CHECK(sizing.n_refined <= sizing.n_bisection);
  CHECK(sizing.n_refined >= 2);
  CHECK(sizing.g_max_estimate >= 1);
  CHECK(sizing.final_report().size == sizing.n_refined);
  CHECK(sizing.final_report().success_rate >= crit.required_rate());

  // Every probe recorded; phases cover both stages when refinement moved.
  CHECK(!sizing.reports.empty());
  for (const SizingRecord& rec : sizing.reports) {
    CHECK((rec.phase == "bisection" || rec.phase == "refine"));
    CHECK(rec.report.runs == crit.runs);
    if (rec.report.passed(crit)) CHECK(rec.report.success_rate >= 0.98);
  }

  const SizingResult again =
      run_sizing(problem, crit, config, settings, GmaxStatistic::mean, 2024, exec);
  CHECK(again.n_bisection == sizing.n_bisection);
  CHECK(again.n_refined == sizing.n_refined);
  CHECK(again.g_max_estimate == sizing.g_max_estimate);
  REQUIRE(again.reports.size() == sizing.reports.size());
  for (std::size_t i = 0; i < again.reports.size(); ++i) {
    CHECK(again.reports[i].phase == sizing.reports[i].phase);
    CHECK(again.reports[i].report.size == sizing.reports[i].report.size);
    CHECK(again.reports[i].report.successes == sizing.reports[i].report.successes);
  }
}

TEST_CASE("criterion validation") {
  CHECK_THROWS_AS((ReliabilityCriterion{0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ReliabilityCriterion{10, 11}.validate()), std::invalid_argument);
  ReliabilityCriterion ok;
  CHECK(ok.required_rate() == doctest::Approx(0.98));
}

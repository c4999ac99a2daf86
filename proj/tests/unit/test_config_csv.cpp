#include <stdexcept>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "svps/config.hpp"
#include "svps/csv.hpp"
#include "svps/version.hpp"

using namespace svps;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("svps_test_" + std::to_string(static_cast<unsigned>(::getpid())));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("config defaults describe the desk-scale study") {
  const ExperimentConfig cfg;
  CHECK(cfg.l_values == std::vector<int>{2, 3, 4});
  CHECK(cfg.m_values == std::vector<int>{2, 4, 8, 16});
  CHECK(cfg.runs == 50);
  CHECK(cfg.required_successes == 49);
  CHECK(cfg.bisection_initial_n == 8);
  CHECK(cfg.bisection_threshold == doctest::Approx(1.0 / 16.0));
  CHECK(cfg.tau_values.empty());
  CHECK(cfg.rho_values.empty());
  CHECK(cfg.gmax_statistic == GmaxStatistic::mean);
  CHECK(cfg.t_test_variant == TTestVariant::welch);
  CHECK(cfg.max_generations_multiplier == 10);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config text overrides only the keys it names") {
  ExperimentConfig cfg;
  apply_config_text(cfg,
                    "# comment line\n"
                    "\n"
                    "l_values = 3, 4\n"
                    "m_values=8,16,32\n"
                    "master_seed = 12345\n"
                    "runs = 30   # trailing comment\n"
                    "required_successes = 29\n"
                    "bisection_initial_n = 16\n"
                    "bisection_threshold = 0.125\n"
                    "tau_values = 0.9, 2.84\n"
                    "rho_values = 0.55, 0.65, 0.95\n"
                    "gmax_statistic = median\n"
                    "t_test_variant = pooled\n"
                    "max_generations_multiplier = 5\n"
                    "worker_count = 2\n"
                    "output_dir = out/exp1\n");
  CHECK(cfg.l_values == std::vector<int>{3, 4});
  CHECK(cfg.m_values == std::vector<int>{8, 16, 32});
  CHECK(cfg.master_seed == 12345);
  CHECK(cfg.runs == 30);
  CHECK(cfg.required_successes == 29);
  CHECK(cfg.bisection_initial_n == 16);
  CHECK(cfg.bisection_threshold == doctest::Approx(0.125));
  CHECK(cfg.tau_values == std::vector<double>{0.9, 2.84});
  CHECK(cfg.rho_values == std::vector<double>{0.55, 0.65, 0.95});
  CHECK(cfg.gmax_statistic == GmaxStatistic::median);
  CHECK(cfg.t_test_variant == TTestVariant::pooled);
  CHECK(cfg.max_generations_multiplier == 5);
  CHECK(cfg.worker_count == 2);
  CHECK(cfg.output_dir == "out/exp1");

  ExperimentConfig partial;
  apply_config_text(partial, "runs = 10\nrequired_successes = 10\n");
  CHECK(partial.runs == 10);
  CHECK(partial.l_values == std::vector<int>{2, 3, 4});  // untouched keys keep defaults
}

TEST_CASE("config parser rejects unknown keys and malformed input") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(apply_config_text(cfg, "population = 5\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(cfg, "runs 50\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(cfg, "runs = fifty\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(cfg, "runs =\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(cfg, "gmax_statistic = average\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(cfg, "t_test_variant = student\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(cfg, "rho_values = \n"), std::invalid_argument);
  CHECK_THROWS_AS(load_config_file("/nonexistent/svps.cfg"), std::invalid_argument);
}

TEST_CASE("config validation catches inconsistent settings") {
  ExperimentConfig cfg;
  cfg.required_successes = 60;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.l_values = {1};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.rho_values = {0.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.max_generations_multiplier = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("deterministic number formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(19.0) == "19");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(2641.98) == "2641.98");
}

TEST_CASE("csv text layout and metadata line") {
  CsvTable table;
  table.meta = csv_meta_line(42);
  table.columns = {"a", "b"};
  table.rows = {{"1", "2"}, {"3", "4"}};
  const std::string expected =
      "# svps " + std::string(kVersion) + " seed=42\na,b\n1,2\n3,4\n";
  CHECK(table.to_text() == expected);

  CsvTable bad = table;
  bad.rows.push_back({"only one"});
  CHECK_THROWS_AS(bad.to_text(), std::logic_error);
}

TEST_CASE("csv files are written atomically and append keeps the header") {
  TempDir tmp;
  const auto path = tmp.path / "nested" / "table.csv";

  CsvTable table;
  table.meta = csv_meta_line(7);
  table.columns = {"x", "y"};
  table.rows = {{"1", "10"}};
  write_csv(path, table);
  CHECK(slurp(path) == table.to_text());
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));

  CsvTable more = table;
  more.rows = {{"2", "20"}};
  append_csv(path, more);
  const std::string text = slurp(path);
  CHECK(text == table.to_text() + "2,20\n");

  CsvTable mismatched;
  mismatched.meta = csv_meta_line(7);
  mismatched.columns = {"x", "z"};
  mismatched.rows = {{"3", "30"}};
  CHECK_THROWS_AS(append_csv(path, mismatched), std::runtime_error);

  // Appending to a fresh path creates the file, meta line included.
  const auto fresh = tmp.path / "fresh.csv";
  append_csv(fresh, more);
  CHECK(slurp(fresh) == more.to_text());
}

TEST_CASE("rewriting identical content is byte-identical") {
  TempDir tmp;
  const auto path = tmp.path / "stable.csv";
  CsvTable table;
  table.meta = csv_meta_line(123);
  table.columns = {"phase", "candidate_n"};
  table.rows = {{"bisection", "8"}, {"refine", "19"}};
  write_csv(path, table);
  const std::string first = slurp(path);
  write_csv(path, table);
  CHECK(slurp(path) == first);
}

TEST_CASE("report tables carry the documented columns") {
  SizingResult sizing;
  sizing.n_bisection = 20;
  sizing.n_refined = 19;
  sizing.g_max_estimate = 10;
  SizingRecord rec;
  rec.phase = "bisection";
  rec.report.size = 20;
  rec.report.runs = 50;
  rec.report.successes = 50;
  rec.report.success_rate = 1.0;
  rec.report.aes_mean = 30.0;
  rec.report.aes_std = 5.0;
  rec.report.generations_mean = 4.0;
  sizing.reports.push_back(rec);

  const CsvTable audit = sizing_audit_table(sizing, 9);
  CHECK(audit.columns == std::vector<std::string>{"phase", "candidate_n", "successes", "runs",
                                                  "success_rate", "aes_mean", "aes_std",
                                                  "gen_mean"});
  REQUIRE(audit.rows.size() == 1);
  CHECK(audit.rows[0][0] == "bisection");
  CHECK(audit.rows[0][1] == "20");
  CHECK(audit.meta == csv_meta_line(9));

  InstanceReport report;
  report.block_len = 2;
  report.num_blocks = 2;
  report.sizing = sizing;
  report.baseline = rec.report;
  SweepRecord cell;
  cell.tau = 1.0;
  cell.rho = 0.5;
  cell.report = rec.report;
  cell.feasible = true;
  cell.evals_saved = 3.5;
  report.sweep.push_back(cell);
  report.best = cell;

  const CsvTable sweep = sweep_table(report, 9);
  CHECK(sweep.columns == std::vector<std::string>{"l", "m", "n0", "gmax", "tau", "rho", "runs",
                                                  "successes", "success_rate", "aes_mean",
                                                  "aes_std", "t_stat", "significant",
                                                  "evals_saved"});
  REQUIRE(sweep.rows.size() == 1);
  CHECK(sweep.rows[0][2] == "19");

  const CsvTable summary = summary_table(report, 9);
  CHECK(summary.columns == std::vector<std::string>{"l", "m", "n_refined", "gmax",
                                                    "baseline_aes_mean", "baseline_aes_std",
                                                    "best_tau", "best_rho", "best_aes_mean",
                                                    "best_aes_std", "evals_saved",
                                                    "significant"});
  REQUIRE(summary.rows.size() == 1);
  CHECK(summary.rows[0][0] == "2");
  CHECK(summary.rows[0][6] == "1");    // best tau
  CHECK(summary.rows[0][7] == "0.5");  // best rho

  const FeasibleMap map = feasible_set_map(report.sweep);
  const CsvTable feasible = feasible_map_table(map, 9);
  CHECK(feasible.columns == std::vector<std::string>{"tau", "rho", "feasible", "evals_saved"});
  REQUIRE(feasible.rows.size() == 1);
  CHECK(feasible.rows[0][2] == "1");

  ScalabilityOutcome outcome;
  outcome.savings_points = {{19.0, 3.5}, {112.0, 90.0}, {230.0, 200.0}};
  const CsvTable powerlaw = powerlaw_table(outcome, 9);
  CHECK(powerlaw.columns == std::vector<std::string>{"n_refined", "evals_saved"});
  CHECK(powerlaw.rows.size() == 3);
  CHECK(powerlaw.meta.find("fit unavailable") != std::string::npos);

  PowerLawFit fit;
  fit.exponent = 1.54;
  fit.coefficient = 0.9;
  fit.r_squared = 0.97;
  fit.points_used = 3;
  outcome.savings_fit = fit;
  const CsvTable fitted = powerlaw_table(outcome, 9);
  CHECK(fitted.meta.find("exponent=1.54") != std::string::npos);
}

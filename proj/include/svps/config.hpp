#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svps/sizing.hpp"
#include "svps/stats.hpp"

namespace svps {

/// Every experiment knob in one place. The defaults are the desk-scale
/// study setup; a config file overrides fields by name, command-line flags
/// override the file.
struct ExperimentConfig {
  std::vector<int> l_values = {2, 3, 4};
  std::vector<int> m_values = {2, 4, 8, 16};
  std::uint64_t master_seed = 1;
  int runs = 50;
  int required_successes = 49;
  int bisection_initial_n = 8;
  double bisection_threshold = 1.0 / 16.0;
  std::vector<double> tau_values;  // empty: multiplicative default grid
  std::vector<double> rho_values;  // empty: 0.25..1.00 step 0.05
  GmaxStatistic gmax_statistic = GmaxStatistic::mean;
  TTestVariant t_test_variant = TTestVariant::welch;
  int max_generations_multiplier = 10;
  unsigned worker_count = 0;  // 0: all hardware threads
  std::string output_dir = "results";

  void validate() const;
};

/// Applies "key = value" lines onto cfg. Lists are comma-separated; blank
/// lines and '#' comments are skipped. Unknown keys and malformed values
/// raise invalid_argument naming the offender.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);

/// Reads the file and applies it onto default settings.
ExperimentConfig load_config_file(const std::string& path);

GmaxStatistic parse_gmax_statistic(const std::string& word);
TTestVariant parse_t_test_variant(const std::string& word);
const char* to_string(GmaxStatistic statistic);
const char* to_string(TTestVariant variant);

}  // namespace svps

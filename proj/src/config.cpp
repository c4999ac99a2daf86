#include "svps/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace svps {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw std::invalid_argument("config: bad value '" + value + "' for key '" + key + "'");
}

long long parse_int(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used != value.size()) bad_value(key, value);
    return out;
  } catch (const std::invalid_argument&) {
    bad_value(key, value);
  } catch (const std::out_of_range&) {
    bad_value(key, value);
  }
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const std::string& item : split_list(value)) {
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  if (out.empty()) bad_value(key, value);
  return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split_list(value)) out.push_back(parse_double(key, item));
  if (out.empty()) bad_value(key, value);
  return out;
}

}  // namespace

GmaxStatistic parse_gmax_statistic(const std::string& word) {
  if (word == "mean") return GmaxStatistic::mean;
  if (word == "median") return GmaxStatistic::median;
  if (word == "max") return GmaxStatistic::max;
  throw std::invalid_argument("config: gmax_statistic must be mean, median, or max, got '" +
                              word + "'");
}

TTestVariant parse_t_test_variant(const std::string& word) {
  if (word == "welch") return TTestVariant::welch;
  if (word == "pooled") return TTestVariant::pooled;
  throw std::invalid_argument("config: t_test_variant must be welch or pooled, got '" + word +
                              "'");
}

const char* to_string(GmaxStatistic statistic) {
  switch (statistic) {
    case GmaxStatistic::mean: return "mean";
    case GmaxStatistic::median: return "median";
    case GmaxStatistic::max: return "max";
  }
  return "?";
}

const char* to_string(TTestVariant variant) {
  return variant == TTestVariant::welch ? "welch" : "pooled";
}

void ExperimentConfig::validate() const {
  if (l_values.empty() || m_values.empty()) {
    throw std::invalid_argument("config: l_values and m_values must be nonempty");
  }
  for (int l : l_values) {
    if (l < 2) throw std::invalid_argument("config: block lengths must be >= 2");
  }
  for (int m : m_values) {
    if (m < 1) throw std::invalid_argument("config: block counts must be >= 1");
  }
  ReliabilityCriterion{runs, required_successes}.validate();
  BisectionSettings{bisection_initial_n, bisection_threshold}.validate();
  for (double tau : tau_values) {
    if (!(tau > 0.0)) throw std::invalid_argument("config: tau_values must be positive");
  }
  for (double rho : rho_values) {
    if (!(rho > 0.0) || rho > 1.0) {
      throw std::invalid_argument("config: rho_values must lie in (0, 1]");
    }
  }
  if (max_generations_multiplier < 1) {
    throw std::invalid_argument("config: max_generations_multiplier must be >= 1");
  }
  if (output_dir.empty()) throw std::invalid_argument("config: output_dir must be nonempty");
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not of the form key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " has an empty key or value");
    }

    if (key == "l_values") {
      cfg.l_values = parse_int_list(key, value);
    } else if (key == "m_values") {
      cfg.m_values = parse_int_list(key, value);
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(key, value);
    } else if (key == "runs") {
      cfg.runs = static_cast<int>(parse_int(key, value));
    } else if (key == "required_successes") {
      cfg.required_successes = static_cast<int>(parse_int(key, value));
    } else if (key == "bisection_initial_n") {
      cfg.bisection_initial_n = static_cast<int>(parse_int(key, value));
    } else if (key == "bisection_threshold") {
      cfg.bisection_threshold = parse_double(key, value);
    } else if (key == "tau_values") {
      cfg.tau_values = parse_double_list(key, value);
    } else if (key == "rho_values") {
      cfg.rho_values = parse_double_list(key, value);
    } else if (key == "gmax_statistic") {
      cfg.gmax_statistic = parse_gmax_statistic(value);
    } else if (key == "t_test_variant") {
      cfg.t_test_variant = parse_t_test_variant(value);
    } else if (key == "max_generations_multiplier") {
      cfg.max_generations_multiplier = static_cast<int>(parse_int(key, value));
    } else if (key == "worker_count") {
      cfg.worker_count = static_cast<unsigned>(parse_u64(key, value));
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig cfg;
  apply_config_text(cfg, buffer.str());
  return cfg;
}

}  // namespace svps

#include "svps/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "svps/version.hpp"

namespace svps {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string CsvTable::to_text() const {
  std::ostringstream out;
  if (!meta.empty()) out << meta << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << columns[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size()) {
      throw std::logic_error("csv: row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

std::string csv_meta_line(std::uint64_t master_seed) {
  return "# svps " + std::string(kVersion) + " seed=" + std::to_string(master_seed);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("csv: cannot open '" + tmp.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("csv: write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  write_text_atomic(path, table.to_text());
}

void append_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (!std::filesystem::exists(path)) {
    write_csv(path, table);
    return;
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("csv: cannot read '" + path.string() + "'");
  std::ostringstream existing;
  existing << in.rdbuf();
  std::string text = existing.str();
  if (!text.empty() && text.back() != '\n') text += '\n';

  // The existing header must already declare the same columns.
  std::istringstream scan(text);
  std::string line;
  std::string header;
  while (std::getline(scan, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = line;
    break;
  }
  std::string expected;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) expected += ',';
    expected += table.columns[i];
  }
  if (header != expected) {
    throw std::runtime_error("csv: '" + path.string() + "' has a different column set");
  }

  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::logic_error("csv: row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += row[i];
    }
    text += '\n';
  }
  write_text_atomic(path, text);
}

namespace {

std::string fmt_int(long long v) { return std::to_string(v); }

}  // namespace

CsvTable sizing_audit_table(const SizingResult& sizing, std::uint64_t master_seed) {
  CsvTable table;
  table.meta = csv_meta_line(master_seed);
  table.columns = {"phase",        "candidate_n", "successes", "runs",
                   "success_rate", "aes_mean",    "aes_std",   "gen_mean"};
  for (const SizingRecord& rec : sizing.reports) {
    table.rows.push_back({rec.phase, fmt_int(rec.report.size), fmt_int(rec.report.successes),
                          fmt_int(rec.report.runs), format_double(rec.report.success_rate),
                          format_double(rec.report.aes_mean), format_double(rec.report.aes_std),
                          format_double(rec.report.generations_mean)});
  }
  return table;
}

CsvTable sweep_table(const InstanceReport& report, std::uint64_t master_seed) {
  CsvTable table;
  table.meta = csv_meta_line(master_seed);
  table.columns = {"l",        "m",         "n0",           "gmax",     "tau",
                   "rho",      "runs",      "successes",    "success_rate", "aes_mean",
                   "aes_std",  "t_stat",    "significant",  "evals_saved"};
  for (const SweepRecord& rec : report.sweep) {
    table.rows.push_back({fmt_int(report.block_len), fmt_int(report.num_blocks),
                          fmt_int(report.sizing.n_refined), fmt_int(report.sizing.g_max_estimate),
                          format_double(rec.tau), format_double(rec.rho),
                          fmt_int(rec.report.runs), fmt_int(rec.report.successes),
                          format_double(rec.report.success_rate),
                          format_double(rec.report.aes_mean), format_double(rec.report.aes_std),
                          format_double(rec.t_stat), rec.significant ? "1" : "0",
                          format_double(rec.evals_saved)});
  }
  return table;
}

CsvTable feasible_map_table(const FeasibleMap& map, std::uint64_t master_seed) {
  CsvTable table;
  table.meta = csv_meta_line(master_seed) + "\n# rank_correlation=" +
               (map.rank_correlation ? format_double(*map.rank_correlation) : "nan");
  table.columns = {"tau", "rho", "feasible", "evals_saved"};
  for (const FeasibleCell& cell : map.cells) {
    table.rows.push_back({format_double(cell.tau), format_double(cell.rho),
                          cell.feasible ? "1" : "0", format_double(cell.evals_saved)});
  }
  return table;
}

CsvTable summary_table(const InstanceReport& report, std::uint64_t master_seed) {
  CsvTable table;
  table.meta = csv_meta_line(master_seed);
  table.columns = {"l",
                   "m",
                   "n_refined",
                   "gmax",
                   "baseline_aes_mean",
                   "baseline_aes_std",
                   "best_tau",
                   "best_rho",
                   "best_aes_mean",
                   "best_aes_std",
                   "evals_saved",
                   "significant"};
  std::vector<std::string> row = {fmt_int(report.block_len),
                                  fmt_int(report.num_blocks),
                                  fmt_int(report.sizing.n_refined),
                                  fmt_int(report.sizing.g_max_estimate),
                                  format_double(report.baseline.aes_mean),
                                  format_double(report.baseline.aes_std)};
  if (report.best.has_value()) {
    row.push_back(format_double(report.best->tau));
    row.push_back(format_double(report.best->rho));
    row.push_back(format_double(report.best->report.aes_mean));
    row.push_back(format_double(report.best->report.aes_std));
    row.push_back(format_double(report.best->evals_saved));
    row.push_back(report.best->significant ? "1" : "0");
  } else {
    for (int i = 0; i < 5; ++i) row.push_back("nan");
    row.push_back("0");
  }
  table.rows.push_back(std::move(row));
  return table;
}

CsvTable powerlaw_table(const ScalabilityOutcome& outcome, std::uint64_t master_seed) {
  CsvTable table;
  std::string meta = csv_meta_line(master_seed);
  if (outcome.savings_fit.has_value()) {
    const PowerLawFit& fit = *outcome.savings_fit;
    meta += "\n# fit exponent=" + format_double(fit.exponent) +
            " coefficient=" + format_double(fit.coefficient) +
            " r_squared=" + format_double(fit.r_squared) +
            " points=" + std::to_string(fit.points_used);
  } else {
    meta += "\n# fit unavailable (needs 3 instances with positive savings)";
  }
  table.meta = std::move(meta);
  table.columns = {"n_refined", "evals_saved"};
  for (const auto& [n, saved] : outcome.savings_points) {
    table.rows.push_back({format_double(n), format_double(saved)});
  }
  return table;
}

}  // namespace svps

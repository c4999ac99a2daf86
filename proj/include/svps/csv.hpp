#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "svps/experiment.hpp"
#include "svps/sizing.hpp"

namespace svps {

/// Shortest round-trippable decimal (%.10g is plenty for reporting); NaN and
/// infinities print as "nan"/"inf"/"-inf" so files stay parseable.
std::string format_double(double v);

struct CsvTable {
  std::string meta;  // comment line(s), each starting with '#', newline-joined
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_text() const;
};

/// Comment line carried by every file: tool version and master seed.
std::string csv_meta_line(std::uint64_t master_seed);

/// Writes via a sibling temp file and rename, so readers never observe a
/// partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Appends table.rows to an existing file (keeping its meta and header,
/// which must declare the same columns) or creates the file. The rewrite
/// goes through the same temp-and-rename path.
void append_csv(const std::filesystem::path& path, const CsvTable& table);

CsvTable sizing_audit_table(const SizingResult& sizing, std::uint64_t master_seed);

CsvTable sweep_table(const InstanceReport& report, std::uint64_t master_seed);

CsvTable feasible_map_table(const FeasibleMap& map, std::uint64_t master_seed);

/// Single summary row for one instance: refined size, baseline AES, best
/// schedule cell and its AES.
CsvTable summary_table(const InstanceReport& report, std::uint64_t master_seed);

CsvTable powerlaw_table(const ScalabilityOutcome& outcome, std::uint64_t master_seed);

}  // namespace svps

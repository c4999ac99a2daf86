#pragma once

#include <vector>

namespace svps {

/// Deterministic shrinking population-size schedule
///   n_g = n0 * (1 - (1 - severity) * (g / horizon)^speed)   for g <= horizon,
/// constant at the horizon value afterwards. severity = 1 leaves the size
/// unchanged; small speed shrinks early. Sizes are rounded half-up, floored
/// at 2 and forced monotone non-increasing.
struct SvpsSchedule {
  int initial_size = 2;    // n0
  double speed = 1.0;      // tau > 0
  double severity = 1.0;   // rho in (0, 1]
  int horizon = 1;         // g_max >= 1

  // Parameters are fixed at construction; the size table is computed once.
  SvpsSchedule(int initial_size, double speed, double severity, int horizon);

  /// Fixed-size schedule: severity 1 makes speed and horizon irrelevant.
  static SvpsSchedule constant(int size);

  /// Population size for generation g (g >= 0).
  int size_at(int g) const;

  /// Sizes for g = 0..horizon; the tail beyond the horizon repeats back().
  const std::vector<int>& sizes() const { return table_; }

 private:
  std::vector<int> table_;
};

}  // namespace svps

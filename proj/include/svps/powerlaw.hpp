#pragma once

#include <span>
#include <utility>

namespace svps {

struct PowerLawFit {
  double exponent = 0.0;     // slope in log-log space
  double coefficient = 0.0;  // y ~ coefficient * x^exponent
  double r_squared = 0.0;
  int points_used = 0;
};

/// Ordinary least squares on (log x, log y). Points with a non-positive
/// coordinate are dropped; fewer than 3 survivors raise estimation_error.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

}  // namespace svps

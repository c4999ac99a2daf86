#include "svps/powerlaw.hpp"

#include <cmath>
#include <vector>

#include "svps/errors.hpp"

namespace svps {

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  std::vector<std::pair<double, double>> logs;
  logs.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (x > 0.0 && y > 0.0) logs.emplace_back(std::log(x), std::log(y));
  }
  if (logs.size() < 3) {
    throw estimation_error("power-law fit needs at least 3 positive points");
  }

  const double n = static_cast<double>(logs.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [lx, ly] : logs) {
    sx += lx;
    sy += ly;
  }
  const double mx = sx / n;
  const double my = sy / n;

  double sxx = 0.0, sxy = 0.0;
  for (const auto& [lx, ly] : logs) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  if (sxx == 0.0) {
    throw estimation_error("power-law fit needs at least 2 distinct x values");
  }

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.coefficient = std::exp(my - fit.exponent * mx);
  fit.points_used = static_cast<int>(logs.size());

  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [lx, ly] : logs) {
    const double pred = my + fit.exponent * (lx - mx);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - my) * (ly - my);
  }
  // A perfectly flat series is fit exactly by a zero slope.
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace svps

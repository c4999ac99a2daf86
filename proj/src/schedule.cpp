#include "svps/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svps {

namespace {

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

}  // namespace

SvpsSchedule::SvpsSchedule(int initial_size, double speed, double severity, int horizon)
    : initial_size(initial_size), speed(speed), severity(severity), horizon(horizon) {
  if (initial_size < 2) throw std::invalid_argument("initial population size must be at least 2");
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be positive");
  if (!(severity > 0.0) || severity > 1.0)
    throw std::invalid_argument("severity must lie in (0, 1]");
  if (horizon < 1) throw std::invalid_argument("schedule horizon must be at least 1");

  table_.resize(static_cast<std::size_t>(horizon) + 1);
  table_[0] = initial_size;
  const double drop = 1.0 - severity;
  for (int g = 1; g <= horizon; ++g) {
    double frac = static_cast<double>(g) / horizon;
    double raw = initial_size * (1.0 - drop * std::pow(frac, speed));
    int n = std::max(2, round_half_up(raw));
    // The raw curve is monotone; the min guards against rounding jitter.
    table_[static_cast<std::size_t>(g)] = std::min(table_[static_cast<std::size_t>(g) - 1], n);
  }
}

SvpsSchedule SvpsSchedule::constant(int size) { return SvpsSchedule(size, 1.0, 1.0, 1); }

int SvpsSchedule::size_at(int g) const {
  if (g < 0) throw std::invalid_argument("generation index must be non-negative");
  return table_[static_cast<std::size_t>(std::min(g, horizon))];
}

}  // namespace svps

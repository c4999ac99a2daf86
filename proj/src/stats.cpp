#include "svps/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace svps {

SampleStats summarize(std::span<const double> values) {
  SampleStats s;
  s.count = static_cast<int>(values.size());
  if (s.count == 0) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.count;
  if (s.count >= 2) {
    double ss = 0.0;
    for (double v : values) {
      double d = v - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / (s.count - 1));
  }
  return s;
}

namespace {

// Lentz's continued fraction for the incomplete beta.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("beta argument must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) return x;
  const double ln_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(ln_front) * beta_cf(a, b, x) / a;
  return 1.0 - std::exp(ln_front) * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
  if (t == 0.0) return 0.5;
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(dof / 2.0, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

TTestResult two_sample_t_test(const SampleStats& a, const SampleStats& b, TTestVariant variant,
                              double alpha) {
  if (a.count < 2 || b.count < 2)
    throw std::invalid_argument("t-test needs at least 2 observations per sample");
  if (a.stddev < 0.0 || b.stddev < 0.0)
    throw std::invalid_argument("standard deviations must be non-negative");

  const double va = a.stddev * a.stddev;
  const double vb = b.stddev * b.stddev;
  double se = 0.0;
  double dof = 0.0;
  if (variant == TTestVariant::welch) {
    const double qa = va / a.count;
    const double qb = vb / b.count;
    se = std::sqrt(qa + qb);
    if (qa + qb > 0.0)
      dof = (qa + qb) * (qa + qb) / (qa * qa / (a.count - 1) + qb * qb / (b.count - 1));
  } else {
    const double pooled =
        ((a.count - 1) * va + (b.count - 1) * vb) / (a.count + b.count - 2);
    se = std::sqrt(pooled * (1.0 / a.count + 1.0 / b.count));
    dof = a.count + b.count - 2;
  }

  TTestResult r;
  if (se == 0.0) {
    // Degenerate: no variance at all.
    r.dof = a.count + b.count - 2;
    if (a.mean == b.mean) {
      r.t = 0.0;
      r.p_value = 1.0;
      r.significant = false;
    } else {
      r.t = a.mean > b.mean ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
      r.significant = true;
    }
    return r;
  }

  r.t = (a.mean - b.mean) / se;
  r.dof = dof;
  r.p_value = 2.0 * (1.0 - student_t_cdf(std::fabs(r.t), dof));
  r.significant = r.p_value < alpha;
  return r;
}

}  // namespace svps

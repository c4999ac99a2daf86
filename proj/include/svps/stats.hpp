#pragma once

#include <span>

namespace svps {

struct SampleStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n-1 denominator)
  int count = 0;
};

/// Mean and sample standard deviation; stddev is 0 for fewer than 2 values.
SampleStats summarize(std::span<const double> values);

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with dof degrees of freedom.
double student_t_cdf(double t, double dof);

enum class TTestVariant { welch, pooled };

struct TTestResult {
  double t = 0.0;
  double dof = 0.0;
  double p_value = 1.0;  // two-sided
  bool significant = false;
};

/// Two-sample t-test from summary statistics, two-sided at the given alpha.
/// welch uses unequal variances with Welch-Satterthwaite degrees of freedom;
/// pooled assumes equal variances. Zero variance in both samples with equal
/// means is reported as not significant.
TTestResult two_sample_t_test(const SampleStats& a, const SampleStats& b,
                              TTestVariant variant = TTestVariant::welch, double alpha = 0.05);

}  // namespace svps

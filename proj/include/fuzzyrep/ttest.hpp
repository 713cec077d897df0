#pragma once

#include <span>

namespace fuzzyrep {

struct TTestResult {
  double mean_difference = 0.0;  // mean of a - b
  double t = 0.0;
  int df = 0;
  double p = 1.0;  // two-tailed
  bool zero_variance = false;
};

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_tailed(double t, double df);

/// Paired two-tailed t-test on a - b. Throws LengthMismatch for unequal
/// lengths and Error for fewer than 2 pairs. When all differences are equal
/// the result is t = 0, p = 1 for a zero mean and t = +-inf, p = 0 with
/// `zero_variance` set otherwise.
TTestResult paired_ttest(std::span<const double> a, std::span<const double> b);

}  // namespace fuzzyrep

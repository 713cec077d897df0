#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "fuzzyrep/errors.hpp"
#include "fuzzyrep/ttest.hpp"

using namespace fuzzyrep;

TEST_CASE("known paired case") {
  const std::vector<double> a{2, 3, 4, 5};
  const std::vector<double> b{1, 1, 1, 1};
  const TTestResult r = paired_ttest(a, b);
  CHECK(r.mean_difference == doctest::Approx(2.5));
  CHECK(r.t == doctest::Approx(3.872983).epsilon(1e-6));
  CHECK(r.df == 3);
  CHECK(r.p == doctest::Approx(0.030466).epsilon(1e-4));
}

TEST_CASE("incomplete beta agrees with boost") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ab(0.05, 60.0);
  std::uniform_real_distribution<double> xs(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = ab(rng);
    const double b = ab(rng);
    const double x = xs(rng);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(x);
    CHECK(incomplete_beta(a, b, x) == doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-9));
  }
  CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
}

TEST_CASE("two-tailed p agrees with boost students_t") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(30);
    std::vector<double> b(30);
    const double shift = 0.3 * noise(rng);
    for (std::size_t i = 0; i < 30; ++i) {
      a[i] = noise(rng) + shift;
      b[i] = noise(rng);
    }
    const TTestResult r = paired_ttest(a, b);

    std::vector<double> d(30);
    for (std::size_t i = 0; i < 30; ++i) d[i] = a[i] - b[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / 30.0;
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double t = mean / std::sqrt(ss / 29.0 / 30.0);
    const boost::math::students_t dist(29);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    CHECK(r.t == doctest::Approx(t).epsilon(1e-10));
    CHECK(std::abs(r.p - p) < 1e-6);
  }
}

TEST_CASE("swapping the samples negates t and keeps p") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
    }
    const TTestResult ab = paired_ttest(a, b);
    const TTestResult ba = paired_ttest(b, a);
    CHECK(ab.t == doctest::Approx(-ba.t).epsilon(1e-12));
    CHECK(ab.p == doctest::Approx(ba.p).epsilon(1e-12));
  }
}

TEST_CASE("degenerate inputs") {
  const std::vector<double> same{0.5, 0.5, 0.5};
  const TTestResult zero = paired_ttest(same, same);
  CHECK(zero.t == 0.0);
  CHECK(zero.p == 1.0);

  const std::vector<double> shifted{0.7, 0.7, 0.7};
  const TTestResult constant = paired_ttest(shifted, same);
  CHECK(constant.zero_variance);
  CHECK(std::isinf(constant.t));
  CHECK(constant.t > 0);
  CHECK(constant.p == 0.0);

  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(paired_ttest(one, one), Error);
  CHECK_THROWS_AS(paired_ttest(one, same), LengthMismatch);
}

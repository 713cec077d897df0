#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fuzzyrep/errors.hpp"
#include "fuzzyrep/synthetic.hpp"
#include "fuzzyrep/tuner.hpp"

using namespace fuzzyrep;

namespace {

// Linear interpolation between order statistics, written out independently.
double reference_quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<double> tail(const std::vector<double>& v, double t) {
  std::vector<double> out;
  for (double x : v) {
    if (x >= t) out.push_back(x);
  }
  return out;
}

DocCriteria doc_with(std::vector<std::tuple<std::string, double, double, double>> terms) {
  DocCriteria d;
  for (auto& [term, f, t, e] : terms) d[term] = TermCriteria{f, t, e, {0.0}, 1};
  return d;
}

}  // namespace

TEST_CASE("profiles drop zeros and count the share below 0.2") {
  const auto p = make_profile(Criterion::Frequency, {0.0, 0.1, 0.15, 0.5, 1.0});
  CHECK(p.values == std::vector<double>{0.1, 0.15, 0.5, 1.0});
  CHECK(p.frac_below_02 == 0.5);
  CHECK(p.percentile(0.0) == 0.1);
  CHECK(p.percentile(1.0) == 1.0);
  CHECK(p.percentile(0.5) == doctest::Approx(reference_quantile(p.values, 0.5)));
  CHECK_THROWS_AS(make_profile(Criterion::Emphasis, {0.0, 0.0}), EmptyProfile);
}

TEST_CASE("all-ones profile is not a power law") {
  const auto p = make_profile(Criterion::Frequency, std::vector<double>(50, 1.0));
  CHECK(p.frac_below_02 == 0.0);
  CHECK_FALSE(power_law(p));
}

TEST_CASE("profile_criterion pools values across documents") {
  const std::vector<DocCriteria> corpus{doc_with({{"a", 1.0, 0.0, 0.5}, {"b", 0.5, 1.0, 0.0}}),
                                        doc_with({{"c", 1.0, 0.0, 0.0}})};
  CHECK(profile_criterion(corpus, Criterion::Frequency).values.size() == 3);
  CHECK(profile_criterion(corpus, Criterion::Title).values == std::vector<double>{1.0});
  CHECK(profile_criterion(corpus, Criterion::Emphasis).values == std::vector<double>{0.5});
  const std::vector<DocCriteria> plain{doc_with({{"a", 1.0, 0.0, 0.0}})};
  const auto profiles = profile_corpus(plain);
  CHECK(profiles.frequency.has_value());
  CHECK_FALSE(profiles.emphasis.has_value());
  CHECK_FALSE(profiles.title.has_value());
}

TEST_CASE("uniform frequencies recover the symmetric edges") {
  const auto values = synthetic_frequency_values(100000, TermDraw::Uniform, 0.0, 3);
  const auto p = make_profile(Criterion::Frequency, values);
  CHECK_FALSE(power_law(p));
  const auto edges = frequency_boundaries(p);
  const double expected[] = {0.2, 0.4, 0.6, 0.8};
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(edges[i] - expected[i]) < 0.02);
}

TEST_CASE("power-law frequencies start at 0.2 and split the tail evenly") {
  const auto values = synthetic_frequency_values(20000, TermDraw::Zipf, 1.1, 5);
  const auto p = make_profile(Criterion::Frequency, values);
  CHECK(p.frac_below_02 > 0.55);
  CHECK(power_law(p));
  const auto edges = frequency_boundaries(p);
  CHECK(edges[0] == 0.2);
  const auto t = tail(values, 0.2);
  CHECK(edges[1] == doctest::Approx(reference_quantile(t, 0.25)));
  CHECK(edges[2] == doctest::Approx(reference_quantile(t, 0.5)));
  CHECK(edges[3] == doctest::Approx(reference_quantile(t, 0.75)));
}

TEST_CASE("uniform-tail power law puts tail edges at the symmetric values") {
  // 60% mass below 0.2, tail uniform on [0.2, 1]
  std::vector<double> v;
  for (int i = 1; i <= 6000; ++i) v.push_back(0.2 * i / 6001.0);
  for (int i = 0; i <= 4000; ++i) v.push_back(0.2 + 0.8 * i / 4000.0);
  const auto edges = frequency_boundaries(make_profile(Criterion::Frequency, v));
  CHECK(edges[0] == 0.2);
  CHECK(edges[1] == doctest::Approx(0.4).epsilon(1e-3));
  CHECK(edges[2] == doctest::Approx(0.6).epsilon(1e-3));
  CHECK(edges[3] == doctest::Approx(0.8).epsilon(1e-3));
}

TEST_CASE("emphasis boundaries") {
  std::vector<double> v;
  for (int i = 1; i <= 1000; ++i) v.push_back(i / 1000.0);
  const auto uniform = emphasis_boundaries(make_profile(Criterion::Emphasis, v));
  CHECK(uniform[0] == doctest::Approx(reference_quantile(v, 0.05)));
  CHECK(uniform[1] == doctest::Approx(reference_quantile(v, 0.15)));
  CHECK(uniform[2] == doctest::Approx(reference_quantile(v, 0.55)));
  CHECK(uniform[3] == doctest::Approx(reference_quantile(v, 0.75)));

  const auto zipf = synthetic_frequency_values(20000, TermDraw::Zipf, 1.1, 9);
  const auto edges = emphasis_boundaries(make_profile(Criterion::Emphasis, zipf));
  const auto t = tail(zipf, 0.2);
  CHECK(edges[0] == 0.2);
  CHECK(edges[1] == doctest::Approx(reference_quantile(t, 0.5)));
  CHECK(edges[2] == doctest::Approx(reference_quantile(t, 0.75)));
  CHECK(edges[3] == doctest::Approx(reference_quantile(t, 0.875)));
}

TEST_CASE("title boundaries start at the smallest value") {
  const std::vector<double> v{0.25, 0.25, 0.5, 0.5, 0.75, 1.0, 1.0, 1.0};
  const auto edges = title_boundaries(make_profile(Criterion::Title, v));
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == 0.25);
  // the minimum holds rank 2/8, so the second edge is the 62.5th percentile
  CHECK(edges[1] == doctest::Approx(reference_quantile(v, 0.625)));
}

TEST_CASE("tied boundaries are separated") {
  std::vector<double> edges{1.0, 1.0, 1.0, 1.0};
  CHECK(separate_boundaries(edges, 1e-6));
  for (std::size_t i = 1; i < edges.size(); ++i) CHECK(edges[i] > edges[i - 1]);
  CHECK(edges.back() <= 1.0);
  CHECK(edges.front() > 0.0);
  std::vector<double> fine{0.2, 0.4, 0.6, 0.8};
  CHECK_FALSE(separate_boundaries(fine, 1e-6));
  CHECK(fine == std::vector<double>{0.2, 0.4, 0.6, 0.8});
}

TEST_CASE("sets follow the boundary mapping") {
  const auto three = sets_from_boundaries({0.1, 0.2, 0.3, 0.4}, {"low", "medium", "high"});
  CHECK(three[0].pieces[0] == Trapezoid{0, 0, 0.1, 0.2});
  CHECK(three[1].pieces[0] == Trapezoid{0.1, 0.2, 0.3, 0.4});
  CHECK(three[2].pieces[0] == Trapezoid{0.3, 0.4, 1, 1});
  const auto two = sets_from_boundaries({0.3, 0.6}, {"low", "high"});
  CHECK(two[0].pieces[0] == Trapezoid{0, 0, 0.3, 0.6});
  CHECK(two[1].pieces[0] == Trapezoid{0.3, 0.6, 1, 1});
  CHECK_THROWS_AS(sets_from_boundaries({0.1, 0.2, 0.3}, {"low", "medium", "high"}), Error);
}

TEST_CASE("tune_afcc retunes only the criterion sets") {
  const KnowledgeBase efcc = bundled_kb("efcc");
  std::vector<DocCriteria> corpus;
  const auto values = synthetic_frequency_values(3000, TermDraw::Zipf, 1.1, 2);
  for (std::size_t d = 0; d < 30; ++d) {
    DocCriteria doc;
    for (std::size_t i = 0; i < 100; ++i) {
      const double f = values[d * 100 + i];
      doc["t" + std::to_string(i)] = TermCriteria{f, i % 7 == 0 ? f : 0.0, i % 5 == 0 ? f : 0.0, {0.5}, 1};
    }
    corpus.push_back(std::move(doc));
  }
  const auto profiles = profile_corpus(corpus);
  std::vector<TuningStep> steps;
  const KnowledgeBase afcc = tune_afcc(efcc, profiles, {}, &steps);
  CHECK(afcc.name == "afcc");
  CHECK(afcc.rules == efcc.rules);
  CHECK(afcc.variable("position") == efcc.variable("position"));
  CHECK(afcc.variable("importance") == efcc.variable("importance"));
  CHECK(afcc.variable("term_position") == efcc.variable("term_position"));
  CHECK(afcc.variable("frequency").set("low").pieces[0].c == 0.2);
  REQUIRE(steps.size() == 3);
  CHECK(steps[0].branch == "power-law");
  CHECK(steps[2].branch == "title");

  // idempotent for the same profiles
  CHECK(tune_afcc(efcc, profiles) == afcc);
  // a tuned base is still complete
  CHECK(parse_kb(write_kb(afcc)) == afcc);
}

TEST_CASE("missing emphasis keeps the default emphasis sets") {
  const KnowledgeBase efcc = bundled_kb("efcc");
  const std::vector<DocCriteria> corpus{doc_with({{"a", 1.0, 1.0, 0.0}, {"b", 0.5, 0.0, 0.0}})};
  std::vector<TuningStep> steps;
  const KnowledgeBase afcc = tune_afcc(efcc, profile_corpus(corpus), {}, &steps);
  CHECK(afcc.variable("emphasis") == efcc.variable("emphasis"));
  CHECK(steps[1].branch == "untouched");
}

TEST_CASE("precondition constants are configurable") {
  const auto p = make_profile(Criterion::Frequency, {0.1, 0.1, 0.3, 0.9});
  CHECK_FALSE(power_law(p));
  CHECK(power_law(p, {0.2, 0.4, 1e-6}));
  CHECK_FALSE(power_law(p, {0.05, 0.4, 1e-6}));
}

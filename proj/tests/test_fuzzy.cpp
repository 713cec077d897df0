#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fuzzyrep/errors.hpp"
#include "fuzzyrep/fuzzy.hpp"
#include "fuzzyrep/knowledge_base.hpp"
#include "oracles.hpp"

using namespace fuzzyrep;

namespace {

LinguisticVariable unit_variable(std::string name, std::vector<FuzzySet> sets) {
  return {std::move(name), 0.0, 1.0, std::move(sets)};
}

LinguisticVariable importance_variable() {
  return unit_variable("importance", {{"no", {{0, 0, 0.1, 0.2}}},
                                      {"low", {{0.1, 0.2, 0.3, 0.4}}},
                                      {"medium", {{0.3, 0.4, 0.6, 0.7}}},
                                      {"high", {{0.6, 0.7, 0.8, 0.9}}},
                                      {"very-high", {{0.8, 0.9, 1, 1}}}});
}

RuleSystem emphasis_system(InferenceOptions options = {}) {
  const KnowledgeBase kb = bundled_kb("emph");
  return RuleSystem({kb.variable("emphasis")}, kb.variable("importance"), kb.rules_for("importance"),
                    options);
}

double infer1(const RuleSystem& s, double x) {
  const double in[] = {x};
  return s.infer(std::span<const double>(in));
}

}  // namespace

TEST_CASE("trapezoid membership") {
  const Trapezoid t{0.1, 0.3, 0.5, 0.7};
  CHECK(membership(t, 0.2) == doctest::Approx(0.5));
  CHECK(membership(t, 0.4) == 1.0);
  CHECK(membership(t, 0.9) == 0.0);
  CHECK(membership(t, 0.3) == 1.0);
  CHECK(membership(t, 0.5) == 1.0);
  CHECK(membership(t, 0.1) == 0.0);
  CHECK(membership(t, 0.7) == 0.0);
  CHECK(membership(t, 0.6) == doctest::Approx(0.5));

  const Trapezoid left{0, 0, 0.2, 0.4};
  CHECK(membership(left, 0.0) == 1.0);
  CHECK(membership(left, 0.3) == doctest::Approx(0.5));
  const Trapezoid right{0.6, 0.8, 1, 1};
  CHECK(membership(right, 1.0) == 1.0);
  CHECK(area(t) == doctest::Approx(0.4));
  CHECK(area(left) == doctest::Approx(0.3));
}

TEST_CASE("membership stays in [0,1] and matches the reference") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    double p[4] = {u(rng), u(rng), u(rng), u(rng)};
    std::sort(p, p + 4);
    if (p[1] - p[0] < 1e-9 || p[3] - p[2] < 1e-9) continue;
    const Trapezoid t{p[0], p[1], p[2], p[3]};
    const double x = u(rng) * 1.2 - 0.1;
    const double m = membership(t, x);
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
    CHECK(m == doctest::Approx(oracle::mu({p[0], p[1], p[2], p[3]}, x)).epsilon(1e-12));
  }
}

TEST_CASE("union sets take the maximum of their pieces") {
  const FuzzySet pref{"preferential", {{0, 0, 0.1, 0.3}, {0.7, 0.9, 1, 1}}};
  CHECK(pref.membership(0.0) == 1.0);
  CHECK(pref.membership(0.2) == doctest::Approx(0.5));
  CHECK(pref.membership(0.5) == 0.0);
  CHECK(pref.membership(0.8) == doctest::Approx(0.5));
  CHECK(pref.membership(1.0) == 1.0);
}

TEST_CASE("emphasis-only base matches closed-form centroids") {
  const RuleSystem s = emphasis_system();
  for (double e : {0.0, 0.02, 0.05, 0.08, 0.1, 0.12, 0.15, 0.3, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8,
                   1.0, 0.04, 0.13, 0.58, 0.9}) {
    CAPTURE(e);
    CHECK(std::fabs(infer1(s, e) - oracle::emphasis_only(e)) < 1e-3);
  }
  // only high fires fully: centroid of very-high alone
  CHECK(std::fabs(infer1(s, 1.0) - oracle::first_moment(oracle::kVeryHigh) / oracle::area(oracle::kVeryHigh)) <
        1e-3);
  // half medium, half high
  const double e = 0.65;
  CHECK(oracle::mu(oracle::kEmphMedium, e) == doctest::Approx(0.5));
  CHECK(oracle::mu(oracle::kEmphHigh, e) == doctest::Approx(0.5));
  CHECK(std::fabs(infer1(s, e) - oracle::centroid({{0.5, oracle::kMedium}, {0.5, oracle::kVeryHigh}})) < 1e-3);
}

TEST_CASE("emphasis-only output is non-decreasing") {
  const RuleSystem s = emphasis_system();
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = infer1(s, i / 100.0);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("a lone fired rule yields its consequent centroid") {
  const LinguisticVariable x = unit_variable("x", {{"lo", {{0, 0, 0.3, 0.5}}}, {"hi", {{0.3, 0.5, 1, 1}}}});
  const LinguisticVariable y = unit_variable("y", {{"lo", {{0, 0, 0.3, 0.5}}}, {"hi", {{0.3, 0.5, 1, 1}}}});
  const RuleSystem s({x, y}, importance_variable(),
                     {{{{"x", "hi"}, {"y", "hi"}}, "importance", "high"},
                      {{{"x", "lo"}}, "importance", "no"},
                      {{{"y", "lo"}}, "importance", "low"}});
  const double in[] = {0.9, 0.8};
  CHECK(s.infer(std::span<const double>(in)) == doctest::Approx(0.75).epsilon(1e-6));
  const auto fired = s.fire(std::span<const double>(in));
  REQUIRE(fired.size() == 1);
  CHECK(fired[0].rule == 0);
  CHECK(fired[0].degree == 1.0);
  CHECK(fired[0].consequent == "high");
}

TEST_CASE("minimum and product conjunction") {
  const LinguisticVariable x = unit_variable("x", {{"lo", {{0, 0, 0, 1}}}, {"hi", {{0, 1, 1, 1}}}});
  const LinguisticVariable y = x;
  LinguisticVariable yy = y;
  yy.name = "y";
  const std::vector<Rule> rules{{{{"x", "hi"}, {"y", "hi"}}, "importance", "high"},
                                {{{"x", "lo"}}, "importance", "no"}};
  const double in[] = {0.5, 0.4};
  const RuleSystem smin({x, yy}, importance_variable(), rules);
  const RuleSystem sprod({x, yy}, importance_variable(), rules, {TNorm::Product, 1001});
  CHECK(smin.fire(std::span<const double>(in))[0].degree == doctest::Approx(0.4));
  CHECK(sprod.fire(std::span<const double>(in))[0].degree == doctest::Approx(0.2));
}

TEST_CASE("scaling every firing degree leaves the centroid unchanged") {
  const LinguisticVariable gate{"gate", 0.0, 2.0, {{"off", {{0, 0, 0, 2}}}, {"on", {{0, 2, 2, 2}}}}};
  const KnowledgeBase kb = bundled_kb("emph");
  std::vector<Rule> rules = kb.rules_for("importance");
  for (auto& r : rules) r.antecedents.push_back({"gate", "on"});
  const RuleSystem s({kb.variable("emphasis"), gate}, kb.variable("importance"), rules,
                     {TNorm::Product, 1001});
  for (double e : {0.1, 0.3, 0.65, 0.7}) {
    const double full[] = {e, 2.0};
    const double base = s.infer(std::span<const double>(full));
    for (double g : {0.2, 0.7, 1.3}) {
      const double scaled[] = {e, g};
      CHECK(s.infer(std::span<const double>(scaled)) == doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("outputs stay in the output domain and double grids agree") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& name : bundled_kb_names()) {
    const KnowledgeBase kb = bundled_kb(name);
    const ImportanceSystem coarse(kb);
    const ImportanceSystem fine(kb, {TNorm::Minimum, 2001});
    for (int i = 0; i < 100; ++i) {
      const double f = u(rng), t = u(rng), e = u(rng), p = u(rng);
      const double a = coarse.importance(f, t, e, p);
      CHECK(a >= 0.0);
      CHECK(a <= 1.0);
      CHECK(std::fabs(a - fine.importance(f, t, e, p)) < 1e-4);
    }
  }
}

TEST_CASE("inputs are clamped to the domain") {
  const RuleSystem s = emphasis_system();
  CHECK(infer1(s, 1.7) == infer1(s, 1.0));
  CHECK(infer1(s, -3.0) == infer1(s, 0.0));
}

TEST_CASE("name-keyed inference") {
  const KnowledgeBase kb = bundled_kb("emph");
  const double v = infer({{"emphasis", 0.65}}, kb.rules_for("importance"), kb.variables,
                         kb.variable("importance"));
  CHECK(std::fabs(v - oracle::emphasis_only(0.65)) < 1e-3);
}

TEST_CASE("no rule fired is an error") {
  const LinguisticVariable x = unit_variable("x", {{"lo", {{0, 0, 0.3, 0.5}}}, {"hi", {{0.3, 0.5, 1, 1}}}});
  const RuleSystem s({x}, importance_variable(), {{{{"x", "hi"}}, "importance", "high"}});
  CHECK_THROWS_AS(infer1(s, 0.1), NoRuleFired);
  CHECK(infer1(s, 0.9) == doctest::Approx(0.75).epsilon(1e-6));
  const auto gap = find_uncovered_point(s, 21);
  REQUIRE(gap.has_value());
  CHECK(gap->at(0) == 0.0);
}

TEST_CASE("malformed variables and rules are rejected") {
  CHECK_THROWS_AS(unit_variable("x", {{"bad", {{0.5, 0.2, 0.6, 1}}}, {"all", {{0, 0, 1, 1}}}}).validate(),
                  InvalidRuleBase);
  CHECK_THROWS_AS(unit_variable("x", {{"spike", {{0.5, 0.5, 0.5, 0.5}}}, {"all", {{0, 0, 1, 1}}}}).validate(),
                  InvalidRuleBase);
  CHECK_THROWS_AS(unit_variable("x", {{"a", {{0, 0, 1, 1}}}, {"a", {{0, 0, 1, 1}}}}).validate(),
                  InvalidRuleBase);
  CHECK_THROWS_AS(unit_variable("x", {{"out", {{0, 0, 1, 1.5}}}}).validate(), InvalidRuleBase);
  CHECK_THROWS_AS(unit_variable("x", {{"lo", {{0, 0, 0.2, 0.3}}}, {"hi", {{0.5, 0.6, 1, 1}}}}).validate(),
                  CompletenessError);

  const LinguisticVariable x = unit_variable("x", {{"lo", {{0, 0, 0.3, 0.5}}}, {"hi", {{0.3, 0.5, 1, 1}}}});
  CHECK_THROWS_AS(RuleSystem({x}, importance_variable(), {{{{"x", "huge"}}, "importance", "high"}}),
                  InvalidRuleBase);
  CHECK_THROWS_AS(RuleSystem({x}, importance_variable(), {{{{"z", "hi"}}, "importance", "high"}}),
                  InvalidRuleBase);
  CHECK_THROWS_AS(RuleSystem({x}, importance_variable(), {{{{"x", "hi"}}, "importance", "giant"}}),
                  InvalidRuleBase);
  CHECK_THROWS_AS(RuleSystem({x}, importance_variable(), {{{}, "importance", "high"}}), InvalidRuleBase);
}

TEST_CASE("quadrature moments agree with closed form") {
  const FuzzySet s{"m", {{0.3, 0.4, 0.6, 0.7}}};
  const auto [m0, m1] = quadrature_moments(s, 0.0, 1.0, 1001);
  CHECK(m0 == doctest::Approx(oracle::area(oracle::kMedium)).epsilon(1e-5));
  CHECK(m1 == doctest::Approx(oracle::first_moment(oracle::kMedium)).epsilon(1e-5));
}

TEST_CASE("position subsystem") {
  const PositionSystem ps = default_position_system();
  const double start[] = {0.0};
  const double middle[] = {0.5};
  const double mixed[] = {0.5, 0.01};
  const double early[] = {0.01};
  const double standard = oracle::first_moment({0, 0, 0.4, 0.6}) / oracle::area({0, 0, 0.4, 0.6});
  const double preferential = oracle::first_moment({0.4, 0.6, 1, 1}) / oracle::area({0.4, 0.6, 1, 1});
  CHECK(std::fabs(ps.global_position(middle) - standard) < 1e-3);
  CHECK(ps.global_position(middle) == doctest::Approx(0.253333).epsilon(1e-3));
  CHECK(std::fabs(ps.global_position(start) - preferential) < 1e-3);
  CHECK(ps.global_position(start) > 0.7);
  CHECK(ps.global_position(mixed) == ps.global_position(early));
  CHECK(ps.occurrence_score(0.0) == ps.occurrence_score(1.0));
  CHECK_THROWS_AS(ps.global_position(std::span<const double>()), EmptyPositions);
}

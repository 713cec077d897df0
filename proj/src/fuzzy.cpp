#include "fuzzyrep/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

double membership(const Trapezoid& t, double x) {
  if (x < t.a || x > t.d) return 0.0;
  if (x >= t.b && x <= t.c) return 1.0;
  if (x < t.b) return (x - t.a) / (t.b - t.a);
  return (t.d - x) / (t.d - t.c);
}

double area(const Trapezoid& t) { return 0.5 * ((t.d - t.a) + (t.c - t.b)); }

double FuzzySet::membership(double x) const {
  double best = 0.0;
  for (const Trapezoid& piece : pieces) best = std::max(best, fuzzyrep::membership(piece, x));
  return best;
}

std::optional<std::size_t> LinguisticVariable::find(std::string_view label) const {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].label == label) return i;
  }
  return std::nullopt;
}

const FuzzySet& LinguisticVariable::set(std::string_view label) const {
  const auto index = find(label);
  if (!index) throw InvalidRuleBase("variable " + name + " has no set " + std::string(label));
  return sets[*index];
}

void LinguisticVariable::validate() const {
  if (!(lo < hi)) throw InvalidRuleBase("variable " + name + ": empty domain");
  if (sets.empty()) throw InvalidRuleBase("variable " + name + ": no sets");

  std::set<std::string, std::less<>> labels;
  std::vector<double> breakpoints = {lo, hi};
  for (const FuzzySet& s : sets) {
    const std::string where = "variable " + name + ", set " + s.label;
    if (s.label.empty()) throw InvalidRuleBase("variable " + name + ": empty set label");
    if (!labels.insert(s.label).second) throw InvalidRuleBase(where + ": duplicate label");
    if (s.pieces.empty()) throw InvalidRuleBase(where + ": no trapezoid");
    for (const Trapezoid& t : s.pieces) {
      if (!(t.a <= t.b && t.b <= t.c && t.c <= t.d)) {
        throw InvalidRuleBase(where + ": breakpoints must satisfy a <= b <= c <= d");
      }
      if (t.a < lo || t.d > hi) throw InvalidRuleBase(where + ": set leaves the domain");
      if (t.a == t.d) throw InvalidRuleBase(where + ": zero-area spike");
      breakpoints.insert(breakpoints.end(), {t.a, t.b, t.c, t.d});
    }
  }

  // Membership is piecewise linear between breakpoints, so checking every
  // breakpoint and every gap midpoint decides coverage exactly.
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  auto covered = [&](double x) {
    return std::any_of(sets.begin(), sets.end(),
                       [x](const FuzzySet& s) { return s.membership(x) > 0.0; });
  };
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    std::vector<double> probes = {breakpoints[i]};
    if (i + 1 < breakpoints.size()) probes.push_back(0.5 * (breakpoints[i] + breakpoints[i + 1]));
    for (double x : probes) {
      if (!covered(x)) {
        std::ostringstream msg;
        msg << "variable " << name << ": no set covers x = " << x;
        throw CompletenessError(msg.str());
      }
    }
  }
}

std::pair<double, double> quadrature_moments(const FuzzySet& set, double lo, double hi,
                                             std::size_t grid_points) {
  const double h = (hi - lo) / static_cast<double>(grid_points);
  double m0 = 0.0;
  double m1 = 0.0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = lo + (static_cast<double>(i) + 0.5) * h;
    const double mu = set.membership(x);
    m0 += mu;
    m1 += mu * x;
  }
  return {m0 * h, m1 * h};
}

RuleSystem::RuleSystem(std::vector<LinguisticVariable> inputs, LinguisticVariable output,
                       std::vector<Rule> rules, InferenceOptions options)
    : inputs_(std::move(inputs)),
      output_(std::move(output)),
      rules_(std::move(rules)),
      options_(options) {
  if (options_.grid_points == 0) throw InvalidRuleBase("quadrature grid must be non-empty");
  for (const auto& v : inputs_) v.validate();
  output_.validate();
  if (rules_.empty()) throw InvalidRuleBase("rule base for " + output_.name + " is empty");

  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const Rule& rule = rules_[r];
    const std::string where = "rule " + std::to_string(r + 1);
    if (rule.antecedents.empty()) throw InvalidRuleBase(where + ": no antecedent");
    if (!rule.output.empty() && rule.output != output_.name) {
      throw InvalidRuleBase(where + ": concludes on " + rule.output + ", expected " +
                            output_.name);
    }
    CompiledRule compiled;
    std::set<std::size_t> used;
    for (const Antecedent& a : rule.antecedents) {
      const auto var = input_index(a.variable);
      if (!var) throw InvalidRuleBase(where + ": unknown variable " + a.variable);
      if (!used.insert(*var).second) {
        throw InvalidRuleBase(where + ": variable " + a.variable + " used twice");
      }
      const auto set = inputs_[*var].find(a.label);
      if (!set) {
        throw InvalidRuleBase(where + ": unknown label " + a.label + " for " + a.variable);
      }
      compiled.terms.emplace_back(*var, *set);
    }
    const auto consequent = output_.find(rule.consequent);
    if (!consequent) {
      throw InvalidRuleBase(where + ": unknown label " + rule.consequent + " for " +
                            output_.name);
    }
    compiled.consequent = *consequent;
    compiled_.push_back(std::move(compiled));
  }

  for (const FuzzySet& set : output_.sets) {
    const auto [m0, m1] = quadrature_moments(set, output_.lo, output_.hi, options_.grid_points);
    moment0_.push_back(m0);
    moment1_.push_back(m1);
  }
}

std::optional<std::size_t> RuleSystem::input_index(std::string_view name) const {
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    if (inputs_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<double> RuleSystem::clamp(std::span<const double> inputs) const {
  if (inputs.size() != inputs_.size()) {
    throw Error("expected " + std::to_string(inputs_.size()) + " inputs, got " +
                std::to_string(inputs.size()));
  }
  std::vector<double> out(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    out[i] = std::clamp(inputs[i], inputs_[i].lo, inputs_[i].hi);
  }
  return out;
}

double RuleSystem::degree(const CompiledRule& rule, std::span<const double> clamped) const {
  double result = 1.0;
  for (const auto& [var, set] : rule.terms) {
    const double mu = inputs_[var].sets[set].membership(clamped[var]);
    result = options_.and_operator == TNorm::Minimum ? std::min(result, mu) : result * mu;
    if (result == 0.0) break;
  }
  return result;
}

double RuleSystem::infer(std::span<const double> inputs) const {
  const std::vector<double> x = clamp(inputs);
  double numerator = 0.0;
  double denominator = 0.0;
  for (const CompiledRule& rule : compiled_) {
    const double w = degree(rule, x);
    if (w <= 0.0) continue;
    numerator += w * moment1_[rule.consequent];
    denominator += w * moment0_[rule.consequent];
  }
  if (denominator <= 0.0) throw NoRuleFired("no rule fired for " + output_.name);
  return std::clamp(numerator / denominator, output_.lo, output_.hi);
}

double RuleSystem::infer(const std::map<std::string, double, std::less<>>& inputs) const {
  std::vector<double> values(inputs_.size(), std::numeric_limits<double>::quiet_NaN());
  for (const auto& [name, value] : inputs) {
    if (const auto index = input_index(name)) values[*index] = value;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isnan(values[i])) continue;
    const bool referenced = std::any_of(compiled_.begin(), compiled_.end(), [i](const auto& r) {
      return std::any_of(r.terms.begin(), r.terms.end(),
                         [i](const auto& term) { return term.first == i; });
    });
    if (referenced) throw Error("missing input " + inputs_[i].name);
    values[i] = inputs_[i].lo;
  }
  return infer(std::span<const double>(values));
}

std::vector<FiringRecord> RuleSystem::fire(std::span<const double> inputs) const {
  const std::vector<double> x = clamp(inputs);
  std::vector<FiringRecord> records;
  for (std::size_t r = 0; r < compiled_.size(); ++r) {
    const double w = degree(compiled_[r], x);
    if (w > 0.0) records.push_back({r, w, rules_[r].consequent});
  }
  return records;
}

bool RuleSystem::any_fires(std::span<const double> inputs) const {
  const std::vector<double> x = clamp(inputs);
  return std::any_of(compiled_.begin(), compiled_.end(),
                     [&](const CompiledRule& r) { return degree(r, x) > 0.0; });
}

double infer(const std::map<std::string, double, std::less<>>& inputs,
             const std::vector<Rule>& rules, const std::vector<LinguisticVariable>& variables,
             const LinguisticVariable& output, InferenceOptions options) {
  return RuleSystem(variables, output, rules, options).infer(inputs);
}

std::optional<std::vector<double>> find_uncovered_point(const RuleSystem& system,
                                                        std::size_t points_per_axis) {
  const auto& vars = system.input_variables();
  if (vars.empty()) return std::nullopt;
  const std::size_t n = std::max<std::size_t>(points_per_axis, 2);

  std::vector<std::size_t> index(vars.size(), 0);
  std::vector<double> point(vars.size());
  while (true) {
    for (std::size_t v = 0; v < vars.size(); ++v) {
      point[v] = vars[v].lo + (vars[v].hi - vars[v].lo) * static_cast<double>(index[v]) /
                                  static_cast<double>(n - 1);
    }
    if (!system.any_fires(point)) return point;

    std::size_t v = 0;
    while (v < vars.size() && ++index[v] == n) index[v++] = 0;
    if (v == vars.size()) return std::nullopt;
  }
}

PositionSystem::PositionSystem(RuleSystem system) : system_(std::move(system)) {
  if (system_.input_variables().size() != 1) {
    throw InvalidRuleBase("position system must have exactly one input");
  }
}

double PositionSystem::occurrence_score(double position) const {
  const double x[] = {position};
  return system_.infer(std::span<const double>(x));
}

double PositionSystem::global_position(std::span<const double> positions) const {
  if (positions.empty()) throw EmptyPositions("term has no positions");
  double best = -std::numeric_limits<double>::infinity();
  for (double p : positions) best = std::max(best, occurrence_score(p));
  return best;
}

LinguisticVariable default_term_position_variable() {
  return {"term_position",
          0.0,
          1.0,
          {{"preferential", {{0.0, 0.0, 0.1, 0.3}, {0.7, 0.9, 1.0, 1.0}}},
           {"standard", {{0.1, 0.3, 0.7, 0.9}}}}};
}

LinguisticVariable default_position_variable() {
  return {"position",
          0.0,
          1.0,
          {{"standard", {{0.0, 0.0, 0.4, 0.6}}}, {"preferential", {{0.4, 0.6, 1.0, 1.0}}}}};
}

std::vector<Rule> default_position_rules() {
  return {{{{"term_position", "preferential"}}, "position", "preferential"},
          {{{"term_position", "standard"}}, "position", "standard"}};
}

PositionSystem default_position_system() {
  return PositionSystem(RuleSystem({default_term_position_variable()},
                                   default_position_variable(), default_position_rules()));
}

}  // namespace fuzzyrep

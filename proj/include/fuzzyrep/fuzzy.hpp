#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyrep {

/// Trapezoidal membership: rises a->b, equals 1 on [b,c], falls c->d.
/// a == b or c == d give shoulder sets.
struct Trapezoid {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  bool operator==(const Trapezoid&) const = default;
};

double membership(const Trapezoid& t, double x);

/// Exact area under the trapezoid.
double area(const Trapezoid& t);

/// A labelled fuzzy set. More than one piece means the union (max) of the
/// pieces, e.g. a "preferential" set near both ends of a document.
struct FuzzySet {
  std::string label;
  std::vector<Trapezoid> pieces;

  double membership(double x) const;

  bool operator==(const FuzzySet&) const = default;
};

struct LinguisticVariable {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<FuzzySet> sets;

  /// Index of the set labelled `label`, if any.
  std::optional<std::size_t> find(std::string_view label) const;

  const FuzzySet& set(std::string_view label) const;

  /// Throws InvalidRuleBase on malformed sets (ordering, bounds, duplicate
  /// labels, zero-area spikes) and CompletenessError when some point of the
  /// domain has zero membership in every set.
  void validate() const;

  bool operator==(const LinguisticVariable&) const = default;
};

struct Antecedent {
  std::string variable;
  std::string label;

  bool operator==(const Antecedent&) const = default;
};

/// IF <antecedents joined by AND> THEN <output> IS <consequent>.
struct Rule {
  std::vector<Antecedent> antecedents;
  std::string output;
  std::string consequent;

  bool operator==(const Rule&) const = default;
};

struct FiringRecord {
  std::size_t rule = 0;
  double degree = 0.0;
  std::string consequent;
};

enum class TNorm { Minimum, Product };

struct InferenceOptions {
  TNorm and_operator = TNorm::Minimum;
  std::size_t grid_points = 1001;  // midpoint quadrature cells over the output domain
};

/// A compiled Mamdani system: min (or product) AND, product implication, sum
/// aggregation, centroid defuzzification.
///
/// Because the aggregate is a weighted sum of consequent sets, its centroid is
/// sum_r w_r * M1(set_r) / sum_r w_r * M0(set_r), where M0/M1 are the
/// quadrature moments of each output set. They are computed once at
/// construction, so inference costs O(rules).
class RuleSystem {
 public:
  RuleSystem() = default;
  RuleSystem(std::vector<LinguisticVariable> inputs, LinguisticVariable output,
             std::vector<Rule> rules, InferenceOptions options = {});

  /// `inputs` follows input_variables() order; values are clamped to each
  /// domain. Throws NoRuleFired when no rule has a positive degree.
  double infer(std::span<const double> inputs) const;

  /// Name-keyed overload. Variables not referenced by any rule may be absent.
  double infer(const std::map<std::string, double, std::less<>>& inputs) const;

  /// Degrees of every rule that fired (degree > 0), in rule order.
  std::vector<FiringRecord> fire(std::span<const double> inputs) const;

  /// True when at least one rule fires at `inputs`.
  bool any_fires(std::span<const double> inputs) const;

  const std::vector<LinguisticVariable>& input_variables() const noexcept { return inputs_; }
  const LinguisticVariable& output_variable() const noexcept { return output_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const InferenceOptions& options() const noexcept { return options_; }
  std::optional<std::size_t> input_index(std::string_view name) const;

 private:
  struct CompiledRule {
    std::vector<std::pair<std::size_t, std::size_t>> terms;  // (input, set)
    std::size_t consequent = 0;
  };

  double degree(const CompiledRule& rule, std::span<const double> clamped) const;
  std::vector<double> clamp(std::span<const double> inputs) const;

  std::vector<LinguisticVariable> inputs_;
  LinguisticVariable output_;
  std::vector<Rule> rules_;
  InferenceOptions options_;
  std::vector<CompiledRule> compiled_;
  std::vector<double> moment0_;  // per output set
  std::vector<double> moment1_;
};

/// Midpoint-quadrature zeroth and first moments of `set` over [lo, hi].
std::pair<double, double> quadrature_moments(const FuzzySet& set, double lo, double hi,
                                             std::size_t grid_points);

/// Name-keyed one-shot inference; builds a RuleSystem from `variables`.
double infer(const std::map<std::string, double, std::less<>>& inputs,
             const std::vector<Rule>& rules, const std::vector<LinguisticVariable>& variables,
             const LinguisticVariable& output, InferenceOptions options = {});

/// First grid point (21 values per axis by default) where no rule fires.
std::optional<std::vector<double>> find_uncovered_point(const RuleSystem& system,
                                                        std::size_t points_per_axis = 21);

/// term_position -> position system used to fold occurrence positions into
/// one global position value.
class PositionSystem {
 public:
  explicit PositionSystem(RuleSystem system);

  /// Maximum per-occurrence defuzzified score. Throws EmptyPositions.
  double global_position(std::span<const double> positions) const;

  double occurrence_score(double position) const;

  const RuleSystem& system() const noexcept { return system_; }

 private:
  RuleSystem system_;
};

/// term_position sets: preferential = (0,0,0.1,0.3) | (0.7,0.9,1,1),
/// standard = (0.1,0.3,0.7,0.9). Output position sets: standard =
/// (0,0,0.4,0.6), preferential = (0.4,0.6,1,1).
LinguisticVariable default_term_position_variable();
LinguisticVariable default_position_variable();
std::vector<Rule> default_position_rules();
PositionSystem default_position_system();

}  // namespace fuzzyrep

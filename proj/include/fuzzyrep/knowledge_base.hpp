#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyrep/criteria.hpp"
#include "fuzzyrep/fuzzy.hpp"

namespace fuzzyrep {

/// Variable databases plus rule bases for the term-importance system.
///
/// Required variables: frequency, title, emphasis, position (inputs) and
/// importance (output, five sets no/low/medium/high/very-high). Rules that
/// conclude on `position` over `term_position` form the auxiliary position
/// system; the defaults are used when the file has none.
struct KnowledgeBase {
  std::string name;
  std::map<std::string, std::string, std::less<>> meta;
  std::vector<LinguisticVariable> variables;
  std::vector<Rule> rules;

  const LinguisticVariable& variable(std::string_view var) const;
  LinguisticVariable& variable(std::string_view var);
  bool has_variable(std::string_view var) const;

  /// Rules concluding on `output`, in file order.
  std::vector<Rule> rules_for(std::string_view output) const;

  bool operator==(const KnowledgeBase&) const = default;
};

inline constexpr const char* kCriterionVariables[] = {"frequency", "title", "emphasis",
                                                      "position"};
inline constexpr const char* kImportanceLabels[] = {"no", "low", "medium", "high", "very-high"};

struct LoadOptions {
  bool check_completeness = true;
  std::size_t grid_points_per_axis = 21;
  InferenceOptions inference;
};

/// Parses the KB text format. Throws ParseError (with line number) on syntax
/// errors, unknown variables/labels and invalid sets, and CompletenessError
/// when some grid point fires no importance rule.
KnowledgeBase parse_kb(std::string_view text, const LoadOptions& options = {});

KnowledgeBase load_kb(const std::filesystem::path& file, const LoadOptions& options = {});

/// Serializes with round-trip precision; parse_kb(write_kb(kb)) == kb.
std::string write_kb(const KnowledgeBase& kb);

void save_kb(const KnowledgeBase& kb, const std::filesystem::path& file);

/// fcc, addfcc, efcc, emph.
const std::vector<std::string>& bundled_kb_names();
std::string_view bundled_kb_text(std::string_view name);
KnowledgeBase bundled_kb(std::string_view name, const LoadOptions& options = {});

/// A compiled knowledge base: importance system plus position system.
class ImportanceSystem {
 public:
  explicit ImportanceSystem(const KnowledgeBase& kb, InferenceOptions options = {});

  /// Importance of a term: inputs are its normalized frequency, title and
  /// emphasis values and the global position of its occurrences.
  double importance(const TermCriteria& criteria) const;

  double importance(double frequency, double title, double emphasis, double position) const;

  const RuleSystem& rules() const noexcept { return main_; }
  const PositionSystem& position_system() const noexcept { return position_; }

  /// Grid point (frequency, title, emphasis, position) where no rule fires.
  std::optional<std::vector<double>> uncovered_point(std::size_t points_per_axis = 21) const;

 private:
  RuleSystem main_;
  PositionSystem position_;
};

}  // namespace fuzzyrep

#include "fuzzyrep/knowledge_base.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

double parse_number(const std::string& token, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a number, got '" + token + "'");
  }
  return value;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that still round-trips.
  for (int precision = 1; precision < 17; ++precision) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", precision, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

struct PendingRule {
  Rule rule;
  std::size_t line;
};

void check_rule(const KnowledgeBase& kb, const PendingRule& pending) {
  auto find_var = [&](const std::string& name) -> const LinguisticVariable* {
    for (const auto& v : kb.variables) {
      if (v.name == name) return &v;
    }
    return nullptr;
  };
  for (const Antecedent& a : pending.rule.antecedents) {
    const LinguisticVariable* var = find_var(a.variable);
    if (!var) throw ParseError(pending.line, "unknown variable '" + a.variable + "'");
    if (!var->find(a.label)) {
      throw ParseError(pending.line, "unknown label '" + a.label + "' for " + a.variable);
    }
  }
  const LinguisticVariable* out = find_var(pending.rule.output);
  if (!out) throw ParseError(pending.line, "unknown output variable '" + pending.rule.output + "'");
  if (!out->find(pending.rule.consequent)) {
    throw ParseError(pending.line,
                     "unknown label '" + pending.rule.consequent + "' for " + pending.rule.output);
  }
}

Rule parse_rule(const std::vector<std::string>& tokens, const std::string& output,
                std::size_t line) {
  // IF <var> IS <label> (AND <var> IS <label>)* THEN [<output> IS] <label>
  Rule rule;
  rule.output = output;
  if (tokens.empty() || lower(tokens[0]) != "if") throw ParseError(line, "rule must start with IF");
  std::size_t i = 1;
  while (true) {
    if (i + 2 >= tokens.size() || lower(tokens[i + 1]) != "is") {
      throw ParseError(line, "expected '<variable> IS <label>'");
    }
    rule.antecedents.push_back({lower(tokens[i]), lower(tokens[i + 2])});
    i += 3;
    if (i >= tokens.size()) throw ParseError(line, "missing THEN");
    const std::string keyword = lower(tokens[i]);
    ++i;
    if (keyword == "then") break;
    if (keyword != "and") throw ParseError(line, "expected AND or THEN, got '" + tokens[i - 1] + "'");
  }
  if (i + 1 == tokens.size()) {
    rule.consequent = lower(tokens[i]);
  } else if (i + 3 == tokens.size() && lower(tokens[i + 1]) == "is") {
    if (lower(tokens[i]) != output) {
      throw ParseError(line, "rule concludes on '" + tokens[i] + "' inside [rules " + output + "]");
    }
    rule.consequent = lower(tokens[i + 2]);
  } else {
    throw ParseError(line, "malformed consequent");
  }
  return rule;
}

}  // namespace

const LinguisticVariable& KnowledgeBase::variable(std::string_view var) const {
  for (const auto& v : variables) {
    if (v.name == var) return v;
  }
  throw Error("knowledge base " + name + " has no variable " + std::string(var));
}

LinguisticVariable& KnowledgeBase::variable(std::string_view var) {
  return const_cast<LinguisticVariable&>(std::as_const(*this).variable(var));
}

bool KnowledgeBase::has_variable(std::string_view var) const {
  return std::any_of(variables.begin(), variables.end(),
                     [var](const LinguisticVariable& v) { return v.name == var; });
}

std::vector<Rule> KnowledgeBase::rules_for(std::string_view output) const {
  std::vector<Rule> out;
  std::copy_if(rules.begin(), rules.end(), std::back_inserter(out),
               [output](const Rule& r) { return r.output == output; });
  return out;
}

KnowledgeBase parse_kb(std::string_view text, const LoadOptions& options) {
  KnowledgeBase kb;
  std::vector<PendingRule> pending_rules;
  std::map<std::string, std::size_t, std::less<>> variable_lines;

  enum class Section { None, Meta, Variable, Rules };
  Section section = Section::None;
  std::string rules_output;
  LinguisticVariable* current = nullptr;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t')) {
      raw.remove_suffix(1);
    }
    const std::vector<std::string> tokens = split_ws(raw);
    if (tokens.empty()) continue;

    if (tokens.front().front() == '[') {
      if (raw.back() != ']') throw ParseError(line_no, "unterminated section header");
      std::string_view inner = raw.substr(raw.find('[') + 1);
      inner.remove_suffix(1);
      const std::vector<std::string> header = split_ws(inner);
      if (header.empty()) throw ParseError(line_no, "empty section header");
      const std::string kind = lower(header[0]);
      current = nullptr;
      if (kind == "meta" && header.size() == 1) {
        section = Section::Meta;
      } else if (kind == "variable") {
        if (header.size() != 5 || lower(header[2]) != "domain") {
          throw ParseError(line_no, "expected [variable <name> domain <lo> <hi>]");
        }
        LinguisticVariable var;
        var.name = lower(header[1]);
        var.lo = parse_number(header[3], line_no);
        var.hi = parse_number(header[4], line_no);
        if (variable_lines.contains(var.name)) {
          throw ParseError(line_no, "variable '" + var.name + "' defined twice");
        }
        variable_lines[var.name] = line_no;
        kb.variables.push_back(std::move(var));
        current = &kb.variables.back();
        section = Section::Variable;
      } else if (kind == "rules" && header.size() == 2) {
        rules_output = lower(header[1]);
        section = Section::Rules;
      } else {
        throw ParseError(line_no, "unknown section [" + std::string(inner) + "]");
      }
      continue;
    }

    switch (section) {
      case Section::None:
        throw ParseError(line_no, "content outside of a section");
      case Section::Meta: {
        const std::string key = tokens[0];
        std::string_view value = raw.substr(raw.find(key) + key.size());
        while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) {
          value.remove_prefix(1);
        }
        if (key == "name") kb.name = std::string(value);
        else kb.meta[key] = std::string(value);
        break;
      }
      case Section::Variable: {
        if (lower(tokens[0]) != "set" || tokens.size() < 6) {
          throw ParseError(line_no, "expected 'set <label> a b c d'");
        }
        FuzzySet set;
        set.label = lower(tokens[1]);
        std::size_t i = 2;
        while (true) {
          if (i + 4 > tokens.size()) throw ParseError(line_no, "trapezoid needs 4 numbers");
          set.pieces.push_back({parse_number(tokens[i], line_no), parse_number(tokens[i + 1], line_no),
                                parse_number(tokens[i + 2], line_no),
                                parse_number(tokens[i + 3], line_no)});
          i += 4;
          if (i == tokens.size()) break;
          if (tokens[i] != "|") throw ParseError(line_no, "expected '|' between trapezoids");
          ++i;
        }
        current->sets.push_back(std::move(set));
        break;
      }
      case Section::Rules:
        pending_rules.push_back({parse_rule(tokens, rules_output, line_no), line_no});
        break;
    }
  }

  for (const auto& var : kb.variables) {
    try {
      var.validate();
    } catch (const Error& e) {
      throw ParseError(variable_lines.at(var.name), e.what());
    }
  }
  for (const auto& pending : pending_rules) {
    check_rule(kb, pending);
    kb.rules.push_back(pending.rule);
  }

  for (const char* required : {"frequency", "title", "emphasis", "position", "importance"}) {
    if (!kb.has_variable(required)) {
      throw ParseError(line_no, std::string("missing variable '") + required + "'");
    }
  }
  const auto& importance = kb.variable("importance");
  const bool five_labels =
      importance.sets.size() == 5 &&
      std::all_of(std::begin(kImportanceLabels), std::end(kImportanceLabels),
                  [&](const char* label) { return importance.find(label).has_value(); });
  if (!five_labels) {
    throw ParseError(variable_lines.at("importance"),
                     "importance needs exactly the sets no, low, medium, high, very-high");
  }
  if (kb.rules_for("importance").empty()) throw ParseError(line_no, "no [rules importance] block");
  for (const auto& rule : kb.rules) {
    if (rule.output != "importance" && rule.output != "position") {
      throw ParseError(line_no, "rules may only conclude on importance or position");
    }
  }
  if (!kb.rules_for("position").empty() && !kb.has_variable("term_position")) {
    throw ParseError(line_no, "position rules need a term_position variable");
  }

  ImportanceSystem system(kb, options.inference);
  if (options.check_completeness) {
    if (const auto point = system.uncovered_point(options.grid_points_per_axis)) {
      std::ostringstream msg;
      msg << "no importance rule fires at (frequency, title, emphasis, position) = ("
          << (*point)[0] << ", " << (*point)[1] << ", " << (*point)[2] << ", " << (*point)[3]
          << ")";
      throw CompletenessError(msg.str());
    }
  }
  return kb;
}

KnowledgeBase load_kb(const fs::path& file, const LoadOptions& options) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open knowledge base " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_kb(buffer.str(), options);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), file.string() + ": " + e.detail());
  }
}

std::string write_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  out << "[meta]\n";
  if (!kb.name.empty()) out << "name " << kb.name << '\n';
  for (const auto& [key, value] : kb.meta) out << key << ' ' << value << '\n';
  for (const auto& var : kb.variables) {
    out << "\n[variable " << var.name << " domain " << format_number(var.lo) << ' '
        << format_number(var.hi) << "]\n";
    for (const auto& set : var.sets) {
      out << "set " << set.label;
      for (std::size_t p = 0; p < set.pieces.size(); ++p) {
        const Trapezoid& t = set.pieces[p];
        if (p > 0) out << " |";
        out << ' ' << format_number(t.a) << ' ' << format_number(t.b) << ' '
            << format_number(t.c) << ' ' << format_number(t.d);
      }
      out << '\n';
    }
  }
  std::vector<std::string> outputs;
  for (const auto& rule : kb.rules) {
    if (std::find(outputs.begin(), outputs.end(), rule.output) == outputs.end()) {
      outputs.push_back(rule.output);
    }
  }
  for (const auto& output : outputs) {
    out << "\n[rules " << output << "]\n";
    for (const auto& rule : kb.rules_for(output)) {
      out << "IF ";
      for (std::size_t i = 0; i < rule.antecedents.size(); ++i) {
        if (i > 0) out << " AND ";
        out << rule.antecedents[i].variable << " IS " << rule.antecedents[i].label;
      }
      out << " THEN " << rule.consequent << '\n';
    }
  }
  return out.str();
}

void save_kb(const KnowledgeBase& kb, const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write knowledge base " + file.string());
  out << write_kb(kb);
}

KnowledgeBase bundled_kb(std::string_view name, const LoadOptions& options) {
  return parse_kb(bundled_kb_text(name), options);
}

ImportanceSystem::ImportanceSystem(const KnowledgeBase& kb, InferenceOptions options)
    : main_([&] {
        std::vector<LinguisticVariable> inputs;
        for (const char* name : kCriterionVariables) inputs.push_back(kb.variable(name));
        return RuleSystem(std::move(inputs), kb.variable("importance"),
                          kb.rules_for("importance"), options);
      }()),
      position_([&] {
        const auto rules = kb.rules_for("position");
        if (rules.empty()) return default_position_system();
        return PositionSystem(
            RuleSystem({kb.variable("term_position")}, kb.variable("position"), rules, options));
      }()) {}

double ImportanceSystem::importance(double frequency, double title, double emphasis,
                                    double position) const {
  const double inputs[] = {frequency, title, emphasis, position};
  return main_.infer(std::span<const double>(inputs));
}

double ImportanceSystem::importance(const TermCriteria& criteria) const {
  return importance(criteria.freq_norm, criteria.title_norm, criteria.emph_norm,
                    position_.global_position(criteria.positions));
}

std::optional<std::vector<double>> ImportanceSystem::uncovered_point(
    std::size_t points_per_axis) const {
  return find_uncovered_point(main_, points_per_axis);
}

}  // namespace fuzzyrep

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzyrep/errors.hpp"
#include "fuzzyrep/knowledge_base.hpp"
#include "fuzzyrep/pipeline.hpp"
#include "fuzzyrep/synthetic.hpp"

namespace fs = std::filesystem;
using namespace fuzzyrep;

namespace {

int cmd_run(const std::string& config_path, const std::string& output_dir, bool quiet) {
  RunConfig config = load_run_config(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  const ExperimentReport report = run(config, quiet ? nullptr : &std::cerr);
  for (const auto& p : write_outputs(report)) {
    if (!quiet) std::cerr << "wrote " << p.string() << '\n';
  }
  write_results_table(std::cout, report);
  return 0;
}

int cmd_tune(RunConfig config, const std::string& out) {
  std::vector<TuningStep> steps;
  const KnowledgeBase kb = tune_corpus(config, &steps, &std::cerr);
  for (const auto& s : steps) {
    std::cerr << "tune: " << to_string(s.criterion) << ' ' << s.branch;
    for (double b : s.boundaries) std::cerr << ' ' << b;
    if (s.nudged) std::cerr << " (separated)";
    std::cerr << '\n';
  }
  if (out.empty() || out == "-") {
    std::cout << write_kb(kb);
  } else {
    save_kb(kb, out);
    std::cerr << "wrote " << out << '\n';
  }
  return 0;
}

int cmd_kb_check(const std::vector<std::string>& targets) {
  int failures = 0;
  const std::vector<std::string> names =
      targets.empty() ? bundled_kb_names() : targets;
  for (const auto& name : names) {
    try {
      const bool file = fs::exists(name);
      const KnowledgeBase kb = file ? load_kb(name) : bundled_kb(name);
      std::cout << name << ": ok (" << kb.rules_for("importance").size() << " importance rules)\n";
    } catch (const Error& e) {
      std::cout << name << ": FAILED " << e.what() << '\n';
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy-logic document representations for web page clustering"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run an experiment from a configuration file");
  std::string config_path;
  std::string output_dir;
  bool quiet = false;
  run_cmd->add_option("config", config_path, "Run configuration (key = value)")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("-o,--output-dir", output_dir, "Override the configured output directory");
  run_cmd->add_flag("-q,--quiet", quiet, "Suppress stage logging");

  auto* tune_cmd = app.add_subcommand("tune", "Emit the AFCC knowledge base tuned on a corpus");
  std::string tune_config;
  std::string tune_manifest;
  std::string tune_out;
  std::string tune_variant;
  std::string tune_anchors;
  bool tune_stem = false;
  auto* tc = tune_cmd->add_option("-c,--config", tune_config, "Run configuration to take corpus settings from")
                 ->check(CLI::ExistingFile);
  auto* tm = tune_cmd->add_option("-m,--manifest", tune_manifest, "Corpus manifest")->check(CLI::ExistingFile);
  tc->excludes(tm);
  tune_cmd->add_option("--anchor-variant", tune_variant, "Anchor text variant (A1..B3)");
  tune_cmd->add_option("--anchors-dir", tune_anchors, "Directory of <doc_id>.txt anchor files");
  tune_cmd->add_flag("--stem", tune_stem, "Strip common suffixes");
  tune_cmd->add_option("-o,--output", tune_out, "Output .kb file (default: stdout)");

  auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate a synthetic labelled HTML corpus");
  SyntheticOptions gen;
  std::string gen_dir;
  std::string gen_mode = "zipf";
  gen_cmd->add_option("-o,--output-dir", gen_dir, "Directory to create")->required();
  gen_cmd->add_option("--categories", gen.categories, "Number of categories")->capture_default_str();
  gen_cmd->add_option("--docs-per-category", gen.docs_per_category, "Documents per category")->capture_default_str();
  gen_cmd->add_option("--topic-terms", gen.topic_terms, "Topical vocabulary per category")->capture_default_str();
  gen_cmd->add_option("--common-terms", gen.common_terms, "Shared vocabulary size")->capture_default_str();
  gen_cmd->add_option("--body-length", gen.body_length, "Body tokens per document")->capture_default_str();
  gen_cmd->add_option("--topic-share", gen.topic_share, "Chance a body token is topical")->capture_default_str();
  gen_cmd->add_option("--mode", gen_mode, "Term draws: zipf or uniform")
      ->check(CLI::IsMember({"zipf", "uniform"}))
      ->capture_default_str();
  gen_cmd->add_option("--zipf-exponent", gen.zipf_exponent, "Zipf exponent")->capture_default_str();
  gen_cmd->add_option("--title-terms", gen.title_terms, "Topical title words")->capture_default_str();
  gen_cmd->add_option("--emphasis-rate", gen.emphasis_rate, "Chance a body token is bold")->capture_default_str();
  gen_cmd->add_option("--rhetoric-terms", gen.rhetoric_terms, "Off-topic title embellishment vocabulary size")
      ->capture_default_str();
  gen_cmd->add_option("--rhetoric-per-title", gen.rhetoric_per_title, "Embellishment words per title")
      ->capture_default_str();
  gen_cmd->add_flag("--anchors", gen.anchors, "Also write anchor text files");
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();

  auto* kb_cmd = app.add_subcommand("kb-check", "Parse knowledge bases and check rule coverage");
  std::vector<std::string> kb_targets;
  kb_cmd->add_option("kb", kb_targets, "Files or bundled names (default: all bundled bases)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(config_path, output_dir, quiet);
    if (*tune_cmd) {
      RunConfig config;
      if (!tune_config.empty()) {
        config = load_run_config(tune_config);
      } else if (!tune_manifest.empty()) {
        config.manifest = tune_manifest;
      } else {
        std::cerr << "tune: one of --config or --manifest is required\n";
        return 2;
      }
      if (!tune_variant.empty()) {
        const auto v = parse_anchor_variant(tune_variant);
        if (!v) {
          std::cerr << "tune: unknown anchor variant " << tune_variant << '\n';
          return 2;
        }
        config.anchor_variant = *v;
      }
      if (!tune_anchors.empty()) config.anchors_dir = tune_anchors;
      if (tune_stem) config.stem = true;
      return cmd_tune(config, tune_out);
    }
    if (*gen_cmd) {
      gen.draw = gen_mode == "uniform" ? TermDraw::Uniform : TermDraw::Zipf;
      const CorpusManifest m = generate_corpus(gen, gen_dir);
      std::cerr << "wrote " << m.documents.size() << " documents and "
                << (fs::path(gen_dir) / "manifest.tsv").string() << '\n';
      return 0;
    }
    if (*kb_cmd) return cmd_kb_check(kb_targets);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

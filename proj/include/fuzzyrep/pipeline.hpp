#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyrep/clustering.hpp"
#include "fuzzyrep/corpus.hpp"
#include "fuzzyrep/evaluation.hpp"
#include "fuzzyrep/knowledge_base.hpp"
#include "fuzzyrep/ttest.hpp"
#include "fuzzyrep/tuner.hpp"
#include "fuzzyrep/weighting.hpp"

namespace fuzzyrep {

enum class Representation { TfIdf, Fcc, AddFcc, Efcc, EfccIdf, Afcc };

std::optional<Representation> parse_representation(std::string_view name);
std::string to_string(Representation representation);

struct SignificanceConfig {
  std::size_t n_subsets = 100;
  double fraction = 0.5;
  std::vector<Representation> baselines;
};

struct RunConfig {
  std::filesystem::path manifest;
  Representation representation = Representation::Afcc;
  std::optional<AnchorVariant> anchor_variant;
  std::optional<std::filesystem::path> anchors_dir;
  std::vector<std::size_t> vector_sizes{100, 500, 1000, 2000, 5000};
  std::optional<int> k;  // default: number of categories
  std::uint64_t seed = 1;
  std::optional<SignificanceConfig> significance;
  bool stem = false;
  std::optional<std::filesystem::path> stopwords;
  std::filesystem::path output_dir = ".";
};

/// Flat `key = value` text; `#` starts a comment line. Relative paths resolve
/// against `base_dir`. Throws ParseError on unknown keys or bad values.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = ".");
RunConfig load_run_config(const std::filesystem::path& file);

/// Throws Error when sizes are not positive and strictly ascending, k < 1, or
/// the significance settings are out of range.
void validate(const RunConfig& config);

struct SizeResult {
  std::size_t vector_size = 0;
  std::size_t features = 0;  // may fall short of vector_size on small vocabularies
  std::size_t empty_documents = 0;
  std::size_t empty_clusters = 0;
  double criterion = 0.0;
  F1Report f1;
};

struct SignificanceResult {
  Representation baseline = Representation::TfIdf;
  std::size_t vector_size = 0;
  std::vector<double> scores;           // configured representation, per subset
  std::vector<double> baseline_scores;  // baseline, per subset
  TTestResult test;
};

struct ExperimentReport {
  RunConfig config;
  std::vector<std::string> categories;
  std::size_t documents = 0;
  int k = 0;
  std::vector<SizeResult> results;
  std::vector<SignificanceResult> significance;
  std::vector<TuningStep> tuning;
  std::optional<KnowledgeBase> tuned_kb;
};

/// Term vectors for one representation. `tuned` receives the AFCC knowledge
/// base when the representation is afcc.
std::vector<DocVector> represent(Representation representation,
                                 std::span<const IngestedDocument> documents,
                                 KnowledgeBase* tuned = nullptr,
                                 std::vector<TuningStep>* steps = nullptr);

/// MFT reduction, clustering and scoring of precomputed vectors at each size.
std::vector<SizeResult> evaluate_sizes(std::span<const DocVector> vectors,
                                       std::span<const std::string> labels,
                                       std::span<const std::size_t> sizes, int k,
                                       std::uint64_t seed);

IngestOptions ingest_options(const RunConfig& config);

/// ingest -> criteria -> [tune] -> weigh -> MFT -> cluster -> F1 -> [t-test].
/// Failures surface as StageError tagged with the failing stage. Stage
/// cardinalities go to `log` when non-null.
ExperimentReport run(const RunConfig& config, std::ostream* log = nullptr);

/// The AFCC base tuned on the configured corpus.
KnowledgeBase tune_corpus(const RunConfig& config, std::vector<TuningStep>* steps = nullptr,
                          std::ostream* log = nullptr);

/// One JSON object per line: a `run` record per vector size, then a `ttest`
/// record per (baseline, size).
void write_results_jsonl(std::ostream& out, const ExperimentReport& report);

/// Vector sizes as rows, F1 as columns, with an average row.
void write_results_table(std::ostream& out, const ExperimentReport& report);

/// Writes results.jsonl, results.txt and, for afcc, afcc.tuned.kb into the
/// configured output directory; returns the written paths.
std::vector<std::filesystem::path> write_outputs(const ExperimentReport& report);

}  // namespace fuzzyrep

#include "fuzzyrep/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fuzzyrep/errors.hpp"
#include "fuzzyrep/mft.hpp"

namespace fuzzyrep {

namespace fs = std::filesystem;

namespace {

constexpr std::pair<Representation, const char*> kRepresentationNames[] = {
    {Representation::TfIdf, "tfidf"},  {Representation::Fcc, "fcc"},
    {Representation::AddFcc, "addfcc"}, {Representation::Efcc, "efcc"},
    {Representation::EfccIdf, "efcc-idf"}, {Representation::Afcc, "afcc"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const std::string_view item = trim(s.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view value, std::size_t line, std::string_view key) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "invalid value for " + std::string(key) + ": " + std::string(value));
  }
  return out;
}

bool parse_bool(std::string_view value, std::size_t line, std::string_view key) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ParseError(line, "invalid boolean for " + std::string(key) + ": " + std::string(value));
}

Representation parse_rep_or_throw(std::string_view value, std::size_t line) {
  if (auto r = parse_representation(value)) return *r;
  throw ParseError(line, "unknown representation: " + std::string(value));
}

template <typename F>
auto staged(const char* stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

void log_line(std::ostream* log, const std::string& line) {
  if (log) *log << line << '\n';
}

std::string format_double(double v, const char* fmt = "%.4f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::size_t total_entries(std::span<const DocVector> vectors) {
  std::size_t n = 0;
  for (const auto& v : vectors) n += v.size();
  return n;
}

std::vector<DocCriteria> criteria_of(std::span<const IngestedDocument> documents) {
  std::vector<DocCriteria> out;
  out.reserve(documents.size());
  for (const auto& d : documents) out.push_back(d.criteria);
  return out;
}

const char* bundled_name(Representation r) {
  switch (r) {
    case Representation::Fcc:
      return "fcc";
    case Representation::AddFcc:
      return "addfcc";
    default:
      return "efcc";
  }
}

int resolve_k(const RunConfig& config, std::size_t categories) {
  return config.k ? *config.k : static_cast<int>(categories);
}

}  // namespace

std::optional<Representation> parse_representation(std::string_view name) {
  for (const auto& [r, n] : kRepresentationNames) {
    if (name == n) return r;
  }
  return std::nullopt;
}

std::string to_string(Representation representation) {
  for (const auto& [r, n] : kRepresentationNames) {
    if (r == representation) return n;
  }
  return "?";
}

RunConfig parse_run_config(std::string_view text, const fs::path& base_dir) {
  RunConfig config;
  bool have_manifest = false;
  auto resolve = [&](std::string_view v) {
    fs::path p{std::string(v)};
    return p.is_relative() ? base_dir / p : p;
  };
  auto significance = [&]() -> SignificanceConfig& {
    if (!config.significance) config.significance.emplace();
    return *config.significance;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string_view raw = text.substr(start, nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError(line_no, "missing value for " + std::string(key));

    if (key == "manifest") {
      config.manifest = resolve(value);
      have_manifest = true;
    } else if (key == "representation") {
      config.representation = parse_rep_or_throw(value, line_no);
    } else if (key == "anchor_variant") {
      const auto v = parse_anchor_variant(value);
      if (!v) throw ParseError(line_no, "unknown anchor variant: " + std::string(value));
      config.anchor_variant = *v;
    } else if (key == "anchors_dir") {
      config.anchors_dir = resolve(value);
    } else if (key == "vector_sizes") {
      config.vector_sizes.clear();
      for (auto item : split_list(value)) {
        config.vector_sizes.push_back(parse_number<std::size_t>(item, line_no, key));
      }
    } else if (key == "k") {
      config.k = parse_number<int>(value, line_no, key);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(value, line_no, key);
    } else if (key == "significance.n_subsets") {
      significance().n_subsets = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "significance.fraction") {
      significance().fraction = parse_number<double>(value, line_no, key);
    } else if (key == "significance.baselines") {
      auto& s = significance();
      s.baselines.clear();
      for (auto item : split_list(value)) s.baselines.push_back(parse_rep_or_throw(item, line_no));
    } else if (key == "stem") {
      config.stem = parse_bool(value, line_no, key);
    } else if (key == "stopwords") {
      config.stopwords = resolve(value);
    } else if (key == "output_dir") {
      config.output_dir = resolve(value);
    } else {
      throw ParseError(line_no, "unknown key: " + std::string(key));
    }
  }
  if (!have_manifest) throw ParseError(line_no, "missing required key: manifest");
  validate(config);
  return config;
}

RunConfig load_run_config(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read config " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_run_config(text.str(), file.parent_path().empty() ? fs::path(".") : file.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), file.string() + ": " + e.detail());
  }
}

void validate(const RunConfig& config) {
  if (config.vector_sizes.empty()) throw Error("vector_sizes must not be empty");
  for (std::size_t i = 0; i < config.vector_sizes.size(); ++i) {
    if (config.vector_sizes[i] == 0) throw Error("vector sizes must be positive");
    if (i > 0 && config.vector_sizes[i] <= config.vector_sizes[i - 1]) {
      throw Error("vector sizes must be strictly ascending");
    }
  }
  if (config.k && *config.k < 1) throw Error("k must be at least 1");
  if (config.significance) {
    const auto& s = *config.significance;
    if (s.n_subsets < 2) throw Error("significance.n_subsets must be at least 2");
    if (!(s.fraction > 0.0 && s.fraction <= 1.0)) throw Error("significance.fraction must lie in (0, 1]");
    if (s.baselines.empty()) throw Error("significance.baselines must name at least one representation");
  }
}

IngestOptions ingest_options(const RunConfig& config) {
  IngestOptions options;
  options.anchor_variant = config.anchor_variant;
  options.tokenizer.stem = config.stem;
  if (config.stopwords) options.tokenizer.stopwords = load_stopwords(config.stopwords->string());
  return options;
}

std::vector<DocVector> represent(Representation representation,
                                 std::span<const IngestedDocument> documents, KnowledgeBase* tuned,
                                 std::vector<TuningStep>* steps) {
  std::vector<DocVector> vectors;
  vectors.reserve(documents.size());
  switch (representation) {
    case Representation::TfIdf: {
      const auto criteria = criteria_of(documents);
      const CorpusStats stats = corpus_stats(criteria);
      for (const auto& d : documents) vectors.push_back(tf_idf(d.doc_id, d.criteria, stats));
      break;
    }
    case Representation::EfccIdf: {
      const auto criteria = criteria_of(documents);
      const CorpusStats stats = corpus_stats(criteria);
      const ImportanceSystem system(bundled_kb("efcc"));
      for (const auto& d : documents) vectors.push_back(efcc_idf(d.doc_id, d.criteria, system, stats));
      break;
    }
    case Representation::Afcc: {
      const auto criteria = criteria_of(documents);
      KnowledgeBase kb = tune_afcc(bundled_kb("efcc"), profile_corpus(criteria), {}, steps);
      const ImportanceSystem system(kb);
      for (const auto& d : documents) vectors.push_back(weigh_fuzzy(d.doc_id, d.criteria, system));
      if (tuned) *tuned = std::move(kb);
      break;
    }
    default: {
      const ImportanceSystem system(bundled_kb(bundled_name(representation)));
      for (const auto& d : documents) vectors.push_back(weigh_fuzzy(d.doc_id, d.criteria, system));
      break;
    }
  }
  return vectors;
}

std::vector<SizeResult> evaluate_sizes(std::span<const DocVector> vectors,
                                       std::span<const std::string> labels,
                                       std::span<const std::size_t> sizes, int k, std::uint64_t seed) {
  std::vector<SizeResult> results;
  for (const std::size_t size : sizes) {
    SizeResult r;
    r.vector_size = size;
    const FeatureSet features = staged("reduce", [&] { return mft_select(vectors, size); });
    const Projection projection = project_all(vectors, features);
    r.features = features.terms.size();
    r.empty_documents = projection.empty_documents;
    const Clustering clustering =
        staged("cluster", [&] { return repeated_bisections(projection.vectors, k, seed); });
    r.empty_clusters = clustering.empty_clusters();
    r.criterion = clustering.criterion;
    r.f1 = staged("evaluate", [&] { return weighted_f1(clustering, labels); });
    results.push_back(std::move(r));
  }
  return results;
}

KnowledgeBase tune_corpus(const RunConfig& config, std::vector<TuningStep>* steps, std::ostream* log) {
  CorpusManifest manifest = staged("ingest", [&] { return load_manifest(config.manifest); });
  if (config.anchors_dir) manifest.anchors_dir = config.anchors_dir;
  const auto documents = staged("ingest", [&] { return ingest_corpus(manifest, ingest_options(config)); });
  log_line(log, "ingest: " + std::to_string(documents.size()) + " documents");
  return staged("tune", [&] {
    const auto criteria = criteria_of(documents);
    return tune_afcc(bundled_kb("efcc"), profile_corpus(criteria), {}, steps);
  });
}

ExperimentReport run(const RunConfig& config, std::ostream* log) {
  staged("config", [&] { validate(config); });
  ExperimentReport report;
  report.config = config;

  CorpusManifest manifest = staged("ingest", [&] { return load_manifest(config.manifest); });
  if (config.anchors_dir) manifest.anchors_dir = config.anchors_dir;
  const IngestOptions options = staged("ingest", [&] { return ingest_options(config); });
  const std::vector<IngestedDocument> documents =
      staged("ingest", [&] { return ingest_corpus(manifest, options); });
  std::size_t term_entries = 0;
  for (const auto& d : documents) term_entries += d.criteria.size();
  log_line(log, "ingest: " + std::to_string(manifest.documents.size()) + " manifest entries -> " +
                    std::to_string(documents.size()) + " documents, " + std::to_string(term_entries) +
                    " term criteria");

  report.categories = manifest.categories();
  report.documents = documents.size();
  report.k = resolve_k(config, report.categories.size());
  std::vector<std::string> labels;
  for (const auto& d : documents) labels.push_back(d.category);

  KnowledgeBase tuned;
  const std::vector<DocVector> vectors = staged("weigh", [&] {
    return represent(config.representation, documents, &tuned, &report.tuning);
  });
  if (config.representation == Representation::Afcc) {
    for (const auto& step : report.tuning) {
      std::string edges;
      for (double b : step.boundaries) edges += " " + format_double(b, "%.6g");
      log_line(log, "tune: " + to_string(step.criterion) + " " + step.branch + edges);
    }
    report.tuned_kb = tuned;
  }
  log_line(log, "weigh: " + to_string(config.representation) + " " + std::to_string(documents.size()) +
                    " documents -> " + std::to_string(vectors.size()) + " vectors, " +
                    std::to_string(total_entries(vectors)) + " non-zero weights");

  report.results = evaluate_sizes(vectors, labels, config.vector_sizes, report.k, config.seed);
  for (const auto& r : report.results) {
    log_line(log, "size " + std::to_string(r.vector_size) + ": " + std::to_string(r.features) +
                      " features, " + std::to_string(r.empty_documents) + " empty documents, k=" +
                      std::to_string(report.k) + ", " + std::to_string(r.empty_clusters) +
                      " empty clusters, F1=" + format_double(r.f1.overall));
  }

  if (config.significance) {
    const SignificanceConfig& sig = *config.significance;
    const auto subsets = staged("subsample", [&] {
      return stratified_subsample(manifest, sig.fraction, sig.n_subsets, config.seed);
    });
    log_line(log, "subsample: " + std::to_string(subsets.size()) + " sub-corpora of " +
                      std::to_string(subsets.empty() ? 0 : subsets.front().documents.size()) +
                      " documents");
    std::map<std::string, std::size_t, std::less<>> by_id;
    for (std::size_t i = 0; i < documents.size(); ++i) by_id.emplace(documents[i].doc_id, i);

    const std::size_t n_sizes = config.vector_sizes.size();
    std::vector<std::vector<double>> main_scores(n_sizes);
    std::vector<std::vector<std::vector<double>>> base_scores(
        sig.baselines.size(), std::vector<std::vector<double>>(n_sizes));
    for (const auto& subset : subsets) {
      std::vector<IngestedDocument> sub_docs;
      std::vector<std::string> sub_labels;
      for (const auto& entry : subset.documents) {
        sub_docs.push_back(documents[by_id.at(entry.doc_id)]);
        sub_labels.push_back(entry.category);
      }
      auto score = [&](Representation r, std::vector<std::vector<double>>& into) {
        const auto sub_vectors = staged("weigh", [&] { return represent(r, sub_docs); });
        const auto sub_results =
            evaluate_sizes(sub_vectors, sub_labels, config.vector_sizes, report.k, config.seed);
        for (std::size_t s = 0; s < n_sizes; ++s) into[s].push_back(sub_results[s].f1.overall);
      };
      score(config.representation, main_scores);
      for (std::size_t b = 0; b < sig.baselines.size(); ++b) score(sig.baselines[b], base_scores[b]);
    }
    for (std::size_t b = 0; b < sig.baselines.size(); ++b) {
      for (std::size_t s = 0; s < n_sizes; ++s) {
        SignificanceResult r;
        r.baseline = sig.baselines[b];
        r.vector_size = config.vector_sizes[s];
        r.scores = main_scores[s];
        r.baseline_scores = base_scores[b][s];
        r.test = staged("ttest", [&] { return paired_ttest(r.scores, r.baseline_scores); });
        log_line(log, "ttest: " + to_string(config.representation) + " vs " + to_string(r.baseline) +
                          " size " + std::to_string(r.vector_size) + ": " +
                          std::to_string(r.scores.size()) + " pairs, t=" + format_double(r.test.t) +
                          ", p=" + format_double(r.test.p, "%.4g"));
        report.significance.push_back(std::move(r));
      }
    }
  }
  return report;
}

void write_results_jsonl(std::ostream& out, const ExperimentReport& report) {
  using nlohmann::ordered_json;
  const std::string rep = to_string(report.config.representation);
  for (const auto& r : report.results) {
    ordered_json record;
    record["record"] = "run";
    record["representation"] = rep;
    record["anchor_variant"] =
        report.config.anchor_variant ? ordered_json(to_string(*report.config.anchor_variant)) : ordered_json();
    record["vector_size"] = r.vector_size;
    record["seed"] = report.config.seed;
    record["k"] = report.k;
    record["documents"] = report.documents;
    record["features"] = r.features;
    record["empty_documents"] = r.empty_documents;
    record["empty_clusters"] = r.empty_clusters;
    record["criterion"] = r.criterion;
    record["overall_f1"] = r.f1.overall;
    ordered_json per = ordered_json::object();
    for (const auto& c : r.f1.categories) per[c.category] = c.f1;
    record["per_category_f1"] = std::move(per);
    out << record.dump() << '\n';
  }
  for (const auto& s : report.significance) {
    ordered_json record;
    record["record"] = "ttest";
    record["representation"] = rep;
    record["baseline"] = to_string(s.baseline);
    record["vector_size"] = s.vector_size;
    record["seed"] = report.config.seed;
    record["pairs"] = s.scores.size();
    record["mean_difference"] = s.test.mean_difference;
    record["t"] = std::isfinite(s.test.t) ? ordered_json(s.test.t)
                                          : ordered_json(s.test.t > 0 ? "inf" : "-inf");
    record["df"] = s.test.df;
    record["p"] = s.test.p;
    record["zero_variance"] = s.test.zero_variance;
    record["scores"] = s.scores;
    record["baseline_scores"] = s.baseline_scores;
    out << record.dump() << '\n';
  }
}

void write_results_table(std::ostream& out, const ExperimentReport& report) {
  const std::string rep = to_string(report.config.representation);
  out << "Representation: " << rep;
  if (report.config.anchor_variant) out << " (anchors " << to_string(*report.config.anchor_variant) << ")";
  out << "\nDocuments: " << report.documents << "  Categories: " << report.categories.size()
      << "  k: " << report.k << "  Seed: " << report.config.seed << "\n\n";

  char buf[128];
  std::snprintf(buf, sizeof buf, "%-12s %10s\n", "Vector size", rep.c_str());
  out << buf;
  double sum = 0.0;
  for (const auto& r : report.results) {
    std::snprintf(buf, sizeof buf, "%-12zu %10.4f\n", r.vector_size, r.f1.overall);
    out << buf;
    sum += r.f1.overall;
  }
  if (!report.results.empty()) {
    std::snprintf(buf, sizeof buf, "%-12s %10.4f\n", "Average", sum / static_cast<double>(report.results.size()));
    out << buf;
  }

  if (!report.significance.empty()) {
    out << "\nPaired two-tailed t-tests over "
        << report.significance.front().scores.size() << " sub-datasets\n";
    std::snprintf(buf, sizeof buf, "%-10s %-12s %10s %10s %10s %10s\n", "Baseline", "Vector size",
                  rep.c_str(), "baseline", "t", "p");
    out << buf;
    for (const auto& s : report.significance) {
      double ma = 0.0;
      double mb = 0.0;
      for (double v : s.scores) ma += v;
      for (double v : s.baseline_scores) mb += v;
      ma /= static_cast<double>(s.scores.size());
      mb /= static_cast<double>(s.baseline_scores.size());
      std::snprintf(buf, sizeof buf, "%-10s %-12zu %10.4f %10.4f %10.3f %10.4g\n",
                    to_string(s.baseline).c_str(), s.vector_size, ma, mb, s.test.t, s.test.p);
      out << buf;
    }
  }
}

std::vector<fs::path> write_outputs(const ExperimentReport& report) {
  const fs::path dir = report.config.output_dir;
  fs::create_directories(dir);
  std::vector<fs::path> written;
  {
    const fs::path p = dir / "results.jsonl";
    std::ofstream out(p, std::ios::binary);
    write_results_jsonl(out, report);
    if (!out) throw Error("cannot write " + p.string());
    written.push_back(p);
  }
  {
    const fs::path p = dir / "results.txt";
    std::ofstream out(p, std::ios::binary);
    write_results_table(out, report);
    if (!out) throw Error("cannot write " + p.string());
    written.push_back(p);
  }
  if (report.tuned_kb) {
    const fs::path p = dir / "afcc.tuned.kb";
    save_kb(*report.tuned_kb, p);
    written.push_back(p);
  }
  return written;
}

}  // namespace fuzzyrep

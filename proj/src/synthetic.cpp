#include "fuzzyrep/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSyllables[] = {"ba", "de", "fi", "go", "ku", "la", "me", "ni", "po", "ru",
                                      "sa", "te", "vi", "wo", "xu", "ye", "zo", "ha", "jo", "ke"};
constexpr std::size_t kSyllableCount = std::size(kSyllables);

class Vocabulary {
 public:
  Vocabulary(std::string prefix, std::size_t size, TermDraw draw, double exponent)
      : prefix_(std::move(prefix)) {
    words_.reserve(size);
    std::vector<double> weights;
    for (std::size_t i = 0; i < size; ++i) {
      words_.push_back(synthetic_word(prefix_, i));
      weights.push_back(draw == TermDraw::Zipf ? std::pow(static_cast<double>(i + 1), -exponent) : 1.0);
    }
    dist_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
  }

  std::size_t draw_index(std::mt19937_64& rng) { return dist_(rng); }
  const std::string& draw(std::mt19937_64& rng) { return words_[dist_(rng)]; }
  const std::string& at(std::size_t i) const { return words_[i]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::string prefix_;
  std::vector<std::string> words_;
  std::discrete_distribution<std::size_t> dist_;
};

std::string category_name(std::size_t c) { return "cat" + synthetic_word("", c); }

}  // namespace

std::string synthetic_word(const std::string& prefix, std::size_t index) {
  std::string word = prefix;
  std::string tail;
  std::size_t v = index;
  for (int digits = 0; digits < 2 || v > 0; ++digits) {
    tail.insert(0, kSyllables[v % kSyllableCount]);
    v /= kSyllableCount;
  }
  return word + tail;
}

CorpusManifest generate_corpus(const SyntheticOptions& options, const fs::path& dir) {
  if (options.categories == 0 || options.docs_per_category == 0) {
    throw Error("synthetic corpus needs at least one category and one document");
  }
  if (options.topic_terms == 0 || options.common_terms == 0) {
    throw Error("synthetic corpus needs non-empty vocabularies");
  }
  fs::create_directories(dir / "docs");
  if (options.anchors) fs::create_directories(dir / "anchors");

  std::mt19937_64 rng(options.seed);
  std::bernoulli_distribution topical(options.topic_share);
  std::bernoulli_distribution emphasized(options.emphasis_rate);

  Vocabulary common("co", options.common_terms, options.draw, options.zipf_exponent);
  std::vector<Vocabulary> topics;
  for (std::size_t c = 0; c < options.categories; ++c) {
    const char prefix[] = {'t', static_cast<char>('a' + c % 26), static_cast<char>('a' + c / 26 % 26), 0};
    topics.emplace_back(prefix, options.topic_terms, options.draw, options.zipf_exponent);
  }
  std::vector<std::string> rhetoric;
  for (std::size_t i = 0; i < options.rhetoric_terms; ++i) rhetoric.push_back(synthetic_word("rh", i));

  CorpusManifest manifest;
  for (std::size_t c = 0; c < options.categories; ++c) {
    fs::create_directories(dir / "docs" / category_name(c));
  }
  for (std::size_t d = 0; d < options.docs_per_category; ++d) {
    for (std::size_t c = 0; c < options.categories; ++c) {
      const std::string id = category_name(c) + "-" + std::to_string(d);
      Vocabulary& topic = topics[c];

      std::vector<std::string> noise;
      if (!rhetoric.empty()) {
        std::vector<std::string> pool = rhetoric;
        const std::size_t take = std::min(options.rhetoric_per_title, pool.size());
        for (std::size_t t = 0; t < take; ++t) {
          const std::size_t pick = t + static_cast<std::size_t>(rng() % (pool.size() - t));
          std::swap(pool[t], pool[pick]);
          noise.push_back(pool[t]);
        }
      }

      std::ostringstream html;
      html << "<html><head><title>";
      for (const auto& w : noise) html << w << ' ';
      for (std::size_t t = 0; t < options.title_terms; ++t) {
        html << topic.draw(rng) << (t + 1 < options.title_terms ? " " : "");
      }
      html << "</title></head>\n<body>\n";
      if (!noise.empty()) {
        html << "<h1>";
        for (std::size_t t = 0; t < noise.size(); ++t) html << (t ? " " : "") << noise[t];
        html << "</h1>\n";
      }
      html << "<p>";
      for (std::size_t i = 0; i < options.body_length; ++i) {
        const std::string& w = topical(rng) ? topic.draw(rng) : common.draw(rng);
        if (i > 0) html << ((i % 25 == 0) ? "</p>\n<p>" : " ");
        if (emphasized(rng)) {
          html << "<b>" << w << "</b>";
        } else {
          html << w;
        }
      }
      html << "</p>\n</body></html>\n";

      const fs::path rel = fs::path("docs") / category_name(c) / (id + ".html");
      std::ofstream(dir / rel, std::ios::binary) << html.str();
      manifest.documents.push_back({id, dir / rel, category_name(c)});

      if (options.anchors) {
        std::ofstream anchors(dir / "anchors" / (id + ".txt"), std::ios::binary);
        const std::size_t lines = 1 + rng() % 4;
        for (std::size_t l = 0; l < lines; ++l) {
          anchors << topic.draw(rng) << ' ' << (l % 2 ? "click here" : "homepage") << '\n';
        }
      }
    }
  }
  if (options.anchors) manifest.anchors_dir = dir / "anchors";
  write_manifest(manifest, dir / "manifest.tsv");
  return load_manifest(dir / "manifest.tsv");
}

std::vector<double> synthetic_frequency_values(std::size_t count, TermDraw draw, double zipf_exponent,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> values;
  values.reserve(count);
  if (draw == TermDraw::Uniform) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (values.size() < count) {
      const double v = u(rng);
      if (v > 0.0) values.push_back(v);
    }
    return values;
  }
  Vocabulary vocabulary("zz", 2000, TermDraw::Zipf, zipf_exponent);
  std::uniform_int_distribution<std::size_t> length(100, 400);
  while (values.size() < count) {
    std::map<std::size_t, std::size_t> tf;
    const std::size_t n = length(rng);
    for (std::size_t i = 0; i < n; ++i) ++tf[vocabulary.draw_index(rng)];
    std::size_t max_tf = 0;
    for (const auto& [term, f] : tf) max_tf = std::max(max_tf, f);
    for (const auto& [term, f] : tf) {
      if (values.size() == count) break;
      values.push_back(static_cast<double>(f) / static_cast<double>(max_tf));
    }
  }
  return values;
}

}  // namespace fuzzyrep

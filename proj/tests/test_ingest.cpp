#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fuzzyrep/corpus.hpp"
#include "fuzzyrep/criteria.hpp"
#include "fuzzyrep/errors.hpp"
#include "fuzzyrep/html.hpp"
#include "fuzzyrep/tokenizer.hpp"
#include "test_support.hpp"

using namespace fuzzyrep;

namespace {

std::vector<std::string> terms_of(const TokenStream& s) {
  std::vector<std::string> out;
  for (const auto& t : s) out.push_back(t.term);
  return out;
}

}  // namespace

TEST_CASE("tokenize lowercases and filters") {
  const Tokenizer tok;
  CHECK(tok.tokenize("The C++ APIs, 2024!") == std::vector<std::string>{"apis"});
  CHECK(tok.tokenize("").empty());
  CHECK(tok.tokenize("Fuzzy fuzzy FUZZY") == std::vector<std::string>{"fuzzy", "fuzzy", "fuzzy"});
  CHECK(tok.tokenize("x2 b2b 42") == std::vector<std::string>{"x2", "b2b"});
}

TEST_CASE("tokenize with an empty stopword list keeps function words") {
  const Tokenizer tok(TokenizerOptions{{}, false});
  CHECK(tok.tokenize("the cat") == std::vector<std::string>{"the", "cat"});
}

TEST_CASE("tokenize splits on unicode punctuation but keeps letters") {
  const Tokenizer tok;
  CHECK(tok.tokenize("caf\xc3\xa9 na\xc3\xafve") == std::vector<std::string>{"caf\xc3\xa9", "na\xc3\xafve"});
  CHECK(tok.tokenize("alpha\xc2\xa0" "beta\xe2\x80\x94gamma") ==
        std::vector<std::string>{"alpha", "beta", "gamma"});
}

TEST_CASE("stemming strips common suffixes when enabled") {
  const Tokenizer tok(TokenizerOptions{default_stopwords(), true});
  const auto out = tok.tokenize("clustering clusters");
  REQUIRE(out.size() == 2);
  CHECK(out[0] == out[1]);
}

TEST_CASE("parse_html flags title and emphasis") {
  const auto s = parse_html("<html><title>Fuzzy Web</title><body>fuzzy <b>logic</b></body></html>");
  REQUIRE(s.size() == 4);
  CHECK(terms_of(s) == std::vector<std::string>{"fuzzy", "web", "fuzzy", "logic"});
  CHECK(s[0].in_title);
  CHECK(s[1].in_title);
  CHECK_FALSE(s[2].in_title);
  CHECK_FALSE(s[2].in_emphasis);
  CHECK(s[3].in_emphasis);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i].char_offset > s[i - 1].char_offset);
}

TEST_CASE("headings count as emphasis") {
  const auto s = parse_html("<h3>Intro</h3>");
  REQUIRE(s.size() == 1);
  CHECK(s[0].term == "intro");
  CHECK(s[0].in_emphasis);
  for (int level = 1; level <= 6; ++level) {
    const std::string h = "h" + std::to_string(level);
    CHECK(parse_html("<" + h + ">word</" + h + ">")[0].in_emphasis);
  }
}

TEST_CASE("nested emphasis yields one flagged token") {
  const auto s = parse_html("<b><i>deep</i></b>");
  REQUIRE(s.size() == 1);
  CHECK(s[0].in_emphasis);
}

TEST_CASE("script, style and comments are skipped") {
  const auto s = parse_html(
      "<p>visible</p><script>var hidden = 1;</script><style>.x{color:red}</style>"
      "<!-- secret words --><p>trailing</p>");
  CHECK(terms_of(s) == std::vector<std::string>{"visible", "trailing"});
}

TEST_CASE("tag soup does not abort") {
  const auto s = parse_html("<div><b>bold <p>still bold</div> plain </i></b> tail");
  CHECK(terms_of(s) == std::vector<std::string>{"bold", "still", "bold", "plain", "tail"});
  CHECK(s[0].in_emphasis);
  CHECK(s[2].in_emphasis);
  CHECK_FALSE(s[3].in_emphasis);
  CHECK_FALSE(s[4].in_emphasis);
}

TEST_CASE("links are tracked") {
  const auto s = parse_html("<p>see <a href='x'>remote page</a> later</p>");
  REQUIRE(s.size() == 4);
  CHECK_FALSE(s[0].in_link);
  CHECK(s[1].in_link);
  CHECK(s[2].in_link);
  CHECK_FALSE(s[3].in_link);
}

TEST_CASE("entities decode and split words") {
  const auto s = parse_html("<p>fish&amp;chips caf&eacute; one&nbsp;two &#x41;pple</p>");
  CHECK(terms_of(s) == std::vector<std::string>{"fish", "chips", "caf\xc3\xa9", "one", "two", "apple"});
}

TEST_CASE("decoding falls back to latin-1 and rejects NUL") {
  CHECK(decode_text("caf\xe9") == "caf\xc3\xa9");
  CHECK(decode_text("\xef\xbb\xbfok") == "ok");
  CHECK_THROWS_AS(decode_text(std::string("a\0b", 3)), UndecodableInput);
}

TEST_CASE("documents without tokens are rejected") {
  CHECK_THROWS_AS(parse_html("<html><body>the a of 123</body></html>"), EmptyDocument);
  CHECK_THROWS_AS(parse_html(""), EmptyDocument);
}

TEST_CASE("extract_criteria normalizes counts and positions") {
  const TokenStream s{{"a", 0}, {"b", 2}, {"a", 4}};
  const auto c = extract_criteria(s);
  REQUIRE(c.size() == 2);
  CHECK(c.at("a").freq_norm == 1.0);
  CHECK(c.at("a").raw_tf == 2);
  CHECK(c.at("a").positions == std::vector<double>{0.0, 1.0});
  CHECK(c.at("b").freq_norm == 0.5);
  CHECK(c.at("b").positions == std::vector<double>{0.5});
  CHECK(c.at("a").title_norm == 0.0);
  CHECK(c.at("a").emph_norm == 0.0);
}

TEST_CASE("single token in title and emphasis maxes every criterion") {
  const TokenStream s{{"x", 0, true, true, false}};
  const auto c = extract_criteria(s);
  CHECK(c.at("x").freq_norm == 1.0);
  CHECK(c.at("x").title_norm == 1.0);
  CHECK(c.at("x").emph_norm == 1.0);
  CHECK(c.at("x").positions == std::vector<double>{0.0});
}

TEST_CASE("criteria invariants hold on parsed documents") {
  const auto s = parse_html(
      "<title>alpha beta</title><p>alpha gamma <em>gamma</em> delta alpha <b>beta</b> gamma</p>");
  const auto c = extract_criteria(s);
  double max_f = 0.0;
  double max_t = 0.0;
  double max_e = 0.0;
  for (const auto& [term, tc] : c) {
    max_f = std::max(max_f, tc.freq_norm);
    max_t = std::max(max_t, tc.title_norm);
    max_e = std::max(max_e, tc.emph_norm);
    CHECK(tc.positions.size() == static_cast<std::size_t>(tc.raw_tf));
    for (double p : tc.positions) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
  CHECK(max_f == 1.0);
  CHECK(max_t == 1.0);
  CHECK(max_e == 1.0);
  CHECK(c.at("alpha").raw_tf == 3);
  CHECK(c.at("gamma").emph_norm == 1.0);
  CHECK(c.at("delta").emph_norm == 0.0);
  CHECK(extract_criteria(parse_html(
            "<title>alpha beta</title><p>alpha gamma <em>gamma</em> delta alpha <b>beta</b> gamma</p>")) == c);
  CHECK_THROWS_AS(extract_criteria({}), EmptyDocument);
}

TEST_CASE("dropping a stopword never lowers surviving counts") {
  const std::string html = "<p>the river and the bank of the river by the sea</p>";
  const auto with = extract_criteria(parse_html(html));
  const auto without = extract_criteria(parse_html(html, default_emphasis_tags(), Tokenizer(TokenizerOptions{{}, false})));
  for (const auto& [term, tc] : with) CHECK(without.at(term).raw_tf >= tc.raw_tf);
}

TEST_CASE("anchor variants") {
  const TokenStream doc = parse_html("<p>intro <a href='/x'>elsewhere link</a> body</p>");
  SUBCASE("B1 appends anchor tokens as title") {
    const auto out = apply_anchor_variant(doc, {"rust tutorial"}, AnchorVariant::B1);
    REQUIRE(out.size() == doc.size() + 2);
    CHECK(out[out.size() - 2].term == "rust");
    CHECK(out.back().term == "tutorial");
    CHECK(out.back().in_title);
    CHECK(out.back().char_offset > out[out.size() - 3].char_offset);
  }
  SUBCASE("A3 drops anchor stopwords") {
    const auto out = apply_anchor_variant(doc, {"click here now"}, AnchorVariant::A3);
    REQUIRE(out.size() == doc.size() + 1);
    CHECK(out.back().term == "now");
    CHECK_FALSE(out.back().in_title);
  }
  SUBCASE("A2 removes the document's own link text") {
    const auto out = apply_anchor_variant(doc, {"guide"}, AnchorVariant::A2);
    CHECK(terms_of(out) == std::vector<std::string>{"intro", "body", "guide"});
  }
  SUBCASE("no anchors leaves the stream unchanged") {
    CHECK(apply_anchor_variant(doc, {}, AnchorVariant::A1) == doc);
  }
  CHECK(parse_anchor_variant("b2") == AnchorVariant::B2);
  CHECK(parse_anchor_variant("A-3") == AnchorVariant::A3);
  CHECK_FALSE(parse_anchor_variant("C1").has_value());
}

TEST_CASE("manifest round trip and validation") {
  testing::TempDir dir;
  testing::write_file(dir / "docs/a.html", "<p>apple banana</p>");
  testing::write_file(dir / "docs/b.html", "<title>cherry</title><p>date</p>");
  testing::write_file(dir / "manifest.tsv",
                      "# id\tpath\tcategory\nd1\tdocs/a.html\tfruit\n\nd2\tdocs/b.html\tother\n");
  const CorpusManifest m = load_manifest(dir / "manifest.tsv");
  REQUIRE(m.documents.size() == 2);
  CHECK(m.documents[0].doc_id == "d1");
  CHECK(m.categories() == std::vector<std::string>{"fruit", "other"});

  write_manifest(m, dir / "copy.tsv");
  CHECK(load_manifest(dir / "copy.tsv") == m);

  testing::write_file(dir / "dup.tsv", "d1\tdocs/a.html\tx\nd1\tdocs/b.html\ty\n");
  CHECK_THROWS_AS(load_manifest(dir / "dup.tsv"), ManifestError);
  testing::write_file(dir / "missing.tsv", "d1\tdocs/none.html\tx\n");
  CHECK_THROWS_AS(load_manifest(dir / "missing.tsv"), ManifestError);
  testing::write_file(dir / "short.tsv", "d1\tdocs/a.html\n");
  CHECK_THROWS_AS(load_manifest(dir / "short.tsv"), ManifestError);
  testing::write_file(dir / "nocat.tsv", "d1\tdocs/a.html\t\n");
  CHECK_THROWS_AS(load_manifest(dir / "nocat.tsv"), ManifestError);
}

TEST_CASE("ingest_corpus applies anchors when available") {
  testing::TempDir dir;
  testing::write_file(dir / "docs/a.html", "<p>apple banana</p>");
  testing::write_file(dir / "docs/b.html", "<p>cherry date</p>");
  testing::write_file(dir / "anchors/d1.txt", "orchard guide\nclick here\n");
  testing::write_file(dir / "manifest.tsv", "d1\tdocs/a.html\tfruit\nd2\tdocs/b.html\tfruit\n");
  CorpusManifest m = load_manifest(dir / "manifest.tsv");
  m.anchors_dir = dir / "anchors";

  IngestOptions plain;
  const auto base = ingest_corpus(m, plain);
  CHECK_FALSE(base[0].criteria.contains("orchard"));

  IngestOptions b3;
  b3.anchor_variant = AnchorVariant::B3;
  const auto docs = ingest_corpus(m, b3);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].criteria.at("orchard").title_norm == 1.0);
  CHECK_FALSE(docs[0].criteria.contains("click"));
  CHECK(docs[1].criteria == base[1].criteria);
}

TEST_CASE("anchor files honour at most 300 lines") {
  testing::TempDir dir;
  std::string lines;
  for (int i = 0; i < 400; ++i) lines += "anchor\n";
  testing::write_file(dir / "d.txt", lines);
  const auto a = load_anchor_texts(dir.path(), "d");
  REQUIRE(a.has_value());
  CHECK(a->size() == kMaxAnchorTexts);
  CHECK_FALSE(load_anchor_texts(dir.path(), "absent").has_value());
}

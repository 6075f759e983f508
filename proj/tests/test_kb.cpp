#include "semnet/kb.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "doctest.h"
#include "helpers.hpp"
#include "semnet/util.hpp"

using namespace semnet;
using testutil::TempDir;

namespace {

KnowledgeBase kb_from_text(const TempDir& dir, const std::string& name,
                           const std::string& content, bool embedding = true) {
  auto path = dir.file(name);
  write_text_file(path, content);
  return embedding ? load_embedding_kb(path) : load_taxonomy_kb(path);
}

}  // namespace

TEST_CASE("embedding KB loads and reports its shape") {
  TempDir dir;
  KnowledgeBase kb = kb_from_text(dir, "small.kb", "2 3\nrobot 1 0 0\nsolar_cell 0 1 0\n");
  CHECK(kb.term_count() == 2);
  CHECK(kb.embedding().dims == 3);
  CHECK(kb.max_ngram() == 2);
  CHECK(kb.name() == "small");
  CHECK(kb.contains("robot"));
  CHECK(kb.contains("solar_cell"));
}

TEST_CASE("embedding KB parse errors carry line numbers") {
  TempDir dir;

  SUBCASE("dimension mismatch") {
    write_text_file(dir.file("bad.kb"), "1 3\nrobot 1 0\n");
    try {
      load_embedding_kb(dir.file("bad.kb"));
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("zero vector") {
    write_text_file(dir.file("bad.kb"), "1 3\nrobot 0 0 0\n");
    CHECK_THROWS_WITH_AS(load_embedding_kb(dir.file("bad.kb")),
                         doctest::Contains("zero vector"), ParseError);
  }
  SUBCASE("duplicate term") {
    write_text_file(dir.file("bad.kb"), "2 2\nrobot 1 0\nrobot 0 1\n");
    CHECK_THROWS_WITH_AS(load_embedding_kb(dir.file("bad.kb")),
                         doctest::Contains("duplicate"), ParseError);
  }
  SUBCASE("malformed header") {
    write_text_file(dir.file("bad.kb"), "robot 1 0\n");
    CHECK_THROWS_AS(load_embedding_kb(dir.file("bad.kb")), ParseError);
  }
  SUBCASE("non-finite component") {
    write_text_file(dir.file("bad.kb"), "1 2\nrobot nan 1\n");
    CHECK_THROWS_WITH_AS(load_embedding_kb(dir.file("bad.kb")),
                         doctest::Contains("non-finite"), ParseError);
  }
  SUBCASE("row count does not match header") {
    write_text_file(dir.file("bad.kb"), "2 2\nrobot 1 0\n");
    CHECK_THROWS_AS(load_embedding_kb(dir.file("bad.kb")), ParseError);
  }
  SUBCASE("uppercase term rejected") {
    write_text_file(dir.file("bad.kb"), "1 2\nRobot 1 0\n");
    CHECK_THROWS_AS(load_embedding_kb(dir.file("bad.kb")), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_embedding_kb(dir.file("nope.kb")), ParseError);
  }
}

TEST_CASE("taxonomy KB loads synsets and edges") {
  TempDir dir;
  KnowledgeBase kb = kb_from_text(
      dir, "tax.kb", "S\ts1\trobot\nS\ts2\tmachine\nE\ts2\ts1\n", false);
  CHECK(kb.taxonomy().synset_ids.size() == 2);
  CHECK(kb.max_ngram() == 1);
  CHECK(kb.contains("robot"));
  CHECK(kb.contains("machine"));
  CHECK_FALSE(kb.contains("hovercraft"));
}

TEST_CASE("taxonomy KB parse errors") {
  TempDir dir;

  SUBCASE("edge to undeclared synset") {
    write_text_file(dir.file("bad.kb"), "S\ts1\trobot\nS\ts2\tmachine\nE\ts2\ts3\n");
    CHECK_THROWS_WITH_AS(load_taxonomy_kb(dir.file("bad.kb")),
                         doctest::Contains("unknown synset"), ParseError);
  }
  SUBCASE("duplicate synset") {
    write_text_file(dir.file("bad.kb"), "S\ts1\trobot\nS\ts1\tmachine\n");
    CHECK_THROWS_WITH_AS(load_taxonomy_kb(dir.file("bad.kb")),
                         doctest::Contains("duplicate"), ParseError);
  }
  SUBCASE("empty lemma list") {
    write_text_file(dir.file("bad.kb"), "S\ts1\t\n");
    CHECK_THROWS_WITH_AS(load_taxonomy_kb(dir.file("bad.kb")),
                         doctest::Contains("no lemmas"), ParseError);
  }
  SUBCASE("self-loop edge") {
    write_text_file(dir.file("bad.kb"), "S\ts1\trobot\nE\ts1\ts1\n");
    CHECK_THROWS_WITH_AS(load_taxonomy_kb(dir.file("bad.kb")),
                         doctest::Contains("self-loop"), ParseError);
  }
}

TEST_CASE("contains requires the normalized form") {
  TempDir dir;
  KnowledgeBase kb = kb_from_text(dir, "norm.kb", "1 2\nrobot 1 0\n");
  CHECK(kb.contains("robot"));
  CHECK_FALSE(kb.contains("Robot"));
  CHECK_FALSE(kb.contains("hovercraft"));
}

TEST_CASE("embedding similarity is clamped cosine") {
  EmbeddingKb raw;
  raw.dims = 2;
  raw.vectors = {{"a", {1, 0}}, {"b", {1, 0}},  {"c", {-1, 0}},
                 {"d", {3, 4}}, {"e", {4, 3}},  {"f", {0, 1}}};
  KnowledgeBase kb = make_embedding_kb(std::move(raw), "inline");

  CHECK(kb.similarity("a", "b") == 1.0);
  CHECK(kb.similarity("a", "c") == 0.0);  // negative cosine clamps to zero
  CHECK(kb.similarity("d", "e") == doctest::Approx(0.96).epsilon(1e-13));
  CHECK(std::abs(kb.similarity("d", "e") - 0.96) < 1e-12);
  CHECK(kb.similarity("a", "f") == 0.0);
  CHECK(kb.similarity("a", "a") == 1.0);
  CHECK_THROWS_AS(kb.similarity("a", "nope"), TermNotFoundError);
  try {
    kb.similarity("nope", "a");
    FAIL("expected TermNotFoundError");
  } catch (const TermNotFoundError& e) {
    CHECK(e.term() == "nope");
  }
}

TEST_CASE("taxonomy similarity follows 1/(1+d) over IS-A paths") {
  TempDir dir;
  KnowledgeBase kb = kb_from_text(dir, "chain.kb",
                                  "S\tsa\tapple|fruit_word\n"
                                  "S\tsm\tmiddle\n"
                                  "S\tsb\tberry\n"
                                  "S\tiso\tisolated\n"
                                  "E\tsa\tsm\nE\tsm\tsb\n",
                                  false);
  CHECK(kb.similarity("apple", "fruit_word") == 1.0);  // shared synset
  CHECK(kb.similarity("apple", "middle") == 0.5);
  CHECK(kb.similarity("apple", "berry") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(kb.similarity("apple", "isolated") == 0.0);  // nothing connects
  CHECK(kb.similarity("apple", "apple") == 1.0);
}

TEST_CASE("taxonomy similarity matches a Floyd-Warshall oracle on random taxonomies") {
  TempDir dir;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    testutil::RandomTaxonomy tax = testutil::random_taxonomy(seed);
    auto path = dir.file("tax_" + std::to_string(seed) + ".kb");
    write_text_file(path, tax.file_content);
    KnowledgeBase kb = load_taxonomy_kb(path);

    std::vector<std::string> lemmas;
    for (const auto& synset : tax.lemmas)
      for (const auto& lemma : synset) lemmas.push_back(lemma);
    for (std::size_t i = 0; i < lemmas.size(); ++i) {
      for (std::size_t j = i; j < lemmas.size(); ++j) {
        double expected = testutil::taxonomy_similarity_oracle(tax, lemmas[i], lemmas[j]);
        CAPTURE(seed);
        CAPTURE(lemmas[i]);
        CAPTURE(lemmas[j]);
        CHECK(kb.similarity(lemmas[i], lemmas[j]) == expected);
      }
    }
  }
}

TEST_CASE("similarity is symmetric and bounded on both backends") {
  TempDir dir;
  KnowledgeBase embedding = kb_from_text(
      dir, "e.kb", "4 3\nalpha 1 2 3\nbeta 3 1 0.5\ngamma 0.1 0.1 9\ndelta 2 2 2\n");
  testutil::RandomTaxonomy tax = testutil::random_taxonomy(7);
  write_text_file(dir.file("t.kb"), tax.file_content);
  KnowledgeBase taxonomy = load_taxonomy_kb(dir.file("t.kb"));

  for (const KnowledgeBase* kb : {&embedding, &taxonomy}) {
    std::vector<std::string> terms = kb->terms();
    for (const auto& a : terms) {
      CHECK(kb->similarity(a, a) == 1.0);
      for (const auto& b : terms) {
        double ab = kb->similarity(a, b);
        CHECK(ab == kb->similarity(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
      }
    }
  }
}

TEST_CASE("save then reload answers identically") {
  TempDir dir;
  KnowledgeBase original = load_embedding_kb(testutil::fixture("robot_embedding.kb"));
  save_kb(original, dir.file("copy.kb"));
  KnowledgeBase reloaded = load_embedding_kb(dir.file("copy.kb"));

  std::vector<std::string> terms = original.terms();
  REQUIRE(reloaded.terms() == terms);
  for (const auto& a : terms)
    for (const auto& b : terms)
      CHECK(original.similarity(a, b) == reloaded.similarity(a, b));

  KnowledgeBase tax = load_taxonomy_kb(testutil::fixture("robot_taxonomy.kb"));
  save_kb(tax, dir.file("tax_copy.kb"));
  KnowledgeBase tax_reloaded = load_taxonomy_kb(dir.file("tax_copy.kb"));
  std::vector<std::string> lemmas = tax.terms();
  REQUIRE(tax_reloaded.terms() == lemmas);
  for (const auto& a : lemmas)
    for (const auto& b : lemmas)
      CHECK(tax.similarity(a, b) == tax_reloaded.similarity(a, b));
}

TEST_CASE("bundled taxonomy fixture distances") {
  KnowledgeBase kb = load_taxonomy_kb(testutil::fixture("robot_taxonomy.kb"));
  CHECK(kb.similarity("battery", "electric_battery") == 1.0);
  CHECK(kb.similarity("robot", "machine") == 0.5);
  CHECK(kb.similarity("machine", "device") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(kb.similarity("abstraction", "robot") == 0.0);
}

TEST_CASE("concurrent queries return the single-thread answers") {
  KnowledgeBase kb = load_taxonomy_kb(testutil::fixture("robot_taxonomy.kb"));
  std::vector<std::string> terms = kb.terms();

  std::vector<double> expected;
  for (const auto& a : terms)
    for (const auto& b : terms) expected.push_back(kb.similarity(a, b));

  std::atomic<bool> mismatch{false};
  std::vector<std::thread> workers;
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&] {
      std::size_t k = 0;
      for (const auto& a : terms)
        for (const auto& b : terms)
          if (kb.similarity(a, b) != expected[k++]) mismatch = true;
    });
  }
  for (auto& w : workers) w.join();
  CHECK_FALSE(mismatch.load());
}

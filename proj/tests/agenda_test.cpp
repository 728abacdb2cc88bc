#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "disinfo/agenda.hpp"
#include "disinfo/errors.hpp"
#include "disinfo/hashing.hpp"

using namespace disinfo;
using namespace disinfo::agenda;

TEST_CASE("a literal cue hit carries its byte span") {
  const Lexicon lex = {{"loaded_language", {"shocking"}}};
  const auto hits = detect_techniques("d1", "This is Shocking news", lex);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].doc_id == "d1");
  CHECK(hits[0].technique == "loaded_language");
  CHECK(hits[0].begin == 8);
  CHECK(hits[0].end == 16);
  CHECK(hits[0].matched_cue == "shocking");
}

TEST_CASE("empty inputs yield no hits") {
  CHECK(detect_techniques("d", "", Lexicon{{"t", {"x"}}}).empty());
  CHECK(detect_techniques("d", "some words", Lexicon{}).empty());
  CHECK(detect_techniques("d", "!!! ???", Lexicon{{"t", {"x"}}}).empty());
}

TEST_CASE("the wildcard stands for exactly one word") {
  const Lexicon lex = {{"division", {"they * you"}}};
  CHECK(detect_techniques("d", "they hate you", lex).size() == 1);
  CHECK(detect_techniques("d", "They LOVE you!", lex).size() == 1);
  CHECK(detect_techniques("d", "they you", lex).empty());
  CHECK(detect_techniques("d", "they really hate you", lex).empty());
}

TEST_CASE("the longest cue at a position wins and matches never overlap") {
  const Lexicon lex = {{"t", {"fake", "fake news"}}};
  const auto hits = detect_techniques("d", "fake news everywhere", lex);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].matched_cue == "fake news");

  const auto two = detect_techniques("d", "fake fake news", lex);
  REQUIRE(two.size() == 2);
  CHECK(two[0].matched_cue == "fake");
  CHECK(two[1].matched_cue == "fake news");
}

TEST_CASE("distinct techniques may claim the same span") {
  const Lexicon lex = {{"t_a", {"enemy"}}, {"t_b", {"enemy"}}};
  const auto hits = detect_techniques("d", "the enemy within", lex);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].technique == "t_a");
  CHECK(hits[1].technique == "t_b");
  CHECK(hits[0].begin == hits[1].begin);
}

TEST_CASE("cues anchor on word boundaries") {
  const Lexicon lex = {{"t", {"war"}}};
  CHECK(detect_techniques("d", "a warning sign", lex).empty());
  CHECK(detect_techniques("d", "a war begins", lex).size() == 1);
}

TEST_CASE("degenerate lexicons are rejected") {
  CHECK_THROWS_AS(compile_lexicon(Lexicon{{"t", {"!!!"}}}), BadConfig);
  CHECK_THROWS_AS(compile_lexicon(Lexicon{{"t", {}}}), BadConfig);
  const auto c = compile_lexicon(Lexicon{{"b", {"x"}}, {"a", {"y z"}}});
  REQUIRE(c.technique_count() == 2);
  CHECK(c.techniques[0].first == "a");
  CHECK(c.techniques[0].second[0].words == std::vector<std::string>{"y", "z"});
}

// --- oracle comparison ---------------------------------------------------------

namespace {

struct OracleToken {
  std::size_t begin, end;
  std::string lower;
};

bool oracle_word_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::vector<OracleToken> oracle_tokens(const std::string& text) {
  std::vector<OracleToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!oracle_word_byte(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::string w;
    while (j < text.size() && oracle_word_byte(text[j])) {
      char c = text[j];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      w.push_back(c);
      ++j;
    }
    out.push_back({i, j, w});
    i = j;
  }
  return out;
}

std::vector<std::string> split_cue(const std::string& cue) {
  std::vector<std::string> out;
  std::string w;
  for (char c : cue) {
    if (c == ' ') {
      if (!w.empty()) out.push_back(w);
      w.clear();
    } else {
      w.push_back(c);
    }
  }
  if (!w.empty()) out.push_back(w);
  return out;
}

using HitTuple = std::tuple<std::string, std::size_t, std::size_t, std::string>;

std::vector<HitTuple> oracle_detect(const std::string& text, const Lexicon& lex) {
  const auto toks = oracle_tokens(text);
  std::vector<HitTuple> out;
  for (const auto& [technique, cues] : lex) {
    std::vector<std::vector<std::string>> parsed;
    for (const auto& c : cues) parsed.push_back(split_cue(c));
    std::size_t pos = 0;
    while (pos < toks.size()) {
      std::size_t best = 0;
      for (const auto& cue : parsed) {
        if (cue.size() <= best || pos + cue.size() > toks.size()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < cue.size(); ++k)
          if (cue[k] != "*" && cue[k] != toks[pos + k].lower) {
            ok = false;
            break;
          }
        if (ok) best = cue.size();
      }
      if (!best) {
        ++pos;
        continue;
      }
      const std::size_t b = toks[pos].begin, e = toks[pos + best - 1].end;
      std::string span;
      for (std::size_t i = b; i < e; ++i) {
        char c = text[i];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        span.push_back(c);
      }
      out.emplace_back(technique, b, e, span);
      pos += best;
    }
  }
  std::sort(out.begin(), out.end(), [](const HitTuple& a, const HitTuple& b) {
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<2>(a) < std::get<2>(b);
  });
  return out;
}

}  // namespace

TEST_CASE("random documents match the scan oracle hit for hit") {
  const Lexicon lex = {
      {"t_alpha", {"w1", "w1 w2", "w1 w2 w3"}},
      {"t_beta", {"w4 * w6", "w4"}},
      {"t_gamma", {"w7 w8"}},
      {"t_delta", {"* w9"}},
      {"t_epsilon", {"w10 w11 w12"}},
  };
  const auto compiled = compile_lexicon(lex);
  const char* seps[] = {" ", ", ", "! ", "  ", ". "};

  SplitMix64 rng(0xa9e2da);
  for (int d = 0; d < 100; ++d) {
    std::string text;
    const int n = 30 + static_cast<int>(rng.next() % 51);
    for (int i = 0; i < n; ++i) {
      std::string w = "w" + std::to_string(rng.next() % 30);
      if (rng.next() % 4 == 0) w[0] = 'W';
      if (i) text += seps[rng.next() % 5];
      text += w;
    }

    const auto got = detect_techniques("doc", text, compiled);
    std::vector<HitTuple> got_tuples;
    for (const auto& h : got) {
      CHECK(h.doc_id == "doc");
      got_tuples.emplace_back(h.technique, h.begin, h.end, h.matched_cue);
    }
    CAPTURE(d);
    CAPTURE(text);
    CHECK(got_tuples == oracle_detect(text, lex));
  }
}

// --- fused score ------------------------------------------------------------------

namespace {

std::vector<TechniqueHit> fake_hits(const std::vector<std::string>& techniques) {
  std::vector<TechniqueHit> out;
  for (std::size_t i = 0; i < techniques.size(); ++i) {
    TechniqueHit h;
    h.doc_id = "d";
    h.technique = techniques[i];
    h.begin = i * 10;
    h.end = i * 10 + 5;
    out.push_back(h);
  }
  return out;
}

}  // namespace

TEST_CASE("no hits means zero agenda score") {
  const auto s = fuse_agenda("n1", {}, 500, 8);
  CHECK(s.hits_per_100_tokens == 0.0);
  CHECK(s.technique_diversity == 0.0);
  CHECK(s.score == 0.0);
}

TEST_CASE("rate two and diversity two fifths give the closed-form score") {
  // 8 hits over 400 tokens: rate 2.0; 2 of 5 techniques: diversity 0.4
  const auto hits = fake_hits({"a", "b", "a", "b", "a", "b", "a", "b"});
  const auto s = fuse_agenda("n1", hits, 400, 5, 0.5);
  CHECK(s.hits_per_100_tokens == doctest::Approx(2.0));
  CHECK(s.technique_diversity == doctest::Approx(0.4));
  CHECK(s.score == doctest::Approx(0.5 * (1.0 - std::exp(-1.0)) + 0.2));
  CHECK(s.score == doctest::Approx(0.5160602794).epsilon(1e-9));
}

TEST_CASE("the score saturates at one") {
  std::vector<std::string> all = {"a", "b", "c", "d", "e"};
  std::vector<std::string> many;
  for (int i = 0; i < 1000; ++i) many.push_back(all[static_cast<std::size_t>(i % 5)]);
  const auto s = fuse_agenda("n", fake_hits(many), 10, 5, 0.5);
  CHECK(s.technique_diversity == doctest::Approx(1.0));
  CHECK(s.score > 0.99);
  CHECK(s.score <= 1.0);
}

TEST_CASE("more hits never lower the score") {
  double prev = -1.0;
  for (int k = 0; k <= 20; ++k) {
    std::vector<std::string> hs(static_cast<std::size_t>(k), "a");
    const auto s = fuse_agenda("n", fake_hits(hs), 200, 4, 0.5);
    CHECK(s.score >= prev);
    prev = s.score;
  }
}

TEST_CASE("degenerate denominators are safe") {
  const auto s = fuse_agenda("n", fake_hits({"a"}), 0, 0, 0.5);
  CHECK(s.hits_per_100_tokens == 0.0);
  CHECK(s.technique_diversity == 0.0);
  CHECK_THROWS_AS(fuse_agenda("n", {}, 10, 2, -0.5), BadConfig);
}

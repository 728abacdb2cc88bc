#include "disinfo/agenda.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "disinfo/errors.hpp"
#include "disinfo/text.hpp"

namespace disinfo::agenda {

namespace {

// Like word tokenization but '*' survives as its own token so wildcard cues
// round-trip.
std::vector<std::string> cue_words(std::string_view cue) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < cue.size()) {
    const unsigned char c = static_cast<unsigned char>(cue[i]);
    if (c == '*') {
      out.emplace_back("*");
      ++i;
    } else if (is_word_byte(c)) {
      std::size_t j = i + 1;
      while (j < cue.size() && is_word_byte(static_cast<unsigned char>(cue[j]))) ++j;
      out.push_back(to_lower(cue.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

CompiledLexicon compile_lexicon(const Lexicon& lexicon) {
  CompiledLexicon out;
  for (const auto& [technique, cues] : lexicon) {
    std::vector<CompiledCue> compiled;
    for (const auto& cue : cues) {
      CompiledCue cc{cue_words(cue)};
      if (cc.words.empty()) throw BadConfig("lexicon cue with no words: " + cue);
      compiled.push_back(std::move(cc));
    }
    if (compiled.empty()) throw BadConfig("lexicon technique with no cues: " + technique);
    out.techniques.emplace_back(technique, std::move(compiled));
  }
  return out;
}

std::vector<TechniqueHit> detect_techniques(const std::string& doc_id, std::string_view text_in,
                                            const CompiledLexicon& lexicon) {
  std::vector<TechniqueHit> hits;
  const auto spans = word_tokens(text_in);
  if (spans.empty() || lexicon.techniques.empty()) return hits;

  std::vector<std::string> words;
  words.reserve(spans.size());
  for (const auto& s : spans) words.push_back(to_lower(text_in.substr(s.begin, s.end - s.begin)));

  for (const auto& [technique, cues] : lexicon.techniques) {
    std::size_t pos = 0;
    while (pos < words.size()) {
      std::size_t best_len = 0;
      for (const auto& cue : cues) {
        const std::size_t len = cue.words.size();
        if (len <= best_len || pos + len > words.size()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < len; ++k) {
          if (cue.words[k] != "*" && cue.words[k] != words[pos + k]) {
            ok = false;
            break;
          }
        }
        if (ok) best_len = len;
      }
      if (best_len == 0) {
        ++pos;
        continue;
      }
      TechniqueHit hit;
      hit.doc_id = doc_id;
      hit.technique = technique;
      hit.begin = spans[pos].begin;
      hit.end = spans[pos + best_len - 1].end;
      hit.matched_cue = to_lower(text_in.substr(hit.begin, hit.end - hit.begin));
      hits.push_back(std::move(hit));
      pos += best_len;
    }
  }
  std::sort(hits.begin(), hits.end(), [](const TechniqueHit& a, const TechniqueHit& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.technique != b.technique) return a.technique < b.technique;
    return a.end < b.end;
  });
  return hits;
}

std::vector<TechniqueHit> detect_techniques(const std::string& doc_id, std::string_view text_in,
                                            const Lexicon& lexicon) {
  return detect_techniques(doc_id, text_in, compile_lexicon(lexicon));
}

AgendaScore fuse_agenda(const std::string& narrative_id, const std::vector<TechniqueHit>& hits,
                        std::size_t total_tokens, std::size_t lexicon_techniques, double lambda) {
  if (lambda < 0.0) throw BadConfig("lambda must be non-negative");
  AgendaScore out;
  out.narrative_id = narrative_id;
  if (total_tokens > 0)
    out.hits_per_100_tokens =
        100.0 * static_cast<double>(hits.size()) / static_cast<double>(total_tokens);
  if (lexicon_techniques > 0) {
    std::set<std::string> distinct;
    for (const auto& h : hits) distinct.insert(h.technique);
    out.technique_diversity =
        static_cast<double>(distinct.size()) / static_cast<double>(lexicon_techniques);
  }
  out.score = 0.5 * (1.0 - std::exp(-lambda * out.hits_per_100_tokens)) +
              0.5 * out.technique_diversity;
  return out;
}

}  // namespace disinfo::agenda

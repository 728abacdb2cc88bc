#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace disinfo::agenda {

using Lexicon = std::map<std::string, std::vector<std::string>>;

struct TechniqueHit {
  std::string doc_id;
  std::string technique;
  std::size_t begin = 0;  // byte offsets into the document, [begin, end)
  std::size_t end = 0;
  std::string matched_cue;  // case-folded document bytes at the span

  bool operator==(const TechniqueHit&) const = default;
};

// Cues parsed to word sequences; "*" stands for exactly one arbitrary word.
struct CompiledCue {
  std::vector<std::string> words;  // case-folded; "*" kept verbatim
};

struct CompiledLexicon {
  std::vector<std::pair<std::string, std::vector<CompiledCue>>> techniques;  // sorted by name
  std::size_t technique_count() const { return techniques.size(); }
};

CompiledLexicon compile_lexicon(const Lexicon& lexicon);

// Word-boundary anchored, case-insensitive matching. Within one technique the
// longest match at each position wins and matches never overlap; distinct
// techniques may claim the same span. Hits come back in (begin, technique)
// order.
std::vector<TechniqueHit> detect_techniques(const std::string& doc_id, std::string_view text,
                                            const CompiledLexicon& lexicon);
std::vector<TechniqueHit> detect_techniques(const std::string& doc_id, std::string_view text,
                                            const Lexicon& lexicon);

struct AgendaScore {
  std::string narrative_id;
  double hits_per_100_tokens = 0.0;
  double technique_diversity = 0.0;
  double score = 0.0;  // 0.5 * (1 - exp(-lambda * rate)) + 0.5 * diversity
};

AgendaScore fuse_agenda(const std::string& narrative_id, const std::vector<TechniqueHit>& hits,
                        std::size_t total_tokens, std::size_t lexicon_techniques,
                        double lambda = 0.5);

}  // namespace disinfo::agenda

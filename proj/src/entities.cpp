#include "disinfo/entities.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "disinfo/text.hpp"

namespace disinfo::entities {

const char* kind_name(EntityKind k) {
  switch (k) {
    case EntityKind::hashtag: return "hashtag";
    case EntityKind::mention: return "mention";
    case EntityKind::domain: return "domain";
    case EntityKind::term: return "term";
  }
  return "?";
}

namespace {

// Replaces URL spans with spaces so tag/term scans cannot fire inside them.
std::string mask_urls(const std::string& text) {
  std::string masked = text;
  for (const TokenSpan& span : url_spans(text)) {
    for (std::size_t i = span.begin; i < span.end; ++i) masked[i] = ' ';
  }
  return masked;
}

void scan_sigil(const std::string& text, char sigil, EntityKind kind,
                std::set<EntityRef>& out) {
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (text[i] != sigil) continue;
    if (i > 0 && is_word_byte(static_cast<unsigned char>(text[i - 1]))) continue;  // emails etc.
    std::size_t j = i + 1;
    while (j < n && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i + 1) {
      out.insert({to_lower(std::string_view(text).substr(i + 1, j - i - 1)), kind});
      i = j - 1;
    }
  }
}

}  // namespace

std::vector<EntityRef> extract_entities(const ingest::Post& post,
                                        const ingest::SourceLists& lists) {
  std::set<EntityRef> found;

  const std::string masked = mask_urls(post.text);
  scan_sigil(masked, '#', EntityKind::hashtag, found);
  scan_sigil(masked, '@', EntityKind::mention, found);

  for (const std::string& url : post.urls) {
    std::string dom = ingest::registrable_domain(url);
    if (!dom.empty()) found.insert({dom, EntityKind::domain});
  }

  if (!lists.entity_dictionary.empty()) {
    // aliases pre-tokenized, sorted so longest-match ties resolve lexicographically
    struct AliasEntry {
      std::string alias;
      std::vector<std::string> tokens;
      std::string canonical;
    };
    std::vector<AliasEntry> aliases;
    aliases.reserve(lists.entity_dictionary.size());
    for (const auto& [alias, canonical] : lists.entity_dictionary) {
      std::vector<std::string> toks = word_strings(alias);
      if (!toks.empty()) aliases.push_back({to_lower(alias), std::move(toks), to_lower(canonical)});
    }
    std::sort(aliases.begin(), aliases.end(),
              [](const AliasEntry& a, const AliasEntry& b) { return a.alias < b.alias; });

    const std::vector<std::string> tokens = word_strings(masked);
    std::size_t t = 0;
    while (t < tokens.size()) {
      const AliasEntry* best = nullptr;
      for (const AliasEntry& entry : aliases) {
        if (t + entry.tokens.size() > tokens.size()) continue;
        if (best != nullptr && entry.tokens.size() <= best->tokens.size()) continue;
        bool match = true;
        for (std::size_t k = 0; k < entry.tokens.size() && match; ++k) {
          match = tokens[t + k] == entry.tokens[k];
        }
        if (match) best = &entry;
      }
      if (best != nullptr) {
        found.insert({best->canonical, EntityKind::term});
        t += best->tokens.size();
      } else {
        ++t;
      }
    }
  }

  return {found.begin(), found.end()};
}

std::string resolve_alias(std::string name,
                          const std::unordered_map<std::string, std::string>& alias_map) {
  std::set<std::string> seen{name};
  for (;;) {
    auto it = alias_map.find(name);
    if (it == alias_map.end()) return name;
    if (seen.count(it->second)) return it->second;  // cycle: stop deterministically
    seen.insert(it->second);
    name = it->second;
  }
}

std::vector<Entity> disambiguate(const std::vector<RawMention>& raw,
                                 const std::unordered_map<std::string, std::string>& alias_map) {
  std::map<std::pair<std::string, EntityKind>, std::set<std::string>> merged;
  for (const RawMention& m : raw) {
    std::string canonical = resolve_alias(to_lower(m.name), alias_map);
    if (canonical.empty()) continue;
    merged[{std::move(canonical), m.kind}].insert(m.post_id);
  }
  std::vector<Entity> out;
  out.reserve(merged.size());
  for (auto& [key, mentions] : merged) {
    out.push_back(Entity{key.first, key.second, {mentions.begin(), mentions.end()}});
  }
  return out;
}

}  // namespace disinfo::entities

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disinfo/ingest.hpp"

namespace disinfo::entities {

enum class EntityKind : std::uint8_t { hashtag = 0, mention = 1, domain = 2, term = 3 };

const char* kind_name(EntityKind k);

// (canonical_name, kind) pair; the unit entity extraction emits per post.
struct EntityRef {
  std::string name;  // case-folded, nonempty
  EntityKind kind = EntityKind::hashtag;

  friend bool operator==(const EntityRef&, const EntityRef&) = default;
  friend auto operator<=>(const EntityRef& a, const EntityRef& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.kind <=> b.kind;
  }
};

// A disambiguated entity with every post that mentions it.
struct Entity {
  std::string canonical_name;
  EntityKind kind = EntityKind::hashtag;
  std::vector<std::string> mentions;  // sorted unique post ids, nonempty
};

// Hashtags, mentions, registrable domains of post.urls, and dictionary terms
// (longest alias match, word-boundary anchored, ties broken lexicographically).
// URL spans inside the text are masked so fragments and paths never produce
// tags or terms. Each entity appears at most once; output sorted.
std::vector<EntityRef> extract_entities(const ingest::Post& post, const ingest::SourceLists& lists);

struct RawMention {
  std::string name;
  EntityKind kind;
  std::string post_id;
};

// Applies the alias map to a fixpoint (cycle-safe), then merges identical
// (canonical_name, kind) pairs; mention sets are unioned. Associative and
// commutative over the input stream.
std::vector<Entity> disambiguate(const std::vector<RawMention>& raw,
                                 const std::unordered_map<std::string, std::string>& alias_map);

// Alias-chain resolution used by disambiguate; exposed for reuse.
std::string resolve_alias(std::string name,
                          const std::unordered_map<std::string, std::string>& alias_map);

}  // namespace disinfo::entities

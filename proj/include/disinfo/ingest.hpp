#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "disinfo/errors.hpp"

#include <nlohmann/json_fwd.hpp>

namespace disinfo::ingest {

struct Engagement {
  std::int64_t likes = 0;
  std::int64_t shares = 0;
  std::int64_t replies = 0;
};

// One normalized social-media item, platform-independent. urls are always in
// canonical form (see canonicalize_url) and author_created_at <= created_at.
struct Post {
  std::string post_id;
  std::string platform;
  std::string author_id;
  std::int64_t author_created_at = 0;
  std::int64_t author_followers = 0;
  std::int64_t author_following = 0;
  std::string text;
  std::int64_t created_at = 0;
  std::vector<std::string> urls;
  Engagement engagement;
  std::optional<std::string> reply_to;
};

// Reference lists loaded from the files named in the pipeline config.
struct SourceLists {
  std::unordered_set<std::string> low_credibility_domains;          // registrable, lowercase
  std::unordered_map<std::string, std::string> entity_dictionary;   // alias -> canonical
  std::map<std::string, std::vector<std::string>> propaganda_lexicon;  // technique -> cues
  std::unordered_map<std::string, std::string> url_shortener_map;   // canonical -> canonical
  std::unordered_map<std::string, std::string> articles;            // canonical url -> body
};

// Declarative field mapping for one platform: unified field name -> dotted
// path into the source record. Required: post_id, author_id, text, created_at.
// Optional: author_created_at, author_followers, author_following, likes,
// shares, replies, reply_to, urls.
struct AdapterConfig {
  std::map<std::string, std::string> field_paths;

  static AdapterConfig from_json(const nlohmann::json& j);
};

// --- URL handling ---------------------------------------------------------

// Canonical form: lowercase scheme/host, default port removed, tracking
// params (utm_*, fbclid, gclid, igshid, s, ref_src) stripped, fragment
// removed, trailing slashes dropped from non-root paths, %xx uppercased.
// Throws NotAUrl for anything that does not parse as absolute http(s).
std::string canonicalize_url(std::string_view raw);

// Registrable domain (public suffix + 1 label) of a canonical URL, using the
// bundled suffix snapshot. IP hosts come back verbatim; a host that is itself
// a public suffix comes back verbatim as well.
std::string registrable_domain(std::string_view canonical_url);
std::string registrable_domain_of_host(std::string_view host);

// --- Normalization --------------------------------------------------------

// Maps one platform record onto the unified Post schema. Missing optional
// counts default to 0, text is preserved byte-for-byte, urls come from the
// text plus any declared url field and are canonicalized (unparseable ones
// are skipped). Throws MissingField / BadTimestamp.
Post normalize(const nlohmann::json& record, std::string_view platform,
               const AdapterConfig& adapter, const SourceLists& lists = {});

// Reads one newline-delimited record file through an adapter. Preserves input
// order. Lines that are blank are skipped; malformed JSON raises IoError.
std::vector<Post> read_platform_file(const std::string& path, std::string_view platform,
                                     const AdapterConfig& adapter, const SourceLists& lists = {});

// k-way merge of per-file streams, each already sorted by created_at, into
// one stream sorted by (created_at, post_id).
std::vector<Post> merge_streams(std::vector<std::vector<Post>> streams);

// --- Reference list loading ------------------------------------------------

// One registrable domain per line; '#' comments and blanks ignored.
std::unordered_set<std::string> load_domain_list(const std::string& path);
// JSON object {alias: canonical}; keys and values case-folded.
std::unordered_map<std::string, std::string> load_entity_dictionary(const std::string& path);
// JSON object {technique: [cue, ...]}; '*' in a cue matches one word.
std::map<std::string, std::vector<std::string>> load_lexicon(const std::string& path);
// Newline-delimited {"url":..., "text":...} records, keyed by canonical URL.
std::unordered_map<std::string, std::string> load_articles(const std::string& path);

}  // namespace disinfo::ingest

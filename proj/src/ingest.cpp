#include "disinfo/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "disinfo/reference_data.hpp"
#include "disinfo/text.hpp"

using nlohmann::json;

namespace disinfo::ingest {

namespace {

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

char hex_upper(char c) {
  return (c >= 'a' && c <= 'f') ? static_cast<char>(c - 'a' + 'A') : c;
}

// %xx sequences get uppercase hex; everything else passes through.
std::string normalize_percent(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && is_hex(s[i + 1]) && is_hex(s[i + 2])) {
      out += '%';
      out += hex_upper(s[i + 1]);
      out += hex_upper(s[i + 2]);
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

bool is_tracking_param(std::string_view key) {
  std::string k = to_lower(key);
  if (k.rfind("utm_", 0) == 0) return true;
  return k == "fbclid" || k == "gclid" || k == "igshid" || k == "s" || k == "ref_src";
}

struct ParsedUrl {
  std::string scheme;
  std::string userinfo;  // without '@', empty if none
  std::string host;
  std::string port;  // empty if none
  std::string path;
  std::string query;     // without '?', empty if none
  bool has_query = false;
};

ParsedUrl parse_http_url(std::string_view raw) {
  // trim surrounding whitespace
  std::size_t b = 0, e = raw.size();
  while (b < e && static_cast<unsigned char>(raw[b]) <= ' ') ++b;
  while (e > b && static_cast<unsigned char>(raw[e - 1]) <= ' ') --e;
  raw = raw.substr(b, e - b);

  std::size_t sep = raw.find("://");
  if (sep == std::string_view::npos || sep == 0) throw NotAUrl(std::string(raw));
  ParsedUrl u;
  u.scheme = to_lower(raw.substr(0, sep));
  if (u.scheme != "http" && u.scheme != "https") throw NotAUrl(std::string(raw));

  std::string_view rest = raw.substr(sep + 3);
  std::size_t auth_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, auth_end);
  std::string_view after = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);
  if (authority.empty()) throw NotAUrl(std::string(raw));

  std::size_t at = authority.rfind('@');
  std::string_view hostport = authority;
  if (at != std::string_view::npos) {
    u.userinfo = std::string(authority.substr(0, at));
    hostport = authority.substr(at + 1);
  }
  if (hostport.empty()) throw NotAUrl(std::string(raw));

  if (hostport.front() == '[') {
    std::size_t close = hostport.find(']');
    if (close == std::string_view::npos) throw NotAUrl(std::string(raw));
    u.host = to_lower(hostport.substr(0, close + 1));
    std::string_view tail = hostport.substr(close + 1);
    if (!tail.empty()) {
      if (tail.front() != ':') throw NotAUrl(std::string(raw));
      u.port = std::string(tail.substr(1));
    }
  } else {
    std::size_t colon = hostport.rfind(':');
    if (colon != std::string_view::npos &&
        hostport.find_first_not_of("0123456789", colon + 1) == std::string_view::npos) {
      u.host = to_lower(hostport.substr(0, colon));
      u.port = std::string(hostport.substr(colon + 1));
    } else {
      u.host = to_lower(hostport);
    }
  }
  // single trailing dot on the host is not significant
  if (u.host.size() > 1 && u.host.back() == '.') u.host.pop_back();
  if (u.host.empty()) throw NotAUrl(std::string(raw));

  if (!after.empty()) {
    std::size_t qpos = after.find('?');
    std::size_t fpos = after.find('#');
    std::size_t path_end = std::min(qpos, fpos);
    u.path = std::string(after.substr(0, path_end));
    if (qpos != std::string_view::npos && (fpos == std::string_view::npos || qpos < fpos)) {
      u.has_query = true;
      u.query = std::string(after.substr(qpos + 1, fpos == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : fpos - qpos - 1));
    }
    // fragment dropped
  }
  return u;
}

bool is_ipv4(std::string_view host) {
  int parts = 0;
  std::size_t i = 0;
  while (i < host.size()) {
    std::size_t start = i;
    long v = 0;
    while (i < host.size() && host[i] >= '0' && host[i] <= '9') {
      v = v * 10 + (host[i] - '0');
      if (v > 255) return false;
      ++i;
    }
    if (i == start) return false;
    ++parts;
    if (i < host.size()) {
      if (host[i] != '.') return false;
      ++i;
      if (i == host.size()) return false;  // trailing dot
    }
  }
  return parts == 4;
}

std::vector<std::string> split_labels(std::string_view host) {
  std::vector<std::string> labels;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= host.size(); ++i) {
    if (i == host.size() || host[i] == '.') {
      labels.emplace_back(host.substr(start, i - start));
      start = i + 1;
    }
  }
  return labels;
}

class SuffixSet {
 public:
  explicit SuffixSet(std::string_view snapshot) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= snapshot.size(); ++i) {
      if (i == snapshot.size() || snapshot[i] == '\n') {
        std::string_view line = snapshot.substr(start, i - start);
        start = i + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (line[0] == '!') {
          exceptions_.emplace(line.substr(1));
        } else if (line.rfind("*.", 0) == 0) {
          wildcard_bases_.emplace(line.substr(2));
        } else {
          exact_.emplace(line);
        }
      }
    }
  }

  std::string registrable(std::string_view host_view) const {
    std::string host(host_view);
    if (host.find('.') == std::string::npos || is_ipv4(host)) return host;

    const std::vector<std::string> labels = split_labels(host);
    const std::size_t n = labels.size();

    auto join_from = [&](std::size_t i) {
      std::string s;
      for (std::size_t k = i; k < n; ++k) {
        if (k > i) s += '.';
        s += labels[k];
      }
      return s;
    };

    // exception rules override everything: the rule itself is registrable
    for (std::size_t i = 0; i < n; ++i) {
      if (exceptions_.count(join_from(i))) {
        std::size_t suffix_len = (n - i) - 1;
        if (n <= suffix_len + 1) return host;
        return join_from(n - suffix_len - 1);
      }
    }

    std::size_t best = 1;  // implicit "*" rule: the TLD itself
    for (std::size_t i = 0; i < n; ++i) {
      if (exact_.count(join_from(i))) best = std::max(best, n - i);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (wildcard_bases_.count(join_from(i + 1))) best = std::max(best, n - i);
    }

    if (n <= best) return host;  // the host is itself a public suffix
    return join_from(n - best - 1);
  }

 private:
  std::unordered_set<std::string> exact_;
  std::unordered_set<std::string> wildcard_bases_;
  std::unordered_set<std::string> exceptions_;
};

const SuffixSet& bundled_suffixes() {
  static const SuffixSet set{reference::public_suffix_snapshot()};
  return set;
}

std::string host_of(std::string_view canonical_url) {
  ParsedUrl u = parse_http_url(canonical_url);
  if (u.host.size() >= 2 && u.host.front() == '[' && u.host.back() == ']') {
    return u.host.substr(1, u.host.size() - 2);
  }
  return u.host;
}

// --- adapter helpers -------------------------------------------------------

const json* walk_path(const json& record, std::string_view dotted) {
  const json* cur = &record;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    std::size_t dot = dotted.find('.', start);
    std::string_view key = dotted.substr(start, dot == std::string_view::npos ? std::string_view::npos
                                                                              : dot - start);
    if (!cur->is_object()) return nullptr;
    auto it = cur->find(std::string(key));
    if (it == cur->end()) return nullptr;
    cur = &*it;
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return cur->is_null() ? nullptr : cur;
}

std::optional<std::string> value_as_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_float()) return v.dump();
  return std::nullopt;
}

// days-from-civil, proleptic Gregorian
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool parse_iso8601(std::string_view s, std::int64_t& out) {
  // YYYY-MM-DD[T ]HH:MM:SS with optional 'Z' or +/-hh:mm offset
  auto num = [&](std::size_t pos, std::size_t len, int& v) {
    v = 0;
    if (pos + len > s.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
      v = v * 10 + (s[i] - '0');
    }
    return true;
  };
  int y, mo, d, h, mi, se;
  if (s.size() < 19) return false;
  if (!num(0, 4, y) || s[4] != '-' || !num(5, 2, mo) || s[7] != '-' || !num(8, 2, d)) return false;
  if (s[10] != 'T' && s[10] != ' ') return false;
  if (!num(11, 2, h) || s[13] != ':' || !num(14, 2, mi) || s[16] != ':' || !num(17, 2, se))
    return false;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) return false;
  std::int64_t t = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
  std::size_t rest = 19;
  // fractional seconds ignored
  if (rest < s.size() && s[rest] == '.') {
    ++rest;
    while (rest < s.size() && s[rest] >= '0' && s[rest] <= '9') ++rest;
  }
  if (rest < s.size()) {
    char c = s[rest];
    if (c == 'Z' && rest + 1 == s.size()) {
      // UTC
    } else if ((c == '+' || c == '-') && rest + 6 == s.size() && s[rest + 3] == ':') {
      int oh, om;
      if (!num(rest + 1, 2, oh) || !num(rest + 4, 2, om)) return false;
      std::int64_t off = oh * 3600 + om * 60;
      t += (c == '+') ? -off : off;
    } else {
      return false;
    }
  }
  out = t;
  return true;
}

std::int64_t parse_timestamp(const json& v) {
  if (v.is_number_integer()) {
    std::int64_t t = v.get<std::int64_t>();
    if (t <= 0) throw BadTimestamp(v.dump());
    return t;
  }
  if (v.is_number_unsigned()) {
    std::uint64_t t = v.get<std::uint64_t>();
    if (t == 0) throw BadTimestamp(v.dump());
    return static_cast<std::int64_t>(t);
  }
  if (v.is_number_float()) {
    double t = v.get<double>();
    if (!(t > 0)) throw BadTimestamp(v.dump());
    return static_cast<std::int64_t>(t);
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::int64_t t = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), t);
    if (ec == std::errc() && p == s.data() + s.size()) {
      if (t <= 0) throw BadTimestamp(s);
      return t;
    }
    if (parse_iso8601(s, t)) {
      if (t <= 0) throw BadTimestamp(s);
      return t;
    }
    throw BadTimestamp(s);
  }
  throw BadTimestamp(v.dump());
}

std::int64_t count_or_zero(const json* v) {
  if (v == nullptr) return 0;
  std::int64_t n = 0;
  if (v->is_number_integer()) {
    n = v->get<std::int64_t>();
  } else if (v->is_number_unsigned()) {
    n = static_cast<std::int64_t>(v->get<std::uint64_t>());
  } else if (v->is_number_float()) {
    n = static_cast<std::int64_t>(v->get<double>());
  } else if (v->is_string()) {
    const std::string s = v->get<std::string>();
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || p != s.data() + s.size()) n = 0;
  }
  return n < 0 ? 0 : n;
}

}  // namespace

std::string canonicalize_url(std::string_view raw) {
  ParsedUrl u = parse_http_url(raw);

  if ((u.scheme == "http" && u.port == "80") || (u.scheme == "https" && u.port == "443")) {
    u.port.clear();
  }
  // also treat zero-padded default ports as default
  if (!u.port.empty()) {
    long p = 0;
    for (char c : u.port) p = p * 10 + (c - '0');
    if ((u.scheme == "http" && p == 80) || (u.scheme == "https" && p == 443)) u.port.clear();
  }

  std::string path = normalize_percent(u.path);
  while (path.size() > 1 && path.back() == '/') path.pop_back();
  if (path.empty()) path = "/";  // "https://a.b" and "https://a.b/" are one resource

  std::string query;
  if (u.has_query) {
    std::string_view q = u.query;
    std::size_t start = 0;
    bool first = true;
    while (start <= q.size()) {
      std::size_t amp = q.find('&', start);
      std::string_view part =
          q.substr(start, amp == std::string_view::npos ? std::string_view::npos : amp - start);
      if (!part.empty()) {
        std::size_t eq = part.find('=');
        std::string_view key = eq == std::string_view::npos ? part : part.substr(0, eq);
        if (!is_tracking_param(key)) {
          if (!first) query += '&';
          query += normalize_percent(part);
          first = false;
        }
      }
      if (amp == std::string_view::npos) break;
      start = amp + 1;
    }
  }

  std::string out = u.scheme + "://";
  if (!u.userinfo.empty()) {
    out += u.userinfo;
    out += '@';
  }
  out += u.host;
  if (!u.port.empty()) {
    out += ':';
    out += u.port;
  }
  out += path;
  if (!query.empty()) {
    out += '?';
    out += query;
  }
  return out;
}

std::string registrable_domain(std::string_view canonical_url) {
  return bundled_suffixes().registrable(host_of(canonical_url));
}

std::string registrable_domain_of_host(std::string_view host) {
  return bundled_suffixes().registrable(to_lower(host));
}

AdapterConfig AdapterConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("adapter config must be a JSON object");
  AdapterConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string()) throw ConfigError("adapter mapping for '" + it.key() + "' must be a string path");
    cfg.field_paths[it.key()] = it.value().get<std::string>();
  }
  for (const char* required : {"post_id", "author_id", "text", "created_at"})
    if (!cfg.field_paths.count(required)) throw MissingField(required);
  return cfg;
}

Post normalize(const json& record, std::string_view platform, const AdapterConfig& adapter,
               const SourceLists& lists) {
  auto lookup = [&](const char* unified) -> const json* {
    auto it = adapter.field_paths.find(unified);
    if (it == adapter.field_paths.end()) return nullptr;
    return walk_path(record, it->second);
  };
  auto required_string = [&](const char* unified) {
    const json* v = lookup(unified);
    if (v == nullptr) throw MissingField(unified);
    std::optional<std::string> s = value_as_string(*v);
    if (!s || s->empty()) throw MissingField(unified);
    return *s;
  };

  Post post;
  post.post_id = required_string("post_id");
  post.platform = std::string(platform);
  post.author_id = required_string("author_id");

  {
    const json* v = lookup("text");
    if (v == nullptr || !v->is_string()) throw MissingField("text");
    post.text = v->get<std::string>();  // byte-for-byte
  }
  {
    const json* v = lookup("created_at");
    if (v == nullptr) throw MissingField("created_at");
    post.created_at = parse_timestamp(*v);
  }
  if (const json* v = lookup("author_created_at")) {
    try {
      post.author_created_at = parse_timestamp(*v);
    } catch (const BadTimestamp&) {
      post.author_created_at = 0;
    }
    // schema invariant: account cannot be younger than its post
    post.author_created_at = std::min(post.author_created_at, post.created_at);
  }
  post.author_followers = count_or_zero(lookup("author_followers"));
  post.author_following = count_or_zero(lookup("author_following"));
  post.engagement.likes = count_or_zero(lookup("likes"));
  post.engagement.shares = count_or_zero(lookup("shares"));
  post.engagement.replies = count_or_zero(lookup("replies"));

  if (const json* v = lookup("reply_to")) {
    std::optional<std::string> s = value_as_string(*v);
    if (s && !s->empty()) post.reply_to = *s;
  }

  // urls: text scan first, then any declared platform field
  std::vector<std::string> raw_urls;
  for (const TokenSpan& span : url_spans(post.text)) {
    raw_urls.emplace_back(post.text.substr(span.begin, span.end - span.begin));
  }
  if (const json* v = lookup("urls")) {
    if (v->is_string()) {
      raw_urls.push_back(v->get<std::string>());
    } else if (v->is_array()) {
      for (const auto& item : *v) {
        if (item.is_string()) raw_urls.push_back(item.get<std::string>());
      }
    }
  }
  for (const std::string& raw : raw_urls) {
    std::string canon;
    try {
      canon = canonicalize_url(raw);
    } catch (const NotAUrl&) {
      continue;  // caller skips, does not abort
    }
    auto hit = lists.url_shortener_map.find(canon);
    if (hit != lists.url_shortener_map.end()) canon = hit->second;
    if (std::find(post.urls.begin(), post.urls.end(), canon) == post.urls.end()) {
      post.urls.push_back(canon);
    }
  }
  return post;
}

std::vector<Post> read_platform_file(const std::string& path, std::string_view platform,
                                     const AdapterConfig& adapter, const SourceLists& lists) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Post> posts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    posts.push_back(normalize(record, platform, adapter, lists));
  }
  return posts;
}

std::vector<Post> merge_streams(std::vector<std::vector<Post>> streams) {
  struct Cursor {
    std::size_t stream;
    std::size_t index;
  };
  auto key_less = [&](const Cursor& a, const Cursor& b) {
    const Post& pa = streams[a.stream][a.index];
    const Post& pb = streams[b.stream][b.index];
    if (pa.created_at != pb.created_at) return pa.created_at > pb.created_at;  // min-heap
    return pa.post_id > pb.post_id;
  };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(key_less)> heap(key_less);
  std::size_t total = 0;
  for (std::size_t s = 0; s < streams.size(); ++s) {
    total += streams[s].size();
    if (!streams[s].empty()) heap.push({s, 0});
  }
  std::vector<Post> out;
  out.reserve(total);
  while (!heap.empty()) {
    Cursor c = heap.top();
    heap.pop();
    out.push_back(std::move(streams[c.stream][c.index]));
    if (c.index + 1 < streams[c.stream].size()) heap.push({c.stream, c.index + 1});
  }
  return out;
}

std::unordered_set<std::string> load_domain_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    std::string entry = to_lower(std::string_view(line).substr(b, e - b + 1));
    if (entry.empty() || entry[0] == '#') continue;
    out.insert(entry);
  }
  return out;
}

std::unordered_map<std::string, std::string> load_entity_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": dictionary must be a JSON object");
  std::unordered_map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string() || it.value().get<std::string>().empty()) {
      throw ConfigError(path + ": alias '" + it.key() + "' must map to a nonempty string");
    }
    out[to_lower(it.key())] = to_lower(it.value().get<std::string>());
  }
  return out;
}

std::map<std::string, std::vector<std::string>> load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": lexicon must be a JSON object");
  std::map<std::string, std::vector<std::string>> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_array() || it.value().empty()) {
      throw ConfigError(path + ": technique '" + it.key() + "' needs a nonempty cue list");
    }
    std::vector<std::string> cues;
    for (const auto& cue : it.value()) {
      if (!cue.is_string()) throw ConfigError(path + ": cues must be strings");
      cues.push_back(cue.get<std::string>());
    }
    out[it.key()] = std::move(cues);
  }
  return out;
}

std::unordered_map<std::string, std::string> load_articles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::unordered_map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.contains("url") || !j.contains("text")) continue;
    std::string canon;
    try {
      canon = canonicalize_url(j["url"].get<std::string>());
    } catch (const NotAUrl&) {
      continue;
    }
    out[canon] = j["text"].get<std::string>();
  }
  return out;
}

}  // namespace disinfo::ingest

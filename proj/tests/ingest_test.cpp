#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disinfo/errors.hpp"
#include "disinfo/hashing.hpp"
#include "disinfo/ingest.hpp"

using namespace disinfo;
using namespace disinfo::ingest;
using nlohmann::json;

// --- URL canonicalization -------------------------------------------------------

TEST_CASE("canonicalize_url applies every rule once") {
  CHECK(canonicalize_url("HTTP://News.Site:80/A/?utm_medium=social#top") == "http://news.site/A");
  CHECK(canonicalize_url("https://a.b/path/") == "https://a.b/path");
  CHECK(canonicalize_url("https://Example.com/a?utm_source=x") == "https://example.com/a");
}

TEST_CASE("canonicalize_url keeps meaningful parts") {
  CHECK(canonicalize_url("https://a.b:8443/x?q=1&utm_source=t") == "https://a.b:8443/x?q=1");
  CHECK(canonicalize_url("https://a.b:443/x") == "https://a.b/x");
  CHECK(canonicalize_url("https://a.b/") == "https://a.b/");
  CHECK(canonicalize_url("https://a.b") == "https://a.b/");
}

TEST_CASE("canonicalize_url rejects non-urls") {
  CHECK_THROWS_AS(canonicalize_url("not a url"), NotAUrl);
  CHECK_THROWS_AS(canonicalize_url("ftp://a.b/x"), NotAUrl);
  CHECK_THROWS_AS(canonicalize_url("https://"), NotAUrl);
  CHECK_THROWS_AS(canonicalize_url(""), NotAUrl);
}

TEST_CASE("canonicalize_url is idempotent over fuzzed urls") {
  SplitMix64 rng(0xf00d);
  const std::vector<std::string> schemes = {"http", "HTTP", "https", "HtTpS"};
  const std::vector<std::string> hosts = {"Example.com", "a.b.C.co.uk", "NEWS.site",
                                          "x-y.example", "sub.Domain.TEST"};
  const std::vector<std::string> ports = {"", ":80", ":443", ":8080", ":8443"};
  const std::vector<std::string> paths = {"",       "/",        "/a",      "/a/",
                                          "/A/B/C", "/a%2fb",   "/x//y/",  "/%e2%82%ac",
                                          "/a.b",   "/a/b/c/d/"};
  const std::vector<std::string> queries = {"",
                                            "?utm_source=x",
                                            "?q=1",
                                            "?utm_source=x&q=1",
                                            "?a=2&utm_medium=m&b=3",
                                            "?fbclid=zzz",
                                            "?s=09",
                                            "?q=%2f&utm_campaign=c"};
  const std::vector<std::string> fragments = {"", "#top", "#a/b?c"};

  auto pick = [&rng](const std::vector<std::string>& v) {
    return v[static_cast<std::size_t>(rng.next() % v.size())];
  };

  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string raw =
        pick(schemes) + "://" + pick(hosts) + pick(ports) + pick(paths) + pick(queries) +
        pick(fragments);
    const std::string once = canonicalize_url(raw);
    CHECK(canonicalize_url(once) == once);
    ++checked;
  }
  CHECK(checked == 1000);
}

// --- registrable domains ---------------------------------------------------------

TEST_CASE("registrable_domain basics") {
  CHECK(registrable_domain("https://sub.example.com/x") == "example.com");
  CHECK(registrable_domain("https://192.168.0.1/x") == "192.168.0.1");
}

TEST_CASE("registrable_domain_of_host 50-case hand-traced fixture") {
  // expected answers traced by hand against the bundled snapshot rules
  const std::vector<std::pair<std::string, std::string>> cases = {
      // exact single-label suffixes
      {"sub.example.com", "example.com"},
      {"example.com", "example.com"},
      {"com", "com"},
      {"a.b.example.com", "example.com"},
      {"example.org", "example.org"},
      {"x.example.net", "example.net"},
      // multi-level country registries
      {"example.co.uk", "example.co.uk"},
      {"www.example.co.uk", "example.co.uk"},
      {"deep.www.example.co.uk", "example.co.uk"},
      {"co.uk", "co.uk"},
      {"uk", "uk"},
      {"example.uk", "example.uk"},
      {"gov.uk", "gov.uk"},
      {"www.gov.uk", "www.gov.uk"},
      {"service.gov.uk", "service.gov.uk"},
      {"x.co.jp", "x.co.jp"},
      {"www.x.co.jp", "x.co.jp"},
      {"site.example.com.br", "example.com.br"},
      {"example.com.br", "example.com.br"},
      {"com.br", "com.br"},
      {"br", "br"},
      {"example.br", "example.br"},
      {"x.org.au", "x.org.au"},
      {"a.x.govt.nz", "x.govt.nz"},
      {"y.firm.in", "y.firm.in"},
      // hosting providers acting as registries
      {"foo.blogspot.com", "foo.blogspot.com"},
      {"blogspot.com", "blogspot.com"},
      {"a.foo.blogspot.com", "foo.blogspot.com"},
      {"x.github.io", "x.github.io"},
      {"github.io", "github.io"},
      {"a.b.github.io", "b.github.io"},
      {"a.herokuapp.com", "a.herokuapp.com"},
      {"x.s3.amazonaws.com", "x.s3.amazonaws.com"},
      {"s3.amazonaws.com", "s3.amazonaws.com"},
      {"y.x.s3.amazonaws.com", "x.s3.amazonaws.com"},
      {"amazonaws.com", "amazonaws.com"},
      {"foo.blogspot.co.uk", "foo.blogspot.co.uk"},
      {"blogspot.co.uk", "blogspot.co.uk"},
      {"www.foo.blogspot.co.uk", "foo.blogspot.co.uk"},
      // wildcard and exception rules
      {"foo.bar.ck", "foo.bar.ck"},
      {"bar.ck", "bar.ck"},
      {"a.foo.bar.ck", "foo.bar.ck"},
      {"www.ck", "www.ck"},
      {"sub.www.ck", "www.ck"},
      // reserved test TLDs
      {"example.test", "example.test"},
      {"sub.example.test", "example.test"},
      {"news.example", "news.example"},
      {"a.news.example", "news.example"},
      // unknown TLD falls back to the implicit "*" rule
      {"example.zz", "example.zz"},
      {"a.b.zz", "b.zz"},
  };
  CHECK(cases.size() == 50);
  for (const auto& [host, expected] : cases) {
    CAPTURE(host);
    CHECK(registrable_domain_of_host(host) == expected);
  }
}

// --- adapters and normalization ---------------------------------------------------

namespace {

AdapterConfig fixture_adapter() {
  return AdapterConfig::from_json(json{{"post_id", "meta.id"},
                                       {"author_id", "meta.who"},
                                       {"text", "content"},
                                       {"created_at", "at"},
                                       {"author_created_at", "prof.made"},
                                       {"author_followers", "prof.fans"},
                                       {"author_following", "prof.follows"},
                                       {"likes", "counts.l"},
                                       {"shares", "counts.s"},
                                       {"replies", "counts.r"},
                                       {"reply_to", "meta.parent"}});
}

json fixture_record(int i) {
  return json{{"meta", {{"id", "p" + std::to_string(i)}, {"who", "u" + std::to_string(i % 7)}}},
              {"content", "post number " + std::to_string(i)},
              {"at", 1700000000 + i * 60},
              {"prof", {{"made", 1600000000 + i}, {"fans", 10 * i}, {"follows", 3 * i}}},
              {"counts", {{"l", i}, {"s", i + 1}, {"r", i + 2}}}};
}

}  // namespace

TEST_CASE("normalize maps every declared field losslessly over a 20-record fixture") {
  const AdapterConfig adapter = fixture_adapter();
  std::set<std::string> ids;
  for (int i = 0; i < 20; ++i) {
    const json r = fixture_record(i);
    const Post p = normalize(r, "fixtureland", adapter);
    CHECK(p.post_id == r["meta"]["id"].get<std::string>());
    CHECK(p.author_id == r["meta"]["who"].get<std::string>());
    CHECK(p.text == r["content"].get<std::string>());
    CHECK(p.created_at == r["at"].get<std::int64_t>());
    CHECK(p.author_created_at == r["prof"]["made"].get<std::int64_t>());
    CHECK(p.author_followers == r["prof"]["fans"].get<std::int64_t>());
    CHECK(p.author_following == r["prof"]["follows"].get<std::int64_t>());
    CHECK(p.engagement.likes == r["counts"]["l"].get<std::int64_t>());
    CHECK(p.engagement.shares == r["counts"]["s"].get<std::int64_t>());
    CHECK(p.engagement.replies == r["counts"]["r"].get<std::int64_t>());
    CHECK(p.platform == "fixtureland");
    CHECK_FALSE(p.reply_to.has_value());
    ids.insert(p.post_id);
  }
  CHECK(ids.size() == 20);
}

TEST_CASE("normalize extracts and canonicalizes urls from text") {
  const AdapterConfig adapter = fixture_adapter();
  json r = fixture_record(1);
  r["content"] = "see https://Example.com/a?utm_source=x";
  const Post p = normalize(r, "x", adapter);
  CHECK(p.urls == std::vector<std::string>{"https://example.com/a"});
}

TEST_CASE("normalize throws MissingField for absent required fields") {
  const AdapterConfig adapter = fixture_adapter();
  json r = fixture_record(1);
  r["meta"].erase("who");
  CHECK_THROWS_AS(normalize(r, "x", adapter), MissingField);
  try {
    normalize(r, "x", adapter);
  } catch (const MissingField& e) {
    CHECK(std::string(e.what()).find("author_id") != std::string::npos);
  }
}

TEST_CASE("normalize throws BadTimestamp on garbage times") {
  const AdapterConfig adapter = fixture_adapter();
  json r = fixture_record(1);
  r["at"] = "not a time";
  CHECK_THROWS_AS(normalize(r, "x", adapter), BadTimestamp);
  r["at"] = -5;
  CHECK_THROWS_AS(normalize(r, "x", adapter), BadTimestamp);
}

TEST_CASE("normalize accepts iso8601 timestamps") {
  const AdapterConfig adapter = fixture_adapter();
  json r = fixture_record(1);
  r["at"] = "2025-08-12T12:00:51Z";
  const Post p = normalize(r, "x", adapter);
  CHECK(p.created_at == 1755000051);
}

TEST_CASE("author_created_at is clamped to created_at") {
  const AdapterConfig adapter = fixture_adapter();
  json r = fixture_record(1);
  r["prof"]["made"] = r["at"].get<std::int64_t>() + 999;  // "younger than the post"
  const Post p = normalize(r, "x", adapter);
  CHECK(p.author_created_at == p.created_at);
}

TEST_CASE("adapter requires the four mandatory unified fields") {
  CHECK_THROWS_AS(AdapterConfig::from_json(json{{"post_id", "id"}}), MissingField);
}

// --- merging -----------------------------------------------------------------------

namespace {

Post mk(const std::string& id, std::int64_t t) {
  Post p;
  p.post_id = id;
  p.author_id = "a";
  p.platform = "x";
  p.text = "t";
  p.created_at = t;
  return p;
}

}  // namespace

TEST_CASE("merge_streams performs a stable k-way merge on (created_at, post_id)") {
  std::vector<std::vector<Post>> streams;
  streams.push_back({mk("a1", 10), mk("a2", 30), mk("a3", 30)});
  streams.push_back({mk("b1", 5), mk("b2", 30)});
  streams.push_back({mk("c1", 7)});
  const auto merged = merge_streams(std::move(streams));
  std::vector<std::string> order;
  for (const auto& p : merged) order.push_back(p.post_id);
  CHECK(order == std::vector<std::string>{"b1", "c1", "a1", "a2", "a3", "b2"});
  CHECK(std::is_sorted(merged.begin(), merged.end(), [](const Post& x, const Post& y) {
    return std::pair(x.created_at, x.post_id) < std::pair(y.created_at, y.post_id);
  }));
}

TEST_CASE("merge_streams of nothing is empty") {
  CHECK(merge_streams({}).empty());
}

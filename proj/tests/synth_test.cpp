#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disinfo/coordination.hpp"
#include "disinfo/errors.hpp"
#include "disinfo/synth.hpp"

using namespace disinfo;
using namespace disinfo::synth;

// --- samplers ----------------------------------------------------------------------

TEST_CASE("uniform01 stays in range with the right mean") {
  SplitMix64 rng(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(rng);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("exponential draws have mean one over rate") {
  SplitMix64 rng(2);
  for (double rate : {0.5, 2.0, 10.0}) {
    double sum = 0.0;
    for (int i = 0; i < 50000; ++i) {
      const double x = sample_exponential(rng, rate);
      REQUIRE(x >= 0.0);
      sum += x;
    }
    CHECK(sum / 50000 == doctest::Approx(1.0 / rate).epsilon(0.03));
  }
}

TEST_CASE("normal draws have unit variance and zero mean") {
  SplitMix64 rng(3);
  double sum = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = sample_normal(rng);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(0.0).epsilon(1.0));
  CHECK(std::abs(mean) < 0.02);
  CHECK(sq / n - mean * mean == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("truncated normal draws respect the bound") {
  SplitMix64 rng(4);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = sample_truncated_normal(rng, 120.0, 360.0);
    REQUIRE(x >= -360.0);
    REQUIRE(x <= 360.0);
    sum += x;
  }
  CHECK(std::abs(sum / 20000) < 5.0);  // symmetric around zero
}

TEST_CASE("flat-amplitude poisson inter-arrivals pass a ks test against exponential") {
  SplitMix64 rng(5);
  const double rate = 10.0;
  const auto times = diurnal_poisson_times(rng, rate, 0.0, 2000.0);
  REQUIRE(times.size() > 10000);
  CHECK(std::is_sorted(times.begin(), times.end()));
  CHECK(times.front() >= 0.0);
  CHECK(times.back() < 2000.0);

  std::vector<double> gaps;
  gaps.push_back(times.front());
  for (std::size_t i = 1; i < times.size(); ++i) gaps.push_back(times[i] - times[i - 1]);
  std::sort(gaps.begin(), gaps.end());

  const double n = static_cast<double>(gaps.size());
  double d = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const double f = 1.0 - std::exp(-rate * gaps[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  // alpha = 0.01 asymptotic critical value
  CHECK(d < 1.62762 / std::sqrt(n));
}

TEST_CASE("positive amplitude concentrates events in the sine peak half-day") {
  SplitMix64 rng(6);
  const auto times = diurnal_poisson_times(rng, 5.0, 0.5, 24.0 * 200);
  std::int64_t first_half = 0, second_half = 0;
  for (double t : times) {
    const double tod = std::fmod(t, 24.0);
    (tod < 12.0 ? first_half : second_half)++;
  }
  // expected ratio (12 + 0.5*24/pi) / (12 - 0.5*24/pi) ~ 1.93
  CHECK(static_cast<double>(first_half) > 1.5 * static_cast<double>(second_half));
}

// --- corpus ------------------------------------------------------------------------

namespace {

ScenarioConfig small_scenario(std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.n_organic_accounts = 20;
  cfg.n_campaigns = 2;
  cfg.accounts_per_campaign = 3;
  cfg.n_platforms = 3;
  cfg.duration_hours = 24.0;
  cfg.organic_rate_per_hour = 2.0;
  cfg.seed = seed;
  return cfg;
}

bool same_posts(const Corpus& a, const Corpus& b) {
  if (a.posts.size() != b.posts.size()) return false;
  for (std::size_t i = 0; i < a.posts.size(); ++i) {
    const auto& x = a.posts[i];
    const auto& y = b.posts[i];
    if (x.post_id != y.post_id || x.account_id != y.account_id || x.platform != y.platform ||
        x.text != y.text || x.created_at != y.created_at ||
        x.author_created_at != y.author_created_at || x.followers != y.followers ||
        x.likes != y.likes)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("the corpus is a pure function of the seed") {
  const auto a = generate_corpus(small_scenario(9));
  const auto b = generate_corpus(small_scenario(9));
  const auto c = generate_corpus(small_scenario(10));
  CHECK(same_posts(a, b));
  CHECK(a.truth.post_campaign == b.truth.post_campaign);
  CHECK_FALSE(same_posts(a, c));
}

TEST_CASE("a zero seed is refused") {
  CHECK_THROWS_AS(generate_corpus(small_scenario(0)), BadConfig);
}

TEST_CASE("posts come out sorted by time then id") {
  const auto corpus = generate_corpus(small_scenario(11));
  REQUIRE(corpus.posts.size() > 100);
  for (std::size_t i = 1; i < corpus.posts.size(); ++i) {
    const auto& prev = corpus.posts[i - 1];
    const auto& cur = corpus.posts[i];
    CHECK(std::pair(prev.created_at, prev.post_id) < std::pair(cur.created_at, cur.post_id));
  }
}

TEST_CASE("ground truth is internally consistent") {
  const auto cfg = small_scenario(12);
  const auto corpus = generate_corpus(cfg);

  std::map<std::string, const GeneratedPost*> by_id;
  for (const auto& p : corpus.posts) by_id[p.post_id] = &p;

  REQUIRE(corpus.truth.campaigns.size() == 2);
  std::set<std::string> campaign_accounts;
  for (const auto& c : corpus.truth.campaigns) {
    CHECK(c.account_ids.size() == 3);
    CHECK(std::is_sorted(c.account_ids.begin(), c.account_ids.end()));
    CHECK(c.hashtags.size() == 2);
    CHECK_FALSE(c.domain.empty());
    CHECK_FALSE(c.template_text.empty());
    for (const auto& acc : c.account_ids) {
      campaign_accounts.insert(acc);
      REQUIRE(corpus.truth.account_campaign.count(acc));
      CHECK(corpus.truth.account_campaign.at(acc) == c.campaign_id);
    }
  }
  CHECK(corpus.truth.account_campaign.size() == campaign_accounts.size());

  // every labeled post exists, belongs to a campaign account, and counts match
  const auto shifts = cfg.effective_shifts();
  const std::size_t expected =
      static_cast<std::size_t>(cfg.n_campaigns * cfg.accounts_per_campaign *
                               static_cast<int>(shifts.size()) * cfg.posts_per_shift);
  CHECK(corpus.truth.post_campaign.size() == expected);
  for (const auto& [pid, camp] : corpus.truth.post_campaign) {
    REQUIRE(by_id.count(pid));
    const auto* p = by_id.at(pid);
    REQUIRE(corpus.truth.account_campaign.count(p->account_id));
    CHECK(corpus.truth.account_campaign.at(p->account_id) == camp);
  }

  // campaign posts land inside a burst: within 3 sigma of some shift start
  for (const auto& [pid, camp] : corpus.truth.post_campaign) {
    const auto* p = by_id.at(pid);
    bool near_shift = false;
    for (double h : shifts) {
      const std::int64_t shift_at = cfg.t0 + static_cast<std::int64_t>(h * 3600.0);
      if (std::llabs(p->created_at - shift_at) <=
          static_cast<std::int64_t>(3.0 * cfg.sync_jitter_seconds))
        near_shift = true;
    }
    CHECK(near_shift);
  }

  // all requested platforms appear
  std::set<std::string> platforms;
  for (const auto& p : corpus.posts) platforms.insert(p.platform);
  CHECK(platforms.size() == 3);
}

TEST_CASE("no campaigns means no labels") {
  auto cfg = small_scenario(13);
  cfg.n_campaigns = 0;
  const auto corpus = generate_corpus(cfg);
  CHECK(corpus.truth.post_campaign.empty());
  CHECK(corpus.truth.account_campaign.empty());
  CHECK(corpus.truth.campaigns.empty());
  CHECK_FALSE(corpus.posts.empty());
}

TEST_CASE("campaign posts are near duplicates at the default edit rate") {
  const auto cfg = small_scenario(14);
  const auto corpus = generate_corpus(cfg);
  std::map<std::string, std::vector<std::string>> texts_by_campaign;
  std::map<std::string, const GeneratedPost*> by_id;
  for (const auto& p : corpus.posts) by_id[p.post_id] = &p;
  for (const auto& [pid, camp] : corpus.truth.post_campaign)
    texts_by_campaign[camp].push_back(by_id.at(pid)->text);

  for (const auto& [camp, texts] : texts_by_campaign) {
    REQUIRE(texts.size() >= 2);
    const std::size_t cap = std::min<std::size_t>(texts.size(), 30);
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t a = 0; a < cap; ++a) {
      const auto sa = coordination::shingle(texts[a], 5);
      for (std::size_t b = a + 1; b < cap; ++b) {
        const auto sb = coordination::shingle(texts[b], 5);
        std::size_t inter = 0;
        for (const auto& s : sa)
          if (sb.count(s)) ++inter;
        sum += static_cast<double>(inter) /
               static_cast<double>(sa.size() + sb.size() - inter);
        ++pairs;
      }
    }
    CAPTURE(camp);
    CHECK(sum / pairs >= 0.7);
  }
}

TEST_CASE("scenario json round-trips and rejects unknown keys") {
  const auto cfg = small_scenario(15);
  const auto j = cfg.to_json();
  const auto back = ScenarioConfig::from_json(j);
  CHECK(back.to_json().dump() == j.dump());
  auto bad = j;
  bad["not_a_knob"] = 1;
  CHECK_THROWS_AS(ScenarioConfig::from_json(bad), BadConfig);
}

TEST_CASE("bad scenario knobs are refused") {
  auto bad = small_scenario(16);
  bad.n_platforms = 0;
  CHECK_THROWS_AS(bad.validate(), BadConfig);
  bad = small_scenario(16);
  bad.edit_rate = 1.5;
  CHECK_THROWS_AS(bad.validate(), BadConfig);
  bad = small_scenario(16);
  bad.shift_starts_hours = {30.0};  // outside 24h duration
  CHECK_THROWS_AS(bad.validate(), BadConfig);
  bad = small_scenario(16);
  bad.duration_hours = -1.0;
  CHECK_THROWS_AS(bad.validate(), BadConfig);
}

TEST_CASE("generated trees are byte-identical across runs of one seed") {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "disinfo_synth_test";
  fs::remove_all(base);
  const auto cfg = small_scenario(17);
  const auto r1 = generate(cfg, (base / "one").string());
  const auto r2 = generate(cfg, (base / "two").string());

  CHECK(r1.total_posts == r2.total_posts);
  CHECK(r1.campaign_posts == r2.campaign_posts);
  CHECK(r1.platform_paths.size() == 3);

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (std::size_t i = 0; i < r1.platform_paths.size(); ++i)
    CHECK(slurp(r1.platform_paths[i]) == slurp(r2.platform_paths[i]));
  CHECK(slurp(r1.ground_truth_path) == slurp(r2.ground_truth_path));

  // the scenario snapshot reproduces the corpus
  const auto snap = ScenarioConfig::from_json(
      nlohmann::json::parse(slurp(r1.scenario_config_path)));
  CHECK(snap.to_json().dump() == cfg.to_json().dump());

  for (const auto& p : r1.adapter_paths) CHECK(fs::exists(p));
  CHECK(fs::exists(r1.pipeline_config_path));
  fs::remove_all(base);
}

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "disinfo/hashing.hpp"

namespace disinfo::synth {

// Labeled-corpus generator: organic accounts post diurnal-Poisson noise around
// shared topics; campaign accounts post template-derived near-duplicates in
// synchronized bursts at shift starts, sharing planted hashtags and
// low-credibility domains across platforms. Everything is a pure function of
// the seed.
struct ScenarioConfig {
  int n_organic_accounts = 200;
  int n_campaigns = 10;
  int accounts_per_campaign = 8;
  int n_platforms = 3;
  double duration_hours = 72.0;
  double organic_rate_per_hour = 3.5;  // per-account Poisson base rate
  double diurnal_amplitude = 0.6;      // 0 = flat exponential inter-arrivals
  std::vector<double> shift_starts_hours;  // empty = every 8h starting at hour 2
  int posts_per_shift = 2;             // per campaign account per shift
  double edit_rate = 0.1;              // chance a campaign post edits one template word
  int template_words = 30;
  double sync_jitter_seconds = 120.0;  // burst spread; every post lands within 3 sigma
  std::uint64_t seed = 0;
  std::int64_t t0 = 1755000000;        // corpus epoch anchor

  void validate() const;  // throws BadConfig
  static ScenarioConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  std::vector<double> effective_shifts() const;
};

struct CampaignTruth {
  std::string campaign_id;  // "k0", "k1", ...
  std::vector<std::string> account_ids;  // sorted
  std::vector<std::string> hashtags;     // without '#'
  std::string domain;
  std::string template_text;
};

struct GroundTruth {
  std::map<std::string, std::string> post_campaign;     // campaign posts only
  std::map<std::string, std::string> account_campaign;  // campaign accounts only
  std::vector<CampaignTruth> campaigns;
};

struct GeneratedPost {
  std::string post_id;
  std::string account_id;
  std::string platform;
  std::string text;
  std::int64_t created_at = 0;
  std::int64_t author_created_at = 0;
  std::int64_t followers = 0;
  std::int64_t following = 0;
  std::int64_t likes = 0;
  std::int64_t shares = 0;
  std::int64_t replies = 0;
};

struct Corpus {
  std::vector<GeneratedPost> posts;  // sorted by (created_at, post_id)
  GroundTruth truth;
};

Corpus generate_corpus(const ScenarioConfig& cfg);

struct GenerateResult {
  std::vector<std::string> platform_names;
  std::vector<std::string> platform_paths;
  std::vector<std::string> adapter_paths;
  std::string ground_truth_path;
  std::string pipeline_config_path;
  std::string scenario_config_path;
  int total_posts = 0;
  int campaign_posts = 0;
};

// Writes per-platform record files (three rotating schema styles), adapter
// mappings, reference-list copies, a ground-truth file and a ready-to-run
// pipeline config under out_dir.
GenerateResult generate(const ScenarioConfig& cfg, const std::string& out_dir);

// --- samplers (exposed for statistical tests) -------------------------------

double uniform01(SplitMix64& rng);                       // [0, 1)
double sample_exponential(SplitMix64& rng, double rate); // inverse CDF
double sample_normal(SplitMix64& rng);                   // Box-Muller, one value
// Rejection inside [-bound, bound], sigma-scaled.
double sample_truncated_normal(SplitMix64& rng, double sigma, double bound);
// Event times (hours from 0) of a Poisson process with rate
// base * (1 + amplitude * sin(2*pi*t/24)), by thinning.
std::vector<double> diurnal_poisson_times(SplitMix64& rng, double base_rate_per_hour,
                                          double amplitude, double duration_hours);

}  // namespace disinfo::synth

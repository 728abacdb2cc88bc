#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "disinfo/classify.hpp"
#include "disinfo/coordination.hpp"
#include "disinfo/credibility.hpp"

namespace disinfo::config {

struct PlatformInput {
  std::string name;     // platform tag carried on every post
  std::string path;     // newline-delimited records
  std::string adapter;  // field-mapping JSON; empty means identity mapping
};

// Every knob has a shipped default; a config file overrides defaults and CLI
// flags override the file. The fingerprint covers everything that can change
// results; out_dir and threads are excluded on purpose (thread count must not
// change any output byte).
struct PipelineConfig {
  std::vector<PlatformInput> inputs;

  // reference lists; empty path = bundled starter data
  std::string low_credibility_path;
  std::string entity_dictionary_path;
  std::string lexicon_path;
  std::string shortener_map_path;
  std::string articles_path;

  std::string out_dir = "out";
  int threads = 0;  // 0 = all cores; 1 = serial
  std::uint64_t seed = 1;

  // narratives
  std::int64_t window_len = 3600;
  std::int64_t stride = 3600;
  double theta_edge = 0.1;
  int c_min = 3;
  double tau_link = 0.3;
  double z_event = 3.0;
  int k_trailing = 6;

  // coordination
  int shingle_k = 5;
  int minhash_m = 128;
  int lsh_bands = 32;
  int lsh_rows = 4;
  double j_dup = 0.7;
  std::int64_t delta_t_sync = 60;
  int n_acc = 2;  // duplicate clusters narrower than this many accounts don't count
  coordination::CoordinationWeights coordination_weights;

  // credibility
  credibility::AccountFlagParams account_params;
  credibility::DeceptionWeights deception_weights;

  // agenda
  double lambda = 0.5;

  // classify
  classify::FusionWeights fusion_weights;

  // attribution
  double cosine_threshold = 0.8;

  void apply_file(const std::string& path);      // throws ConfigError / IoError
  void apply_json(const nlohmann::json& j);      // unknown keys are errors
  nlohmann::json effective_json() const;         // everything fingerprint-relevant
  std::string fingerprint() const;               // fnv1a64 hex of effective_json dump
  void validate() const;                         // throws ConfigError
};

}  // namespace disinfo::config

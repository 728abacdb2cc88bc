#include "disinfo/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "disinfo/errors.hpp"
#include "disinfo/hashing.hpp"

namespace disinfo::config {

using nlohmann::json;

namespace {

template <typename T>
void take(const json& obj, const char* key, T& out, std::vector<std::string>& seen) {
  seen.push_back(key);
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& obj, const std::vector<std::string>& seen,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const auto& k : seen)
      if (k == it.key()) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown config key '" + it.key() + "' in " + where);
  }
}

}  // namespace

void PipelineConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  apply_json(j);
}

void PipelineConfig::apply_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  std::vector<std::string> seen;

  seen.push_back("inputs");
  if (const auto it = j.find("inputs"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("inputs must be an array");
    inputs.clear();
    for (const auto& entry : *it) {
      if (!entry.is_object()) throw ConfigError("each input must be an object");
      PlatformInput in;
      std::vector<std::string> eseen;
      take(entry, "name", in.name, eseen);
      take(entry, "path", in.path, eseen);
      take(entry, "adapter", in.adapter, eseen);
      reject_unknown(entry, eseen, "inputs[]");
      if (in.name.empty() || in.path.empty())
        throw ConfigError("input entries need name and path");
      inputs.push_back(std::move(in));
    }
  }

  seen.push_back("lists");
  if (const auto it = j.find("lists"); it != j.end()) {
    if (!it->is_object()) throw ConfigError("lists must be an object");
    std::vector<std::string> lseen;
    take(*it, "low_credibility", low_credibility_path, lseen);
    take(*it, "entities", entity_dictionary_path, lseen);
    take(*it, "lexicon", lexicon_path, lseen);
    take(*it, "shorteners", shortener_map_path, lseen);
    take(*it, "articles", articles_path, lseen);
    reject_unknown(*it, lseen, "lists");
  }

  take(j, "out_dir", out_dir, seen);
  take(j, "threads", threads, seen);
  take(j, "seed", seed, seen);

  seen.push_back("narrative");
  if (const auto it = j.find("narrative"); it != j.end()) {
    std::vector<std::string> s;
    take(*it, "window_len", window_len, s);
    take(*it, "stride", stride, s);
    take(*it, "theta_edge", theta_edge, s);
    take(*it, "c_min", c_min, s);
    take(*it, "tau_link", tau_link, s);
    take(*it, "z_event", z_event, s);
    take(*it, "k_trailing", k_trailing, s);
    reject_unknown(*it, s, "narrative");
  }

  seen.push_back("coordination");
  if (const auto it = j.find("coordination"); it != j.end()) {
    std::vector<std::string> s;
    take(*it, "shingle_k", shingle_k, s);
    take(*it, "minhash_m", minhash_m, s);
    take(*it, "lsh_bands", lsh_bands, s);
    take(*it, "lsh_rows", lsh_rows, s);
    take(*it, "j_dup", j_dup, s);
    take(*it, "delta_t_sync", delta_t_sync, s);
    take(*it, "n_acc", n_acc, s);
    take(*it, "w_dup", coordination_weights.w_dup, s);
    take(*it, "w_sync", coordination_weights.w_sync, s);
    take(*it, "w_span", coordination_weights.w_span, s);
    take(*it, "bias", coordination_weights.bias, s);
    reject_unknown(*it, s, "coordination");
  }

  seen.push_back("credibility");
  if (const auto it = j.find("credibility"); it != j.end()) {
    std::vector<std::string> s;
    take(*it, "a_min_days", account_params.a_min_days, s);
    take(*it, "r_skew", account_params.r_skew, s);
    take(*it, "p_posts_per_hour", account_params.p_posts_per_hour, s);
    take(*it, "w_domain", deception_weights.w_domain, s);
    take(*it, "w_account", deception_weights.w_account, s);
    reject_unknown(*it, s, "credibility");
  }

  seen.push_back("agenda");
  if (const auto it = j.find("agenda"); it != j.end()) {
    std::vector<std::string> s;
    take(*it, "lambda", lambda, s);
    reject_unknown(*it, s, "agenda");
  }

  seen.push_back("classify");
  if (const auto it = j.find("classify"); it != j.end()) {
    std::vector<std::string> s;
    take(*it, "w_deception", fusion_weights.w_deception, s);
    take(*it, "w_coordination", fusion_weights.w_coordination, s);
    take(*it, "w_agenda", fusion_weights.w_agenda, s);
    take(*it, "bias", fusion_weights.bias, s);
    reject_unknown(*it, s, "classify");
  }

  seen.push_back("attribution");
  if (const auto it = j.find("attribution"); it != j.end()) {
    std::vector<std::string> s;
    take(*it, "cosine_threshold", cosine_threshold, s);
    reject_unknown(*it, s, "attribution");
  }

  reject_unknown(j, seen, "config root");
}

json PipelineConfig::effective_json() const {
  json j;
  json in_arr = json::array();
  for (const auto& in : inputs)
    in_arr.push_back({{"name", in.name}, {"path", in.path}, {"adapter", in.adapter}});
  j["inputs"] = std::move(in_arr);
  j["lists"] = {{"low_credibility", low_credibility_path},
                {"entities", entity_dictionary_path},
                {"lexicon", lexicon_path},
                {"shorteners", shortener_map_path},
                {"articles", articles_path}};
  j["seed"] = seed;
  j["narrative"] = {{"window_len", window_len}, {"stride", stride},
                    {"theta_edge", theta_edge}, {"c_min", c_min},
                    {"tau_link", tau_link},     {"z_event", z_event},
                    {"k_trailing", k_trailing}};
  j["coordination"] = {{"shingle_k", shingle_k},
                       {"minhash_m", minhash_m},
                       {"lsh_bands", lsh_bands},
                       {"lsh_rows", lsh_rows},
                       {"j_dup", j_dup},
                       {"delta_t_sync", delta_t_sync},
                       {"n_acc", n_acc},
                       {"w_dup", coordination_weights.w_dup},
                       {"w_sync", coordination_weights.w_sync},
                       {"w_span", coordination_weights.w_span},
                       {"bias", coordination_weights.bias}};
  j["credibility"] = {{"a_min_days", account_params.a_min_days},
                      {"r_skew", account_params.r_skew},
                      {"p_posts_per_hour", account_params.p_posts_per_hour},
                      {"w_domain", deception_weights.w_domain},
                      {"w_account", deception_weights.w_account}};
  j["agenda"] = {{"lambda", lambda}};
  j["classify"] = {{"w_deception", fusion_weights.w_deception},
                   {"w_coordination", fusion_weights.w_coordination},
                   {"w_agenda", fusion_weights.w_agenda},
                   {"bias", fusion_weights.bias}};
  j["attribution"] = {{"cosine_threshold", cosine_threshold}};
  return j;
}

std::string PipelineConfig::fingerprint() const {
  return to_hex(fnv1a64(effective_json().dump()));
}

void PipelineConfig::validate() const {
  if (window_len <= 0 || stride <= 0) throw ConfigError("window_len and stride must be positive");
  if (stride > window_len) throw ConfigError("stride must not exceed window_len");
  if (theta_edge < 0.0 || theta_edge > 1.0) throw ConfigError("theta_edge must be in [0,1]");
  if (c_min < 1) throw ConfigError("c_min must be >= 1");
  if (tau_link < 0.0 || tau_link > 1.0) throw ConfigError("tau_link must be in [0,1]");
  if (k_trailing < 2) throw ConfigError("k_trailing must be >= 2");
  if (shingle_k < 1) throw ConfigError("shingle_k must be >= 1");
  if (minhash_m < 1) throw ConfigError("minhash_m must be >= 1");
  if (lsh_bands < 1 || lsh_rows < 1 || lsh_bands * lsh_rows != minhash_m)
    throw ConfigError("lsh_bands * lsh_rows must equal minhash_m");
  if (j_dup <= 0.0 || j_dup > 1.0) throw ConfigError("j_dup must be in (0,1]");
  if (delta_t_sync < 0) throw ConfigError("delta_t_sync must be non-negative");
  if (n_acc < 1) throw ConfigError("n_acc must be >= 1");
  if (account_params.a_min_days < 0) throw ConfigError("a_min_days must be non-negative");
  if (account_params.r_skew < 0.0) throw ConfigError("r_skew must be non-negative");
  if (account_params.p_posts_per_hour <= 0.0)
    throw ConfigError("p_posts_per_hour must be positive");
  if (deception_weights.w_domain < 0.0 || deception_weights.w_account < 0.0 ||
      deception_weights.w_domain + deception_weights.w_account <= 0.0)
    throw ConfigError("deception weights must be non-negative and sum positive");
  if (lambda < 0.0) throw ConfigError("lambda must be non-negative");
  if (cosine_threshold < -1.0 || cosine_threshold > 1.0)
    throw ConfigError("cosine_threshold must be in [-1,1]");
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

}  // namespace disinfo::config

#include "disinfo/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "disinfo/agenda.hpp"
#include "disinfo/attribution.hpp"
#include "disinfo/classify.hpp"
#include "disinfo/coordination.hpp"
#include "disinfo/credibility.hpp"
#include "disinfo/errors.hpp"
#include "disinfo/impact.hpp"
#include "disinfo/narrative.hpp"
#include "disinfo/parallel.hpp"
#include "disinfo/reference_data.hpp"
#include "disinfo/text.hpp"

namespace disinfo::pipeline {

using nlohmann::json;

StagePaths paths_for(const std::string& out_dir) {
  namespace fs = std::filesystem;
  StagePaths p;
  p.posts = (fs::path(out_dir) / "posts.ndjson").string();
  p.narratives = (fs::path(out_dir) / "narratives.json").string();
  p.report = (fs::path(out_dir) / "report.json").string();
  return p;
}

ingest::SourceLists load_lists(const config::PipelineConfig& cfg) {
  ingest::SourceLists lists;
  lists.low_credibility_domains = cfg.low_credibility_path.empty()
                                      ? reference::starter_low_credibility_domains()
                                      : ingest::load_domain_list(cfg.low_credibility_path);
  lists.entity_dictionary = cfg.entity_dictionary_path.empty()
                                ? reference::starter_entity_dictionary()
                                : ingest::load_entity_dictionary(cfg.entity_dictionary_path);
  lists.propaganda_lexicon = cfg.lexicon_path.empty()
                                 ? reference::starter_propaganda_lexicon()
                                 : ingest::load_lexicon(cfg.lexicon_path);
  if (!cfg.shortener_map_path.empty())
    lists.url_shortener_map = ingest::load_entity_dictionary(cfg.shortener_map_path);
  if (!cfg.articles_path.empty()) lists.articles = ingest::load_articles(cfg.articles_path);
  return lists;
}

// --- posts artifact -------------------------------------------------------------

namespace {

void ensure_parent_dir(const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path parent = fs::path(path).parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) throw IoError("cannot create " + parent.string() + ": " + ec.message());
}

json header_line(const char* artifact, const std::string& fingerprint) {
  return {{"type", "header"},
          {"artifact", artifact},
          {"schema_version", kSchemaVersion},
          {"config_fingerprint", fingerprint}};
}

void check_header(const json& j, const char* artifact, const std::string& path) {
  if (!j.is_object() || j.value("type", "") != "header" || j.value("artifact", "") != artifact)
    throw IoError(path + ": missing artifact header");
  if (j.value("schema_version", -1) != kSchemaVersion)
    throw IoError(path + ": unsupported schema_version");
}

}  // namespace

void write_posts_artifact(const std::string& path, const std::vector<ingest::Post>& posts,
                          const std::string& fingerprint) {
  ensure_parent_dir(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << header_line("posts", fingerprint).dump() << "\n";
  for (const auto& p : posts) {
    json line = {{"type", "post"},
                 {"post_id", p.post_id},
                 {"platform", p.platform},
                 {"author_id", p.author_id},
                 {"author_created_at", p.author_created_at},
                 {"author_followers", p.author_followers},
                 {"author_following", p.author_following},
                 {"text", p.text},
                 {"created_at", p.created_at},
                 {"urls", p.urls},
                 {"likes", p.engagement.likes},
                 {"shares", p.engagement.shares},
                 {"replies", p.engagement.replies}};
    if (p.reply_to) line["reply_to"] = *p.reply_to;
    out << line.dump() << "\n";
  }
  if (!out) throw IoError("short write to " + path);
}

PostsArtifact read_posts_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  PostsArtifact artifact;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!saw_header) {
      check_header(j, "posts", path);
      artifact.config_fingerprint = j.value("config_fingerprint", "");
      saw_header = true;
      continue;
    }
    try {
      ingest::Post p;
      p.post_id = j.at("post_id").get<std::string>();
      p.platform = j.at("platform").get<std::string>();
      p.author_id = j.at("author_id").get<std::string>();
      p.author_created_at = j.value("author_created_at", std::int64_t{0});
      p.author_followers = j.value("author_followers", std::int64_t{0});
      p.author_following = j.value("author_following", std::int64_t{0});
      p.text = j.at("text").get<std::string>();
      p.created_at = j.at("created_at").get<std::int64_t>();
      if (const auto it = j.find("urls"); it != j.end())
        p.urls = it->get<std::vector<std::string>>();
      p.engagement.likes = j.value("likes", std::int64_t{0});
      p.engagement.shares = j.value("shares", std::int64_t{0});
      p.engagement.replies = j.value("replies", std::int64_t{0});
      if (const auto it = j.find("reply_to"); it != j.end() && it->is_string())
        p.reply_to = it->get<std::string>();
      artifact.posts.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!saw_header) throw IoError(path + ": empty artifact");
  return artifact;
}

// --- narratives artifact -----------------------------------------------------------

void write_narratives_artifact(const std::string& path, const NarrativesArtifact& artifact) {
  ensure_parent_dir(path);
  json j;
  j["header"] = header_line("narratives", artifact.config_fingerprint);
  j["window"] = {{"t0", artifact.t0},
                 {"window_len", artifact.window_len},
                 {"stride", artifact.stride}};
  json narr = json::array();
  for (const auto& n : artifact.narratives) {
    json jn;
    jn["narrative_id"] = n.narrative_id;
    jn["split_from"] = n.split_from ? json(*n.split_from) : json(nullptr);
    json clusters = json::array();
    for (const auto& c : n.clusters) {
      json entities = json::array();
      for (const auto& [name, kind] : c.entity_names)
        entities.push_back({{"name", name}, {"kind", kind}});
      clusters.push_back({{"cluster_id", c.cluster_id},
                          {"window_index", c.window_index},
                          {"window_start", c.window_start},
                          {"entities", entities},
                          {"post_ids", c.post_ids},
                          {"burst_z", c.burst_z},
                          {"is_event", c.is_event}});
    }
    jn["clusters"] = std::move(clusters);
    narr.push_back(std::move(jn));
  }
  j["narratives"] = std::move(narr);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("short write to " + path);
}

NarrativesArtifact read_narratives_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  NarrativesArtifact artifact;
  check_header(j.value("header", json::object()), "narratives", path);
  artifact.config_fingerprint = j["header"].value("config_fingerprint", "");
  try {
    const json& w = j.at("window");
    artifact.t0 = w.at("t0").get<std::int64_t>();
    artifact.window_len = w.at("window_len").get<std::int64_t>();
    artifact.stride = w.at("stride").get<std::int64_t>();
    for (const auto& jn : j.at("narratives")) {
      NarrativeRecord n;
      n.narrative_id = jn.at("narrative_id").get<std::string>();
      if (jn.contains("split_from") && jn["split_from"].is_string())
        n.split_from = jn["split_from"].get<std::string>();
      for (const auto& jc : jn.at("clusters")) {
        ClusterRecord c;
        c.cluster_id = jc.at("cluster_id").get<std::string>();
        c.window_index = jc.at("window_index").get<int>();
        c.window_start = jc.at("window_start").get<std::int64_t>();
        for (const auto& je : jc.at("entities"))
          c.entity_names.emplace_back(je.at("name").get<std::string>(),
                                      je.at("kind").get<std::string>());
        c.post_ids = jc.at("post_ids").get<std::vector<std::string>>();
        c.burst_z = jc.at("burst_z").get<double>();
        c.is_event = jc.at("is_event").get<bool>();
        n.clusters.push_back(std::move(c));
      }
      artifact.narratives.push_back(std::move(n));
    }
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return artifact;
}

// --- ingest stage ------------------------------------------------------------------

void run_ingest(const config::PipelineConfig& cfg) {
  if (cfg.inputs.empty()) throw StageError("ingest", "no inputs configured");
  const auto lists = load_lists(cfg);
  const auto paths = paths_for(cfg.out_dir);

  std::vector<std::vector<ingest::Post>> streams;
  for (const auto& input : cfg.inputs) {
    ingest::AdapterConfig adapter;
    if (input.adapter.empty()) {
      // identity mapping onto the unified names
      for (const char* field :
           {"post_id", "author_id", "author_created_at", "author_followers",
            "author_following", "text", "created_at", "likes", "shares", "replies",
            "reply_to", "urls"})
        adapter.field_paths[field] = field;
    } else {
      std::ifstream in(input.adapter);
      if (!in) throw IoError("cannot open adapter " + input.adapter);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw IoError(input.adapter + ": " + e.what());
      }
      adapter = ingest::AdapterConfig::from_json(j);
    }
    auto stream = ingest::read_platform_file(input.path, input.name, adapter, lists);
    std::sort(stream.begin(), stream.end(), [](const ingest::Post& a, const ingest::Post& b) {
      if (a.created_at != b.created_at) return a.created_at < b.created_at;
      return a.post_id < b.post_id;
    });
    streams.push_back(std::move(stream));
  }
  auto merged = ingest::merge_streams(std::move(streams));

  std::set<std::string> ids;
  for (const auto& p : merged)
    if (!ids.insert(p.post_id).second)
      throw StageError("ingest", "duplicate post_id across inputs: " + p.post_id);

  write_posts_artifact(paths.posts, merged, cfg.fingerprint());
}

// --- narratives stage -----------------------------------------------------------------

void run_narratives(const config::PipelineConfig& cfg) {
  const auto paths = paths_for(cfg.out_dir);
  auto posts = read_posts_artifact(paths.posts).posts;
  if (posts.empty()) throw StageError("narratives", "posts artifact is empty");
  if (!std::is_sorted(posts.begin(), posts.end(),
                      [](const ingest::Post& a, const ingest::Post& b) {
                        return a.created_at < b.created_at;
                      }))
    throw StageError("narratives", "posts artifact must be sorted by created_at");

  const auto lists = load_lists(cfg);
  const int threads = effective_threads(cfg.threads);

  const auto wa = narrative::window_posts(posts, cfg.window_len, cfg.stride);
  const auto table = narrative::build_entity_table(posts, lists, threads);

  const std::size_t n_windows = wa.windows.size();
  std::vector<narrative::CoocGraph> graphs(n_windows);
  std::vector<std::vector<narrative::EventCluster>> clusters(n_windows);
  parallel_for(n_windows, threads, [&](std::size_t w) {
    graphs[w] = narrative::build_cooc_graph(wa.windows[w], table, cfg.theta_edge, cfg.c_min,
                                            static_cast<int>(w));
    clusters[w] = narrative::cluster_graph(graphs[w], table);
  });
  narrative::annotate_bursts(clusters, graphs, cfg.k_trailing, cfg.z_event);
  const auto narratives = narrative::chain_clusters(clusters, cfg.tau_link);

  NarrativesArtifact artifact;
  artifact.t0 = wa.t0;
  artifact.window_len = wa.window_len;
  artifact.stride = wa.stride;
  artifact.config_fingerprint = cfg.fingerprint();
  for (const auto& n : narratives) {
    NarrativeRecord record;
    record.narrative_id = n.narrative_id;
    record.split_from = n.split_from;
    for (const auto& ref : n.clusters) {
      const auto& c = clusters[static_cast<std::size_t>(ref.window)]
                              [static_cast<std::size_t>(ref.index)];
      ClusterRecord cr;
      cr.cluster_id = c.cluster_id;
      cr.window_index = c.window_index;
      cr.window_start = wa.window_start(c.window_index);
      for (int e : c.entity_ids)
        cr.entity_names.emplace_back(table.refs[static_cast<std::size_t>(e)].name,
                                     entities::kind_name(table.refs[static_cast<std::size_t>(e)].kind));
      for (int idx : c.post_indices)
        cr.post_ids.push_back(posts[static_cast<std::size_t>(idx)].post_id);
      cr.burst_z = c.burst_z;
      cr.is_event = c.is_event;
      record.clusters.push_back(std::move(cr));
    }
    artifact.narratives.push_back(std::move(record));
  }
  // chronological, then id: stable and readable
  std::sort(artifact.narratives.begin(), artifact.narratives.end(),
            [](const NarrativeRecord& a, const NarrativeRecord& b) {
              const int wa_ = a.clusters.empty() ? 0 : a.clusters.front().window_index;
              const int wb = b.clusters.empty() ? 0 : b.clusters.front().window_index;
              if (wa_ != wb) return wa_ < wb;
              return a.narrative_id < b.narrative_id;
            });
  write_narratives_artifact(paths.narratives, artifact);
}

// --- classify stage ---------------------------------------------------------------------

namespace {

struct PostLookup {
  std::unordered_map<std::string, int> index;
  explicit PostLookup(const std::vector<ingest::Post>& posts) {
    for (std::size_t i = 0; i < posts.size(); ++i)
      index.emplace(posts[i].post_id, static_cast<int>(i));
  }
  int at(const std::string& id, const char* stage) const {
    const auto it = index.find(id);
    if (it == index.end())
      throw StageError(stage, "post_id not in posts artifact: " + id);
    return it->second;
  }
};

std::vector<int> narrative_post_indices(const NarrativeRecord& n, const PostLookup& lookup,
                                        const char* stage) {
  std::set<int> uniq;
  for (const auto& c : n.clusters)
    for (const auto& id : c.post_ids) uniq.insert(lookup.at(id, stage));
  return {uniq.begin(), uniq.end()};
}

}  // namespace

void run_classify(const config::PipelineConfig& cfg) {
  const auto paths = paths_for(cfg.out_dir);
  auto posts = read_posts_artifact(paths.posts).posts;
  const auto artifact = read_narratives_artifact(paths.narratives);
  const auto lists = load_lists(cfg);
  const int threads = effective_threads(cfg.threads);
  const PostLookup lookup(posts);

  // global duplicate-content structure
  coordination::DuplicateParams dup_params;
  dup_params.k_words = cfg.shingle_k;
  dup_params.m = cfg.minhash_m;
  dup_params.bands = cfg.lsh_bands;
  dup_params.rows = cfg.lsh_rows;
  dup_params.j_dup = cfg.j_dup;
  dup_params.seed = cfg.seed;
  dup_params.threads = threads;
  const auto dup = coordination::find_duplicate_clusters(posts, dup_params);

  // global account flags (behavior measured on the full corpus)
  std::unordered_map<std::string, std::vector<int>> by_author;
  for (std::size_t i = 0; i < posts.size(); ++i)
    by_author[posts[i].author_id].push_back(static_cast<int>(i));
  std::unordered_map<std::string, bool> inauthentic;
  std::unordered_map<std::string, int> flag_counts;
  for (const auto& [author, author_posts] : by_author) {
    const auto flags = credibility::account_flags(posts, author_posts, cfg.account_params);
    inauthentic[author] = flags.inauthentic();
    flag_counts[author] = flags.flag_count();
  }

  // per-post agenda hits and token counts
  const auto lexicon = agenda::compile_lexicon(lists.propaganda_lexicon);
  std::vector<std::vector<agenda::TechniqueHit>> hits_by_post(posts.size());
  std::vector<std::size_t> tokens_by_post(posts.size());
  parallel_for(posts.size(), threads, [&](std::size_t i) {
    hits_by_post[i] = agenda::detect_techniques(posts[i].post_id, posts[i].text, lexicon);
    tokens_by_post[i] = word_tokens(posts[i].text).size();
  });

  // linked-article text, when provided
  std::map<std::string, std::pair<std::vector<agenda::TechniqueHit>, std::size_t>> article_info;
  for (const auto& [url, body] : lists.articles)
    article_info[url] = {agenda::detect_techniques(url, body, lexicon),
                         word_tokens(body).size()};

  std::set<std::string> lowcred_sorted(lists.low_credibility_domains.begin(),
                                       lists.low_credibility_domains.end());

  json report;
  report["header"] = header_line("report", cfg.fingerprint());
  report["parameters"] = cfg.effective_json();
  report["metadata"] = {
      {"impact_caveat", std::string(impact::kImpactCaveat)},
      {"decision_threshold", classify::kLabelThreshold},
      {"threshold_note",
       "the 0.5 decision threshold and fusion weights are calibrated on generated labeled "
       "corpora, not on empirical base rates"}};

  json dup_clusters = json::array();
  for (const auto& c : dup.clusters)
    dup_clusters.push_back({{"post_ids", c.post_ids},
                            {"accounts", c.accounts},
                            {"platforms", c.platforms},
                            {"span_seconds", c.span_seconds}});
  report["duplicate_clusters"] = std::move(dup_clusters);

  int orchestrated = 0;
  json narratives_json = json::array();
  for (const auto& n : artifact.narratives) {
    const auto indices = narrative_post_indices(n, lookup, "classify");

    // coordination axis
    int in_wide_cluster = 0;
    std::set<int> dup_cluster_ids;
    std::set<std::string> narrative_platforms;
    for (int idx : indices) {
      narrative_platforms.insert(posts[static_cast<std::size_t>(idx)].platform);
      const int cl = dup.cluster_of[static_cast<std::size_t>(idx)];
      if (cl < 0) continue;
      if (static_cast<int>(dup.clusters[static_cast<std::size_t>(cl)].accounts.size()) >=
          cfg.n_acc) {
        ++in_wide_cluster;
        dup_cluster_ids.insert(cl);
      }
    }
    const double dup_fraction =
        indices.empty() ? 0.0
                        : static_cast<double>(in_wide_cluster) /
                              static_cast<double>(indices.size());
    const auto sync = coordination::synchrony(posts, indices, cfg.delta_t_sync);
    const auto coord = coordination::coordination_score(
        n.narrative_id, dup_fraction, sync.max_normalized,
        static_cast<int>(narrative_platforms.size()), cfg.coordination_weights);

    // deception axis
    const auto domains = credibility::domain_credibility(posts, indices, lowcred_sorted);
    std::set<std::string> accounts;
    for (int idx : indices) accounts.insert(posts[static_cast<std::size_t>(idx)].author_id);
    int flagged = 0;
    std::vector<std::string> flagged_accounts;
    for (const auto& acc : accounts) {
      if (inauthentic.at(acc)) {
        ++flagged;
        flagged_accounts.push_back(acc);
      }
    }
    const double inauthentic_fraction =
        accounts.empty() ? 0.0 : static_cast<double>(flagged) / static_cast<double>(accounts.size());
    const auto deception =
        credibility::deception_score(n.narrative_id, domains, inauthentic_fraction,
                                     cfg.deception_weights);

    // agenda axis
    std::vector<agenda::TechniqueHit> hits;
    std::size_t tokens = 0;
    std::set<std::string> narrative_urls;
    for (int idx : indices) {
      const auto& ph = hits_by_post[static_cast<std::size_t>(idx)];
      hits.insert(hits.end(), ph.begin(), ph.end());
      tokens += tokens_by_post[static_cast<std::size_t>(idx)];
      for (const auto& url : posts[static_cast<std::size_t>(idx)].urls)
        narrative_urls.insert(url);
    }
    for (const auto& url : narrative_urls) {
      const auto it = article_info.find(url);
      if (it == article_info.end()) continue;
      hits.insert(hits.end(), it->second.first.begin(), it->second.first.end());
      tokens += it->second.second;
    }
    const auto agenda_score = agenda::fuse_agenda(n.narrative_id, hits, tokens,
                                                  lexicon.technique_count(), cfg.lambda);

    const auto fused =
        classify::fuse(deception.score, coord.score, agenda_score.score, cfg.fusion_weights);
    if (fused.label == "orchestrated_inauthentic") ++orchestrated;

    std::map<std::string, int> technique_counts;
    for (const auto& h : hits) ++technique_counts[h.technique];

    // assessment block
    json jn;
    jn["narrative_id"] = n.narrative_id;
    jn["split_from"] = n.split_from ? json(*n.split_from) : json(nullptr);
    jn["label"] = fused.label;
    jn["fused"] = fused.fused;
    jn["scores"] = {{"deception", deception.score},
                    {"coordination", coord.score},
                    {"agenda", agenda_score.score}};
    jn["features"] = {{"dup_fraction", dup_fraction},
                      {"synchrony", sync.max_normalized},
                      {"platform_span", static_cast<int>(narrative_platforms.size())},
                      {"lowcred_fraction", deception.lowcred_fraction},
                      {"inauthentic_fraction", inauthentic_fraction},
                      {"hits_per_100_tokens", agenda_score.hits_per_100_tokens},
                      {"technique_diversity", agenda_score.technique_diversity}};
    jn["counts"] = {{"posts", static_cast<int>(indices.size())},
                    {"accounts", static_cast<int>(accounts.size())},
                    {"windows", static_cast<int>(n.clusters.size())}};

    std::set<std::pair<std::string, std::string>> entity_set;
    for (const auto& c : n.clusters)
      for (const auto& e : c.entity_names) entity_set.insert(e);
    json entities_json = json::array();
    for (const auto& [name, kind] : entity_set)
      entities_json.push_back({{"name", name}, {"kind", kind}});
    jn["entities"] = std::move(entities_json);

    json windows_json = json::array();
    for (const auto& c : n.clusters)
      windows_json.push_back({{"window_index", c.window_index},
                              {"window_start", c.window_start},
                              {"cluster_id", c.cluster_id},
                              {"posts", static_cast<int>(c.post_ids.size())},
                              {"burst_z", c.burst_z},
                              {"is_event", c.is_event}});
    jn["windows"] = std::move(windows_json);

    json ids = json::array();
    for (int idx : indices) ids.push_back(posts[static_cast<std::size_t>(idx)].post_id);
    jn["post_ids"] = std::move(ids);

    json evidence;
    evidence["dup_cluster_ids"] = std::vector<int>(dup_cluster_ids.begin(), dup_cluster_ids.end());
    evidence["flagged_accounts"] = flagged_accounts;
    evidence["technique_hits"] = technique_counts;
    evidence["no_urls"] = domains.no_urls;
    if (sync.max_normalized > 0.0) {
      evidence["top_sync_pair"] = {{"accounts",
                                    {sync.top_pair.account_a, sync.top_pair.account_b}},
                                   {"co_count", sync.top_pair.co_count},
                                   {"normalized", sync.top_pair.normalized}};
    } else {
      evidence["top_sync_pair"] = nullptr;
    }
    jn["evidence"] = std::move(evidence);
    narratives_json.push_back(std::move(jn));
  }
  report["narratives"] = std::move(narratives_json);
  report["counts"] = {{"posts", static_cast<int>(posts.size())},
                      {"narratives", static_cast<int>(artifact.narratives.size())},
                      {"orchestrated", orchestrated},
                      {"duplicate_clusters", static_cast<int>(dup.clusters.size())}};

  ensure_parent_dir(paths.report);
  std::ofstream out(paths.report, std::ios::binary);
  if (!out) throw IoError("cannot write " + paths.report);
  out << report.dump(2) << "\n";
  if (!out) throw IoError("short write to " + paths.report);
}

// --- attribute stage -------------------------------------------------------------------

void run_attribute(const config::PipelineConfig& cfg) {
  const auto paths = paths_for(cfg.out_dir);
  auto posts = read_posts_artifact(paths.posts).posts;
  const PostLookup lookup(posts);
  const auto lists = load_lists(cfg);

  std::ifstream in(paths.report);
  if (!in) throw IoError("cannot open " + paths.report);
  json report;
  try {
    in >> report;
  } catch (const json::exception& e) {
    throw IoError(paths.report + ": " + e.what());
  }
  check_header(report.value("header", json::object()), "report", paths.report);

  // posts inside orchestrated narratives, grouped by account
  std::map<std::string, std::set<int>> account_posts;
  for (const auto& jn : report.at("narratives")) {
    if (jn.value("label", "") != "orchestrated_inauthentic") continue;
    for (const auto& id : jn.at("post_ids")) {
      const int idx = lookup.at(id.get<std::string>(), "attribute");
      account_posts[posts[static_cast<std::size_t>(idx)].author_id].insert(idx);
    }
  }

  // duplicate-cluster membership from the report's own evidence section
  std::unordered_map<std::string, int> cluster_of_post;
  {
    int ci = 0;
    for (const auto& jc : report.at("duplicate_clusters")) {
      for (const auto& id : jc.at("post_ids")) cluster_of_post[id.get<std::string>()] = ci;
      ++ci;
    }
  }

  const auto lexicon = agenda::compile_lexicon(lists.propaganda_lexicon);
  std::vector<attribution::AccountEvidence> evidence;
  for (const auto& [account, idx_set] : account_posts) {
    attribution::AccountEvidence e;
    e.account_id = account;
    for (int idx : idx_set) {
      const auto& p = posts[static_cast<std::size_t>(idx)];
      e.post_hours.push_back(attribution::hour_of(p.created_at));
      for (const auto& url : p.urls) {
        try {
          ++e.domain_counts[ingest::registrable_domain(url)];
        } catch (const PipelineError&) {
        }
      }
      for (const auto& hit : agenda::detect_techniques(p.post_id, p.text, lexicon))
        ++e.technique_counts[hit.technique];
      const auto it = cluster_of_post.find(p.post_id);
      if (it != cluster_of_post.end()) e.dup_clusters.insert(it->second);
    }
    evidence.push_back(std::move(e));
  }

  const auto domain_vocab = attribution::domain_vocabulary(evidence);
  const auto technique_vocab = attribution::technique_vocabulary(evidence);
  std::vector<attribution::AccountFingerprint> fingerprints;
  for (const auto& e : evidence)
    fingerprints.push_back(attribution::fingerprint(e, domain_vocab, technique_vocab));
  const auto groups = attribution::group_actors(fingerprints, cfg.cosine_threshold);

  json groups_json = json::array();
  for (const auto& g : groups) {
    json jg;
    jg["account_ids"] = g.account_ids;
    jg["hour_histogram"] = g.hour_histogram;
    jg["domain_distribution"] = g.domain_distribution;
    jg["technique_distribution"] = g.technique_distribution;
    jg["dup_cluster_overlap"] = g.dup_cluster_overlap;
    groups_json.push_back(std::move(jg));
  }
  report["actor_groups"] = std::move(groups_json);
  report["metadata"]["attribution_note"] =
      "candidate actor groups from behavioral similarity only; not identity attribution";

  std::ofstream out(paths.report, std::ios::binary);
  if (!out) throw IoError("cannot write " + paths.report);
  out << report.dump(2) << "\n";
  if (!out) throw IoError("short write to " + paths.report);
}

// --- impact stage ----------------------------------------------------------------------

void run_impact(const config::PipelineConfig& cfg) {
  const auto paths = paths_for(cfg.out_dir);
  auto posts = read_posts_artifact(paths.posts).posts;
  const auto artifact = read_narratives_artifact(paths.narratives);
  const PostLookup lookup(posts);

  std::ifstream in(paths.report);
  if (!in) throw IoError("cannot open " + paths.report);
  json report;
  try {
    in >> report;
  } catch (const json::exception& e) {
    throw IoError(paths.report + ": " + e.what());
  }
  check_header(report.value("header", json::object()), "report", paths.report);

  const auto url_index = impact::build_url_index(posts);

  std::map<std::string, const NarrativeRecord*> by_id;
  for (const auto& n : artifact.narratives) by_id[n.narrative_id] = &n;

  for (auto& jn : report.at("narratives")) {
    const std::string id = jn.at("narrative_id").get<std::string>();
    const auto it = by_id.find(id);
    if (it == by_id.end())
      throw StageError("impact", "narrative missing from narratives artifact: " + id);
    const NarrativeRecord& n = *it->second;

    const auto indices = narrative_post_indices(n, lookup, "impact");
    std::vector<impact::WindowVolume> volumes;
    for (const auto& c : n.clusters)
      volumes.push_back({c.window_start, static_cast<int>(c.post_ids.size())});
    const auto metrics = impact::impact_metrics(id, posts, indices, volumes, url_index);
    jn["impact"] = {{"reach_upper_bound", metrics.reach_upper_bound},
                    {"engagement_total", metrics.engagement_total},
                    {"amplification", metrics.amplification},
                    {"platform_spread", metrics.platform_spread},
                    {"time_to_peak", metrics.time_to_peak},
                    {"conversion_proxy", metrics.conversion_proxy}};
  }

  std::ofstream out(paths.report, std::ios::binary);
  if (!out) throw IoError("cannot write " + paths.report);
  out << report.dump(2) << "\n";
  if (!out) throw IoError("short write to " + paths.report);
}

void run_all(const config::PipelineConfig& cfg) {
  run_ingest(cfg);
  run_narratives(cfg);
  run_classify(cfg);
  run_attribute(cfg);
  run_impact(cfg);
}

}  // namespace disinfo::pipeline

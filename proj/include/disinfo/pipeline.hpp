#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disinfo/config.hpp"
#include "disinfo/ingest.hpp"

namespace disinfo::pipeline {

inline constexpr int kSchemaVersion = 1;

// Artifact names inside the output directory. Every stage reads its inputs
// from here and writes its result back here, so stages can be re-run
// individually.
struct StagePaths {
  std::string posts;       // posts.ndjson
  std::string narratives;  // narratives.json
  std::string report;      // report.json
};

StagePaths paths_for(const std::string& out_dir);

// Reference lists per the config; empty paths fall back to the bundled
// starter data.
ingest::SourceLists load_lists(const config::PipelineConfig& cfg);

// --- posts artifact ----------------------------------------------------------

void write_posts_artifact(const std::string& path, const std::vector<ingest::Post>& posts,
                          const std::string& fingerprint);

struct PostsArtifact {
  std::vector<ingest::Post> posts;
  std::string config_fingerprint;
};

PostsArtifact read_posts_artifact(const std::string& path);

// --- narratives artifact --------------------------------------------------------

struct ClusterRecord {
  std::string cluster_id;
  int window_index = 0;
  std::int64_t window_start = 0;
  std::vector<std::pair<std::string, std::string>> entity_names;  // (name, kind)
  std::vector<std::string> post_ids;
  double burst_z = 0.0;
  bool is_event = false;
};

struct NarrativeRecord {
  std::string narrative_id;
  std::optional<std::string> split_from;
  std::vector<ClusterRecord> clusters;  // window order
};

struct NarrativesArtifact {
  std::int64_t t0 = 0;
  std::int64_t window_len = 0;
  std::int64_t stride = 0;
  std::vector<NarrativeRecord> narratives;
  std::string config_fingerprint;
};

void write_narratives_artifact(const std::string& path, const NarrativesArtifact& artifact);
NarrativesArtifact read_narratives_artifact(const std::string& path);

// --- stages -------------------------------------------------------------------

// inputs -> posts.ndjson
void run_ingest(const config::PipelineConfig& cfg);
// posts.ndjson -> narratives.json
void run_narratives(const config::PipelineConfig& cfg);
// posts.ndjson + narratives.json -> report.json (assessments + evidence)
void run_classify(const config::PipelineConfig& cfg);
// report.json + posts.ndjson -> report.json with actor groups
void run_attribute(const config::PipelineConfig& cfg);
// report.json + narratives.json + posts.ndjson -> report.json with impact blocks
void run_impact(const config::PipelineConfig& cfg);
// all five in order
void run_all(const config::PipelineConfig& cfg);

}  // namespace disinfo::pipeline

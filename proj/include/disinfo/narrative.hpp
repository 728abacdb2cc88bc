#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "disinfo/entities.hpp"
#include "disinfo/ingest.hpp"

namespace disinfo::narrative {

// --- windowing --------------------------------------------------------------

// Post-to-window assignment. Window k covers [t0 + k*stride, t0 + k*stride +
// window_len); a post lands in every window whose interval contains it
// (tumbling when stride == window_len).
struct WindowAssignment {
  std::int64_t t0 = 0;
  std::int64_t window_len = 0;
  std::int64_t stride = 0;
  std::vector<std::vector<int>> windows;  // window index -> post indices (ascending)

  std::int64_t window_start(int index) const { return t0 + static_cast<std::int64_t>(index) * stride; }
};

// posts must be sorted by created_at. Throws BadWindow on nonpositive
// window_len/stride or stride > window_len.
WindowAssignment window_posts(const std::vector<ingest::Post>& posts, std::int64_t window_len,
                              std::int64_t stride);

// --- entity table -----------------------------------------------------------

// Corpus-wide entity index: entities sorted by (name, kind) so ids are stable,
// with per-post and per-entity cross references.
struct EntityTable {
  std::vector<entities::EntityRef> refs;        // id -> (name, kind)
  std::vector<std::vector<int>> post_entities;  // post index -> sorted entity ids
  std::vector<std::vector<int>> entity_posts;   // entity id -> sorted post indices

  int size() const { return static_cast<int>(refs.size()); }
};

EntityTable build_entity_table(const std::vector<ingest::Post>& posts,
                               const ingest::SourceLists& lists, int threads);

// --- co-occurrence graph -----------------------------------------------------

struct CoocEdge {
  int a = 0;  // entity id, a < b
  int b = 0;
  double weight = 0.0;  // Jaccard of in-window mention sets
  int cooc_count = 0;   // posts in the window mentioning both
};

struct CoocGraph {
  int window_index = 0;
  std::vector<int> nodes;                                    // active entity ids, sorted
  std::vector<CoocEdge> edges;                               // sorted by (a, b)
  std::unordered_map<int, std::vector<int>> window_mentions; // entity id -> in-window posts
};

// Edges are exactly the pairs with cooc_count >= c_min and weight >= theta_edge.
CoocGraph build_cooc_graph(const std::vector<int>& window_post_indices, const EntityTable& table,
                           double theta_edge, int c_min, int window_index);

// --- event clusters -----------------------------------------------------------

struct EventCluster {
  std::string cluster_id;        // stable hash of window index + sorted entity names
  int window_index = 0;
  std::vector<int> entity_ids;   // sorted, nonempty
  std::vector<int> post_indices; // sorted union of member in-window mentions
  double burst_z = 0.0;
  bool is_event = false;

  int volume() const { return static_cast<int>(post_indices.size()); }
};

// Connected components of the thresholded graph; singletons included.
std::vector<EventCluster> cluster_graph(const CoocGraph& g, const EntityTable& table);

// z-score of the current volume against a trailing window of volumes, with the
// standard deviation floored at 1 post. Fewer than max(k_trailing, 2) trailing
// values => 0 by convention.
double burst_score(const std::vector<double>& trailing, double current, int k_trailing);

// Fills burst_z / is_event on every cluster. A cluster's trailing volume in
// window j is the number of window-j posts mentioning any of its entities.
void annotate_bursts(std::vector<std::vector<EventCluster>>& clusters_by_window,
                     const std::vector<CoocGraph>& graphs, int k_trailing, double z_event);

// --- narratives ---------------------------------------------------------------

struct ClusterRef {
  int window = 0;  // position in clusters_by_window
  int index = 0;   // position within that window
};

struct Narrative {
  std::string narrative_id;  // stable hash of the first cluster id
  std::vector<ClusterRef> clusters;
  std::optional<std::string> split_from;  // narrative id this one split away from
};

// Links each cluster to the previous-window cluster of maximal entity Jaccard
// when that Jaccard >= tau_link (parent ties: larger post set, then smaller
// cluster_id). When several clusters pick the same parent the largest-volume
// child continues the narrative and the rest start new ones with split_from.
std::vector<Narrative> chain_clusters(
    const std::vector<std::vector<EventCluster>>& clusters_by_window, double tau_link);

double entity_jaccard(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace disinfo::narrative

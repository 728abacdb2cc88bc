#include "disinfo/narrative.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "disinfo/hashing.hpp"
#include "disinfo/parallel.hpp"

namespace disinfo::narrative {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace

WindowAssignment window_posts(const std::vector<ingest::Post>& posts, std::int64_t window_len,
                              std::int64_t stride) {
  if (window_len <= 0) throw BadWindow("window_len must be positive");
  if (stride <= 0) throw BadWindow("stride must be positive");
  if (stride > window_len) throw BadWindow("stride must not exceed window_len");

  WindowAssignment out;
  out.window_len = window_len;
  out.stride = stride;
  if (posts.empty()) return out;

  out.t0 = posts.front().created_at;
  const std::int64_t t_max = posts.back().created_at;
  const std::size_t n_windows = static_cast<std::size_t>((t_max - out.t0) / stride) + 1;
  out.windows.resize(n_windows);

  for (int p = 0; p < static_cast<int>(posts.size()); ++p) {
    const std::int64_t rel = posts[p].created_at - out.t0;
    const std::int64_t k_max = rel / stride;
    const std::int64_t k_min = std::max<std::int64_t>(0, floor_div(rel - window_len, stride) + 1);
    for (std::int64_t k = k_min; k <= k_max; ++k) {
      out.windows[static_cast<std::size_t>(k)].push_back(p);
    }
  }
  return out;
}

EntityTable build_entity_table(const std::vector<ingest::Post>& posts,
                               const ingest::SourceLists& lists, int threads) {
  std::vector<std::vector<entities::EntityRef>> per_post(posts.size());
  parallel_for(posts.size(), threads, [&](std::size_t i) {
    std::vector<entities::EntityRef> refs = entities::extract_entities(posts[i], lists);
    for (entities::EntityRef& r : refs) {
      r.name = entities::resolve_alias(r.name, lists.entity_dictionary);
    }
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    per_post[i] = std::move(refs);
  });

  std::map<entities::EntityRef, int> ids;
  for (const auto& refs : per_post) {
    for (const auto& r : refs) ids.emplace(r, 0);
  }
  EntityTable table;
  table.refs.reserve(ids.size());
  int next = 0;
  for (auto& [ref, id] : ids) {
    id = next++;
    table.refs.push_back(ref);
  }

  table.post_entities.resize(posts.size());
  table.entity_posts.resize(ids.size());
  for (int p = 0; p < static_cast<int>(posts.size()); ++p) {
    auto& slot = table.post_entities[p];
    slot.reserve(per_post[p].size());
    for (const auto& r : per_post[p]) slot.push_back(ids[r]);
    std::sort(slot.begin(), slot.end());
    for (int e : slot) table.entity_posts[e].push_back(p);
  }
  return table;
}

CoocGraph build_cooc_graph(const std::vector<int>& window_post_indices, const EntityTable& table,
                           double theta_edge, int c_min, int window_index) {
  CoocGraph g;
  g.window_index = window_index;

  for (int p : window_post_indices) {
    for (int e : table.post_entities[p]) g.window_mentions[e].push_back(p);
  }
  g.nodes.reserve(g.window_mentions.size());
  for (const auto& [e, _] : g.window_mentions) g.nodes.push_back(e);
  std::sort(g.nodes.begin(), g.nodes.end());

  // pair counts via per-post entity combinations; a post's entity list is
  // deduplicated, so this counts each co-occurring post exactly once
  std::map<std::pair<int, int>, int> pair_counts;
  for (int p : window_post_indices) {
    const auto& es = table.post_entities[p];
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        ++pair_counts[{es[i], es[j]}];
      }
    }
  }
  for (const auto& [pair, cooc] : pair_counts) {
    if (cooc < c_min) continue;
    const auto& pa = g.window_mentions.at(pair.first);
    const auto& pb = g.window_mentions.at(pair.second);
    const std::size_t uni = pa.size() + pb.size() - static_cast<std::size_t>(cooc);
    const double weight = uni == 0 ? 0.0 : static_cast<double>(cooc) / static_cast<double>(uni);
    if (weight >= theta_edge) {
      g.edges.push_back({pair.first, pair.second, weight, cooc});
    }
  }
  return g;
}

std::vector<EventCluster> cluster_graph(const CoocGraph& g, const EntityTable& table) {
  std::unordered_map<int, std::vector<int>> adj;
  for (const CoocEdge& e : g.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }

  std::vector<EventCluster> clusters;
  std::unordered_map<int, bool> visited;
  for (int start : g.nodes) {
    if (visited[start]) continue;
    // BFS component
    std::vector<int> members;
    std::deque<int> queue{start};
    visited[start] = true;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      members.push_back(cur);
      auto it = adj.find(cur);
      if (it == adj.end()) continue;
      for (int nxt : it->second) {
        if (!visited[nxt]) {
          visited[nxt] = true;
          queue.push_back(nxt);
        }
      }
    }
    std::sort(members.begin(), members.end());

    EventCluster c;
    c.window_index = g.window_index;
    c.entity_ids = std::move(members);
    std::uint64_t h = fnv1a64_u64(static_cast<std::uint64_t>(g.window_index));
    for (int e : c.entity_ids) {
      c.post_indices = sorted_union(c.post_indices, g.window_mentions.at(e));
      h = fnv1a64(table.refs[static_cast<std::size_t>(e)].name, h);
      h = fnv1a64_u64(static_cast<std::uint64_t>(table.refs[static_cast<std::size_t>(e)].kind), h);
    }
    c.cluster_id = "c" + to_hex(h);
    clusters.push_back(std::move(c));
  }
  return clusters;
}

double burst_score(const std::vector<double>& trailing, double current, int k_trailing) {
  if (k_trailing < 2 || static_cast<int>(trailing.size()) < k_trailing) return 0.0;
  // use exactly the last k_trailing values
  const std::size_t n = trailing.size();
  const std::size_t from = n - static_cast<std::size_t>(k_trailing);
  double mean = 0.0;
  for (std::size_t i = from; i < n; ++i) mean += trailing[i];
  mean /= static_cast<double>(k_trailing);
  double var = 0.0;
  for (std::size_t i = from; i < n; ++i) var += (trailing[i] - mean) * (trailing[i] - mean);
  var /= static_cast<double>(k_trailing);
  const double sd = std::max(std::sqrt(var), 1.0);
  return (current - mean) / sd;
}

void annotate_bursts(std::vector<std::vector<EventCluster>>& clusters_by_window,
                     const std::vector<CoocGraph>& graphs, int k_trailing, double z_event) {
  for (std::size_t w = 0; w < clusters_by_window.size(); ++w) {
    for (EventCluster& c : clusters_by_window[w]) {
      std::vector<double> trailing;
      if (static_cast<int>(w) >= k_trailing) {
        trailing.reserve(static_cast<std::size_t>(k_trailing));
        for (std::size_t j = w - static_cast<std::size_t>(k_trailing); j < w; ++j) {
          // volume of this cluster's entity set in window j
          std::vector<int> covered;
          for (int e : c.entity_ids) {
            auto it = graphs[j].window_mentions.find(e);
            if (it != graphs[j].window_mentions.end()) {
              covered = sorted_union(covered, it->second);
            }
          }
          trailing.push_back(static_cast<double>(covered.size()));
        }
      }
      c.burst_z = burst_score(trailing, static_cast<double>(c.volume()), k_trailing);
      c.is_event = c.burst_z >= z_event;
    }
  }
}

double entity_jaccard(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() && b.empty()) return 0.0;
  const std::size_t inter = intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<Narrative> chain_clusters(
    const std::vector<std::vector<EventCluster>>& clusters_by_window, double tau_link) {
  std::vector<Narrative> narratives;
  // frontier: cluster (w, i) -> narrative index, for the last linked window
  std::map<std::pair<int, int>, std::size_t> frontier;

  auto start_narrative = [&](int w, int i, std::optional<std::string> split_from) {
    Narrative n;
    n.narrative_id = "n" + to_hex(fnv1a64(clusters_by_window[static_cast<std::size_t>(w)]
                                              [static_cast<std::size_t>(i)].cluster_id));
    n.split_from = std::move(split_from);
    n.clusters.push_back({w, i});
    narratives.push_back(std::move(n));
    return narratives.size() - 1;
  };

  for (int w = 0; w < static_cast<int>(clusters_by_window.size()); ++w) {
    const auto& window = clusters_by_window[static_cast<std::size_t>(w)];
    std::map<std::pair<int, int>, std::size_t> next_frontier;

    if (w == 0 || clusters_by_window[static_cast<std::size_t>(w - 1)].empty()) {
      for (int i = 0; i < static_cast<int>(window.size()); ++i) {
        next_frontier[{w, i}] = start_narrative(w, i, std::nullopt);
      }
      frontier = std::move(next_frontier);
      continue;
    }

    const auto& prev = clusters_by_window[static_cast<std::size_t>(w - 1)];
    // parent index -> children (child index within this window)
    std::map<int, std::vector<int>> children_of;
    std::vector<int> unlinked;

    for (int i = 0; i < static_cast<int>(window.size()); ++i) {
      const EventCluster& child = window[static_cast<std::size_t>(i)];
      int best_parent = -1;
      double best_j = -1.0;
      for (int p = 0; p < static_cast<int>(prev.size()); ++p) {
        const EventCluster& parent = prev[static_cast<std::size_t>(p)];
        const double jac = entity_jaccard(child.entity_ids, parent.entity_ids);
        bool better = jac > best_j;
        if (!better && jac == best_j && best_parent >= 0) {
          const EventCluster& cur = prev[static_cast<std::size_t>(best_parent)];
          if (parent.volume() != cur.volume()) {
            better = parent.volume() > cur.volume();
          } else {
            better = parent.cluster_id < cur.cluster_id;
          }
        }
        if (better) {
          best_j = jac;
          best_parent = p;
        }
      }
      if (best_parent >= 0 && best_j >= tau_link) {
        children_of[best_parent].push_back(i);
      } else {
        unlinked.push_back(i);
      }
    }

    for (auto& [parent_idx, kids] : children_of) {
      // the larger-volume child continues the parent's narrative
      int winner = kids.front();
      for (int k : kids) {
        const EventCluster& cand = window[static_cast<std::size_t>(k)];
        const EventCluster& cur = window[static_cast<std::size_t>(winner)];
        if (cand.volume() > cur.volume() ||
            (cand.volume() == cur.volume() && cand.cluster_id < cur.cluster_id)) {
          winner = k;
        }
      }
      const std::size_t parent_narrative = frontier.at({w - 1, parent_idx});
      narratives[parent_narrative].clusters.push_back({w, winner});
      next_frontier[{w, winner}] = parent_narrative;
      for (int k : kids) {
        if (k == winner) continue;
        next_frontier[{w, k}] =
            start_narrative(w, k, narratives[parent_narrative].narrative_id);
      }
    }
    for (int i : unlinked) {
      next_frontier[{w, i}] = start_narrative(w, i, std::nullopt);
    }
    frontier = std::move(next_frontier);
  }
  return narratives;
}

}  // namespace disinfo::narrative

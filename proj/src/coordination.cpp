#include "disinfo/coordination.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "disinfo/errors.hpp"
#include "disinfo/hashing.hpp"
#include "disinfo/parallel.hpp"
#include "disinfo/text.hpp"

namespace disinfo::coordination {

std::set<std::string> shingle(std::string_view text, int k_words) {
  if (k_words <= 0) throw BadConfig("k_words must be positive");
  const auto words = disinfo::word_strings(text);
  std::set<std::string> out;
  if (words.empty()) return out;
  const int n = static_cast<int>(words.size());
  const int take = std::min(n, k_words);
  const int last_start = n - take;
  for (int s = 0; s <= last_start; ++s) {
    std::string sh = words[static_cast<std::size_t>(s)];
    for (int i = 1; i < take; ++i) {
      sh.push_back(' ');
      sh += words[static_cast<std::size_t>(s + i)];
    }
    out.insert(std::move(sh));
  }
  return out;
}

std::vector<std::uint64_t> shingle_keys(std::string_view text, int k_words) {
  const auto shingles = shingle(text, k_words);
  std::vector<std::uint64_t> keys;
  keys.reserve(shingles.size());
  for (const auto& s : shingles) keys.push_back(fnv1a64(s));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

static std::vector<std::uint64_t> hash_seeds(int m, std::uint64_t seed) {
  SplitMix64 rng{seed};
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(m));
  for (auto& s : seeds) s = rng.next();
  return seeds;
}

std::vector<std::uint64_t> minhash_signature(const std::vector<std::uint64_t>& keys, int m,
                                             std::uint64_t seed) {
  if (m <= 0) throw BadConfig("minhash m must be positive");
  if (keys.empty()) throw EmptyText{};
  const auto seeds = hash_seeds(m, seed);
  std::vector<std::uint64_t> sig(static_cast<std::size_t>(m), ~0ull);
  for (std::uint64_t key : keys) {
    for (int i = 0; i < m; ++i) {
      const std::uint64_t h = mix64(key ^ seeds[static_cast<std::size_t>(i)]);
      auto& slot = sig[static_cast<std::size_t>(i)];
      if (h < slot) slot = h;
    }
  }
  return sig;
}

std::vector<std::uint64_t> minhash_signature(const std::set<std::string>& shingles, int m,
                                             std::uint64_t seed) {
  std::vector<std::uint64_t> keys;
  keys.reserve(shingles.size());
  for (const auto& s : shingles) keys.push_back(fnv1a64(s));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return minhash_signature(keys, m, seed);
}

double estimate_jaccard(const std::vector<std::uint64_t>& sig_a,
                        const std::vector<std::uint64_t>& sig_b) {
  if (sig_a.empty() || sig_a.size() != sig_b.size())
    throw BadConfig("signatures must be non-empty and equal length");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < sig_a.size(); ++i)
    if (sig_a[i] == sig_b[i]) ++agree;
  return static_cast<double>(agree) / static_cast<double>(sig_a.size());
}

double exact_jaccard(const std::vector<std::uint64_t>& keys_a,
                     const std::vector<std::uint64_t>& keys_b) {
  if (keys_a.empty() && keys_b.empty()) return 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t inter = 0;
  while (i < keys_a.size() && j < keys_b.size()) {
    if (keys_a[i] == keys_b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (keys_a[i] < keys_b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = keys_a.size() + keys_b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Attach the larger root id under the smaller so roots stay stable.
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

DuplicateResult find_duplicate_clusters(const std::vector<ingest::Post>& posts,
                                        const DuplicateParams& params) {
  if (params.bands <= 0 || params.rows <= 0 || params.bands * params.rows != params.m)
    throw BadConfig("bands * rows must equal m");
  if (params.j_dup <= 0.0 || params.j_dup > 1.0) throw BadConfig("j_dup must be in (0, 1]");

  const int n = static_cast<int>(posts.size());
  DuplicateResult result;
  result.cluster_of.assign(static_cast<std::size_t>(n), -1);
  if (n < 2) return result;

  std::vector<std::vector<std::uint64_t>> keys(static_cast<std::size_t>(n));
  std::vector<std::vector<std::uint64_t>> sigs(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), params.threads, [&](std::size_t i) {
    keys[i] = shingle_keys(posts[i].text, params.k_words);
    if (!keys[i].empty()) sigs[i] = minhash_signature(keys[i], params.m, params.seed);
  });

  // Banding: posts sharing all row values of any band become candidates.
  std::vector<std::pair<int, int>> candidates;
  {
    std::map<std::uint64_t, std::vector<int>> buckets;
    for (int band = 0; band < params.bands; ++band) {
      buckets.clear();
      for (int i = 0; i < n; ++i) {
        const auto& sig = sigs[static_cast<std::size_t>(i)];
        if (sig.empty()) continue;
        std::uint64_t h = fnv1a64_u64(static_cast<std::uint64_t>(band));
        for (int r = 0; r < params.rows; ++r)
          h = fnv1a64_u64(sig[static_cast<std::size_t>(band * params.rows + r)], h);
        buckets[h].push_back(i);
      }
      for (const auto& [h, members] : buckets) {
        if (members.size() < 2) continue;
        for (std::size_t a = 0; a < members.size(); ++a)
          for (std::size_t b = a + 1; b < members.size(); ++b)
            candidates.emplace_back(members[a], members[b]);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }

  UnionFind uf(n);
  for (const auto& [a, b] : candidates) {
    const double j = exact_jaccard(keys[static_cast<std::size_t>(a)],
                                   keys[static_cast<std::size_t>(b)]);
    if (j >= params.j_dup) {
      result.verified_pairs.push_back({a, b, j});
      uf.unite(a, b);
    }
  }

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) {
    if (keys[static_cast<std::size_t>(i)].empty()) continue;
    groups[uf.find(i)].push_back(i);
  }
  for (auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    DuplicateCluster cluster;
    cluster.post_indices = members;  // already ascending
    std::int64_t t_min = 0;
    std::int64_t t_max = 0;
    bool first = true;
    int rep = members.front();
    for (int idx : members) {
      const auto& p = posts[static_cast<std::size_t>(idx)];
      cluster.post_ids.push_back(p.post_id);
      cluster.accounts.push_back(p.author_id);
      cluster.platforms.push_back(p.platform);
      if (first || p.created_at < t_min) t_min = first ? p.created_at : std::min(t_min, p.created_at);
      if (first || p.created_at > t_max) t_max = first ? p.created_at : std::max(t_max, p.created_at);
      first = false;
      if (p.post_id < posts[static_cast<std::size_t>(rep)].post_id) rep = idx;
    }
    cluster.span_seconds = t_max - t_min;
    cluster.representative_signature = sigs[static_cast<std::size_t>(rep)];
    std::sort(cluster.post_ids.begin(), cluster.post_ids.end());
    std::sort(cluster.accounts.begin(), cluster.accounts.end());
    cluster.accounts.erase(std::unique(cluster.accounts.begin(), cluster.accounts.end()),
                           cluster.accounts.end());
    std::sort(cluster.platforms.begin(), cluster.platforms.end());
    cluster.platforms.erase(std::unique(cluster.platforms.begin(), cluster.platforms.end()),
                            cluster.platforms.end());
    const int cluster_index = static_cast<int>(result.clusters.size());
    for (int idx : members) result.cluster_of[static_cast<std::size_t>(idx)] = cluster_index;
    result.clusters.push_back(std::move(cluster));
  }
  return result;
}

namespace {

// How many elements of a have a counterpart in b within dt. Both sorted.
int matched_count(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                  std::int64_t dt) {
  int count = 0;
  std::size_t j = 0;
  for (std::int64_t t : a) {
    while (j < b.size() && b[j] < t - dt) ++j;
    if (j < b.size() && b[j] <= t + dt) ++count;
  }
  return count;
}

}  // namespace

SynchronyResult synchrony(const std::vector<ingest::Post>& posts,
                          const std::vector<int>& post_indices, std::int64_t delta_t) {
  SynchronyResult result;
  if (delta_t < 0) throw BadConfig("delta_t must be non-negative");

  std::map<std::string, std::vector<std::int64_t>> by_account;
  std::vector<std::pair<std::int64_t, const std::string*>> timeline;
  timeline.reserve(post_indices.size());
  for (int idx : post_indices) {
    const auto& p = posts[static_cast<std::size_t>(idx)];
    by_account[p.author_id].push_back(p.created_at);
  }
  if (by_account.size() < 2) return result;
  for (auto& [acc, times] : by_account) {
    std::sort(times.begin(), times.end());
    for (std::int64_t t : times) timeline.emplace_back(t, &acc);
  }
  std::sort(timeline.begin(), timeline.end(),
            [](const auto& x, const auto& y) {
              if (x.first != y.first) return x.first < y.first;
              return *x.second < *y.second;
            });

  // Only account pairs that ever co-post within delta_t can score, so sweep
  // the merged timeline to collect candidates instead of trying all pairs.
  std::set<std::pair<const std::string*, const std::string*>> candidate_pairs;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < timeline.size(); ++hi) {
    while (timeline[hi].first - timeline[lo].first > delta_t) ++lo;
    for (std::size_t k = lo; k < hi; ++k) {
      const std::string* a = timeline[k].second;
      const std::string* b = timeline[hi].second;
      if (a == b) continue;
      if (*b < *a) std::swap(a, b);
      candidate_pairs.insert({a, b});
    }
  }

  for (const auto& [pa, pb] : candidate_pairs) {
    const auto& ta = by_account[*pa];
    const auto& tb = by_account[*pb];
    const int co = std::min(matched_count(ta, tb, delta_t), matched_count(tb, ta, delta_t));
    if (co == 0) continue;
    const double denom = static_cast<double>(std::min(ta.size(), tb.size()));
    const double normalized = static_cast<double>(co) / denom;
    const bool better =
        normalized > result.max_normalized ||
        (normalized == result.max_normalized && result.max_normalized > 0.0 &&
         (*pa < result.top_pair.account_a ||
          (*pa == result.top_pair.account_a && *pb < result.top_pair.account_b)));
    if (better) {
      result.max_normalized = normalized;
      result.top_pair = {*pa, *pb, co, normalized};
    }
  }
  return result;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

CoordinationScore coordination_score(const std::string& narrative_id, double dup_fraction,
                                     double sync, int platform_span,
                                     const CoordinationWeights& weights) {
  if (dup_fraction < 0.0 || dup_fraction > 1.0) throw BadConfig("dup_fraction out of range");
  if (sync < 0.0 || sync > 1.0) throw BadConfig("synchrony out of range");
  if (platform_span < 1) throw BadConfig("platform_span must be >= 1");
  CoordinationScore out;
  out.narrative_id = narrative_id;
  out.dup_fraction = dup_fraction;
  out.synchrony = sync;
  out.platform_span = platform_span;
  const double span_term = static_cast<double>(std::min(platform_span - 1, 3)) / 3.0;
  out.score = logistic(weights.w_dup * dup_fraction + weights.w_sync * sync +
                       weights.w_span * span_term + weights.bias);
  return out;
}

}  // namespace disinfo::coordination

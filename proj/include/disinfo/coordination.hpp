#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "disinfo/ingest.hpp"

namespace disinfo::coordination {

// --- shingling / MinHash ----------------------------------------------------

// All consecutive k-word shingles of the case-folded, punctuation-stripped
// text; texts shorter than k words collapse to one full-token shingle. No
// words means no shingles.
std::set<std::string> shingle(std::string_view text, int k_words = 5);

// Same shingles as 64-bit keys, sorted and deduplicated. This is what the
// duplicate detector works with; collisions at 64 bits are negligible at desk
// scale.
std::vector<std::uint64_t> shingle_keys(std::string_view text, int k_words = 5);

// m per-function minima over the shingle set, deterministic for a given seed.
// Throws EmptyText on an empty shingle set.
std::vector<std::uint64_t> minhash_signature(const std::vector<std::uint64_t>& keys, int m,
                                             std::uint64_t seed);
std::vector<std::uint64_t> minhash_signature(const std::set<std::string>& shingles, int m,
                                             std::uint64_t seed);

double estimate_jaccard(const std::vector<std::uint64_t>& sig_a,
                        const std::vector<std::uint64_t>& sig_b);

double exact_jaccard(const std::vector<std::uint64_t>& keys_a,
                     const std::vector<std::uint64_t>& keys_b);

// --- duplicate clusters -------------------------------------------------------

struct DuplicateParams {
  int k_words = 5;
  int m = 128;
  int bands = 32;
  int rows = 4;
  double j_dup = 0.7;
  std::uint64_t seed = 0x5eed;
  int threads = 1;  // signature computation only; results identical at any count
};

struct DuplicateCluster {
  std::vector<std::string> post_ids;  // sorted, size >= 2
  std::vector<int> post_indices;      // sorted
  std::vector<std::uint64_t> representative_signature;
  std::vector<std::string> accounts;   // sorted unique author ids
  std::vector<std::string> platforms;  // sorted unique platform tags
  std::int64_t span_seconds = 0;       // max - min created_at
};

struct VerifiedPair {
  int a = 0;  // post indices, a < b
  int b = 0;
  double jaccard = 0.0;  // exact shingle Jaccard, >= j_dup
};

struct DuplicateResult {
  std::vector<DuplicateCluster> clusters;
  std::vector<VerifiedPair> verified_pairs;      // sorted by (a, b)
  std::vector<int> cluster_of;                   // post index -> cluster index or -1
};

// LSH banding proposes candidates; every candidate pair is verified against
// the exact shingle Jaccard before it can merge two posts, so reported pairs
// are sound by construction. Clusters are the transitive closure of verified
// pairs. Requires bands * rows == m.
DuplicateResult find_duplicate_clusters(const std::vector<ingest::Post>& posts,
                                        const DuplicateParams& params);

// --- temporal synchrony --------------------------------------------------------

struct SynchronyPair {
  std::string account_a;  // account_a < account_b
  std::string account_b;
  int co_count = 0;       // matched co-posting events
  double normalized = 0.0;
};

struct SynchronyResult {
  double max_normalized = 0.0;
  SynchronyPair top_pair;  // meaningful when max_normalized > 0
};

// For each unordered account pair: how many of the sparser account's posts
// have a counterpart from the other account within delta_t seconds, normalized
// by the smaller post count. Returns the maximum over pairs.
SynchronyResult synchrony(const std::vector<ingest::Post>& posts,
                          const std::vector<int>& post_indices, std::int64_t delta_t);

// --- fused coordination score ----------------------------------------------------

struct CoordinationWeights {
  double w_dup = 3.0;
  double w_sync = 1.5;
  double w_span = 1.5;
  double bias = -3.5;
};

struct CoordinationScore {
  std::string narrative_id;
  double dup_fraction = 0.0;  // narrative posts inside >=n_acc-account duplicate clusters
  double synchrony = 0.0;
  int platform_span = 1;
  double score = 0.0;
};

double logistic(double x);

// score = logistic(w1*dup + w2*sync + w3*min(span-1,3)/3 + bias)
CoordinationScore coordination_score(const std::string& narrative_id, double dup_fraction,
                                     double sync, int platform_span,
                                     const CoordinationWeights& weights);

}  // namespace disinfo::coordination

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace disinfo::attribution {

inline int hour_of(std::int64_t created_at) {
  return static_cast<int>((created_at % 86400) / 3600);
}

// Raw per-account evidence, counted by the caller.
struct AccountEvidence {
  std::string account_id;
  std::vector<int> post_hours;                  // one entry per post, 0..23
  std::map<std::string, int> domain_counts;     // registrable domain -> shares
  std::map<std::string, int> technique_counts;  // technique -> hits
  std::set<int> dup_clusters;                   // duplicate-cluster ids joined
};

struct AccountFingerprint {
  std::string account_id;
  std::array<double, 24> hour_histogram{};        // L1-normalized or all zero
  std::map<std::string, double> domain_distribution;
  std::map<std::string, double> technique_distribution;
  std::set<int> dup_clusters;
  // Concatenation of the three normalized blocks over the shared vocabularies;
  // zero blocks stand for missing evidence.
  Eigen::VectorXd vector;
};

// Vocabularies fix the vector layout: 24 hour bins, then domains, then
// techniques, both sorted.
AccountFingerprint fingerprint(const AccountEvidence& evidence,
                               const std::vector<std::string>& domain_vocab,
                               const std::vector<std::string>& technique_vocab);

// Sorted unions of the evidence keys, for callers that don't have an external
// vocabulary.
std::vector<std::string> domain_vocabulary(const std::vector<AccountEvidence>& evidence);
std::vector<std::string> technique_vocabulary(const std::vector<AccountEvidence>& evidence);

struct ActorFingerprint {
  std::vector<std::string> account_ids;  // sorted, nonempty
  std::array<double, 24> hour_histogram{};
  std::map<std::string, double> domain_distribution;
  std::map<std::string, double> technique_distribution;
  // Mean pairwise Jaccard of member duplicate-cluster sets; 0 for singletons.
  double dup_cluster_overlap = 0.0;
};

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Single-linkage agglomeration at the cosine threshold. All-zero vectors are
// skipped (cosine undefined there); groups come back sorted by their smallest
// account id.
std::vector<ActorFingerprint> group_actors(const std::vector<AccountFingerprint>& fingerprints,
                                           double cosine_threshold = 0.8);

}  // namespace disinfo::attribution

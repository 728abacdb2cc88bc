#include "disinfo/attribution.hpp"

#include <algorithm>
#include <cmath>

#include "disinfo/errors.hpp"

namespace disinfo::attribution {

namespace {

// Sum to 1 when anything is present; an empty block stays zero.
template <typename Map>
std::map<std::string, double> normalize_counts(const Map& counts) {
  double total = 0.0;
  for (const auto& [k, v] : counts) total += static_cast<double>(v);
  std::map<std::string, double> out;
  if (total <= 0.0) return out;
  for (const auto& [k, v] : counts)
    if (v > 0) out[k] = static_cast<double>(v) / total;
  return out;
}

}  // namespace

AccountFingerprint fingerprint(const AccountEvidence& evidence,
                               const std::vector<std::string>& domain_vocab,
                               const std::vector<std::string>& technique_vocab) {
  AccountFingerprint out;
  out.account_id = evidence.account_id;
  out.dup_clusters = evidence.dup_clusters;

  std::array<int, 24> hour_counts{};
  for (int h : evidence.post_hours) {
    if (h < 0 || h > 23) throw BadConfig("post hour out of range");
    ++hour_counts[static_cast<std::size_t>(h)];
  }
  const int hour_total = static_cast<int>(evidence.post_hours.size());
  if (hour_total > 0)
    for (std::size_t i = 0; i < 24; ++i)
      out.hour_histogram[i] = static_cast<double>(hour_counts[i]) / hour_total;

  out.domain_distribution = normalize_counts(evidence.domain_counts);
  out.technique_distribution = normalize_counts(evidence.technique_counts);

  const Eigen::Index dims =
      24 + static_cast<Eigen::Index>(domain_vocab.size() + technique_vocab.size());
  out.vector = Eigen::VectorXd::Zero(dims);
  for (Eigen::Index i = 0; i < 24; ++i)
    out.vector(i) = out.hour_histogram[static_cast<std::size_t>(i)];
  Eigen::Index off = 24;
  for (std::size_t i = 0; i < domain_vocab.size(); ++i) {
    const auto it = out.domain_distribution.find(domain_vocab[i]);
    if (it != out.domain_distribution.end())
      out.vector(off + static_cast<Eigen::Index>(i)) = it->second;
  }
  off += static_cast<Eigen::Index>(domain_vocab.size());
  for (std::size_t i = 0; i < technique_vocab.size(); ++i) {
    const auto it = out.technique_distribution.find(technique_vocab[i]);
    if (it != out.technique_distribution.end())
      out.vector(off + static_cast<Eigen::Index>(i)) = it->second;
  }
  return out;
}

std::vector<std::string> domain_vocabulary(const std::vector<AccountEvidence>& evidence) {
  std::set<std::string> vocab;
  for (const auto& e : evidence)
    for (const auto& [d, c] : e.domain_counts) vocab.insert(d);
  return {vocab.begin(), vocab.end()};
}

std::vector<std::string> technique_vocabulary(const std::vector<AccountEvidence>& evidence) {
  std::set<std::string> vocab;
  for (const auto& e : evidence)
    for (const auto& [t, c] : e.technique_counts) vocab.insert(t);
  return {vocab.begin(), vocab.end()};
}

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw BadConfig("cosine over mismatched dimensions");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw BadConfig("cosine undefined for zero vector");
  return a.dot(b) / (na * nb);
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
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

double set_jaccard(const std::set<int>& a, const std::set<int>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (int x : a)
    if (b.count(x)) ++inter;
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

std::vector<ActorFingerprint> group_actors(const std::vector<AccountFingerprint>& fingerprints,
                                           double cosine_threshold) {
  if (cosine_threshold < -1.0 || cosine_threshold > 1.0)
    throw BadConfig("cosine threshold out of range");

  // Stable processing order regardless of input order.
  std::vector<int> order(fingerprints.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return fingerprints[static_cast<std::size_t>(a)].account_id <
           fingerprints[static_cast<std::size_t>(b)].account_id;
  });

  std::vector<int> usable;
  for (int idx : order)
    if (fingerprints[static_cast<std::size_t>(idx)].vector.norm() > 0.0) usable.push_back(idx);

  UnionFind uf(static_cast<int>(usable.size()));
  for (std::size_t a = 0; a < usable.size(); ++a) {
    for (std::size_t b = a + 1; b < usable.size(); ++b) {
      const double cos =
          cosine_similarity(fingerprints[static_cast<std::size_t>(usable[a])].vector,
                            fingerprints[static_cast<std::size_t>(usable[b])].vector);
      if (cos >= cosine_threshold) uf.unite(static_cast<int>(a), static_cast<int>(b));
    }
  }

  std::map<int, std::vector<int>> groups;  // root (in usable order) -> fingerprint indices
  for (std::size_t i = 0; i < usable.size(); ++i)
    groups[uf.find(static_cast<int>(i))].push_back(usable[i]);

  std::vector<ActorFingerprint> out;
  for (const auto& [root, members] : groups) {
    ActorFingerprint actor;
    std::array<double, 24> hour_sum{};
    std::map<std::string, double> domain_sum;
    std::map<std::string, double> technique_sum;
    for (int idx : members) {
      const auto& fp = fingerprints[static_cast<std::size_t>(idx)];
      actor.account_ids.push_back(fp.account_id);
      for (std::size_t h = 0; h < 24; ++h) hour_sum[h] += fp.hour_histogram[h];
      for (const auto& [d, v] : fp.domain_distribution) domain_sum[d] += v;
      for (const auto& [t, v] : fp.technique_distribution) technique_sum[t] += v;
    }
    std::sort(actor.account_ids.begin(), actor.account_ids.end());

    double hour_total = 0.0;
    for (double v : hour_sum) hour_total += v;
    if (hour_total > 0.0)
      for (std::size_t h = 0; h < 24; ++h) actor.hour_histogram[h] = hour_sum[h] / hour_total;
    double domain_total = 0.0;
    for (const auto& [d, v] : domain_sum) domain_total += v;
    if (domain_total > 0.0)
      for (const auto& [d, v] : domain_sum) actor.domain_distribution[d] = v / domain_total;
    double technique_total = 0.0;
    for (const auto& [t, v] : technique_sum) technique_total += v;
    if (technique_total > 0.0)
      for (const auto& [t, v] : technique_sum)
        actor.technique_distribution[t] = v / technique_total;

    double overlap_sum = 0.0;
    int pairs = 0;
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        overlap_sum +=
            set_jaccard(fingerprints[static_cast<std::size_t>(members[a])].dup_clusters,
                        fingerprints[static_cast<std::size_t>(members[b])].dup_clusters);
        ++pairs;
      }
    }
    if (pairs > 0) actor.dup_cluster_overlap = overlap_sum / pairs;
    out.push_back(std::move(actor));
  }
  std::sort(out.begin(), out.end(), [](const ActorFingerprint& a, const ActorFingerprint& b) {
    return a.account_ids.front() < b.account_ids.front();
  });
  return out;
}

}  // namespace disinfo::attribution

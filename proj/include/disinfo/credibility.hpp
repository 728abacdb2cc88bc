#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "disinfo/ingest.hpp"

namespace disinfo::credibility {

struct DomainCredibility {
  double lowcred_fraction = 0.0;  // over URL-bearing posts only
  int url_posts = 0;
  int lowcred_posts = 0;  // posts sharing at least one listed registrable domain
  bool no_urls = false;   // annotation: empty denominator, fraction pinned to 0
};

// Membership is checked on the registrable domain of each canonical URL, so
// sub.domain.test hits a "domain.test" list entry.
DomainCredibility domain_credibility(const std::vector<ingest::Post>& posts,
                                     const std::vector<int>& post_indices,
                                     const std::set<std::string>& lowcred_domains);

struct AccountFlagParams {
  int a_min_days = 30;            // young_account: age at first in-scope post below this
  double r_skew = 20.0;           // follower_skew: following / max(followers, 1) above this
  double p_posts_per_hour = 20.0; // burst_poster: sustained hourly volume above this
};

struct AccountFlags {
  std::string author_id;
  bool young_account = false;
  bool follower_skew = false;
  bool handle_pattern = false;
  bool burst_poster = false;

  int flag_count() const {
    return (young_account ? 1 : 0) + (follower_skew ? 1 : 0) + (handle_pattern ? 1 : 0) +
           (burst_poster ? 1 : 0);
  }
  bool inauthentic() const { return flag_count() >= 2; }
};

// letters/underscore followed by six or more trailing digits
bool handle_matches_pattern(const std::string& handle);

// author_posts: indices into posts, all by one author.
AccountFlags account_flags(const std::vector<ingest::Post>& posts,
                           const std::vector<int>& author_posts,
                           const AccountFlagParams& params);

struct DeceptionWeights {
  double w_domain = 0.5;
  double w_account = 0.5;
};

struct DeceptionScore {
  std::string narrative_id;
  double lowcred_fraction = 0.0;
  double inauthentic_fraction = 0.0;
  double score = 0.0;
  bool no_urls = false;
};

DeceptionScore deception_score(const std::string& narrative_id, const DomainCredibility& domains,
                               double inauthentic_fraction,
                               const DeceptionWeights& weights = {});

}  // namespace disinfo::credibility

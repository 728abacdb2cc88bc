#include "disinfo/credibility.hpp"

#include <algorithm>
#include <cctype>

#include "disinfo/errors.hpp"

namespace disinfo::credibility {

DomainCredibility domain_credibility(const std::vector<ingest::Post>& posts,
                                     const std::vector<int>& post_indices,
                                     const std::set<std::string>& lowcred_domains) {
  DomainCredibility out;
  for (int idx : post_indices) {
    const auto& p = posts[static_cast<std::size_t>(idx)];
    if (p.urls.empty()) continue;
    ++out.url_posts;
    bool listed = false;
    for (const auto& url : p.urls) {
      std::string dom;
      try {
        dom = ingest::registrable_domain(url);
      } catch (const PipelineError&) {
        continue;  // unparseable stored URL cannot hit the list
      }
      if (lowcred_domains.count(dom)) {
        listed = true;
        break;
      }
    }
    if (listed) ++out.lowcred_posts;
  }
  if (out.url_posts == 0) {
    out.no_urls = true;
  } else {
    out.lowcred_fraction = static_cast<double>(out.lowcred_posts) /
                           static_cast<double>(out.url_posts);
  }
  return out;
}

bool handle_matches_pattern(const std::string& handle) {
  std::size_t digits = 0;
  std::size_t i = handle.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(handle[i - 1]))) {
    --i;
    ++digits;
  }
  if (digits < 6 || i == 0) return false;
  for (std::size_t k = 0; k < i; ++k) {
    const unsigned char c = static_cast<unsigned char>(handle[k]);
    if (!std::isalpha(c) && c != '_') return false;
  }
  return true;
}

AccountFlags account_flags(const std::vector<ingest::Post>& posts,
                           const std::vector<int>& author_posts,
                           const AccountFlagParams& params) {
  if (author_posts.empty()) throw BadConfig("account_flags needs at least one post");
  AccountFlags out;
  const auto& first = posts[static_cast<std::size_t>(author_posts.front())];
  out.author_id = first.author_id;

  std::vector<std::int64_t> times;
  times.reserve(author_posts.size());
  std::int64_t earliest = first.created_at;
  for (int idx : author_posts) {
    const auto& p = posts[static_cast<std::size_t>(idx)];
    times.push_back(p.created_at);
    earliest = std::min(earliest, p.created_at);
  }
  std::sort(times.begin(), times.end());

  if (first.author_created_at > 0) {
    const std::int64_t age = earliest - first.author_created_at;
    out.young_account = age < static_cast<std::int64_t>(params.a_min_days) * 86400;
  }

  const double followers = static_cast<double>(std::max<std::int64_t>(first.author_followers, 1));
  out.follower_skew =
      static_cast<double>(first.author_following) / followers > params.r_skew;

  out.handle_pattern = handle_matches_pattern(first.author_id);

  // Max posts inside any sliding hour; strict > keeps exactly-P posters clean.
  std::size_t lo = 0;
  std::size_t best = 0;
  for (std::size_t hi = 0; hi < times.size(); ++hi) {
    while (times[hi] - times[lo] >= 3600) ++lo;
    best = std::max(best, hi - lo + 1);
  }
  out.burst_poster = static_cast<double>(best) > params.p_posts_per_hour;

  return out;
}

DeceptionScore deception_score(const std::string& narrative_id, const DomainCredibility& domains,
                               double inauthentic_fraction, const DeceptionWeights& weights) {
  if (weights.w_domain < 0.0 || weights.w_account < 0.0 ||
      weights.w_domain + weights.w_account <= 0.0)
    throw BadConfig("deception weights must be non-negative and sum positive");
  if (inauthentic_fraction < 0.0 || inauthentic_fraction > 1.0)
    throw BadConfig("inauthentic_fraction out of range");
  DeceptionScore out;
  out.narrative_id = narrative_id;
  out.lowcred_fraction = domains.lowcred_fraction;
  out.inauthentic_fraction = inauthentic_fraction;
  out.no_urls = domains.no_urls;
  const double total = weights.w_domain + weights.w_account;
  out.score = (weights.w_domain * out.lowcred_fraction +
               weights.w_account * out.inauthentic_fraction) /
              total;
  return out;
}

}  // namespace disinfo::credibility

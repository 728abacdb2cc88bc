#include "disinfo/impact.hpp"

#include <algorithm>
#include <set>

#include "disinfo/errors.hpp"

namespace disinfo::impact {

UrlIndex build_url_index(const std::vector<ingest::Post>& posts) {
  UrlIndex index;
  for (const auto& p : posts) {
    std::set<std::string> seen;  // a post sharing the same url twice counts once
    for (const auto& url : p.urls) {
      if (!seen.insert(url).second) continue;
      index[url].push_back({p.created_at, p.author_id, p.post_id});
    }
  }
  for (auto& [url, shares] : index) {
    std::sort(shares.begin(), shares.end(), [](const UrlShare& a, const UrlShare& b) {
      if (a.created_at != b.created_at) return a.created_at < b.created_at;
      return a.post_id < b.post_id;
    });
  }
  return index;
}

ImpactReport impact_metrics(const std::string& narrative_id,
                            const std::vector<ingest::Post>& posts,
                            const std::vector<int>& narrative_posts,
                            const std::vector<WindowVolume>& volumes, const UrlIndex& url_index) {
  if (narrative_posts.empty()) throw StageError("impact", "narrative without posts");
  ImpactReport out;
  out.narrative_id = narrative_id;

  std::map<std::string, std::int64_t> follower_by_account;  // max profile snapshot per account
  std::set<std::string> platforms;
  std::int64_t t_first = 0;
  std::int64_t t_last = 0;
  bool first = true;
  // Narrative-internal first share per URL: time and sharing account.
  std::map<std::string, std::pair<std::int64_t, std::string>> first_share;

  for (int idx : narrative_posts) {
    const auto& p = posts[static_cast<std::size_t>(idx)];
    auto [it, inserted] = follower_by_account.try_emplace(p.author_id, p.author_followers);
    if (!inserted) it->second = std::max(it->second, p.author_followers);
    platforms.insert(p.platform);
    out.engagement_total += p.engagement.likes + p.engagement.shares + p.engagement.replies;
    if (first || p.created_at < t_first) t_first = p.created_at;
    if (first || p.created_at > t_last) t_last = p.created_at;
    first = false;
    for (const auto& url : p.urls) {
      auto fit = first_share.find(url);
      if (fit == first_share.end() || p.created_at < fit->second.first)
        first_share[url] = {p.created_at, p.author_id};
    }
  }

  for (const auto& [acc, followers] : follower_by_account)
    out.reach_upper_bound += std::max<std::int64_t>(followers, 0);
  out.platform_spread = static_cast<int>(platforms.size());
  out.amplification = static_cast<double>(out.engagement_total) /
                      static_cast<double>(std::max<std::size_t>(narrative_posts.size(), 1));

  if (!volumes.empty()) {
    const WindowVolume* peak = &volumes.front();
    for (const auto& v : volumes)
      if (v.posts > peak->posts) peak = &v;
    out.time_to_peak = std::max<std::int64_t>(0, peak->window_start - t_first);
    // A window can start after the last post only if it holds no narrative
    // posts, and such a window can never be the nonzero peak.
    out.time_to_peak = std::min(out.time_to_peak, std::max<std::int64_t>(0, t_last - t_first));
  }

  std::set<std::string> converters;
  for (const auto& [url, intro] : first_share) {
    const auto it = url_index.find(url);
    if (it == url_index.end()) continue;
    for (const auto& share : it->second) {
      if (share.created_at <= intro.first) continue;
      if (share.author_id == intro.second) continue;
      converters.insert(share.author_id);
    }
  }
  out.conversion_proxy = static_cast<int>(converters.size());
  return out;
}

}  // namespace disinfo::impact

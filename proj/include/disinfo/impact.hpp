#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "disinfo/ingest.hpp"

namespace disinfo::impact {

// Required verbatim in report metadata next to these metrics.
inline constexpr std::string_view kImpactCaveat =
    "online exposure does not necessarily correspond to offline behavioral changes";

struct ImpactReport {
  std::string narrative_id;
  std::int64_t reach_upper_bound = 0;  // follower sum over unique posting accounts
  std::int64_t engagement_total = 0;   // likes + shares + replies
  double amplification = 0.0;          // engagement_total / max(posts, 1)
  int platform_spread = 0;
  std::int64_t time_to_peak = 0;  // first post -> start of the max-volume window, >= 0
  int conversion_proxy = 0;       // later distinct accounts re-sharing narrative URLs
};

struct WindowVolume {
  std::int64_t window_start = 0;
  int posts = 0;
};

struct UrlShare {
  std::int64_t created_at = 0;
  std::string author_id;
  std::string post_id;
};

// canonical url -> shares sorted by (created_at, post_id), over the whole
// corpus. Built once; conversion proxies for every narrative read from it.
using UrlIndex = std::map<std::string, std::vector<UrlShare>>;

UrlIndex build_url_index(const std::vector<ingest::Post>& posts);

// volumes: narrative posts per window, in window order (only windows the
// narrative touches need appear). Peak ties resolve to the earliest window.
ImpactReport impact_metrics(const std::string& narrative_id,
                            const std::vector<ingest::Post>& posts,
                            const std::vector<int>& narrative_posts,
                            const std::vector<WindowVolume>& volumes,
                            const UrlIndex& url_index);

}  // namespace disinfo::impact

#include "disinfo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "disinfo/errors.hpp"
#include "disinfo/reference_data.hpp"

namespace disinfo::synth {

using nlohmann::json;

// --- samplers ----------------------------------------------------------------

double uniform01(SplitMix64& rng) {
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

double sample_exponential(SplitMix64& rng, double rate) {
  if (rate <= 0.0) throw BadConfig("exponential rate must be positive");
  // 1 - u is in (0, 1], so the log never sees zero
  return -std::log(1.0 - uniform01(rng)) / rate;
}

double sample_normal(SplitMix64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_truncated_normal(SplitMix64& rng, double sigma, double bound) {
  if (sigma < 0.0 || bound < 0.0) throw BadConfig("negative sigma or bound");
  if (sigma == 0.0) return 0.0;
  for (;;) {
    const double x = sample_normal(rng) * sigma;
    if (x >= -bound && x <= bound) return x;
  }
}

std::vector<double> diurnal_poisson_times(SplitMix64& rng, double base_rate_per_hour,
                                          double amplitude, double duration_hours) {
  if (base_rate_per_hour <= 0.0) throw BadConfig("rate must be positive");
  if (amplitude < 0.0 || amplitude >= 1.0) throw BadConfig("amplitude must be in [0,1)");
  if (duration_hours <= 0.0) throw BadConfig("duration must be positive");
  const double rate_max = base_rate_per_hour * (1.0 + amplitude);
  std::vector<double> times;
  double t = 0.0;
  for (;;) {
    t += sample_exponential(rng, rate_max);
    if (t >= duration_hours) break;
    if (amplitude == 0.0) {
      times.push_back(t);
      continue;
    }
    const double rate_t =
        base_rate_per_hour * (1.0 + amplitude * std::sin(2.0 * std::numbers::pi * t / 24.0));
    if (uniform01(rng) * rate_max <= rate_t) times.push_back(t);
  }
  return times;
}

// --- scenario config ----------------------------------------------------------

void ScenarioConfig::validate() const {
  if (n_organic_accounts < 0) throw BadConfig("n_organic_accounts must be >= 0");
  if (n_campaigns < 0 || accounts_per_campaign < 0)
    throw BadConfig("campaign counts must be >= 0");
  if (n_campaigns > 0 && accounts_per_campaign == 0)
    throw BadConfig("campaigns need at least one account each");
  if (n_platforms < 1) throw BadConfig("n_platforms must be >= 1");
  if (duration_hours <= 0.0) throw BadConfig("duration_hours must be positive");
  if (organic_rate_per_hour <= 0.0) throw BadConfig("organic_rate_per_hour must be positive");
  if (diurnal_amplitude < 0.0 || diurnal_amplitude >= 1.0)
    throw BadConfig("diurnal_amplitude must be in [0,1)");
  for (double h : shift_starts_hours)
    if (h < 0.0 || h >= duration_hours) throw BadConfig("shift start outside duration");
  if (posts_per_shift < 1) throw BadConfig("posts_per_shift must be >= 1");
  if (edit_rate < 0.0 || edit_rate > 1.0) throw BadConfig("edit_rate must be in [0,1]");
  if (template_words < 5) throw BadConfig("template_words must be >= 5");
  if (sync_jitter_seconds < 0.0) throw BadConfig("sync_jitter_seconds must be >= 0");
  if (seed == 0) throw BadConfig("seed must be set (nonzero; no wall-clock entropy)");
  if (t0 <= 0) throw BadConfig("t0 must be positive");
}

std::vector<double> ScenarioConfig::effective_shifts() const {
  if (!shift_starts_hours.empty()) return shift_starts_hours;
  std::vector<double> shifts;
  for (double h = 2.0; h < duration_hours; h += 8.0) shifts.push_back(h);
  return shifts;
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
  if (!j.is_object()) throw BadConfig("scenario must be a JSON object");
  ScenarioConfig cfg;
  std::set<std::string> known = {
      "n_organic_accounts", "n_campaigns",   "accounts_per_campaign", "n_platforms",
      "duration_hours",     "organic_rate_per_hour", "diurnal_amplitude",
      "shift_starts_hours", "posts_per_shift", "edit_rate", "template_words",
      "sync_jitter_seconds", "seed", "t0"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw BadConfig("unknown scenario key '" + it.key() + "'");
  auto get = [&](const char* key, auto& out) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    try {
      out = it->get<std::remove_reference_t<decltype(out)>>();
    } catch (const json::exception&) {
      throw BadConfig(std::string("scenario key '") + key + "' has the wrong type");
    }
  };
  get("n_organic_accounts", cfg.n_organic_accounts);
  get("n_campaigns", cfg.n_campaigns);
  get("accounts_per_campaign", cfg.accounts_per_campaign);
  get("n_platforms", cfg.n_platforms);
  get("duration_hours", cfg.duration_hours);
  get("organic_rate_per_hour", cfg.organic_rate_per_hour);
  get("diurnal_amplitude", cfg.diurnal_amplitude);
  get("shift_starts_hours", cfg.shift_starts_hours);
  get("posts_per_shift", cfg.posts_per_shift);
  get("edit_rate", cfg.edit_rate);
  get("template_words", cfg.template_words);
  get("sync_jitter_seconds", cfg.sync_jitter_seconds);
  get("seed", cfg.seed);
  get("t0", cfg.t0);
  return cfg;
}

json ScenarioConfig::to_json() const {
  return {{"n_organic_accounts", n_organic_accounts},
          {"n_campaigns", n_campaigns},
          {"accounts_per_campaign", accounts_per_campaign},
          {"n_platforms", n_platforms},
          {"duration_hours", duration_hours},
          {"organic_rate_per_hour", organic_rate_per_hour},
          {"diurnal_amplitude", diurnal_amplitude},
          {"shift_starts_hours", shift_starts_hours},
          {"posts_per_shift", posts_per_shift},
          {"edit_rate", edit_rate},
          {"template_words", template_words},
          {"sync_jitter_seconds", sync_jitter_seconds},
          {"seed", seed},
          {"t0", t0}};
}

// --- word pools ----------------------------------------------------------------

namespace {

// Organic filler: concrete nouns only, disjoint from every lexicon cue word so
// random salads can never trip the agenda detector.
const char* const kBaseWords[] = {
    "morning", "coffee",  "harbor",  "garden",  "bridge",  "market",  "sunset", "river",
    "bakery",  "weekend", "photo",   "concert", "recipe",  "bicycle", "library", "museum",
    "puppy",   "kitten",  "soup",    "jacket",  "autumn",  "spring",  "winter", "summer",
    "breeze",  "cloud",   "street",  "corner",  "window",  "lamp",    "novel",  "poem",
    "song",    "guitar",  "piano",   "violin",  "painting", "sketch", "canvas", "trail",
    "mountain", "valley", "meadow",  "forest",  "lake",    "shore",   "wave",   "sand",
    "shell",   "kite",    "picnic",  "cheese",  "bread",   "honey",   "jam",    "lemon",
    "ginger",  "basil",   "tomato",  "pepper",  "salad",   "pasta",   "noodle", "dumpling",
    "pancake", "waffle",  "syrup",   "berry",   "apple",   "pear",    "plum",   "peach",
    "grape",   "melon",   "walnut",  "almond",  "maple",   "oak",     "cedar",  "pine",
    "fern",    "moss",    "ivy",     "tulip",   "daisy",   "rose",    "lily",   "orchid",
    "cactus",  "pebble",  "stone",   "brick",   "tile",    "roof",    "porch",  "fence",
    "gate",    "yard",    "swing",   "lantern", "teapot",  "mug",     "scarf",  "mitten",
};
constexpr std::size_t kBaseWordCount = sizeof(kBaseWords) / sizeof(kBaseWords[0]);

const char* const kTopicHashtags[] = {
    "citygarden",  "weekendhike", "localmarket", "rainydays",   "coffeetime",  "booknook",
    "trailrun",    "homebaking",  "streetphoto", "vinylnight",  "morningrun",  "bikecommute",
    "parkconcert", "harborwalk",  "autumnleaves", "soupseason", "gallerynight", "puppylove",
    "plantparent", "boardgames",  "stargazing",  "tidepools",   "farmstand",   "quietreading",
};
constexpr std::size_t kTopicHashtagCount = sizeof(kTopicHashtags) / sizeof(kTopicHashtags[0]);

// Campaign template vocabulary, disjoint from the base pool and from cue words.
const char* const kCampaignWords[] = {
    "quarryside", "northgate",  "eastbank",  "millbrook",  "stonebridge", "redhill",
    "fairmont",   "lakewood",   "ironwood",  "silverpine", "oakmont",     "ridgeline",
    "summitview", "brookfield", "clearwater", "whitfield", "ashford",     "belmont",
    "carlton",    "denholm",    "ellsworth", "fenwick",    "grantham",    "hartley",
    "ingram",     "jennings",   "kingsley",  "lambert",    "merrick",     "norwood",
    "oswald",     "pemberton",  "quimby",    "radcliffe",  "sherwood",    "thornton",
    "underwood",  "vexley",     "wadsworth", "yarrow",     "zelden",      "alcott",
    "bromley",    "cresswell",  "dunmore",   "everhart",   "foxglove",    "hollis",
};
constexpr std::size_t kCampaignWordCount = sizeof(kCampaignWords) / sizeof(kCampaignWords[0]);

const char* const kCampaignHashtags[] = {
    "dawnbreakrising", "truthsurge",    "libertyfront",   "homelandfirst", "wakethenation",
    "redpilldaily",    "sovereignvoice", "patriotpulse",  "freedomtide",   "nationalawakening",
    "silentnomore",    "ironresolve",   "reclaimtomorrow", "unchainedvoice", "thegreatreturn",
    "peoplespulse",    "newdawnnow",    "standardbearers", "truthconvoy",   "risingtide",
};
constexpr std::size_t kCampaignHashtagCount =
    sizeof(kCampaignHashtags) / sizeof(kCampaignHashtags[0]);

const char* const kHandleStems[] = {
    "freedomeagle", "patriotvoice", "truthwarrior",  "libertyhawk",
    "nationpride",  "homelandwatch", "silentpatriot", "wakeupnow",
};
constexpr std::size_t kHandleStemCount = sizeof(kHandleStems) / sizeof(kHandleStems[0]);

const char* const kOrganicDomains[] = {
    "cityharborpress.example",  "greenvalleyjournal.example", "lakesidedaily.example",
    "northpierreview.example",  "oldtownledger.example",      "morningquaynews.example",
};
constexpr std::size_t kOrganicDomainCount = sizeof(kOrganicDomains) / sizeof(kOrganicDomains[0]);

std::uint64_t stream_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return fnv1a64_u64(index, fnv1a64(label, fnv1a64_u64(seed)));
}

std::uint64_t pick(SplitMix64& rng, std::uint64_t n) { return rng.next() % n; }

std::string platform_name(int index) {
  static const char* const names[] = {"alpha", "beta", "gamma", "delta",
                                      "epsilon", "zeta", "eta", "theta"};
  if (index < 8) return names[index];
  return "p" + std::to_string(index);
}

struct Topic {
  std::string tag_a;
  std::string tag_b;
  std::string alias;  // dictionary term to weave in; may be empty
};

std::vector<Topic> make_topics() {
  std::vector<std::string> aliases;
  for (const auto& [alias, canon] : reference::starter_entity_dictionary())
    aliases.push_back(alias);
  std::sort(aliases.begin(), aliases.end());
  std::vector<Topic> topics;
  for (std::size_t i = 0; 2 * i + 1 < kTopicHashtagCount; ++i) {
    Topic t;
    t.tag_a = kTopicHashtags[2 * i];
    t.tag_b = kTopicHashtags[2 * i + 1];
    if (i < aliases.size()) t.alias = aliases[i];
    topics.push_back(std::move(t));
  }
  return topics;
}

// Campaign template: sampled campaign words with three cue phrases spliced in,
// one cue from each of three techniques. Wildcards are instantiated with a
// campaign word so the emitted text still matches the wildcard cue.
std::string make_template(SplitMix64& rng, int n_words, int campaign_index) {
  const auto lexicon = reference::starter_propaganda_lexicon();
  std::vector<std::pair<std::string, std::vector<std::string>>> techniques(lexicon.begin(),
                                                                           lexicon.end());
  std::vector<std::string> words;
  words.reserve(static_cast<std::size_t>(n_words) + 12);
  for (int i = 0; i < n_words; ++i)
    words.push_back(kCampaignWords[pick(rng, kCampaignWordCount)]);

  std::vector<std::string> cue_inserts;
  for (int k = 0; k < 3; ++k) {
    const auto& [name, cues] =
        techniques[static_cast<std::size_t>((campaign_index + k * 2)) % techniques.size()];
    std::string cue = cues[pick(rng, cues.size())];
    std::string instantiated;
    for (char c : cue) {
      if (c == '*')
        instantiated += kCampaignWords[pick(rng, kCampaignWordCount)];
      else
        instantiated.push_back(c);
    }
    cue_inserts.push_back(std::move(instantiated));
  }

  // splice at thirds so cues never collide
  const std::size_t step = words.size() / 4;
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!out.empty()) out.push_back(' ');
    out += words[i];
    if (i == step) out += " " + cue_inserts[0];
    if (i == 2 * step) out += " " + cue_inserts[1];
    if (i == 3 * step) out += " " + cue_inserts[2];
  }
  return out;
}

// Replace one word (chosen uniformly) with probability edit_rate; otherwise
// the template passes through verbatim. Keeps mean pairwise shingle Jaccard
// high inside a campaign.
std::string edit_template(SplitMix64& rng, const std::string& template_text, double edit_rate) {
  if (uniform01(rng) >= edit_rate) return template_text;
  std::vector<std::string> words;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= template_text.size(); ++i) {
    if (i == template_text.size() || template_text[i] == ' ') {
      if (i > start) words.push_back(template_text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (words.empty()) return template_text;
  words[pick(rng, words.size())] = kCampaignWords[pick(rng, kCampaignWordCount)];
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

}  // namespace

// --- corpus generation ----------------------------------------------------------

Corpus generate_corpus(const ScenarioConfig& cfg) {
  cfg.validate();
  Corpus corpus;
  const auto topics = make_topics();
  const auto shifts = cfg.effective_shifts();

  std::vector<std::string> lowcred;
  for (const auto& d : reference::starter_low_credibility_domains()) lowcred.push_back(d);
  std::sort(lowcred.begin(), lowcred.end());

  struct Pending {
    GeneratedPost post;
    std::uint64_t account_seq;  // per-account post counter, for a unique sort key
    std::string campaign;       // empty = organic
  };
  std::vector<Pending> pending;

  // organic accounts
  for (int i = 0; i < cfg.n_organic_accounts; ++i) {
    SplitMix64 rng{stream_seed(cfg.seed, "organic", static_cast<std::uint64_t>(i))};
    GeneratedPost proto;
    proto.account_id = std::string("org_") + kBaseWords[pick(rng, kBaseWordCount)] + "_" +
                       kBaseWords[pick(rng, kBaseWordCount)] + "_" + std::to_string(i);
    const std::int64_t age_days = 100 + static_cast<std::int64_t>(pick(rng, 1300));
    proto.author_created_at = cfg.t0 - age_days * 86400;
    proto.followers = 50 + static_cast<std::int64_t>(pick(rng, 4950));
    proto.following =
        std::min<std::int64_t>(3 * proto.followers, 50 + static_cast<std::int64_t>(pick(rng, 900)));
    proto.platform = platform_name(i % cfg.n_platforms);

    const std::size_t topic_a = pick(rng, topics.size());
    const std::size_t topic_b = pick(rng, topics.size());

    const auto times =
        diurnal_poisson_times(rng, cfg.organic_rate_per_hour, cfg.diurnal_amplitude,
                              cfg.duration_hours);
    std::uint64_t seq = 0;
    for (double h : times) {
      Pending p;
      p.post = proto;
      p.post.created_at = cfg.t0 + static_cast<std::int64_t>(h * 3600.0);
      const Topic& topic = topics[uniform01(rng) < 0.5 ? topic_a : topic_b];

      std::string text;
      const int n_fill = 8 + static_cast<int>(pick(rng, 9));
      const int alias_at = 2 + static_cast<int>(pick(rng, 4));
      for (int w = 0; w < n_fill; ++w) {
        if (!text.empty()) text.push_back(' ');
        text += kBaseWords[pick(rng, kBaseWordCount)];
        if (w == alias_at && !topic.alias.empty() && uniform01(rng) < 0.4)
          text += " " + topic.alias;
      }
      text += " #" + topic.tag_a;
      if (uniform01(rng) < 0.5) text += " #" + topic.tag_b;
      if (uniform01(rng) < 0.25) {
        text += " https://www.";
        text += kOrganicDomains[pick(rng, kOrganicDomainCount)];
        text += "/articles/" + std::to_string(pick(rng, 40));
      }
      p.post.text = std::move(text);
      p.post.likes = static_cast<std::int64_t>(pick(rng, 12));
      p.post.shares = static_cast<std::int64_t>(pick(rng, 4));
      p.post.replies = static_cast<std::int64_t>(pick(rng, 3));
      p.account_seq = seq++;
      pending.push_back(std::move(p));
    }
  }

  // campaigns
  for (int c = 0; c < cfg.n_campaigns; ++c) {
    SplitMix64 crng{stream_seed(cfg.seed, "campaign", static_cast<std::uint64_t>(c))};
    CampaignTruth truth;
    truth.campaign_id = "k" + std::to_string(c);
    if (2 * static_cast<std::size_t>(c) + 1 < kCampaignHashtagCount) {
      truth.hashtags = {kCampaignHashtags[2 * c], kCampaignHashtags[2 * c + 1]};
    } else {
      truth.hashtags = {"camp" + std::to_string(c) + "a", "camp" + std::to_string(c) + "b"};
    }
    truth.domain = lowcred[static_cast<std::size_t>(c) % lowcred.size()];
    truth.template_text = make_template(crng, cfg.template_words, c);

    for (int s = 0; s < cfg.accounts_per_campaign; ++s) {
      SplitMix64 rng{stream_seed(cfg.seed, "campaign_account",
                                 static_cast<std::uint64_t>(c) * 1000 +
                                     static_cast<std::uint64_t>(s))};
      GeneratedPost proto;
      proto.account_id = std::string(kHandleStems[pick(rng, kHandleStemCount)]) +
                         std::to_string(1000000 + static_cast<int>(pick(rng, 9000000)));
      const std::int64_t age_days = 5 + static_cast<std::int64_t>(pick(rng, 20));
      proto.author_created_at = cfg.t0 - age_days * 86400;
      proto.followers = 5 + static_cast<std::int64_t>(pick(rng, 45));
      proto.following = 2200 + static_cast<std::int64_t>(pick(rng, 3800));
      proto.platform = platform_name((c + s) % cfg.n_platforms);
      truth.account_ids.push_back(proto.account_id);
      corpus.truth.account_campaign[proto.account_id] = truth.campaign_id;

      std::uint64_t seq = 0;
      for (std::size_t shift = 0; shift < shifts.size(); ++shift) {
        const std::int64_t shift_at =
            cfg.t0 + static_cast<std::int64_t>(shifts[shift] * 3600.0);
        const std::string url = "https://" + truth.domain + "/story/" + truth.campaign_id +
                                "/" + std::to_string(shift);
        for (int k = 0; k < cfg.posts_per_shift; ++k) {
          Pending p;
          p.post = proto;
          const double jitter = sample_truncated_normal(rng, cfg.sync_jitter_seconds,
                                                        3.0 * cfg.sync_jitter_seconds);
          p.post.created_at = shift_at + static_cast<std::int64_t>(jitter);
          p.post.text = edit_template(rng, truth.template_text, cfg.edit_rate) + " #" +
                        truth.hashtags[0] + " #" + truth.hashtags[1] + " " + url;
          p.post.likes = static_cast<std::int64_t>(pick(rng, 3));
          p.post.shares = static_cast<std::int64_t>(pick(rng, 2));
          p.post.replies = static_cast<std::int64_t>(pick(rng, 2));
          p.account_seq = seq++;
          p.campaign = truth.campaign_id;
          pending.push_back(std::move(p));
        }
      }
    }
    std::sort(truth.account_ids.begin(), truth.account_ids.end());
    corpus.truth.campaigns.push_back(std::move(truth));
  }

  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    if (a.post.created_at != b.post.created_at) return a.post.created_at < b.post.created_at;
    if (a.post.account_id != b.post.account_id) return a.post.account_id < b.post.account_id;
    return a.account_seq < b.account_seq;
  });

  // ids assigned per platform, in time order, after the global sort
  std::map<std::string, int> counters;
  corpus.posts.reserve(pending.size());
  for (auto& p : pending) {
    const int n = counters[p.post.platform]++;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%06d", n);
    p.post.post_id = p.post.platform + "-" + buf;
    if (!p.campaign.empty()) corpus.truth.post_campaign[p.post.post_id] = p.campaign;
    corpus.posts.push_back(std::move(p.post));
  }
  // ids exist only now, so the promised (created_at, post_id) order needs one
  // more pass; within a platform it already holds.
  std::sort(corpus.posts.begin(), corpus.posts.end(),
            [](const GeneratedPost& a, const GeneratedPost& b) {
              if (a.created_at != b.created_at) return a.created_at < b.created_at;
              return a.post_id < b.post_id;
            });
  return corpus;
}

// --- serialization ----------------------------------------------------------------

namespace {

// epoch seconds -> "YYYY-MM-DDTHH:MM:SSZ" (proleptic Gregorian)
std::string format_iso(std::int64_t ts) {
  std::int64_t days = ts / 86400;
  std::int64_t rem = ts % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  // civil-from-days
  std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = yoe + era * 400;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
  const std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
  const std::int64_t year = m <= 2 ? y + 1 : y;

  char buf[128];
  std::snprintf(buf, sizeof(buf), "%04lld-%02lld-%02lldT%02lld:%02lld:%02lldZ",
                static_cast<long long>(year), static_cast<long long>(m),
                static_cast<long long>(d), static_cast<long long>(rem / 3600),
                static_cast<long long>((rem % 3600) / 60), static_cast<long long>(rem % 60));
  return buf;
}

json record_for(const GeneratedPost& p, int schema) {
  switch (schema) {
    case 0:  // flat ids, numeric timestamps, nested user object
      return {{"id", p.post_id},
              {"text", p.text},
              {"ts", p.created_at},
              {"likes", p.likes},
              {"shares", p.shares},
              {"replies", p.replies},
              {"user",
               {{"id", p.account_id},
                {"created_at", p.author_created_at},
                {"followers", p.followers},
                {"following", p.following}}}};
    case 1:  // author block with different count names, reaction block
      return {{"uid", p.post_id},
              {"body", p.text},
              {"posted", p.created_at},
              {"author",
               {{"name", p.account_id},
                {"created", p.author_created_at},
                {"follower_count", p.followers},
                {"following_count", p.following}}},
              {"reactions",
               {{"likes", p.likes}, {"reposts", p.shares}, {"comments", p.replies}}}};
    default:  // ISO-8601 timestamps throughout
      return {{"guid", p.post_id},
              {"content", p.text},
              {"posted_at", format_iso(p.created_at)},
              {"acct",
               {{"handle", p.account_id},
                {"signup", format_iso(p.author_created_at)},
                {"audience", p.followers},
                {"follows", p.following}}},
              {"stats", {{"favs", p.likes}, {"boosts", p.shares}, {"notes", p.replies}}}};
  }
}

json adapter_for(int schema) {
  switch (schema) {
    case 0:
      return {{"post_id", "id"},
              {"author_id", "user.id"},
              {"author_created_at", "user.created_at"},
              {"author_followers", "user.followers"},
              {"author_following", "user.following"},
              {"text", "text"},
              {"created_at", "ts"},
              {"likes", "likes"},
              {"shares", "shares"},
              {"replies", "replies"}};
    case 1:
      return {{"post_id", "uid"},
              {"author_id", "author.name"},
              {"author_created_at", "author.created"},
              {"author_followers", "author.follower_count"},
              {"author_following", "author.following_count"},
              {"text", "body"},
              {"created_at", "posted"},
              {"likes", "reactions.likes"},
              {"shares", "reactions.reposts"},
              {"replies", "reactions.comments"}};
    default:
      return {{"post_id", "guid"},
              {"author_id", "acct.handle"},
              {"author_created_at", "acct.signup"},
              {"author_followers", "acct.audience"},
              {"author_following", "acct.follows"},
              {"text", "content"},
              {"created_at", "posted_at"},
              {"likes", "stats.favs"},
              {"shares", "stats.boosts"},
              {"replies", "stats.notes"}};
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("short write to " + path);
}

}  // namespace

GenerateResult generate(const ScenarioConfig& cfg, const std::string& out_dir) {
  const Corpus corpus = generate_corpus(cfg);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "posts", ec);
  fs::create_directories(fs::path(out_dir) / "adapters", ec);
  fs::create_directories(fs::path(out_dir) / "lists", ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

  GenerateResult result;
  result.total_posts = static_cast<int>(corpus.posts.size());
  result.campaign_posts = static_cast<int>(corpus.truth.post_campaign.size());

  // platform record files, one schema style per platform (rotating)
  std::map<std::string, std::string> buffers;
  std::map<std::string, int> schema_of;
  for (int i = 0; i < cfg.n_platforms; ++i) {
    const std::string name = platform_name(i);
    buffers[name];
    schema_of[name] = i % 3;
  }
  for (const auto& p : corpus.posts)
    buffers[p.platform] += record_for(p, schema_of[p.platform]).dump() + "\n";

  json config_inputs = json::array();
  for (int i = 0; i < cfg.n_platforms; ++i) {
    const std::string name = platform_name(i);
    const std::string posts_rel = "posts/" + name + ".ndjson";
    const std::string adapter_rel = "adapters/" + name + ".json";
    write_text_file((fs::path(out_dir) / posts_rel).string(), buffers[name]);
    write_text_file((fs::path(out_dir) / adapter_rel).string(),
                    adapter_for(schema_of[name]).dump(2) + "\n");
    result.platform_names.push_back(name);
    result.platform_paths.push_back((fs::path(out_dir) / posts_rel).string());
    result.adapter_paths.push_back((fs::path(out_dir) / adapter_rel).string());
    config_inputs.push_back({{"name", name}, {"path", posts_rel}, {"adapter", adapter_rel}});
  }

  // reference lists (copies of the bundled starters, so runs are file-driven)
  {
    std::vector<std::string> domains;
    for (const auto& d : reference::starter_low_credibility_domains()) domains.push_back(d);
    std::sort(domains.begin(), domains.end());
    std::string body = "# low-credibility registrable domains (starter copy)\n";
    for (const auto& d : domains) body += d + "\n";
    write_text_file((fs::path(out_dir) / "lists" / "low_credibility_domains.txt").string(), body);

    json dict = json::object();
    for (const auto& [alias, canon] : reference::starter_entity_dictionary()) dict[alias] = canon;
    write_text_file((fs::path(out_dir) / "lists" / "entities.json").string(), dict.dump(2) + "\n");

    json lex = json::object();
    for (const auto& [tech, cues] : reference::starter_propaganda_lexicon()) lex[tech] = cues;
    write_text_file((fs::path(out_dir) / "lists" / "lexicon.json").string(), lex.dump(2) + "\n");
  }

  // ground truth: one line per post, account and campaign
  {
    std::string body;
    for (const auto& p : corpus.posts) {
      json line = {{"type", "post"}, {"post_id", p.post_id}};
      const auto it = corpus.truth.post_campaign.find(p.post_id);
      if (it != corpus.truth.post_campaign.end()) {
        line["label"] = "campaign";
        line["campaign_id"] = it->second;
      } else {
        line["label"] = "organic";
      }
      body += line.dump() + "\n";
    }
    std::set<std::string> organic_accounts;
    for (const auto& p : corpus.posts)
      if (!corpus.truth.account_campaign.count(p.account_id))
        organic_accounts.insert(p.account_id);
    for (const auto& acc : organic_accounts)
      body += json{{"type", "account"}, {"account_id", acc}, {"label", "organic"}}.dump() + "\n";
    for (const auto& [acc, camp] : corpus.truth.account_campaign)
      body += json{{"type", "account"},
                   {"account_id", acc},
                   {"label", "campaign"},
                   {"campaign_id", camp}}
                  .dump() +
              "\n";
    for (const auto& c : corpus.truth.campaigns)
      body += json{{"type", "campaign"},
                   {"campaign_id", c.campaign_id},
                   {"accounts", c.account_ids},
                   {"hashtags", c.hashtags},
                   {"domain", c.domain},
                   {"template", c.template_text}}
                  .dump() +
              "\n";
    result.ground_truth_path = (fs::path(out_dir) / "ground_truth.ndjson").string();
    write_text_file(result.ground_truth_path, body);
  }

  // scenario echo + ready-to-run pipeline config (paths relative to the file)
  result.scenario_config_path = (fs::path(out_dir) / "scenario_config.json").string();
  write_text_file(result.scenario_config_path, cfg.to_json().dump(2) + "\n");

  json pipeline = {
      {"inputs", config_inputs},
      {"lists",
       {{"low_credibility", "lists/low_credibility_domains.txt"},
        {"entities", "lists/entities.json"},
        {"lexicon", "lists/lexicon.json"}}},
      {"seed", cfg.seed}};
  result.pipeline_config_path = (fs::path(out_dir) / "pipeline_config.json").string();
  write_text_file(result.pipeline_config_path, pipeline.dump(2) + "\n");

  return result;
}

}  // namespace disinfo::synth

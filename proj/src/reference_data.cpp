#include "disinfo/reference_data.hpp"

namespace disinfo::reference {

std::string_view public_suffix_snapshot() {
  // Frozen snapshot, not a live copy of the public suffix list. Covers the
  // generic TLDs, the multi-level country registries the tests exercise, a
  // handful of hosting providers that act as registries, and the RFC 2606
  // reserved TLDs used by the bundled synthetic corpora.
  static constexpr std::string_view kSnapshot = R"(# public suffix snapshot (offline)
com
net
org
edu
gov
mil
int
info
biz
io
co
ai
app
dev
xyz
online
site
news
blog
me
tv
cc
us
ca
mx
ar
cl
br
de
fr
it
nl
es
pt
se
no
fi
dk
pl
cz
at
ch
be
ie
ru
ua
jp
kr
cn
in
au
nz
za
uk
co.uk
org.uk
gov.uk
ac.uk
plc.uk
net.uk
co.jp
or.jp
ne.jp
ac.jp
go.jp
com.au
net.au
org.au
edu.au
gov.au
co.nz
org.nz
net.nz
govt.nz
com.br
org.br
net.br
gov.br
com.cn
org.cn
net.cn
gov.cn
co.in
org.in
net.in
firm.in
co.kr
or.kr
go.kr
co.za
org.za
web.za
blogspot.com
blogspot.co.uk
blogspot.de
github.io
gitlab.io
herokuapp.com
wordpress.com
s3.amazonaws.com
cloudfront.net
*.ck
!www.ck
test
example
invalid
localhost
)";
  return kSnapshot;
}

std::unordered_set<std::string> starter_low_credibility_domains() {
  return {
      "libertybeacon.test",  "eaglewire.test",       "patriotpulse.test",
      "dailytruthwire.test", "freedomfeed.test",     "sovereignpost.test",
      "therealreport.test",  "midnightledger.test",  "shadowgazette.test",
      "truthstorm.test",     "viralpatriot.test",    "deepstatewatch.test",
      "crimsonbulletin.test", "starspanglednews.test", "undergroundwire.test",
      "rapidrumor.test",
  };
}

std::unordered_map<std::string, std::string> starter_entity_dictionary() {
  return {
      {"metro transit plan", "metro_plan"},
      {"the metro plan", "metro_plan"},
      {"harvest festival", "harvest_festival"},
      {"fall harvest fair", "harvest_festival"},
      {"city council", "city_council"},
      {"the council", "city_council"},
      {"river cleanup", "river_cleanup"},
      {"voltage grid upgrade", "grid_upgrade"},
      {"grid upgrade", "grid_upgrade"},
  };
}

std::map<std::string, std::vector<std::string>> starter_propaganda_lexicon() {
  // Illustrative cue list only; a deployment-grade lexicon is user-supplied.
  return {
      {"loaded_language",
       {"crooked", "corrupt elites", "radical mob", "total disaster", "rigged system",
        "witch hunt", "enemy of the people", "poisoning our *", "destroying our country",
        "criminal cabal", "shadowy network", "utter betrayal"}},
      {"name_calling",
       {"lying *", "crooked *", "fake news media", "puppet of *", "sellout", "shill",
        "sheeple", "snowflake", "traitor class", "globalist stooge", "regime mouthpiece",
        "bootlicker"}},
      {"doubt",
       {"so called", "allegedly", "do your own research", "they don't want you to know",
        "makes you wonder", "who really benefits", "can we really trust",
        "the media won't tell you", "what are they hiding", "no one is asking why",
        "conveniently ignored", "supposedly"}},
      {"flag_waving",
       {"real americans", "our great nation", "patriots must *", "defend our country",
        "for our children", "our way of life", "true patriots", "stand with our troops",
        "take back our *", "the silent majority", "god and country", "duty to our homeland"}},
      {"slogans",
       {"reclaim the republic", "truth over tyranny", "the people have spoken",
        "rise and resist", "save our streets", "freedom isn't free", "one nation one voice",
        "enough is enough", "the tide is turning", "stand up speak out",
        "power to the people", "march for the truth"}},
  };
}

}  // namespace disinfo::reference

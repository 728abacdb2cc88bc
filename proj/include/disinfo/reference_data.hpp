#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace disinfo::reference {

// Public-suffix snapshot bundled with the binary. One rule per line:
// "suffix", "*.suffix" (wildcard label) or "!suffix" (exception).
std::string_view public_suffix_snapshot();

// Starter reference lists. These are illustrative defaults so the pipeline
// runs out of the box; real deployments supply their own files through the
// config. Domains use RFC 2606 reserved TLDs so none of them can resolve.
std::unordered_set<std::string> starter_low_credibility_domains();
std::unordered_map<std::string, std::string> starter_entity_dictionary();
std::map<std::string, std::vector<std::string>> starter_propaganda_lexicon();

}  // namespace disinfo::reference

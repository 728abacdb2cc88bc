#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace disinfo {

// Byte-level text helpers shared by entity extraction, shingling and cue
// matching. All offsets are byte offsets into the original document; UTF-8
// multibyte sequences are treated as word bytes so spans never split a
// character.

inline bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c >= 0x80;
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s);

struct TokenSpan {
  std::size_t begin = 0;  // byte offset, inclusive
  std::size_t end = 0;    // byte offset, exclusive
};

// Maximal runs of word bytes, in document order.
std::vector<TokenSpan> word_tokens(std::string_view text);

// Case-folded word tokens as strings (convenience over word_tokens).
std::vector<std::string> word_strings(std::string_view text);

// Spans of absolute http(s) URLs embedded in free text. Trailing sentence
// punctuation is not part of the span.
std::vector<TokenSpan> url_spans(std::string_view text);

}  // namespace disinfo

#include "disinfo/text.hpp"

#include <algorithm>

namespace disinfo {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

std::vector<TokenSpan> word_tokens(std::string_view text) {
  std::vector<TokenSpan> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < n && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
    tokens.push_back({begin, i});
  }
  return tokens;
}

std::vector<std::string> word_strings(std::string_view text) {
  std::vector<std::string> out;
  for (const TokenSpan& t : word_tokens(text)) {
    out.push_back(to_lower(text.substr(t.begin, t.end - t.begin)));
  }
  return out;
}

namespace {

bool is_url_stop(unsigned char c) {
  return c <= ' ' || c == '<' || c == '>' || c == '"' || c == '\'' || c == '\\' || c == 0x7f;
}

bool scheme_at(std::string_view text, std::size_t i) {
  auto starts = [&](std::string_view p) {
    if (i + p.size() > text.size()) return false;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (ascii_lower(text[i + k]) != p[k]) return false;
    }
    return true;
  };
  return starts("http://") || starts("https://");
}

}  // namespace

std::vector<TokenSpan> url_spans(std::string_view text) {
  std::vector<TokenSpan> spans;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (ascii_lower(text[i]) != 'h' || !scheme_at(text, i)) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < n && !is_url_stop(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t end = i;
    // strip trailing sentence punctuation
    while (end > begin) {
      char c = text[end - 1];
      if (c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':' || c == ')' ||
          c == ']' || c == '}' || c == '*') {
        --end;
      } else {
        break;
      }
    }
    if (end > begin + 8) spans.push_back({begin, end});  // longer than the bare scheme
  }
  return spans;
}

}  // namespace disinfo

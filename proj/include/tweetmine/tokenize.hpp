#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tweetmine {

// Lowercase tokens of one message, in text order.
struct TokenStream {
  std::vector<std::string> tokens;

  bool operator==(const TokenStream&) const = default;
  bool contains(std::string_view token) const {
    for (const auto& t : tokens)
      if (t == token) return true;
    return false;
  }
};

namespace detail {

// Decodes one UTF-8 code point starting at s[i]; advances i. Invalid bytes
// decode to U+FFFD and consume a single byte.
inline char32_t next_code_point(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline bool is_ascii_alnum(char32_t c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Word characters: ASCII letters and digits, plus every non-ASCII code point
// outside the punctuation, symbol and emoji blocks.
inline bool is_word_char(char32_t c) {
  if (c < 0x80) return is_ascii_alnum(c);
  if (c == 0xFFFD) return false;
  if (c <= 0xBF) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c >= 0xFE00 && c <= 0xFE0F) return false;
  if (c >= 0xFF00 && c <= 0xFF0F) return false;
  if (c >= 0x1F000 && c <= 0x1FAFF) return false;
  return true;
}

// ASCII fold for U+00C0..U+017F; empty entries are separators.
inline std::string_view latin_fold(char32_t c) {
  static constexpr std::string_view k00C0[64] = {
      "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
      "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "ss",
      "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
      "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "y"};
  struct Range {
    char32_t lo, hi;
    std::string_view fold;
  };
  static constexpr Range kExtA[] = {
      {0x100, 0x105, "a"}, {0x106, 0x10D, "c"}, {0x10E, 0x111, "d"}, {0x112, 0x11B, "e"},
      {0x11C, 0x123, "g"}, {0x124, 0x127, "h"}, {0x128, 0x131, "i"}, {0x132, 0x133, "ij"},
      {0x134, 0x135, "j"}, {0x136, 0x138, "k"}, {0x139, 0x142, "l"}, {0x143, 0x14B, "n"},
      {0x14C, 0x151, "o"}, {0x152, 0x153, "oe"}, {0x154, 0x159, "r"}, {0x15A, 0x161, "s"},
      {0x162, 0x167, "t"}, {0x168, 0x173, "u"}, {0x174, 0x175, "w"}, {0x176, 0x178, "y"},
      {0x179, 0x17E, "z"}, {0x17F, 0x17F, "s"}};
  if (c >= 0xC0 && c <= 0xFF) return k00C0[c - 0xC0];
  for (const auto& r : kExtA)
    if (c >= r.lo && c <= r.hi) return r.fold;
  return {};
}

// Lowercases Greek and Cyrillic capitals; other code points are returned as is.
inline char32_t simple_lower(char32_t c) {
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

inline void append_folded(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>((c >= 'A' && c <= 'Z') ? c + ('a' - 'A') : c));
    return;
  }
  if (c >= 0xC0 && c <= 0x17F) {
    out.append(latin_fold(c));
    return;
  }
  append_utf8(out, simple_lower(c));
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

// Position of the first "http://" or "https://" in `run` (case-insensitive), or npos.
inline std::size_t find_url(std::string_view run) {
  for (std::size_t i = 0; i + 7 <= run.size(); ++i) {
    auto at = [&](std::size_t k) { return ascii_lower(run[i + k]); };
    if (at(0) != 'h' || at(1) != 't' || at(2) != 't' || at(3) != 'p') continue;
    if (run.substr(i + 4, 3) == "://") return i;
    if (i + 8 <= run.size() && at(4) == 's' && run.substr(i + 5, 3) == "://") return i;
  }
  return std::string_view::npos;
}

}  // namespace detail

// ASCII-folded lowercase form of `s`; code points without a folding are kept verbatim.
inline std::string fold_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t start = i;
    const char32_t c = detail::next_code_point(s, i);
    const bool foldable = c < 0x80 || (c >= 0xC0 && c <= 0x17F && !detail::latin_fold(c).empty()) ||
                          (c != 0xFFFD && c >= 0x80 && detail::simple_lower(c) != c);
    if (foldable)
      detail::append_folded(out, c);
    else
      out.append(s.substr(start, i - start));
  }
  return out;
}

// Whitespace runs are scanned independently: anything from an `http://` or
// `https://` to the end of its run is dropped, then the run splits on
// non-word characters (which also strips leading `#` and `@`).
inline TokenStream tokenize(std::string_view text) {
  TokenStream ts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && detail::is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !detail::is_space(text[i])) ++i;
    std::string_view run = text.substr(start, i - start);
    if (const auto url = detail::find_url(run); url != std::string_view::npos) run = run.substr(0, url);

    std::string current;
    std::size_t j = 0;
    while (j < run.size()) {
      const char32_t c = detail::next_code_point(run, j);
      if (detail::is_word_char(c)) {
        detail::append_folded(current, c);
      } else if (!current.empty()) {
        ts.tokens.push_back(std::move(current));
        current.clear();
      }
    }
    if (!current.empty()) ts.tokens.push_back(std::move(current));
  }
  return ts;
}

}  // namespace tweetmine

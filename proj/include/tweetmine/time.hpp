#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace tweetmine {

using Instant = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

namespace detail {

inline bool read_digits(std::string_view s, std::size_t& pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  pos += n;
  out = v;
  return true;
}

inline bool expect(std::string_view s, std::size_t& pos, char c) {
  if (pos < s.size() && s[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

}  // namespace detail

// Parses `YYYY-MM-DDTHH:MM:SS[.frac][Z|+HH:MM|-HH:MM|+HHMM]` (a space may
// replace `T`; a missing zone means UTC). Fractions are truncated. The result
// is normalized to UTC.
inline std::optional<Instant> parse_iso8601(std::string_view s) {
  using namespace std::chrono;
  std::size_t p = 0;
  int y, mo, d, h, mi, sec;
  if (!detail::read_digits(s, p, 4, y) || !detail::expect(s, p, '-') ||
      !detail::read_digits(s, p, 2, mo) || !detail::expect(s, p, '-') ||
      !detail::read_digits(s, p, 2, d))
    return std::nullopt;
  if (!(detail::expect(s, p, 'T') || detail::expect(s, p, 't') || detail::expect(s, p, ' ')))
    return std::nullopt;
  if (!detail::read_digits(s, p, 2, h) || !detail::expect(s, p, ':') ||
      !detail::read_digits(s, p, 2, mi) || !detail::expect(s, p, ':') ||
      !detail::read_digits(s, p, 2, sec))
    return std::nullopt;
  if (detail::expect(s, p, '.')) {
    const std::size_t start = p;
    while (p < s.size() && s[p] >= '0' && s[p] <= '9') ++p;
    if (p == start) return std::nullopt;
  }
  int offset_s = 0;
  if (p < s.size()) {
    if (s[p] == 'Z' || s[p] == 'z') {
      ++p;
    } else if (s[p] == '+' || s[p] == '-') {
      const int sign = s[p] == '-' ? -1 : 1;
      ++p;
      int oh, om;
      if (!detail::read_digits(s, p, 2, oh)) return std::nullopt;
      detail::expect(s, p, ':');
      if (!detail::read_digits(s, p, 2, om)) return std::nullopt;
      if (oh > 23 || om > 59) return std::nullopt;
      offset_s = sign * (oh * 3600 + om * 60);
    } else {
      return std::nullopt;
    }
  }
  if (p != s.size()) return std::nullopt;
  if (h > 23 || mi > 59 || sec > 60) return std::nullopt;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  const Instant local = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
  return local - seconds{offset_s};
}

// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
inline std::string format_iso8601(Instant t) {
  using namespace std::chrono;
  const auto days = floor<std::chrono::days>(t);
  const year_month_day ymd{days};
  const hh_mm_ss hms{t - days};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

// Largest multiple of `width` (counted from the Unix epoch) not after `t`.
inline Instant floor_to(Instant t, Seconds width) {
  const auto c = t.time_since_epoch().count();
  const auto w = width.count();
  auto q = c / w;
  if (c % w != 0 && c < 0) --q;
  return Instant{Seconds{q * w}};
}

}  // namespace tweetmine

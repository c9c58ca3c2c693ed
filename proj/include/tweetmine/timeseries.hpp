#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "text.hpp"
#include "time.hpp"
#include "tokenize.hpp"

namespace tweetmine {

inline constexpr Seconds kDefaultWindowWidth{600};
inline constexpr double kDefaultMinRise = 0.2;

struct NameFrequency {
  double f;
  std::uint64_t n_matching;
  std::uint64_t n_total;
  bool operator==(const NameFrequency&) const = default;
};

struct SeriesPoint {
  Instant window_start;
  std::uint64_t n_matching = 0;
  std::uint64_t n_total = 0;
  std::optional<double> f;  // absent when the window holds no messages
  bool operator==(const SeriesPoint&) const = default;
};

struct FrequencySeries {
  Seconds window_width{kDefaultWindowWidth};
  std::vector<SeriesPoint> points;
  bool operator==(const FrequencySeries&) const = default;
};

struct RankEntry {
  std::string name;
  double f;
  std::uint64_t n_matching;
  bool operator==(const RankEntry&) const = default;
};

struct NameRanking {
  std::vector<RankEntry> entries;
  std::uint64_t n_total = 0;
  bool operator==(const NameRanking&) const = default;
};

struct Jump {
  Instant window_start;  // the window whose value rose
  double delta;
  bool operator==(const Jump&) const = default;
};

namespace detail {

inline void require_single_token(std::string_view name) {
  const auto toks = tokenize(name).tokens;
  if (toks.size() != 1 || toks.front() != name)
    throw PreconditionError("'" + std::string(name) + "' is not a single lowercase token");
}

inline double ratio(std::uint64_t num, std::uint64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace detail

// Share of messages in `window` whose token stream contains `name`.
inline NameFrequency name_frequency(const Corpus& corpus, std::string_view name, const TimeWindow& window) {
  detail::require_single_token(name);
  NameFrequency r{0.0, 0, 0};
  for (const auto& m : corpus) {
    if (!window.contains(m.timestamp)) continue;
    ++r.n_total;
    if (tokenize(m.text).contains(name)) ++r.n_matching;
  }
  if (r.n_total == 0) throw EmptyWindow();
  r.f = detail::ratio(r.n_matching, r.n_total);
  return r;
}

// Windows of `width` aligned to the epoch, tiling from the window holding the
// first message through the window holding the last one.
inline FrequencySeries frequency_series(const Corpus& corpus, std::string_view name,
                                        Seconds width = kDefaultWindowWidth) {
  if (width.count() <= 0) throw PreconditionError("window width must be positive");
  detail::require_single_token(name);
  if (corpus.empty()) throw EmptyCorpus();
  FrequencySeries series{width, {}};
  const Instant first = floor_to(corpus.messages().front().timestamp, width);
  const Instant last = floor_to(corpus.messages().back().timestamp, width);
  const auto n_windows = static_cast<std::size_t>((last - first) / width) + 1;
  series.points.resize(n_windows);
  for (std::size_t w = 0; w < n_windows; ++w) series.points[w].window_start = first + width * static_cast<long>(w);
  for (const auto& m : corpus) {
    auto& p = series.points[static_cast<std::size_t>((m.timestamp - first) / width)];
    ++p.n_total;
    if (tokenize(m.text).contains(name)) ++p.n_matching;
  }
  for (auto& p : series.points)
    if (p.n_total > 0) p.f = detail::ratio(p.n_matching, p.n_total);
  return series;
}

// One entry per lexicon name, by F_name descending then name ascending.
inline NameRanking rank_names(const Corpus& corpus, const NameLexicon& lexicon, const TimeWindow& window) {
  NameRanking ranking;
  std::vector<std::uint64_t> hits(lexicon.size(), 0);
  const std::vector<std::string> names(lexicon.begin(), lexicon.end());
  for (const auto& m : corpus) {
    if (!window.contains(m.timestamp)) continue;
    ++ranking.n_total;
    const auto ts = tokenize(m.text);
    for (std::size_t i = 0; i < names.size(); ++i)
      if (ts.contains(names[i])) ++hits[i];
  }
  if (ranking.n_total == 0) throw EmptyWindow();
  for (std::size_t i = 0; i < names.size(); ++i)
    ranking.entries.push_back({names[i], detail::ratio(hits[i], ranking.n_total), hits[i]});
  // All entries share n_total, so ordering by count is ordering by f.
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.n_matching != b.n_matching) return a.n_matching > b.n_matching;
    return a.name < b.name;
  });
  return ranking;
}

// Largest rise between consecutive present points (absent windows are
// skipped). The rise is compared as an exact rational, so equal rises tie and
// the earliest wins. Returns nullopt below `min_rise` or with fewer than two
// present points.
inline std::optional<Jump> detect_jump(const FrequencySeries& series, double min_rise = kDefaultMinRise) {
  if (!(min_rise > 0.0 && min_rise <= 1.0)) throw PreconditionError("min_rise must be in (0, 1]");
  const SeriesPoint* prev = nullptr;
  const SeriesPoint* best_at = nullptr;
  // best rise = best_num / best_den
  __int128 best_num = 0, best_den = 1;
  for (const auto& p : series.points) {
    if (!p.f) continue;
    if (prev) {
      const __int128 num = static_cast<__int128>(p.n_matching) * prev->n_total -
                           static_cast<__int128>(prev->n_matching) * p.n_total;
      const __int128 den = static_cast<__int128>(p.n_total) * prev->n_total;
      if (!best_at || num * best_den > best_num * den) {
        best_at = &p;
        best_num = num;
        best_den = den;
      }
    }
    prev = &p;
  }
  if (!best_at) return std::nullopt;
  const double delta = static_cast<double>(best_num) / static_cast<double>(best_den);
  if (delta < min_rise) return std::nullopt;
  return Jump{best_at->window_start, delta};
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view kSeriesCsvHeader = "window_start_utc,n_matching,n_total,f";
inline constexpr std::string_view kRankingCsvHeader = "rank,name,f,n_matching,n_total";

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline void write_series_csv(std::ostream& out, const FrequencySeries& s) {
  out << kSeriesCsvHeader << '\n';
  for (const auto& p : s.points) {
    out << format_iso8601(p.window_start) << ',' << p.n_matching << ',' << p.n_total << ',';
    if (p.f) out << format_fixed(*p.f, 6);
    out << '\n';
  }
}

namespace detail {
inline std::vector<std::string> split_simple(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::uint64_t parse_count(std::size_t line, const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw MalformedRecord(line, "invalid count '" + s + "'");
  return std::stoull(s);
}
}  // namespace detail

// Inverse of write_series_csv. Ratios are recomputed from the counts.
inline FrequencySeries read_series_csv(std::istream& in, Seconds width = kDefaultWindowWidth) {
  FrequencySeries s{width, {}};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n == 1) {
      if (line != kSeriesCsvHeader) throw MalformedRecord(1, "unexpected series header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = detail::split_simple(line, ',');
    if (f.size() != 4) throw MalformedRecord(n, "expected 4 fields");
    auto t = parse_iso8601(f[0]);
    if (!t) throw MalformedRecord(n, "invalid timestamp");
    SeriesPoint p{*t, detail::parse_count(n, f[1]), detail::parse_count(n, f[2]), std::nullopt};
    if (p.n_total > 0) p.f = detail::ratio(p.n_matching, p.n_total);
    if (f[3].empty() != (p.n_total == 0)) throw MalformedRecord(n, "f presence disagrees with n_total");
    s.points.push_back(p);
  }
  return s;
}

inline void write_ranking_csv(std::ostream& out, const NameRanking& r) {
  out << kRankingCsvHeader << '\n';
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const auto& e = r.entries[i];
    out << (i + 1) << ',' << e.name << ',' << format_fixed(e.f, 6) << ',' << e.n_matching << ',' << r.n_total << '\n';
  }
}

inline NameRanking read_ranking_csv(std::istream& in) {
  NameRanking r;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n == 1) {
      if (line != kRankingCsvHeader) throw MalformedRecord(1, "unexpected ranking header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = detail::split_simple(line, ',');
    if (f.size() != 5) throw MalformedRecord(n, "expected 5 fields");
    const auto matching = detail::parse_count(n, f[3]);
    r.n_total = detail::parse_count(n, f[4]);
    if (r.n_total == 0) throw MalformedRecord(n, "n_total is zero");
    r.entries.push_back({f[1], detail::ratio(matching, r.n_total), matching});
  }
  return r;
}

}  // namespace tweetmine

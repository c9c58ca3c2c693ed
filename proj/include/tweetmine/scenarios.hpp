#pragma once

// Built-in synthetic scenarios: a fixed itemset table, before/after name
// rankings with an announcement step, and a mention graph with hubs.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "synth.hpp"
#include "time.hpp"

namespace tweetmine::scenarios {

inline Instant at(std::string_view iso) { return *parse_iso8601(iso); }

// ---------------------------------------------------------------------------
// Frequent itemsets. All target supports are multiples of 1/804, so the
// base is 804 transactions. Each triple below appears as an exact
// transaction `count` times; the remaining 44 transactions carry a single
// name, so no other triple occurs at all.

struct TripleCount {
  std::array<std::string_view, 3> names;
  std::uint64_t count;
  std::string_view support;  // target value, 9 decimals
};

inline constexpr std::uint64_t kNameSetTransactions = 804;

inline constexpr std::array<TripleCount, 15> kNameSets = {{
    {{"alexander", "george", "james"}, 97, "0.120646766"},
    {{"george", "henry", "james"}, 86, "0.106965174"},
    {{"george", "james", "louis"}, 72, "0.089552239"},
    {{"alexander", "james", "louis"}, 68, "0.084577114"},
    {{"alexander", "george", "louis"}, 68, "0.084577114"},
    {{"george", "henry", "louis"}, 64, "0.079601990"},
    {{"alexander", "henry", "james"}, 62, "0.077114428"},
    {{"alexander", "george", "henry"}, 62, "0.077114428"},
    {{"alexander", "henry", "louis"}, 60, "0.074626866"},
    {{"henry", "james", "louis"}, 60, "0.074626866"},
    {{"arthur", "george", "james"}, 15, "0.018656716"},
    {{"charles", "james", "spencer"}, 13, "0.016169154"},
    {{"george", "james", "spencer"}, 12, "0.014925373"},
    {{"charles", "george", "philip"}, 11, "0.013681592"},
    {{"george", "james", "richard"}, 10, "0.012437811"},
}};

inline constexpr std::array<std::pair<std::string_view, std::uint64_t>, 5> kNameSetSingles = {{
    {"george", 16}, {"james", 12}, {"alexander", 6}, {"louis", 5}, {"harry", 5}}};

// Messages spread over the days before the announcement (19-23 July 2013),
// one group per 10-minute window.
inline Scenario namesets() {
  Scenario s;
  s.start = at("2013-07-19T08:00:00Z");
  s.id_prefix = "t";
  std::int64_t window = 0;
  for (const auto& row : kNameSets) {
    std::vector<std::string> tokens{"#royalbaby", "name"};
    for (auto n : row.names) tokens.emplace_back(n);
    s.groups.push_back({window, static_cast<std::int64_t>(row.count), tokens, {}, {}});
    window += 30;
  }
  for (const auto& [name, count] : kNameSetSingles) {
    s.groups.push_back({window, static_cast<std::int64_t>(count), {"#royalbaby", "baby", "name", std::string(name)}, {}, {}});
    window += 30;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Rankings and the announcement step. 10-minute windows from 16:00 UTC on
// 24 July 2013. Windows 0..19 (16:00-19:20) use the pre-announcement mix;
// windows 20..35 (19:20-22:00) use the post-announcement mix. Each window
// holds 200 messages.

inline constexpr std::array<std::pair<std::string_view, std::int64_t>, 13> kPreMix = {{
    {"george", 20}, {"james", 15}, {"henry", 12}, {"arthur", 10}, {"charles", 9}, {"spencer", 8},
    {"alexander", 7}, {"philip", 6}, {"richard", 5}, {"louis", 4}, {"edward", 3}, {"albert", 2},
    {"andrew", 1}}};
inline constexpr std::int64_t kPerWindow = 200;
inline constexpr std::int64_t kStepWindow = 20;    // 19:20
inline constexpr std::int64_t kWindows = 36;       // through 22:00
inline constexpr std::string_view kRankingStart = "2013-07-24T16:00:00Z";
inline constexpr std::string_view kPreCutoff = "2013-07-24T18:00:00Z";
inline constexpr std::string_view kPostStart = "2013-07-24T21:00:00Z";
inline constexpr std::string_view kRankingEnd = "2013-07-24T22:00:00Z";

inline Scenario ranking() {
  Scenario s;
  s.start = at(kRankingStart);
  s.id_prefix = "r";
  for (std::int64_t w = 0; w < kWindows; ++w) {
    std::int64_t used = 0;
    auto add = [&](std::int64_t count, std::vector<std::string> names) {
      names.insert(names.begin(), {"#royalbaby", "name"});
      s.groups.push_back({w, count, std::move(names), {}, {}});
      used += count;
    };
    if (w < kStepWindow) {
      for (const auto& [name, count] : kPreMix) add(count, {std::string(name)});
    } else {
      add(100, {"george", "alexander", "louis"});
      add(20, {"george", "alexander"});
      add(40, {"george"});
      add(20, {"james"});
    }
    s.groups.push_back({w, kPerWindow - used, {"#royalbaby", "royal", "baby", "name", "soon"}, {}, {}});
  }
  return s;
}

// A plain step: 10 windows at f = 0.1 then 10 windows at f = 0.8, 100
// messages per window, starting 2013-07-24T18:00:00Z.
inline Scenario step() {
  Scenario s;
  s.start = at("2013-07-24T18:00:00Z");
  s.id_prefix = "p";
  for (std::int64_t w = 0; w < 20; ++w) {
    const std::int64_t hits = w < 10 ? 10 : 80;
    s.groups.push_back({w, hits, {"#royalbaby", "george", "name"}, {}, {}});
    s.groups.push_back({w, 100 - hits, {"#royalbaby", "name"}, {}, {}});
  }
  return s;
}

// ---------------------------------------------------------------------------
// Mention graph with planted hubs on 25 July 2013. Six hubs are mentioned
// 120 times and ten more 60 times. Every fan sends two messages mentioning
// its hub; fans are paired, and the first of each pair mentions the second
// once more. 300 one-off users send a single message without mentions.

inline constexpr int kBigHubs = 6;
inline constexpr int kMidHubs = 10;
inline constexpr std::int64_t kBigHubMentions = 120;
inline constexpr std::int64_t kMidHubMentions = 60;
inline constexpr int kOneOffUsers = 300;

inline Scenario hubs() {
  Scenario s;
  s.start = at("2013-07-25T08:00:00Z");
  s.id_prefix = "h";
  std::int64_t window = 0;
  auto hub_group = [&](const std::string& hub, std::int64_t mentions) {
    const std::int64_t fans = mentions / 2;
    for (std::int64_t f = 0; f < fans; ++f) {
      const std::string fan = hub + "_fan" + detail::zero_pad(static_cast<std::uint64_t>(f), 3);
      s.groups.push_back({window, 2, {"#royalbaby", "name", "rt"}, fan, {hub}});
      if (f % 2 == 0) {
        const std::string partner = hub + "_fan" + detail::zero_pad(static_cast<std::uint64_t>(f + 1), 3);
        s.groups.push_back({window, 1, {"#royalbaby", "congrats"}, fan, {partner}});
      }
    }
    s.groups.push_back({window, 3, {"#royalbaby", "name", "news"}, hub, {}});
    ++window;
  };
  for (int h = 0; h < kBigHubs; ++h) hub_group("bighub" + std::to_string(h + 1), kBigHubMentions);
  for (int h = 0; h < kMidHubs; ++h) hub_group("midhub" + std::to_string(h + 1), kMidHubMentions);
  for (int u = 0; u < kOneOffUsers; ++u)
    s.groups.push_back({window + u % 12, 1, {"#royalbaby", "baby"}, "oneoff" + detail::zero_pad(static_cast<std::uint64_t>(u), 3), {}});
  return s;
}

// The three scenarios above in one corpus, each generated from `seed`.
inline Corpus demo(std::uint64_t seed) {
  return merge_corpora(merge_corpora(generate_synthetic(namesets(), seed), generate_synthetic(ranking(), seed)),
                       generate_synthetic(hubs(), seed));
}

}  // namespace tweetmine::scenarios

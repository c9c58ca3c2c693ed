#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"
#include "error.hpp"
#include "time.hpp"

namespace tweetmine {

// `count` messages placed in window `window` (counted from the scenario
// start). Each message's text is the token bag in a seeded order. An empty
// author draws one from the scenario's author pool.
struct MessageGroup {
  std::int64_t window = 0;
  std::int64_t count = 0;
  std::vector<std::string> tokens;
  std::string author;
  std::vector<std::string> mentions;
};

struct Scenario {
  Instant start{};
  Seconds window_width{600};
  std::int64_t author_pool = 500;
  std::string id_prefix = "s";
  std::vector<MessageGroup> groups;

  std::int64_t message_count() const {
    std::int64_t n = 0;
    for (const auto& g : groups) n += g.count;
    return n;
  }
};

namespace detail {

inline std::string zero_pad(std::uint64_t v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*llu", width, static_cast<unsigned long long>(v));
  return buf;
}

inline void validate(const Scenario& s) {
  if (s.window_width.count() <= 0) throw InconsistentSpec("window width must be positive");
  if (s.id_prefix.empty()) throw InconsistentSpec("id prefix must not be empty");
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    const auto& g = s.groups[i];
    const std::string where = "group " + std::to_string(i) + ": ";
    if (g.count < 0) throw InconsistentSpec(where + "negative message count");
    if (g.window < 0) throw InconsistentSpec(where + "negative window index");
    if (g.author.empty() && g.count > 0 && s.author_pool <= 0)
      throw InconsistentSpec(where + "needs an author or a positive author pool");
    if (has_space(g.author)) throw InconsistentSpec(where + "author contains whitespace");
    for (const auto& t : g.tokens)
      if (t.empty() || has_space(t)) throw InconsistentSpec(where + "token bag entries must be whitespace-free");
    for (const auto& m : g.mentions)
      if (m.empty() || has_space(m)) throw InconsistentSpec(where + "invalid mention handle");
  }
}

}  // namespace detail

// Deterministic for a fixed (scenario, seed): timestamps are uniform within
// each group's window, token order is a Fisher-Yates shuffle, ids are
// `<prefix><7-digit sequence>` in group order.
inline Corpus generate_synthetic(const Scenario& scenario, std::uint64_t seed) {
  detail::validate(scenario);
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t n) { return rng() % n; };
  const auto width = static_cast<std::uint64_t>(scenario.window_width.count());
  std::vector<Message> out;
  out.reserve(static_cast<std::size_t>(scenario.message_count()));
  std::uint64_t seq = 0;
  for (const auto& g : scenario.groups) {
    for (std::int64_t i = 0; i < g.count; ++i) {
      Message m;
      m.id = scenario.id_prefix + detail::zero_pad(seq++, 7);
      m.timestamp = scenario.start + scenario.window_width * g.window + Seconds{static_cast<long>(below(width))};
      m.author = g.author.empty()
                     ? "user" + detail::zero_pad(below(static_cast<std::uint64_t>(scenario.author_pool)), 5)
                     : g.author;
      std::vector<std::string> bag = g.tokens;
      for (std::size_t k = bag.size(); k > 1; --k) std::swap(bag[k - 1], bag[below(k)]);
      for (std::size_t k = 0; k < bag.size(); ++k) m.text += (k ? " " : "") + bag[k];
      m.mentions = g.mentions;
      out.push_back(std::move(m));
    }
  }
  Corpus::Meta meta{{"source", "synthetic"}, {"seed", std::to_string(seed)}};
  return Corpus::from_messages(std::move(out), std::move(meta));
}

inline Corpus merge_corpora(const Corpus& a, const Corpus& b) {
  std::vector<Message> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return Corpus::from_messages(std::move(all), a.meta());
}

// JSON scenario description:
// {"start": ISO-8601, "window_width": seconds, "author_pool": n, "id_prefix": s,
//  "groups": [{"window": i, "count": n, "tokens": [...], "author": s, "mentions": [...]}]}
inline Scenario scenario_from_json(const nlohmann::json& j) {
  try {
    Scenario s;
    auto start = parse_iso8601(j.at("start").get<std::string>());
    if (!start) throw InconsistentSpec("invalid start timestamp");
    s.start = *start;
    s.window_width = Seconds{j.value("window_width", std::int64_t{600})};
    s.author_pool = j.value("author_pool", std::int64_t{500});
    s.id_prefix = j.value("id_prefix", std::string("s"));
    for (const auto& g : j.at("groups")) {
      MessageGroup mg;
      mg.window = g.value("window", std::int64_t{0});
      mg.count = g.at("count").get<std::int64_t>();
      mg.tokens = g.value("tokens", std::vector<std::string>{});
      mg.author = g.value("author", std::string{});
      mg.mentions = g.value("mentions", std::vector<std::string>{});
      s.groups.push_back(std::move(mg));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InconsistentSpec(std::string("scenario JSON: ") + e.what());
  }
}

inline nlohmann::ordered_json scenario_to_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["start"] = format_iso8601(s.start);
  j["window_width"] = s.window_width.count();
  j["author_pool"] = s.author_pool;
  j["id_prefix"] = s.id_prefix;
  j["groups"] = nlohmann::ordered_json::array();
  for (const auto& g : s.groups) {
    nlohmann::ordered_json o;
    o["window"] = g.window;
    o["count"] = g.count;
    o["tokens"] = g.tokens;
    if (!g.author.empty()) o["author"] = g.author;
    if (!g.mentions.empty()) o["mentions"] = g.mentions;
    j["groups"].push_back(std::move(o));
  }
  return j;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InconsistentSpec(std::string("scenario JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace tweetmine

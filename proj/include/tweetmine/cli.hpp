#pragma once

// Command implementations behind the `tweetmine` tool. Every command reads
// a RunConfig, writes fixed file names under `out`, prints a short summary
// and returns 0 on success, 1 on input errors and 2 when the analytical
// selection is empty.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "itemsets.hpp"
#include "scenarios.hpp"
#include "svg.hpp"
#include "synth.hpp"
#include "text.hpp"
#include "timeseries.hpp"

namespace tweetmine::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kEmptySelection = 2 };

namespace files {
inline constexpr std::string_view corpus_jsonl = "corpus.jsonl";
inline constexpr std::string_view corpus_csv = "corpus.csv";
inline constexpr std::string_view freq_csv = "freq_series.csv";
inline constexpr std::string_view freq_svg = "freq_series.svg";
inline constexpr std::string_view rank_csv = "rank.csv";
inline constexpr std::string_view rank_svg = "rank.svg";
inline constexpr std::string_view rank_post_csv = "rank_post.csv";
inline constexpr std::string_view rank_post_svg = "rank_post.svg";
inline constexpr std::string_view dictionary_csv = "frequency_dictionary.csv";
inline constexpr std::string_view names_csv = "names.csv";
inline constexpr std::string_view itemsets_csv = "itemsets.csv";
inline constexpr std::string_view itemset_dot = "itemset_graph.dot";
inline constexpr std::string_view itemset_graphml = "itemset_graph.graphml";
inline constexpr std::string_view communities_graphml = "communities.graphml";
inline constexpr std::string_view communities_dot = "communities.dot";
inline constexpr std::string_view communities_summary = "communities_summary.txt";
inline constexpr std::string_view layout_csv = "layout.csv";
inline constexpr std::string_view layout_graphml = "layout.graphml";
}  // namespace files

struct RunConfig {
  std::string input;
  std::string format;  // jsonl | csv; empty infers from the extension
  std::string out = "out";
  std::string out_format = "jsonl";

  std::string keywords;  // comma-separated; empty keeps every message
  std::string match = "substring";

  std::string name = "george";
  std::int64_t window_width = 600;
  double min_rise = kDefaultMinRise;
  std::string from, to;                // freq selection
  std::string rank_from, rank_to;      // rank selection
  std::string post_from, post_to;      // optional second ranking (pipeline)
  std::string itemsets_from, itemsets_to;

  std::string lexicon;   // empty = built-in names
  std::string stoplist;  // empty = built-in English list

  double supp_min = 0.01;
  std::int64_t min_size = 3;
  std::int64_t max_size = 3;
  std::int64_t top_k = 10;

  std::int64_t min_tweets = 2;
  std::int64_t min_mentions = 2;
  std::string popular;  // comma-separated removal thresholds, e.g. "100,50"

  std::uint64_t seed = 1;
  double layout_width = 1000;
  double layout_height = 1000;
  std::int64_t layout_iterations = 500;

  std::string scenario = "demo";

  // Assigns one key of the flat config format; throws Error on bad input.
  void set(const std::string& key, const std::string& value);
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      out = static_cast<T>(std::stod(v, &used));
      if (used != v.size()) throw ConfigError("invalid number for " + key + ": '" + v + "'");
    } catch (const std::logic_error&) {
      throw ConfigError("invalid number for " + key + ": '" + v + "'");
    }
  } else {
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) throw ConfigError("invalid integer for " + key + ": '" + v + "'");
  }
  return out;
}

inline std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    auto item = trim(std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

inline void RunConfig::set(const std::string& key, const std::string& value) {
  using detail::parse_number;
  static const std::map<std::string, std::function<void(RunConfig&, const std::string&)>> setters = {
      {"input", [](RunConfig& c, const std::string& v) { c.input = v; }},
      {"format", [](RunConfig& c, const std::string& v) { c.format = v; }},
      {"out", [](RunConfig& c, const std::string& v) { c.out = v; }},
      {"out_format", [](RunConfig& c, const std::string& v) { c.out_format = v; }},
      {"keywords", [](RunConfig& c, const std::string& v) { c.keywords = v; }},
      {"match", [](RunConfig& c, const std::string& v) { c.match = v; }},
      {"name", [](RunConfig& c, const std::string& v) { c.name = v; }},
      {"window_width", [](RunConfig& c, const std::string& v) { c.window_width = parse_number<std::int64_t>("window_width", v); }},
      {"min_rise", [](RunConfig& c, const std::string& v) { c.min_rise = parse_number<double>("min_rise", v); }},
      {"from", [](RunConfig& c, const std::string& v) { c.from = v; }},
      {"to", [](RunConfig& c, const std::string& v) { c.to = v; }},
      {"rank_from", [](RunConfig& c, const std::string& v) { c.rank_from = v; }},
      {"rank_to", [](RunConfig& c, const std::string& v) { c.rank_to = v; }},
      {"post_from", [](RunConfig& c, const std::string& v) { c.post_from = v; }},
      {"post_to", [](RunConfig& c, const std::string& v) { c.post_to = v; }},
      {"itemsets_from", [](RunConfig& c, const std::string& v) { c.itemsets_from = v; }},
      {"itemsets_to", [](RunConfig& c, const std::string& v) { c.itemsets_to = v; }},
      {"lexicon", [](RunConfig& c, const std::string& v) { c.lexicon = v; }},
      {"stoplist", [](RunConfig& c, const std::string& v) { c.stoplist = v; }},
      {"supp_min", [](RunConfig& c, const std::string& v) { c.supp_min = parse_number<double>("supp_min", v); }},
      {"min_size", [](RunConfig& c, const std::string& v) { c.min_size = parse_number<std::int64_t>("min_size", v); }},
      {"max_size", [](RunConfig& c, const std::string& v) { c.max_size = parse_number<std::int64_t>("max_size", v); }},
      {"top_k", [](RunConfig& c, const std::string& v) { c.top_k = parse_number<std::int64_t>("top_k", v); }},
      {"min_tweets", [](RunConfig& c, const std::string& v) { c.min_tweets = parse_number<std::int64_t>("min_tweets", v); }},
      {"min_mentions", [](RunConfig& c, const std::string& v) { c.min_mentions = parse_number<std::int64_t>("min_mentions", v); }},
      {"popular", [](RunConfig& c, const std::string& v) { c.popular = v; }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = parse_number<std::uint64_t>("seed", v); }},
      {"layout_width", [](RunConfig& c, const std::string& v) { c.layout_width = parse_number<double>("layout_width", v); }},
      {"layout_height", [](RunConfig& c, const std::string& v) { c.layout_height = parse_number<double>("layout_height", v); }},
      {"layout_iterations", [](RunConfig& c, const std::string& v) { c.layout_iterations = parse_number<std::int64_t>("layout_iterations", v); }},
      {"scenario", [](RunConfig& c, const std::string& v) { c.scenario = v; }},
  };
  auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(*this, value);
}

// Flat `key = value` lines; `#` starts a comment line.
inline void apply_config(RunConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(n) + ": expected key = value");
    cfg.set(detail::trim(std::string_view(t).substr(0, eq)), detail::trim(std::string_view(t).substr(eq + 1)));
  }
}

inline void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path.string());
  apply_config(cfg, in);
}

namespace detail {

inline void validate(const RunConfig& c) {
  if (c.window_width <= 0) throw ConfigError("window_width must be positive");
  if (!(c.min_rise > 0 && c.min_rise <= 1)) throw ConfigError("min_rise must be in (0, 1]");
  if (!(c.supp_min >= 0 && c.supp_min < 1)) throw ConfigError("supp_min must be in [0, 1)");
  if (c.min_size < 1 || c.min_size > c.max_size) throw ConfigError("need 1 <= min_size <= max_size");
  if (c.top_k < 1) throw ConfigError("top_k must be at least 1");
  if (c.min_tweets < 0 || c.min_mentions < 0) throw ConfigError("activity thresholds must be nonnegative");
  if (!(c.layout_width > 0 && c.layout_height > 0) || c.layout_iterations <= 0)
    throw ConfigError("layout dimensions and iterations must be positive");
  if (!parse_match_mode(c.match)) throw ConfigError("match must be substring or token");
  if (!c.format.empty() && !parse_corpus_format(c.format)) throw ConfigError("format must be jsonl or csv");
  if (!parse_corpus_format(c.out_format)) throw ConfigError("out_format must be jsonl or csv");
}

inline std::optional<Instant> bound(const std::string& s, const char* what) {
  if (s.empty()) return std::nullopt;
  auto t = parse_iso8601(s);
  if (!t) throw ConfigError(std::string("invalid timestamp for ") + what + ": '" + s + "'");
  return t;
}

// Messages in [from, to); open ends are unbounded.
inline Corpus select_time(const Corpus& c, const std::string& from, const std::string& to, const char* what) {
  const auto a = bound(from, what), b = bound(to, what);
  if (!a && !b) return c;
  if (c.empty()) return c;
  const Instant lo = a ? *a : c.messages().front().timestamp;
  const Instant hi = b ? *b : c.messages().back().timestamp + Seconds{1};
  if (!(lo < hi)) return select_messages(c, [](const Message&) { return false; }, c.meta());
  return slice_by_time(c, TimeWindow(lo, hi));
}

inline Corpus load_input(const RunConfig& c) {
  if (c.input.empty()) throw ConfigError("no input corpus given");
  auto corpus = c.format.empty() ? load_corpus(c.input) : load_corpus(c.input, *parse_corpus_format(c.format));
  const auto kws = split_list(c.keywords);
  if (!kws.empty()) corpus = filter_by_keywords(corpus, KeywordFilter(kws, *parse_match_mode(c.match)));
  return corpus;
}

inline NameLexicon lexicon(const RunConfig& c) {
  return c.lexicon.empty() ? NameLexicon::defaults() : NameLexicon::load(c.lexicon);
}

inline Stoplist stoplist(const RunConfig& c) {
  return c.stoplist.empty() ? default_stoplist() : load_stoplist(c.stoplist);
}

inline std::filesystem::path out_path(const RunConfig& c, std::string_view file) {
  std::filesystem::create_directories(c.out);
  return std::filesystem::path(c.out) / std::string(file);
}

template <class Writer>
void write_file(const std::filesystem::path& p, Writer&& w) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + p.string());
  w(out);
}

// Runs `body` and maps exceptions onto the exit-status contract.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const EmptySelection& e) {
    err << "empty selection: " << e.what() << '\n';
    return kEmptySelection;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

inline int freq(const RunConfig& cfg, const Corpus& corpus, std::ostream& out) {
  const auto sel = select_time(corpus, cfg.from, cfg.to, "freq");
  if (sel.empty()) throw EmptySelection("no messages in the selected time range");
  const auto series = frequency_series(sel, cfg.name, Seconds{cfg.window_width});
  write_file(out_path(cfg, files::freq_csv), [&](std::ostream& o) { write_series_csv(o, series); });
  write_file(out_path(cfg, files::freq_svg), [&](std::ostream& o) {
    svg::write_line_chart(o, series, "Frequency of messages containing '" + cfg.name + "'");
  });
  out << "freq: " << series.points.size() << " windows of " << cfg.window_width << " s for '" << cfg.name << "'\n";
  if (auto jump = detect_jump(series, cfg.min_rise))
    out << "jump at " << format_iso8601(jump->window_start) << " delta " << format_fixed(jump->delta, 6) << '\n';
  else
    out << "no jump\n";
  return kOk;
}

inline int rank(const RunConfig& cfg, const Corpus& corpus, const std::string& from, const std::string& to,
                std::string_view csv_name, std::string_view svg_name, std::ostream& out) {
  const auto sel = select_time(corpus, from, to, "rank");
  if (sel.empty()) throw EmptySelection("no messages in the selected time range");
  const auto lex = lexicon(cfg);
  const auto begin = sel.messages().front().timestamp, end = sel.messages().back().timestamp + Seconds{1};
  const auto ranking = rank_names(sel, lex, TimeWindow(begin, end));
  write_file(out_path(cfg, csv_name), [&](std::ostream& o) { write_ranking_csv(o, ranking); });
  std::vector<std::pair<std::string, double>> bars;
  for (const auto& e : ranking.entries) bars.emplace_back(e.name, e.f);
  write_file(out_path(cfg, svg_name), [&](std::ostream& o) { svg::write_bar_chart(o, bars, "Names by F_name"); });
  out << "rank: " << ranking.n_total << " messages";
  for (std::size_t i = 0; i < std::min<std::size_t>(3, ranking.entries.size()); ++i)
    out << (i ? ", " : "; top: ") << ranking.entries[i].name << ' ' << format_fixed(ranking.entries[i].f, 6);
  out << '\n';
  return kOk;
}

inline int itemsets(const RunConfig& cfg, const Corpus& corpus, std::ostream& out) {
  const auto sel = select_time(corpus, cfg.itemsets_from, cfg.itemsets_to, "itemsets");
  const auto lex = lexicon(cfg);
  const auto ts = build_transactions(sel, lex);
  if (ts.empty()) throw EmptySelection("no message contains a lexicon name");
  const auto max_size = std::min<std::size_t>(static_cast<std::size_t>(cfg.max_size), lex.size());
  const auto min_size = std::min<std::size_t>(static_cast<std::size_t>(cfg.min_size), max_size);
  const auto result = mine_frequent_itemsets(ts, cfg.supp_min, min_size, max_size);
  write_file(out_path(cfg, files::itemsets_csv), [&](std::ostream& o) { write_itemsets_csv(o, result); });
  const auto graph = to_export_graph(itemset_graph(result, static_cast<std::size_t>(cfg.top_k)));
  write_file(out_path(cfg, files::itemset_dot), [&](std::ostream& o) { write_dot(o, graph); });
  write_file(out_path(cfg, files::itemset_graphml), [&](std::ostream& o) { write_graphml(o, graph); });
  out << "itemsets: " << ts.size() << " transactions, " << result.size() << " frequent itemsets\n";
  return kOk;
}

inline std::string graph_summary(const MentionGraph& g, const Partition& p) {
  return "vertices " + std::to_string(g.vertex_count()) + ", edges " + std::to_string(g.edge_count()) + ", " +
         std::to_string(p.community_count) + " communities, modularity " + format_fixed(p.modularity, 6);
}

inline LayoutOptions layout_options(const RunConfig& cfg) {
  return {cfg.layout_width, cfg.layout_height, static_cast<std::size_t>(cfg.layout_iterations), cfg.seed};
}

inline std::vector<std::uint64_t> popular_thresholds(const RunConfig& cfg) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split_list(cfg.popular)) {
    const auto v = parse_number<std::int64_t>("popular", s);
    if (v < 1) throw ConfigError("popular thresholds must be at least 1");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

inline std::string suffixed(std::string_view file, const std::string& suffix) {
  if (suffix.empty()) return std::string(file);
  const auto dot = file.rfind('.');
  return std::string(file.substr(0, dot)) + suffix + std::string(file.substr(dot));
}

inline int communities(const RunConfig& cfg, const Corpus& corpus, std::ostream& out) {
  const auto thresholds = popular_thresholds(cfg);
  const auto active = filter_active(build_mention_graph(corpus), static_cast<std::uint64_t>(cfg.min_tweets),
                                    static_cast<std::uint64_t>(cfg.min_mentions));
  if (active.empty()) throw EmptySelection("mention graph is empty after activity filtering");
  std::ostringstream summary;
  auto run = [&](const MentionGraph& g, const std::string& suffix, const std::string& heading) {
    const auto partition = detect_communities(g);
    const auto layout = layout_graph(g, layout_options(cfg));
    const auto eg = to_export_graph(g, &partition, &layout);
    write_file(out_path(cfg, suffixed(files::communities_graphml, suffix)), [&](std::ostream& o) { write_graphml(o, eg); });
    write_file(out_path(cfg, suffixed(files::communities_dot, suffix)), [&](std::ostream& o) { write_dot(o, eg); });
    const std::string line = heading + graph_summary(g, partition);
    summary << line << '\n';
    out << "communities: " << line << '\n';
  };
  run(active, "", "");
  for (const auto t : thresholds) {
    const auto reduced = remove_popular(active, t);
    if (reduced.empty()) throw EmptySelection("mention graph is empty after removing popular users");
    run(reduced, "_without_" + std::to_string(t),
        "without users mentioned >= " + std::to_string(t) + " times (removed " +
            std::to_string(active.vertex_count() - reduced.vertex_count()) + "): ");
  }
  write_file(out_path(cfg, files::communities_summary), [&](std::ostream& o) { o << summary.str(); });
  return kOk;
}

inline void write_summary(const Corpus& c, std::ostream& out) {
  std::set<std::string_view> authors;
  for (const auto& m : c) authors.insert(m.author);
  out << c.size() << " messages, " << authors.size() << " authors";
  if (!c.empty())
    out << ", span " << format_iso8601(c.messages().front().timestamp) << " .. "
        << format_iso8601(c.messages().back().timestamp);
  out << '\n';
}

inline int ingest(const RunConfig& cfg, const Corpus& corpus, std::ostream& out) {
  const auto fmt = *parse_corpus_format(cfg.out_format);
  write_corpus(out_path(cfg, fmt == CorpusFormat::csv ? files::corpus_csv : files::corpus_jsonl), corpus, fmt);
  write_summary(corpus, out);
  return kOk;
}

}  // namespace detail

inline int cmd_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::validate(cfg);
    return detail::ingest(cfg, detail::load_input(cfg), out);
  });
}

inline int cmd_freq(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::validate(cfg);
    return detail::freq(cfg, detail::load_input(cfg), out);
  });
}

inline int cmd_rank(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::validate(cfg);
    return detail::rank(cfg, detail::load_input(cfg), cfg.rank_from, cfg.rank_to, files::rank_csv, files::rank_svg, out);
  });
}

inline int cmd_itemsets(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::validate(cfg);
    return detail::itemsets(cfg, detail::load_input(cfg), out);
  });
}

inline int cmd_communities(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::validate(cfg);
    return detail::communities(cfg, detail::load_input(cfg), out);
  });
}

inline int cmd_layout(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::validate(cfg);
    auto g = filter_active(build_mention_graph(detail::load_input(cfg)), static_cast<std::uint64_t>(cfg.min_tweets),
                           static_cast<std::uint64_t>(cfg.min_mentions));
    for (const auto t : detail::popular_thresholds(cfg)) g = remove_popular(g, t);
    if (g.empty()) throw EmptySelection("mention graph is empty after filtering");
    const auto layout = layout_graph(g, detail::layout_options(cfg));
    detail::write_file(detail::out_path(cfg, files::layout_csv), [&](std::ostream& o) { write_layout_csv(o, g, layout); });
    detail::write_file(detail::out_path(cfg, files::layout_graphml),
                       [&](std::ostream& o) { write_graphml(o, to_export_graph(g, nullptr, &layout)); });
    out << "layout: " << g.vertex_count() << " vertices in " << format_fixed(cfg.layout_width, 1) << " x "
        << format_fixed(cfg.layout_height, 1) << '\n';
    return static_cast<int>(kOk);
  });
}

// Built-in names: namesets, ranking, step, hubs, demo; anything else is read
// as a JSON scenario file.
inline Corpus synthesize(const std::string& scenario, std::uint64_t seed) {
  if (scenario == "namesets") return generate_synthetic(scenarios::namesets(), seed);
  if (scenario == "ranking") return generate_synthetic(scenarios::ranking(), seed);
  if (scenario == "step") return generate_synthetic(scenarios::step(), seed);
  if (scenario == "hubs") return generate_synthetic(scenarios::hubs(), seed);
  if (scenario == "demo") return scenarios::demo(seed);
  return generate_synthetic(load_scenario(scenario), seed);
}

inline int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::validate(cfg);
    return detail::ingest(cfg, synthesize(cfg.scenario, cfg.seed), out);
  });
}

// ingest -> freq -> rank (and optional post ranking) -> frequency dictionary
// -> itemsets -> communities, over one loaded corpus.
inline int cmd_pipeline(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::validate(cfg);
    const auto corpus = detail::load_input(cfg);
    if (int rc = detail::ingest(cfg, corpus, out)) return rc;
    if (int rc = detail::freq(cfg, corpus, out)) return rc;
    if (int rc = detail::rank(cfg, corpus, cfg.rank_from, cfg.rank_to, files::rank_csv, files::rank_svg, out)) return rc;
    if (!cfg.post_from.empty() || !cfg.post_to.empty())
      if (int rc = detail::rank(cfg, corpus, cfg.post_from, cfg.post_to, files::rank_post_csv, files::rank_post_svg, out))
        return rc;
    const auto dict = build_frequency_dictionary(corpus, detail::stoplist(cfg));
    detail::write_file(detail::out_path(cfg, files::dictionary_csv), [&](std::ostream& o) {
      o << "token,count\n";
      for (const auto& [t, c] : dict.counts()) o << t << ',' << c << '\n';
    });
    detail::write_file(detail::out_path(cfg, files::names_csv), [&](std::ostream& o) {
      o << "name,count\n";
      for (const auto& [n, c] : extract_names(dict, detail::lexicon(cfg))) o << n << ',' << c << '\n';
    });
    out << "dictionary: " << dict.size() << " distinct tokens, " << dict.total() << " occurrences\n";
    if (int rc = detail::itemsets(cfg, corpus, out)) return rc;
    return detail::communities(cfg, corpus, out);
  });
}

}  // namespace tweetmine::cli

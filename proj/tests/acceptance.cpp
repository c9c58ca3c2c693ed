// Acceptance checks; one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tweetmine/cli.hpp"
#include "tweetmine/tweetmine.hpp"

using namespace tweetmine;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path = fs::temp_directory_path() / ("tweetmine_acc_" + tag + "_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Instant ts(std::string_view iso) { return *parse_iso8601(iso); }

Corpus duplicate(const Corpus& c, int k) {
  std::vector<Message> out;
  out.reserve(c.size() * static_cast<std::size_t>(k));
  for (const auto& m : c)
    for (int i = 0; i < k; ++i) {
      Message copy = m;
      copy.id += "#" + std::to_string(i);
      out.push_back(std::move(copy));
    }
  return Corpus::from_messages(std::move(out));
}

// 1
void table_reconstruction(Check& c) {
  for (const auto& row : scenarios::kNameSets) {
    const double target = std::stod(std::string(row.support));
    const double scaled = target * static_cast<double>(scenarios::kNameSetTransactions);
    c.expect(std::abs(scaled - std::round(scaled)) <= 1e-6 && std::round(scaled) == static_cast<double>(row.count),
             "target support is not count/804: " + std::string(row.support));
  }
  TempDir dir("table");
  const auto t0 = Clock::now();
  write_corpus(dir.path / "namesets.jsonl", generate_synthetic(scenarios::namesets(), 1), CorpusFormat::jsonl);
  cli::RunConfig cfg;
  cfg.input = (dir.path / "namesets.jsonl").string();
  cfg.out = (dir.path / "out").string();
  std::ostringstream out, err;
  const int rc = cli::cmd_itemsets(cfg, out, err);
  const double elapsed = seconds_since(t0);
  c.expect(rc == 0, "cmd_itemsets failed: " + err.str());
  std::istringstream csv(slurp(dir.path / "out" / std::string(cli::files::itemsets_csv)));
  std::string line;
  std::getline(csv, line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(csv, line)) rows.push_back(detail::split_simple(line, ','));
  c.expect(rows.size() == scenarios::kNameSets.size(), "expected 15 itemsets, got " + std::to_string(rows.size()));
  for (const auto& row : scenarios::kNameSets) {
    const std::string items = std::string(row.names[0]) + "|" + std::string(row.names[1]) + "|" + std::string(row.names[2]);
    bool found = false;
    for (const auto& r : rows)
      if (r.size() == 4 && r[1] == items) found = r[2] == row.support;
    c.expect(found, "row missing or support differs: " + items);
  }
  bool agl_top5 = false;
  for (std::size_t i = 0; i < std::min<std::size_t>(5, rows.size()); ++i)
    agl_top5 = agl_top5 || rows[i][1] == "alexander|george|louis";
  c.expect(agl_top5, "{alexander, george, louis} not in the top 5");
  c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  c.why << (c.ok ? "15/15 supports exact, " + std::to_string(elapsed) + " s" : "");
}

// 2
void apriori_oracle(Check& c) {
  std::mt19937_64 rng(2024);
  const auto t0 = Clock::now();
  int mismatches = 0;
  for (int round = 0; round < 100; ++round) {
    const auto r = gen::random_transactions(rng, 12, 200);
    const double supp_min = static_cast<double>(rng() % 400) / 1000.0;
    const std::size_t u = r.universe.size();
    const std::size_t lo = 1 + rng() % u;
    const std::size_t hi = lo + rng() % (u - lo + 1);
    const auto got = mine_frequent_itemsets(gen::to_set(r), supp_min, lo, hi);
    const auto want = oracle::enumerate_itemsets(r.universe, r.transactions, supp_min, lo, hi);
    bool same = got.size() == want.size();
    for (std::size_t i = 0; same && i < got.size(); ++i)
      same = got[i].items == want[i].items && got[i].count == want[i].count &&
             got[i].support == static_cast<double>(want[i].count) / static_cast<double>(r.transactions.size());
    if (!same) ++mismatches;
  }
  const double elapsed = seconds_since(t0);
  c.expect(mismatches == 0, std::to_string(mismatches) + " of 100 sets differ from enumeration");
  c.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");
  c.why << (c.ok ? "100/100 identical, " + std::to_string(elapsed) + " s" : "");
}

// 3
void anti_monotonicity(Check& c) {
  std::mt19937_64 rng(3);
  int violations = 0, pairs = 0;
  while (pairs < 1000) {
    const auto r = gen::random_transactions(rng, 12, 200);
    const auto set = gen::to_set(r);
    for (int i = 0; i < 20 && pairs < 1000; ++i, ++pairs) {
      std::vector<std::string> g, f;
      for (const auto& item : r.universe)
        if (rng() % 2) g.push_back(item);
      if (g.empty()) g.push_back(r.universe[rng() % r.universe.size()]);
      for (const auto& item : g)
        if (rng() % 2) f.push_back(item);
      if (f.empty()) f.push_back(g[rng() % g.size()]);
      const auto sf = support(set, f), sg = support(set, g);
      if (!(sf.support >= sg.support && sf.count >= sg.count)) ++violations;
    }
  }
  c.expect(violations == 0, std::to_string(violations) + " violations");
  c.why << (c.ok ? "1000 pairs, 0 violations" : "");
}

// 4
void ranking_scenario(Check& c) {
  const auto corpus = generate_synthetic(scenarios::ranking(), 1);
  const auto lex = NameLexicon::defaults();
  const auto pre = rank_names(corpus, lex, TimeWindow(ts(scenarios::kRankingStart), ts(scenarios::kPreCutoff)));
  auto position = [&](const NameRanking& r, const std::string& name) {
    for (std::size_t i = 0; i < r.entries.size(); ++i)
      if (r.entries[i].name == name) return i + 1;
    return std::size_t{0};
  };
  c.expect(position(pre, "george") == 1, "george not 1st");
  c.expect(position(pre, "james") == 2, "james not 2nd");
  c.expect(position(pre, "alexander") == 7, "alexander not 7th");
  c.expect(position(pre, "louis") == 10, "louis not 10th");
  const auto post = rank_names(corpus, lex, TimeWindow(ts(scenarios::kPostStart), ts(scenarios::kRankingEnd)));
  std::set<std::string> top3;
  for (std::size_t i = 0; i < 3; ++i) top3.insert(post.entries[i].name);
  c.expect(top3 == std::set<std::string>{"alexander", "george", "louis"}, "post top-3 differs");
  const auto jump = detect_jump(frequency_series(corpus, "george", Seconds{600}));
  const auto planted = ts(scenarios::kRankingStart) + Seconds{600} * scenarios::kStepWindow;
  c.expect(jump && jump->window_start == planted, "jump not at the planted window");
  if (c.ok) c.why << "ranks 1/2/7/10, post top-3 ok, jump at " << format_iso8601(jump->window_start);
}

// 5
void duplication_invariance(Check& c) {
  const auto rank_corpus = generate_synthetic(scenarios::ranking(), 5);
  const auto table_corpus = generate_synthetic(scenarios::namesets(), 5);
  const auto lex = NameLexicon::defaults();
  const TimeWindow pre(ts(scenarios::kRankingStart), ts(scenarios::kPreCutoff));
  const TimeWindow post(ts(scenarios::kPostStart), ts(scenarios::kRankingEnd));
  const auto base_pre = rank_names(rank_corpus, lex, pre);
  const auto base_post = rank_names(rank_corpus, lex, post);
  const auto base_series = frequency_series(rank_corpus, "george");
  const auto base_sets = mine_frequent_itemsets(build_transactions(table_corpus, lex), 0.01, 1, 3);
  auto strip_counts = [](NameRanking r) {
    r.n_total = 0;
    for (auto& e : r.entries) e.n_matching = 0;
    return r;
  };
  for (int k : {2, 5, 10}) {
    const auto rc = duplicate(rank_corpus, k);
    const auto tc = duplicate(table_corpus, k);
    c.expect(strip_counts(rank_names(rc, lex, pre)) == strip_counts(base_pre), "pre ranking changed at k=" + std::to_string(k));
    c.expect(strip_counts(rank_names(rc, lex, post)) == strip_counts(base_post),
             "post ranking changed at k=" + std::to_string(k));
    const auto s = frequency_series(rc, "george");
    bool same = s.points.size() == base_series.points.size();
    for (std::size_t i = 0; same && i < s.points.size(); ++i) same = s.points[i].f == base_series.points[i].f;
    c.expect(same, "F_name series changed at k=" + std::to_string(k));
    const auto sets = mine_frequent_itemsets(build_transactions(tc, lex), 0.01, 1, 3);
    same = sets.size() == base_sets.size();
    for (std::size_t i = 0; same && i < sets.size(); ++i)
      same = sets[i].items == base_sets[i].items && sets[i].support == base_sets[i].support;
    c.expect(same, "itemset supports changed at k=" + std::to_string(k));
  }
  if (c.ok) c.why << "k = 2, 5, 10 exact";
}

// 6
void community_oracle(Check& c) {
  std::mt19937_64 rng(66);
  double worst = std::numeric_limits<double>::infinity();
  int graphs = 0, below = 0;
  while (graphs < 50) {
    const auto g = gen::random_graph(rng, 2, 8);
    if (g.total_weight() == 0) continue;
    ++graphs;
    const auto best = oracle::best_partition(oracle::weights_of(g));
    const auto p = detect_communities(g);
    if (best.q > 1e-12) worst = std::min(worst, p.modularity / best.q);
    if (p.modularity < 0.97 * best.q - 1e-12) ++below;
    c.expect(modularity_score(g, std::vector<std::size_t>(g.vertex_count(), 0)) == 0.0, "one-community Q != 0");
  }
  c.expect(below == 0, std::to_string(below) + " of 50 graphs below 0.97 x optimum (worst ratio " +
                          format_fixed(worst, 4) + ")");
  for (std::size_t a = 4; a <= 6; ++a)
    for (std::size_t b = 4; b <= 6; ++b) {
      const auto g = gen::two_cliques(a, b);
      const auto p = detect_communities(g);
      bool split = p.community_count == 2;
      for (std::size_t i = 0; split && i < a + b; ++i)
        split = p.community[*g.index_of(gen::vname(i))] == p.community[*g.index_of(gen::vname(i < a ? 0 : a))];
      c.expect(split, "cliques " + std::to_string(a) + "+" + std::to_string(b) + " not split exactly");
      c.expect(modularity_score(g, std::vector<std::size_t>(g.vertex_count(), 0)) == 0.0, "one-community Q != 0");
    }
  if (c.ok) c.why << "worst ratio to optimum " << format_fixed(worst, 6) << ", 9/9 clique splits";
}

// 7
void hub_removal(Check& c) {
  const auto g = filter_active(build_mention_graph(generate_synthetic(scenarios::hubs(), 1)));
  const auto g100 = remove_popular(g, 100), g50 = remove_popular(g, 50);
  const auto removed100 = g.vertex_count() - g100.vertex_count();
  const auto removed50 = g.vertex_count() - g50.vertex_count();
  c.expect(removed100 == 6, "threshold 100 removed " + std::to_string(removed100));
  c.expect(removed50 == 16, "threshold 50 removed " + std::to_string(removed50));
  const auto n0 = detect_communities(g).community_count;
  const auto n100 = detect_communities(g100).community_count;
  const auto n50 = detect_communities(g50).community_count;
  c.expect(n100 > n0 && n50 > n0, "community count did not increase");
  if (c.ok) c.why << "removed 6 and 16; communities " << n0 << " -> " << n100 << " -> " << n50;
}

// 8
void layout_checks(Check& c) {
  std::mt19937_64 rng(8);
  double worst_ratio = 0.0;
  for (int round = 0; round < 5; ++round) {
    const auto g = gen::random_graph(rng, 10, 60);
    const LayoutOptions opt{1000, 1000, 200, 1000 + static_cast<std::uint64_t>(round)};
    const double n2 = static_cast<double>(g.vertex_count() * g.vertex_count());
    double worst = 0.0;
    const auto a = layout_graph(g, opt, [&](const LayoutIteration& it) {
      worst = std::max(worst, std::hypot(it.repulsive_sum.x, it.repulsive_sum.y));
    });
    const auto b = layout_graph(g, opt);
    std::ostringstream sa, sb;
    write_layout_csv(sa, g, a);
    write_layout_csv(sb, g, b);
    c.expect(a == b && sa.str() == sb.str(), "layout not reproducible");
    c.expect(worst <= 1e-6 * n2, "repulsive sum " + std::to_string(worst));
    worst_ratio = std::max(worst_ratio, worst / n2);
  }
  if (c.ok) c.why << "identical reruns, max |sum|/|V|^2 = " << worst_ratio;
}

// 9
void pipeline_reproducible(Check& c) {
  TempDir dir("pipeline");
  auto run_once = [&](const fs::path& out) {
    cli::RunConfig cfg;
    cli::apply_config_file(cfg, fs::path(TWEETMINE_SOURCE_DIR) / "samples" / "demo.conf");
    cfg.scenario = "demo";
    cfg.out = (out / "corpus").string();
    std::ostringstream o, e;
    if (cli::cmd_synth(cfg, o, e) != 0) return false;
    cfg.input = (out / "corpus" / "corpus.jsonl").string();
    cfg.out = (out / "results").string();
    return cli::cmd_pipeline(cfg, o, e) == 0;
  };
  c.expect(run_once(dir.path / "a"), "first pipeline run failed");
  c.expect(run_once(dir.path / "b"), "second pipeline run failed");
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir.path / "a")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const auto twin = dir.path / "b" / fs::relative(entry.path(), dir.path / "a");
    c.expect(fs::exists(twin) && slurp(entry.path()) == slurp(twin), "differs: " + twin.string());
  }
  std::size_t files_b = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir.path / "b")) files_b += entry.is_regular_file();
  c.expect(files == files_b && files > 0, "file sets differ");
  if (c.ok) c.why << files << " files byte-identical";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
      {"1 itemset table reconstruction", table_reconstruction},
      {"2 apriori oracle equivalence", apriori_oracle},
      {"3 anti-monotonicity", anti_monotonicity},
      {"4 ranking scenario and jump", ranking_scenario},
      {"5 duplication invariance", duplication_invariance},
      {"6 community oracle", community_oracle},
      {"7 hub removal", hub_removal},
      {"8 layout determinism and force balance", layout_checks},
      {"9 pipeline reproducibility", pipeline_reproducible},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.why << "exception: " << e.what();
    }
    std::cout << (c.ok ? "PASS " : "FAIL ") << name << " (" << c.why.str() << ")" << std::endl;
    failures += !c.ok;
  }
  return failures ? 1 : 0;
}

#pragma once

// Reference computations used only by the tests. They share no code path
// with the library routines they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tweetmine/graph.hpp"
#include "tweetmine/itemsets.hpp"

namespace oracle {

struct MinedSet {
  std::vector<std::string> items;
  std::uint64_t count;
  bool operator==(const MinedSet&) const = default;
};

// Every nonempty subset of the universe (|universe| <= 20), counted by direct
// scan over the transactions and kept when count / n > supp_min.
inline std::vector<MinedSet> enumerate_itemsets(const std::vector<std::string>& universe,
                                                const std::vector<std::vector<std::string>>& transactions,
                                                double supp_min, std::size_t min_size, std::size_t max_size) {
  const std::size_t u = universe.size();
  std::vector<std::uint32_t> masks;
  for (const auto& t : transactions) {
    std::uint32_t m = 0;
    for (const auto& item : t)
      m |= 1u << (std::find(universe.begin(), universe.end(), item) - universe.begin());
    masks.push_back(m);
  }
  std::vector<MinedSet> out;
  for (std::uint32_t s = 1; s < (1u << u); ++s) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(s));
    if (size < min_size || size > max_size) continue;
    std::uint64_t count = 0;
    for (auto m : masks)
      if ((m & s) == s) ++count;
    if (!(static_cast<double>(count) / static_cast<double>(transactions.size()) > supp_min)) continue;
    MinedSet f{{}, count};
    for (std::size_t i = 0; i < u; ++i)
      if (s & (1u << i)) f.items.push_back(universe[i]);
    std::sort(f.items.begin(), f.items.end());
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const MinedSet& a, const MinedSet& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.items < b.items;
  });
  return out;
}

// Dense symmetric weight matrix.
using Weights = std::vector<std::vector<double>>;

inline Weights weights_of(const tweetmine::MentionGraph& g) {
  Weights a(g.vertex_count(), std::vector<double>(g.vertex_count(), 0.0));
  for (const auto& [e, w] : g.edges()) {
    a[e.first][e.second] = static_cast<double>(w);
    a[e.second][e.first] = static_cast<double>(w);
  }
  return a;
}

// Q = 1/(2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j)
inline double modularity(const Weights& a, const std::vector<std::size_t>& c) {
  const std::size_t n = a.size();
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += a[i][j];
      two_m += a[i][j];
    }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c[i] == c[j]) q += a[i][j] - k[i] * k[j] / two_m;
  return q / two_m;
}

struct BestPartition {
  double q = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> labels;
};

// Exhaustive search over all set partitions (restricted growth strings).
inline BestPartition best_partition(const Weights& a) {
  const std::size_t n = a.size();
  BestPartition best;
  std::vector<std::size_t> rgs(n, 0);
  auto visit = [&](auto&& self, std::size_t i, std::size_t max_label) -> void {
    if (i == n) {
      const double q = modularity(a, rgs);
      if (q > best.q) {
        best.q = q;
        best.labels = rgs;
      }
      return;
    }
    for (std::size_t l = 0; l <= max_label + 1; ++l) {
      rgs[i] = l;
      self(self, i + 1, std::max(max_label, l));
    }
  };
  if (n == 0) return best;
  rgs[0] = 0;
  visit(visit, 1, 0);
  return best;
}

// Greedy agglomeration with Q recomputed from scratch for every candidate
// merge of two connected communities; returns the peak Q along the sequence.
inline double greedy_peak_q(const Weights& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> lab(n);
  for (std::size_t i = 0; i < n; ++i) lab[i] = i;
  double best = modularity(a, lab);
  for (;;) {
    double bq = -std::numeric_limits<double>::infinity();
    std::size_t bx = 0, by = 0;
    bool any = false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        bool linked = false;
        for (std::size_t i = 0; i < n && !linked; ++i)
          for (std::size_t j = 0; j < n && !linked; ++j) linked = lab[i] == x && lab[j] == y && a[i][j] > 0;
        if (!linked) continue;
        auto merged = lab;
        for (auto& l : merged)
          if (l == y) l = x;
        const double q = modularity(a, merged);
        if (q > bq + 1e-12) {
          bq = q;
          bx = x;
          by = y;
          any = true;
        }
      }
    if (!any) return best;
    for (auto& l : lab)
      if (l == by) l = bx;
    best = std::max(best, bq);
  }
}

}  // namespace oracle

namespace gen {

// Random transactions over an item universe named item00..itemNN.
struct RandomTransactions {
  std::vector<std::string> universe;
  std::vector<std::vector<std::string>> transactions;
};

inline RandomTransactions random_transactions(std::mt19937_64& rng, std::size_t max_items = 12,
                                              std::size_t max_transactions = 200) {
  RandomTransactions r;
  const std::size_t u = 1 + rng() % max_items;
  const std::size_t n = 1 + rng() % max_transactions;
  for (std::size_t i = 0; i < u; ++i) r.universe.push_back("item" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  // Per-item inclusion probability, skewed so some items are common.
  std::vector<double> p(u);
  for (auto& x : p) x = 0.05 + 0.6 * static_cast<double>(rng() % 1000) / 1000.0;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<std::string> items;
    for (std::size_t i = 0; i < u; ++i)
      if (static_cast<double>(rng() % 1000) / 1000.0 < p[i]) items.push_back(r.universe[i]);
    r.transactions.push_back(std::move(items));
  }
  return r;
}

inline tweetmine::TransactionSet to_set(const RandomTransactions& r) {
  std::vector<tweetmine::Transaction> ts;
  for (std::size_t i = 0; i < r.transactions.size(); ++i) ts.push_back({r.transactions[i], "t" + std::to_string(i)});
  return tweetmine::TransactionSet(r.universe, std::move(ts));
}

inline std::string vname(std::size_t i) { return "v" + std::to_string(i); }

// Builds a graph from (a, b, weight) triples on vertices v0..v(n-1).
inline tweetmine::MentionGraph graph_from_edges(std::size_t n,
                                                const std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>>& es) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(vname(i));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::string> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[pos[i]] = names[i];
  std::map<tweetmine::MentionGraph::EdgeKey, std::uint64_t> edges;
  for (const auto& [a, b, w] : es) edges[std::minmax(pos[a], pos[b])] += w;
  return tweetmine::MentionGraph(std::move(sorted), std::vector<tweetmine::VertexStats>(n), std::move(edges));
}

inline tweetmine::MentionGraph random_graph(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n) {
  const std::size_t n = min_n + rng() % (max_n - min_n + 1);
  const double p = 0.2 + 0.5 * static_cast<double>(rng() % 1000) / 1000.0;
  std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>> es;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (static_cast<double>(rng() % 1000) / 1000.0 < p) es.emplace_back(i, j, 1 + rng() % 3);
  return graph_from_edges(n, es);
}

// Two cliques of sizes a and b (vertices 0..a-1 and a..a+b-1) joined by one edge.
inline tweetmine::MentionGraph two_cliques(std::size_t a, std::size_t b) {
  std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>> es;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = i + 1; j < a; ++j) es.emplace_back(i, j, 1);
  for (std::size_t i = a; i < a + b; ++i)
    for (std::size_t j = i + 1; j < a + b; ++j) es.emplace_back(i, j, 1);
  es.emplace_back(a - 1, a, 1);
  return graph_from_edges(a + b, es);
}

}  // namespace gen

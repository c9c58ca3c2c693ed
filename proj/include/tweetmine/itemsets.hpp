#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "export.hpp"
#include "text.hpp"
#include "timeseries.hpp"
#include "tokenize.hpp"

namespace tweetmine {

using Itemset = std::vector<std::string>;  // sorted, duplicate-free

struct Transaction {
  Itemset items;
  std::string source_id;
  bool operator==(const Transaction&) const = default;
};

// Transactions over a declared item universe. Item lists are normalized to
// sorted sets on construction; each transaction is also kept as sorted item
// ids for counting.
class TransactionSet {
 public:
  using ItemId = std::uint32_t;

  TransactionSet(std::vector<std::string> universe, std::vector<Transaction> transactions)
      : universe_(std::move(universe)), transactions_(std::move(transactions)) {
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
    if (universe_.empty()) throw PreconditionError("item universe must not be empty");
    encoded_.reserve(transactions_.size());
    for (auto& t : transactions_) {
      std::sort(t.items.begin(), t.items.end());
      t.items.erase(std::unique(t.items.begin(), t.items.end()), t.items.end());
      std::vector<ItemId> ids;
      ids.reserve(t.items.size());
      for (const auto& item : t.items) {
        auto id = index_of(item);
        if (!id) throw UnknownItem(item);
        ids.push_back(*id);
      }
      encoded_.push_back(std::move(ids));
    }
  }

  const std::vector<std::string>& universe() const noexcept { return universe_; }
  const std::vector<Transaction>& transactions() const noexcept { return transactions_; }
  const std::vector<std::vector<ItemId>>& encoded() const noexcept { return encoded_; }
  std::size_t size() const noexcept { return transactions_.size(); }
  bool empty() const noexcept { return transactions_.empty(); }

  std::optional<ItemId> index_of(std::string_view item) const {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), item);
    if (it == universe_.end() || *it != item) return std::nullopt;
    return static_cast<ItemId>(it - universe_.begin());
  }

 private:
  std::vector<std::string> universe_;
  std::vector<Transaction> transactions_;
  std::vector<std::vector<ItemId>> encoded_;
};

struct FrequentItemset {
  Itemset items;
  double support;
  std::uint64_t count;
  bool operator==(const FrequentItemset&) const = default;
};

// Universe = lexicon; one transaction per message whose tokens hit the lexicon.
inline TransactionSet build_transactions(const Corpus& corpus, const NameLexicon& lexicon) {
  std::vector<Transaction> out;
  for (const auto& m : corpus) {
    std::set<std::string> hit;
    for (auto& t : tokenize(m.text).tokens)
      if (lexicon.contains(t)) hit.insert(std::move(t));
    if (!hit.empty()) out.push_back({Itemset(hit.begin(), hit.end()), m.id});
  }
  return TransactionSet({lexicon.begin(), lexicon.end()}, std::move(out));
}

struct SupportValue {
  double support;
  std::uint64_t count;
  bool operator==(const SupportValue&) const = default;
};

inline SupportValue support(const TransactionSet& ts, const std::vector<std::string>& items) {
  if (items.empty()) throw PreconditionError("support of the empty item set is undefined");
  std::vector<TransactionSet::ItemId> ids;
  for (const auto& item : items) {
    auto id = ts.index_of(item);
    if (!id) throw UnknownItem(item);
    ids.push_back(*id);
  }
  if (ts.empty()) throw EmptyTransactionSet();
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::uint64_t count = 0;
  for (const auto& t : ts.encoded())
    if (std::includes(t.begin(), t.end(), ids.begin(), ids.end())) ++count;
  return {static_cast<double>(count) / static_cast<double>(ts.size()), count};
}

// Order of mined results: support descending, then item lists lexicographically.
inline bool itemset_order(const FrequentItemset& a, const FrequentItemset& b) {
  if (a.count != b.count) return a.count > b.count;
  return a.items < b.items;
}

// Frequency test shared by mining and any reference enumeration: the
// support, as a double, strictly exceeds supp_min.
inline bool is_frequent(std::uint64_t count, std::size_t n_transactions, double supp_min) {
  return static_cast<double>(count) / static_cast<double>(n_transactions) > supp_min;
}

namespace detail {

class TidSet {
 public:
  explicit TidSet(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }
  TidSet operator&(const TidSet& o) const {
    TidSet r(*this);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct LevelEntry {
  std::vector<TransactionSet::ItemId> ids;
  TidSet tids;
  std::uint64_t count;
};

}  // namespace detail

// Level-wise Apriori. Level k candidates join two frequent (k-1)-sets that
// share their first k-2 items and are dropped unless every (k-1)-subset is
// frequent; survivors are counted by intersecting transaction-id bitsets.
inline std::vector<FrequentItemset> mine_frequent_itemsets(const TransactionSet& ts, double supp_min,
                                                           std::size_t min_size, std::size_t max_size) {
  if (!(supp_min >= 0.0 && supp_min < 1.0)) throw PreconditionError("supp_min must be in [0, 1)");
  if (min_size < 1 || min_size > max_size || max_size > ts.universe().size())
    throw PreconditionError("itemset size band must satisfy 1 <= min_size <= max_size <= |universe|");
  if (ts.empty()) throw EmptyTransactionSet();

  const std::size_t n = ts.size();
  std::vector<FrequentItemset> out;
  auto emit = [&](const std::vector<detail::LevelEntry>& level, std::size_t k) {
    if (k < min_size || k > max_size) return;
    for (const auto& e : level) {
      FrequentItemset f{{}, static_cast<double>(e.count) / static_cast<double>(n), e.count};
      for (auto id : e.ids) f.items.push_back(ts.universe()[id]);
      out.push_back(std::move(f));
    }
  };

  std::vector<detail::LevelEntry> level;
  {
    std::vector<detail::TidSet> single(ts.universe().size(), detail::TidSet(n));
    for (std::size_t t = 0; t < n; ++t)
      for (auto id : ts.encoded()[t]) single[id].set(t);
    for (TransactionSet::ItemId id = 0; id < single.size(); ++id) {
      const auto c = single[id].count();
      if (is_frequent(c, n, supp_min)) level.push_back({{id}, std::move(single[id]), c});
    }
  }
  emit(level, 1);

  for (std::size_t k = 2; k <= max_size && level.size() >= 2; ++k) {
    std::set<std::vector<TransactionSet::ItemId>> previous;
    for (const auto& e : level) previous.insert(e.ids);
    std::vector<detail::LevelEntry> next;
    // `level` is sorted lexicographically by ids, so prefix-sharing runs are contiguous.
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        const auto& a = level[i].ids;
        const auto& b = level[j].ids;
        if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;
        std::vector<TransactionSet::ItemId> cand(a);
        cand.push_back(b.back());
        bool pruned = false;
        std::vector<TransactionSet::ItemId> sub(k - 1);
        for (std::size_t drop = 0; drop + 2 < k && !pruned; ++drop) {
          std::copy(cand.begin(), cand.begin() + static_cast<long>(drop), sub.begin());
          std::copy(cand.begin() + static_cast<long>(drop) + 1, cand.end(), sub.begin() + static_cast<long>(drop));
          pruned = !previous.contains(sub);
        }
        if (pruned) continue;
        auto tids = level[i].tids & level[j].tids;
        const auto c = tids.count();
        if (is_frequent(c, n, supp_min)) next.push_back({std::move(cand), std::move(tids), c});
      }
    }
    level = std::move(next);
    emit(level, k);
  }

  std::sort(out.begin(), out.end(), itemset_order);
  return out;
}

inline std::vector<FrequentItemset> top_itemsets(const std::vector<FrequentItemset>& result, std::size_t k) {
  if (k < 1) throw PreconditionError("k must be at least 1");
  return {result.begin(), result.begin() + static_cast<long>(std::min(k, result.size()))};
}

// Bipartite graph linking the top-k itemsets to the items they contain.
struct ItemsetGraph {
  std::vector<FrequentItemset> itemsets;
  std::vector<std::string> items;                        // sorted
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (itemset index, item index)

  std::size_t node_count() const noexcept { return itemsets.size() + items.size(); }
};

inline ItemsetGraph itemset_graph(const std::vector<FrequentItemset>& result, std::size_t k) {
  ItemsetGraph g;
  g.itemsets = top_itemsets(result, k);
  std::set<std::string> items;
  for (const auto& f : g.itemsets) items.insert(f.items.begin(), f.items.end());
  g.items.assign(items.begin(), items.end());
  for (std::size_t s = 0; s < g.itemsets.size(); ++s)
    for (const auto& item : g.itemsets[s].items) {
      auto it = std::lower_bound(g.items.begin(), g.items.end(), item);
      g.edges.emplace_back(s, static_cast<std::size_t>(it - g.items.begin()));
    }
  return g;
}

inline std::string join_items(const Itemset& items, std::string_view sep = "|") {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += sep;
    s += items[i];
  }
  return s;
}

inline ExportGraph to_export_graph(const ItemsetGraph& g) {
  ExportGraph out;
  out.name = "itemsets";
  out.node_keys = {{"kind", "string"}, {"label", "string"}, {"rank", "int"}, {"support", "double"}, {"count", "long"}};
  for (std::size_t s = 0; s < g.itemsets.size(); ++s) {
    const auto& f = g.itemsets[s];
    out.nodes.push_back({"itemset:" + std::to_string(s + 1),
                         {{"kind", "itemset"},
                          {"label", join_items(f.items, ", ")},
                          {"rank", std::to_string(s + 1)},
                          {"support", format_fixed(f.support, 9)},
                          {"count", std::to_string(f.count)}}});
  }
  for (const auto& item : g.items) out.nodes.push_back({"item:" + item, {{"kind", "item"}, {"label", item}}});
  for (const auto& [s, i] : g.edges)
    out.edges.push_back({"itemset:" + std::to_string(s + 1), "item:" + g.items[i], {}});
  return out;
}

// ---------------------------------------------------------------------------
// CSV report: rank,items,support,count

inline constexpr std::string_view kItemsetCsvHeader = "rank,items,support,count";

inline void write_itemsets_csv(std::ostream& out, const std::vector<FrequentItemset>& result) {
  out << kItemsetCsvHeader << '\n';
  for (std::size_t i = 0; i < result.size(); ++i)
    out << (i + 1) << ',' << join_items(result[i].items) << ',' << format_fixed(result[i].support, 9) << ','
        << result[i].count << '\n';
}

// Inverse of write_itemsets_csv given the transaction count the report was
// mined from; supports are recomputed exactly and checked against the text.
inline std::vector<FrequentItemset> read_itemsets_csv(std::istream& in, std::size_t n_transactions) {
  if (n_transactions == 0) throw EmptyTransactionSet();
  std::vector<FrequentItemset> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n == 1) {
      if (line != kItemsetCsvHeader) throw MalformedRecord(1, "unexpected itemset header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = detail::split_simple(line, ',');
    if (f.size() != 4) throw MalformedRecord(n, "expected 4 fields");
    if (detail::parse_count(n, f[0]) != out.size() + 1) throw MalformedRecord(n, "ranks are not consecutive");
    FrequentItemset fi{detail::split_simple(f[1], '|'), 0.0, detail::parse_count(n, f[3])};
    fi.support = static_cast<double>(fi.count) / static_cast<double>(n_transactions);
    if (format_fixed(fi.support, 9) != f[2]) throw MalformedRecord(n, "support disagrees with count");
    out.push_back(std::move(fi));
  }
  return out;
}

}  // namespace tweetmine

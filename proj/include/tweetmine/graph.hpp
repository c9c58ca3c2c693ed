#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "export.hpp"
#include "timeseries.hpp"

namespace tweetmine {

struct VertexStats {
  std::uint64_t tweets_sent = 0;
  std::uint64_t times_mentioned = 0;
  bool operator==(const VertexStats&) const = default;
};

// Undirected weighted user graph. Vertices are kept sorted by handle and are
// addressed by index; edges are stored once with the smaller index first.
class MentionGraph {
 public:
  using VertexId = std::size_t;
  using EdgeKey = std::pair<VertexId, VertexId>;

  MentionGraph() = default;

  // `edges` keys must satisfy first < second < vertices.size(); weights >= 1.
  MentionGraph(std::vector<std::string> vertices, std::vector<VertexStats> stats,
               std::map<EdgeKey, std::uint64_t> edges)
      : vertices_(std::move(vertices)), stats_(std::move(stats)), edges_(std::move(edges)) {
    if (stats_.size() != vertices_.size()) throw PreconditionError("vertex stats size mismatch");
    if (!std::is_sorted(vertices_.begin(), vertices_.end()) ||
        std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw PreconditionError("vertices must be sorted and unique");
    degree_.assign(vertices_.size(), 0);
    for (const auto& [e, w] : edges_) {
      if (!(e.first < e.second && e.second < vertices_.size())) throw PreconditionError("invalid edge endpoints");
      if (w == 0) throw PreconditionError("edge weight must be positive");
      degree_[e.first] += w;
      degree_[e.second] += w;
      total_weight_ += w;
    }
  }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<VertexStats>& stats() const noexcept { return stats_; }
  const std::map<EdgeKey, std::uint64_t>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  std::uint64_t total_weight() const noexcept { return total_weight_; }
  std::uint64_t degree(VertexId v) const { return degree_.at(v); }

  std::optional<VertexId> index_of(std::string_view handle) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), handle);
    if (it == vertices_.end() || *it != handle) return std::nullopt;
    return static_cast<VertexId>(it - vertices_.begin());
  }

  std::uint64_t weight(std::string_view a, std::string_view b) const {
    auto ia = index_of(a), ib = index_of(b);
    if (!ia || !ib || *ia == *ib) return 0;
    auto it = edges_.find(std::minmax(*ia, *ib));
    return it == edges_.end() ? 0 : it->second;
  }

  // Subgraph induced by the vertices for which keep(index) holds.
  template <class Keep>
  MentionGraph induced(Keep&& keep) const {
    std::vector<std::optional<VertexId>> remap(vertices_.size());
    std::vector<std::string> vs;
    std::vector<VertexStats> st;
    for (VertexId v = 0; v < vertices_.size(); ++v) {
      if (!keep(v)) continue;
      remap[v] = vs.size();
      vs.push_back(vertices_[v]);
      st.push_back(stats_[v]);
    }
    std::map<EdgeKey, std::uint64_t> es;
    for (const auto& [e, w] : edges_)
      if (remap[e.first] && remap[e.second]) es.emplace(EdgeKey{*remap[e.first], *remap[e.second]}, w);
    return MentionGraph(std::move(vs), std::move(st), std::move(es));
  }

  bool operator==(const MentionGraph& o) const {
    return vertices_ == o.vertices_ && stats_ == o.stats_ && edges_ == o.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<VertexStats> stats_;
  std::map<EdgeKey, std::uint64_t> edges_;
  std::vector<std::uint64_t> degree_;
  std::uint64_t total_weight_ = 0;
};

// Every mention occurrence counts once; self-mentions are ignored entirely.
inline MentionGraph build_mention_graph(const Corpus& corpus) {
  std::set<std::string> handles;
  for (const auto& m : corpus) {
    handles.insert(m.author);
    for (const auto& h : m.mentions)
      if (h != m.author) handles.insert(h);
  }
  std::vector<std::string> vertices(handles.begin(), handles.end());
  auto id = [&](const std::string& h) {
    return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), h) - vertices.begin());
  };
  std::vector<VertexStats> stats(vertices.size());
  std::map<MentionGraph::EdgeKey, std::uint64_t> edges;
  for (const auto& m : corpus) {
    const auto a = id(m.author);
    ++stats[a].tweets_sent;
    for (const auto& h : m.mentions) {
      if (h == m.author) continue;
      const auto u = id(h);
      ++stats[u].times_mentioned;
      ++edges[std::minmax(a, u)];
    }
  }
  return MentionGraph(std::move(vertices), std::move(stats), std::move(edges));
}

// Keeps users that sent at least `min_tweets` messages or were mentioned at
// least `min_mentions` times.
inline MentionGraph filter_active(const MentionGraph& g, std::uint64_t min_tweets = 2,
                                  std::uint64_t min_mentions = 2) {
  return g.induced([&](std::size_t v) {
    const auto& s = g.stats()[v];
    return s.tweets_sent >= min_tweets || s.times_mentioned >= min_mentions;
  });
}

inline MentionGraph remove_popular(const MentionGraph& g, std::uint64_t min_mentions) {
  if (min_mentions < 1) throw PreconditionError("popular-user threshold must be at least 1");
  return g.induced([&](std::size_t v) { return g.stats()[v].times_mentioned < min_mentions; });
}

// ---------------------------------------------------------------------------
// Modularity

// Q = sum_c [ intra_c / W - (deg_c / 2W)^2 ], evaluated exactly in integers as
// (4 W sum intra_c - sum deg_c^2) / (4 W^2). A graph without edges scores 0.
inline double modularity_score(const MentionGraph& g, const std::vector<std::size_t>& community) {
  if (community.size() != g.vertex_count()) throw PreconditionError("assignment size mismatch");
  const std::uint64_t total = g.total_weight();
  if (total == 0) return 0.0;
  std::map<std::size_t, std::pair<unsigned __int128, unsigned __int128>> by_comm;  // intra, degree
  for (std::size_t v = 0; v < community.size(); ++v) by_comm[community[v]].second += g.degree(v);
  for (const auto& [e, w] : g.edges())
    if (community[e.first] == community[e.second]) by_comm[community[e.first]].first += w;
  unsigned __int128 intra = 0, deg_sq = 0;
  for (const auto& [c, v] : by_comm) {
    intra += v.first;
    deg_sq += v.second * v.second;
  }
  const unsigned __int128 w = total;
  const auto pos = 4 * w * intra;
  const long double num = pos >= deg_sq ? static_cast<long double>(pos - deg_sq)
                                        : -static_cast<long double>(deg_sq - pos);
  return static_cast<double>(num / (4.0L * static_cast<long double>(w) * static_cast<long double>(w)));
}

inline double modularity_score(const MentionGraph& g, const std::map<std::string, std::size_t>& assignment) {
  std::vector<std::size_t> community(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto it = assignment.find(g.vertices()[v]);
    if (it == assignment.end()) throw UncoveredVertex(g.vertices()[v]);
    community[v] = it->second;
  }
  return modularity_score(g, community);
}

struct Partition {
  std::vector<std::size_t> community;  // per vertex index, dense ids from 0
  std::size_t community_count = 0;
  double modularity = 0.0;

  std::map<std::string, std::size_t> assignment(const MentionGraph& g) const {
    std::map<std::string, std::size_t> out;
    for (std::size_t v = 0; v < community.size(); ++v) out.emplace(g.vertices()[v], community[v]);
    return out;
  }
};

struct MergeStep {
  std::size_t kept;     // surviving community label (the smaller one)
  std::size_t absorbed;
  double delta_q;
  double q_after;
};

struct CommunityResult {
  Partition partition;
  double initial_q = 0.0;       // all singletons
  std::vector<MergeStep> merges;  // full agglomeration sequence
  std::size_t best_step = 0;      // number of merges applied to reach the partition
};

// Renumbers labels densely in order of each community's smallest vertex.
inline std::vector<std::size_t> dense_labels(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> remap;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto [it, inserted] = remap.emplace(labels[v], remap.size());
    out[v] = it->second;
  }
  return out;
}

// Greedy agglomerative modularity maximization (Clauset-Newman-Moore).
// Starting from singletons, the connected pair with the largest gain is
// merged until no connected pairs remain; the partition with the highest Q
// along the sequence (earliest on ties) is returned. Gains are kept as exact
// integers 2W*w_ij - k_i*k_j, equal ties go to the smallest (i, j) labels,
// and the merged community keeps the smaller label.
inline CommunityResult detect_communities_traced(const MentionGraph& g) {
  if (g.empty()) throw EmptyGraph();
  const std::size_t n = g.vertex_count();
  const auto two_w = static_cast<std::int64_t>(2 * g.total_weight());
  const long double scale = 2.0L * static_cast<long double>(g.total_weight()) * g.total_weight();

  std::vector<std::int64_t> k(n);
  std::vector<std::map<std::size_t, std::int64_t>> nbr(n);
  for (std::size_t v = 0; v < n; ++v) k[v] = static_cast<std::int64_t>(g.degree(v));
  for (const auto& [e, w] : g.edges()) {
    nbr[e.first][e.second] = static_cast<std::int64_t>(w);
    nbr[e.second][e.first] = static_cast<std::int64_t>(w);
  }

  struct Candidate {
    std::int64_t gain;
    std::size_t lo, hi;
    bool operator<(const Candidate& o) const {
      if (gain != o.gain) return gain > o.gain;
      if (lo != o.lo) return lo < o.lo;
      return hi < o.hi;
    }
  };
  auto candidate = [&](std::size_t a, std::size_t b, std::int64_t w) {
    const auto [lo, hi] = std::minmax(a, b);
    return Candidate{two_w * w - k[a] * k[b], lo, hi};
  };
  std::set<Candidate> heap;
  for (const auto& [e, w] : g.edges()) heap.insert(candidate(e.first, e.second, static_cast<std::int64_t>(w)));

  CommunityResult result;
  // Q scaled by 4W^2.
  std::int64_t q_scaled = 0;
  for (auto kv : k) q_scaled -= kv * kv;
  std::int64_t best_q = q_scaled;
  const long double q_den = 2.0L * scale;
  result.initial_q = g.total_weight() ? static_cast<double>(q_scaled / q_den) : 0.0;

  while (!heap.empty()) {
    const Candidate best = *heap.begin();
    const std::size_t keep = best.lo, gone = best.hi;
    for (const auto& [x, w] : nbr[keep]) heap.erase(candidate(keep, x, w));
    for (const auto& [x, w] : nbr[gone])
      if (x != keep) heap.erase(candidate(gone, x, w));
    for (const auto& [x, w] : nbr[gone]) {
      if (x == keep) continue;
      nbr[keep][x] += w;
      nbr[x].erase(gone);
      nbr[x][keep] += w;
    }
    nbr[keep].erase(gone);
    nbr[gone].clear();
    k[keep] += k[gone];
    k[gone] = 0;
    for (const auto& [x, w] : nbr[keep]) heap.insert(candidate(keep, x, w));

    q_scaled += 2 * best.gain;
    result.merges.push_back({keep, gone, static_cast<double>(best.gain / scale), static_cast<double>(q_scaled / q_den)});
    if (q_scaled > best_q) {
      best_q = q_scaled;
      result.best_step = result.merges.size();
    }
  }

  std::vector<std::size_t> label(n);
  for (std::size_t v = 0; v < n; ++v) label[v] = v;
  // Replay: `absorbed` labels are never reused, so a forwarding table suffices.
  std::vector<std::size_t> forward(n);
  for (std::size_t v = 0; v < n; ++v) forward[v] = v;
  for (std::size_t s = 0; s < result.best_step; ++s) forward[result.merges[s].absorbed] = result.merges[s].kept;
  auto find = [&](std::size_t c) {
    while (forward[c] != c) c = forward[c];
    return c;
  };
  for (std::size_t v = 0; v < n; ++v) label[v] = find(v);

  auto& p = result.partition;
  p.community = dense_labels(label);
  p.community_count = p.community.empty() ? 0 : *std::max_element(p.community.begin(), p.community.end()) + 1;
  p.modularity = modularity_score(g, p.community);
  return result;
}

inline Partition detect_communities(const MentionGraph& g) { return detect_communities_traced(g).partition; }

// ---------------------------------------------------------------------------
// Fruchterman-Reingold layout

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct Layout {
  std::vector<Point> positions;  // per vertex index
  double width = 0.0;
  double height = 0.0;
  bool operator==(const Layout&) const = default;
};

struct LayoutOptions {
  double width = 1000.0;
  double height = 1000.0;
  std::size_t iterations = 500;
  std::uint64_t seed = 1;
};

struct LayoutIteration {
  std::size_t iteration;
  double temperature;
  Point repulsive_sum;       // vector sum of all repulsive displacements
  double max_repulsive = 0;  // largest single pairwise repulsive force
};

using LayoutObserver = std::function<void(const LayoutIteration&)>;

// Repulsion k^2/d between every pair, attraction d^2/k along edges (edge
// weights are ignored), displacement capped by a temperature cooling linearly
// from 0.1*min(width, height) to 0, positions clamped to the frame. Initial
// positions are uniform in the frame, drawn from a 64-bit Mersenne Twister.
inline Layout layout_graph(const MentionGraph& g, const LayoutOptions& opt, const LayoutObserver& observer = {}) {
  if (!(opt.width > 0 && opt.height > 0) || opt.iterations == 0)
    throw PreconditionError("layout needs positive width, height and iterations");
  if (g.empty()) throw EmptyGraph();
  const std::size_t n = g.vertex_count();
  Layout layout{std::vector<Point>(n), opt.width, opt.height};
  if (n == 1) {
    layout.positions[0] = {opt.width / 2, opt.height / 2};
    return layout;
  }

  std::mt19937_64 rng(opt.seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (auto& p : layout.positions) {
    p.x = unit() * opt.width;
    p.y = unit() * opt.height;
  }

  const double k = std::sqrt(opt.width * opt.height / static_cast<double>(n));
  const double k2 = k * k;
  const double min_dist = 0.01 * k;
  const double t0 = 0.1 * std::min(opt.width, opt.height);
  std::vector<Point> disp(n);

  for (std::size_t it = 0; it < opt.iterations; ++it) {
    const double temperature = t0 * (1.0 - static_cast<double>(it) / static_cast<double>(opt.iterations));
    std::fill(disp.begin(), disp.end(), Point{});
    double max_rep = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = layout.positions[i].x - layout.positions[j].x;
        double dy = layout.positions[i].y - layout.positions[j].y;
        double d = std::hypot(dx, dy);
        if (d < min_dist) {
          // Coincident or nearly so: separate along a pair-dependent direction.
          if (d == 0.0) {
            const double angle = static_cast<double>((i * 7919 + j * 104729) % 360) * (M_PI / 180.0);
            dx = std::cos(angle);
            dy = std::sin(angle);
            d = 1.0;
          }
          dx *= min_dist / d;
          dy *= min_dist / d;
          d = min_dist;
        }
        const double f = k2 / d;
        const double fx = dx / d * f, fy = dy / d * f;
        disp[i].x += fx;
        disp[i].y += fy;
        disp[j].x -= fx;
        disp[j].y -= fy;
        max_rep = std::max(max_rep, f);
      }
    }
    if (observer) {
      LayoutIteration info{it, temperature, {}, max_rep};
      for (const auto& p : disp) {
        info.repulsive_sum.x += p.x;
        info.repulsive_sum.y += p.y;
      }
      observer(info);
    }
    for (const auto& [e, w] : g.edges()) {
      const double dx = layout.positions[e.first].x - layout.positions[e.second].x;
      const double dy = layout.positions[e.first].y - layout.positions[e.second].y;
      const double d = std::hypot(dx, dy);
      if (d == 0.0) continue;
      const double f = d * d / k;
      const double fx = dx / d * f, fy = dy / d * f;
      disp[e.first].x -= fx;
      disp[e.first].y -= fy;
      disp[e.second].x += fx;
      disp[e.second].y += fy;
    }
    for (std::size_t v = 0; v < n; ++v) {
      const double len = std::hypot(disp[v].x, disp[v].y);
      if (len > 0.0) {
        const double step = std::min(len, temperature);
        layout.positions[v].x += disp[v].x / len * step;
        layout.positions[v].y += disp[v].y / len * step;
      }
      layout.positions[v].x = std::clamp(layout.positions[v].x, 0.0, opt.width);
      layout.positions[v].y = std::clamp(layout.positions[v].y, 0.0, opt.height);
    }
  }
  return layout;
}

// ---------------------------------------------------------------------------
// Export

inline ExportGraph to_export_graph(const MentionGraph& g, const Partition* partition = nullptr,
                                   const Layout* layout = nullptr) {
  ExportGraph out;
  out.name = "mentions";
  out.node_keys = {{"tweets_sent", "long"}, {"times_mentioned", "long"}};
  if (partition) out.node_keys.push_back({"community", "int"});
  if (layout) {
    out.node_keys.push_back({"x", "double"});
    out.node_keys.push_back({"y", "double"});
  }
  out.edge_keys = {{"weight", "long"}};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    ExportGraph::Node node{g.vertices()[v],
                           {{"tweets_sent", std::to_string(g.stats()[v].tweets_sent)},
                            {"times_mentioned", std::to_string(g.stats()[v].times_mentioned)}}};
    if (partition) node.attrs["community"] = std::to_string(partition->community.at(v));
    if (layout) {
      node.attrs["x"] = format_fixed(layout->positions.at(v).x, 6);
      node.attrs["y"] = format_fixed(layout->positions.at(v).y, 6);
    }
    out.nodes.push_back(std::move(node));
  }
  for (const auto& [e, w] : g.edges())
    out.edges.push_back({g.vertices()[e.first], g.vertices()[e.second], {{"weight", std::to_string(w)}}});
  return out;
}

inline constexpr std::string_view kLayoutCsvHeader = "vertex,x,y";

inline void write_layout_csv(std::ostream& out, const MentionGraph& g, const Layout& layout) {
  out << kLayoutCsvHeader << '\n';
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    detail::write_csv_field(out, g.vertices()[v]);
    out << ',' << format_fixed(layout.positions[v].x, 6) << ',' << format_fixed(layout.positions[v].y, 6) << '\n';
  }
}

}  // namespace tweetmine

// Copyright 2026 The alexglue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALEXGLUE_METRIC_GRAPH_HPP
#define ALEXGLUE_METRIC_GRAPH_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace alexglue {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::uint32_t kNoEdge = std::numeric_limits<std::uint32_t>::max();

struct WeightedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double w = 0.0;
};

/// Undirected weighted graph in compressed sparse row form. Each adjacency
/// entry remembers the index of the undirected edge it came from.
class CsrGraph {
 public:
  CsrGraph() = default;

  /// `map` relabels endpoints (e.g. node -> class); entries whose endpoints
  /// coincide after relabelling are dropped.
  CsrGraph(std::size_t vertex_count, std::span<const WeightedEdge> edges,
           std::span<const std::uint32_t> map = {})
      : offsets_(vertex_count + 1, 0) {
    auto label = [&](std::uint32_t x) { return map.empty() ? x : map[x]; };
    for (const auto& e : edges) {
      const auto a = label(e.u);
      const auto b = label(e.v);
      if (a == b) continue;
      ++offsets_[a + 1];
      ++offsets_[b + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    entries_.resize(offsets_.back());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t id = 0; id < edges.size(); ++id) {
      const auto& e = edges[id];
      const auto a = label(e.u);
      const auto b = label(e.v);
      if (a == b) continue;
      entries_[fill[a]++] = Entry{b, id, e.w};
      entries_[fill[b]++] = Entry{a, id, e.w};
    }
  }

  struct Entry {
    std::uint32_t to;
    std::uint32_t edge;
    double w;
  };

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t entry_count() const { return entries_.size(); }

  std::span<const Entry> neighbors(std::uint32_t v) const {
    return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<Entry> entries_;
};

struct ShortestPaths {
  std::vector<double> dist;
  std::vector<std::uint32_t> pred_edge;  // undirected edge used to reach v
  std::vector<std::uint32_t> pred_vertex;
};

/// Multi-source Dijkstra. Ties are broken by vertex index, so results are
/// reproducible. `stop(v, d)` may end the search early when it returns true
/// for the vertex just settled.
template <typename Stop = std::nullptr_t>
ShortestPaths dijkstra(const CsrGraph& g,
                       std::span<const std::pair<std::uint32_t, double>> seeds,
                       bool record_paths = false, Stop stop = nullptr) {
  ShortestPaths out;
  out.dist.assign(g.size(), kInfinity);
  if (record_paths) {
    out.pred_edge.assign(g.size(), kNoEdge);
    out.pred_vertex.assign(g.size(), kNoEdge);
  }
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (const auto& [v, d] : seeds) {
    if (d < out.dist[v]) {
      out.dist[v] = d;
      queue.emplace(d, v);
    }
  }
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > out.dist[v]) continue;
    if constexpr (!std::is_same_v<Stop, std::nullptr_t>) {
      if (stop(v, d)) break;
    }
    for (const auto& e : g.neighbors(v)) {
      const double nd = d + e.w;
      if (nd < out.dist[e.to]) {
        out.dist[e.to] = nd;
        if (record_paths) {
          out.pred_edge[e.to] = e.edge;
          out.pred_vertex[e.to] = v;
        }
        queue.emplace(nd, e.to);
      }
    }
  }
  return out;
}

/// Union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace alexglue

#endif  // ALEXGLUE_METRIC_GRAPH_HPP

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

// Gluing of flat pieces along their boundaries: the equivalence relation
// generated by arc and point identifications, the quotient pseudometric
// realized on a Steiner sample graph, and the structural checks on the
// gluing (path isometry, isolated points, classification, local structure,
// length-preserving lifts).

#ifndef ALEXGLUE_GLUING_ENGINE_HPP
#define ALEXGLUE_GLUING_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "alexglue/errors.hpp"
#include "alexglue/metric_graph.hpp"
#include "alexglue/report.hpp"
#include "alexglue/surface_model.hpp"

namespace alexglue {

/// Point at parameter t on `a` is glued to the point at parameter
/// t * len(b) / len(a) on `b`, or len(b) minus that when `reversed`.
/// Equal lengths are required for path isometry; unequal ones are still
/// built so the checker can report them.
struct ArcIdentification {
  BoundaryArc a;
  BoundaryArc b;
  bool reversed = false;
};

struct PointIdentification {
  BoundaryLocation a;
  BoundaryLocation b;
};

struct GluingSpec {
  std::vector<ArcIdentification> arcs;
  std::vector<PointIdentification> points;
};

struct GluingSettings {
  double h = 0.0;  // <= 0 selects default_resolution()
  std::size_t multiplicity_cap = 16;
};

inline constexpr double kLocationTolerance = 1e-9;
inline constexpr int kMaxClosureGenerations = 6;

inline double default_resolution(std::span<const FlatPiece> pieces) {
  double m = kInfinity;
  for (const auto& p : pieces) m = std::min(m, p.min_edge_length());
  return m / 20.0;
}

struct SampleNode {
  std::uint32_t piece = 0;
  Feature feature;  // a vertex or a point inside an edge
  int cycle = -1;   // boundary cycle, or -1 for interior nodes
  double offset = 0.0;
  bool boundary() const { return cycle >= 0; }
};

/// Weighted sample graph realizing the quotient pseudometric at resolution h.
struct MetricApproximation {
  double h = 0.0;
  std::vector<SampleNode> nodes;
  std::vector<WeightedEdge> intra_edges;
  // Zero-length identifications between boundary nodes (node < partner).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> glue_edges;
  // Largest parameter mismatch when an identified point had no exact node
  // (only after the closure iteration cap was hit).
  double max_glue_mismatch = 0.0;
  bool closure_complete = true;
};

struct PathSegment {
  PiecePoint from;
  PiecePoint to;
};

/// A direction along the boundary at a point: +1 forward along its cycle,
/// -1 backward.
struct Germ {
  BoundaryLocation location;
  int direction = 1;
};

/// Pointwise description of the identification maps; shared by the builder
/// and by the exact structural queries.
class GluingMaps {
 public:
  GluingMaps(std::span<const FlatPiece> pieces, const GluingSpec& spec)
      : pieces_(pieces), spec_(&spec) {
    for (std::size_t k = 0; k < spec.arcs.size(); ++k) {
      const auto& id = spec.arcs[k];
      const bool identity = id.a.piece == id.b.piece && id.a.cycle == id.b.cycle &&
                            id.a.forward == id.b.forward && !id.reversed &&
                            std::abs(id.a.length - id.b.length) <= kLocationTolerance &&
                            same_offset(id.a.piece, id.a.cycle, id.a.start, id.b.start);
      if (!identity) active_.push_back(k);
    }
  }

  const FlatPiece& piece(std::size_t i) const { return pieces_[i]; }
  std::span<const std::size_t> active_arcs() const { return active_; }

  bool same_offset(std::size_t piece, int cycle, double s, double t) const {
    const auto& P = pieces_[piece];
    const double g = P.forward_gap(cycle, s, t);
    return std::min(g, P.cycles()[cycle].length - g) <= kLocationTolerance;
  }

  bool same_location(const BoundaryLocation& x, const BoundaryLocation& y) const {
    return x.piece == y.piece && x.cycle == y.cycle &&
           same_offset(x.piece, x.cycle, x.offset, y.offset);
  }

  /// Parameters t at which the arc passes through the offset (two for a
  /// full-cycle arc at its start point).
  std::vector<double> params(const BoundaryArc& arc, double offset) const {
    const auto& P = pieces_[arc.piece];
    const double len = P.cycles()[arc.cycle].length;
    double g = arc.forward ? P.forward_gap(arc.cycle, arc.start, offset)
                           : P.forward_gap(arc.cycle, offset, arc.start);
    if (g > len - kLocationTolerance) g -= len;
    std::vector<double> out;
    if (g >= -kLocationTolerance && g <= arc.length + kLocationTolerance) {
      out.push_back(std::clamp(g, 0.0, arc.length));
    }
    const double wrapped = g + len;
    if (wrapped <= arc.length + kLocationTolerance) {
      const double t = std::clamp(wrapped, 0.0, arc.length);
      if (out.empty() || std::abs(out.back() - t) > kLocationTolerance) out.push_back(t);
    }
    return out;
  }

  BoundaryLocation at(const BoundaryArc& arc, double t) const {
    const auto& P = pieces_[arc.piece];
    return {arc.piece, arc.cycle,
            P.normalize_offset(arc.cycle, arc.forward ? arc.start + t : arc.start - t)};
  }

  const BoundaryArc& side(std::size_t k, int s) const {
    return s == 0 ? spec_->arcs[k].a : spec_->arcs[k].b;
  }

  double map_param(std::size_t k, int s, double t) const {
    const auto& id = spec_->arcs[k];
    const double from_len = side(k, s).length;
    const double to_len = side(k, 1 - s).length;
    double u = from_len > 0.0 ? t * to_len / from_len : 0.0;
    if (id.reversed) u = to_len - u;
    return std::clamp(u, 0.0, to_len);
  }

  bool on_any_arc(const BoundaryLocation& loc) const {
    for (std::size_t k : active_) {
      for (int s = 0; s < 2; ++s) {
        const auto& arc = side(k, s);
        if (arc.piece == loc.piece && arc.cycle == loc.cycle &&
            !params(arc, loc.offset).empty()) {
          return true;
        }
      }
    }
    return false;
  }

  /// One-step images under the arc maps and, optionally, point
  /// identifications.
  std::vector<BoundaryLocation> images(const BoundaryLocation& loc,
                                       bool include_points = true) const {
    std::vector<BoundaryLocation> out;
    for (std::size_t k : active_) {
      for (int s = 0; s < 2; ++s) {
        const auto& arc = side(k, s);
        if (arc.piece != loc.piece || arc.cycle != loc.cycle) continue;
        for (double t : params(arc, loc.offset)) {
          out.push_back(at(side(k, 1 - s), map_param(k, s, t)));
        }
      }
    }
    if (include_points) {
      for (const auto& pid : spec_->points) {
        if (same_location(pid.a, loc)) out.push_back(pid.b);
        if (same_location(pid.b, loc)) out.push_back(pid.a);
      }
    }
    return out;
  }

  /// Equivalence class of a boundary location (breadth-first closure).
  std::vector<BoundaryLocation> closure(const BoundaryLocation& loc,
                                        bool include_points = true,
                                        std::size_t cap = 64) const {
    std::vector<BoundaryLocation> seen{loc};
    for (std::size_t i = 0; i < seen.size() && seen.size() <= cap; ++i) {
      for (const auto& img : images(seen[i], include_points)) {
        const bool known = std::any_of(seen.begin(), seen.end(), [&](const auto& x) {
          return same_location(x, img);
        });
        if (!known) seen.push_back(img);
      }
    }
    return seen;
  }

  /// Germs glued to the germ (loc, direction) by the arc maps.
  std::vector<Germ> germ_partners(const BoundaryLocation& loc, int direction) const {
    std::vector<Germ> out;
    for (std::size_t k : active_) {
      for (int s = 0; s < 2; ++s) {
        const auto& arc = side(k, s);
        if (arc.piece != loc.piece || arc.cycle != loc.cycle) continue;
        const int along = direction * (arc.forward ? 1 : -1);
        for (double t : params(arc, loc.offset)) {
          if (along > 0 && t > arc.length - kLocationTolerance) continue;
          if (along < 0 && t < kLocationTolerance) continue;
          const auto& other = side(k, 1 - s);
          const int other_along = spec_->arcs[k].reversed ? -along : along;
          out.push_back(Germ{at(other, map_param(k, s, t)),
                             other_along * (other.forward ? 1 : -1)});
        }
      }
    }
    return out;
  }

  bool germ_covered(const BoundaryLocation& loc, int direction) const {
    return !germ_partners(loc, direction).empty();
  }

 private:
  std::span<const FlatPiece> pieces_;
  const GluingSpec* spec_;
  std::vector<std::size_t> active_;
};

class GluedSpace;
GluedSpace build_quotient(std::vector<FlatPiece> pieces, GluingSpec spec,
                          GluingSettings settings);

/// The quotient Y = X / R of a disjoint union of flat pieces. Immutable after
/// construction; all queries are const and safe to run concurrently.
class GluedSpace {
 public:
  const std::vector<FlatPiece>& pieces() const { return pieces_; }
  const GluingSpec& spec() const { return spec_; }
  const GluingSettings& settings() const { return settings_; }
  const MetricApproximation& approx() const { return approx_; }
  double h() const { return approx_.h; }
  GluingMaps maps() const { return GluingMaps(pieces_, spec_); }

  std::size_t node_count() const { return approx_.nodes.size(); }
  std::size_t class_count() const { return class_offsets_.size() - 1; }
  std::uint32_t class_of_node(std::uint32_t node) const { return node_class_[node]; }
  std::span<const std::uint32_t> class_nodes(std::uint32_t c) const {
    return {class_members_.data() + class_offsets_[c],
            class_members_.data() + class_offsets_[c + 1]};
  }
  std::size_t multiplicity(std::uint32_t c) const { return class_nodes(c).size(); }
  const CsrGraph& class_graph() const { return class_graph_; }
  const CsrGraph& node_graph() const { return node_graph_; }

  const SampleNode& node(std::uint32_t n) const { return approx_.nodes[n]; }

  PiecePoint node_point(std::uint32_t n) const {
    const auto& nd = approx_.nodes[n];
    PiecePoint p = pieces_[nd.piece].feature_point(nd.feature);
    p.piece = nd.piece;
    return p;
  }

  BoundaryLocation node_location(std::uint32_t n) const {
    const auto& nd = approx_.nodes[n];
    return {nd.piece, nd.cycle, nd.offset};
  }

  /// Planar position of a node when its piece carries vertex coordinates.
  std::optional<Vec2> node_xy(std::uint32_t n) const {
    const auto& nd = approx_.nodes[n];
    const auto& P = pieces_[nd.piece];
    if (nd.feature.kind == Feature::Kind::kVertex) return P.vertices()[nd.feature.index].xy;
    const auto& e = P.edges()[nd.feature.index];
    const auto& xa = P.vertices()[e.a].xy;
    const auto& xb = P.vertices()[e.b].xy;
    if (!xa || !xb) return std::nullopt;
    return *xa + (nd.feature.edge_pos / e.length) * (*xb - *xa);
  }

  ConeAngle node_cone_angle(std::uint32_t n) const {
    const auto& nd = approx_.nodes[n];
    return cone_angle(pieces_[nd.piece], nd.feature);
  }

  /// Node at a boundary location, if the sampling has one there.
  std::optional<std::uint32_t> node_at(const BoundaryLocation& loc,
                                       double tol = kLocationTolerance) const {
    const auto [n, gap] = nearest_boundary_node(loc);
    if (gap <= tol) return n;
    return std::nullopt;
  }

  /// Node coinciding with a point, if any.
  std::optional<std::uint32_t> node_at(const PiecePoint& p) const {
    const auto& P = pieces_.at(p.piece);
    const Feature f = P.locate(p);
    if (f.kind == Feature::Kind::kVertex) return piece_base_[p.piece] + f.index;
    if (f.kind == Feature::Kind::kEdge) {
      const auto& pos = edge_positions_[p.piece][f.index];
      auto it = std::lower_bound(pos.begin(), pos.end(), f.edge_pos - kLocationTolerance);
      if (it != pos.end() && std::abs(*it - f.edge_pos) <= kLocationTolerance) {
        return edge_base_[p.piece][f.index] + static_cast<std::uint32_t>(it - pos.begin());
      }
    }
    return std::nullopt;
  }

  std::optional<std::uint32_t> class_at(const PiecePoint& p) const {
    if (auto n = node_at(p)) return node_class_[*n];
    return std::nullopt;
  }

  /// Sample nodes of one boundary cycle, sorted by offset.
  std::span<const std::pair<double, std::uint32_t>> cycle_nodes(std::size_t piece,
                                                                int cycle) const {
    return cycle_nodes_[piece][cycle];
  }

  /// Node-level seeds of a point: distances to the sample nodes of every
  /// triangle containing it.
  std::vector<std::pair<std::uint32_t, double>> seeds(const PiecePoint& p) const {
    const auto& P = pieces_.at(p.piece);
    const Feature f = P.locate(p);
    std::vector<std::pair<std::uint32_t, double>> out;
    for (const auto& [t, x] : P.embeddings(f)) {
      for (const auto& [n, y] : tri_nodes_[p.piece][t]) out.emplace_back(n, norm(x - y));
    }
    std::sort(out.begin(), out.end());
    std::vector<std::pair<std::uint32_t, double>> unique;
    for (const auto& s : out) {
      if (unique.empty() || unique.back().first != s.first) unique.push_back(s);
    }
    return unique;
  }

  /// Quotient distance d_R(p, q); +infinity when p and q lie in different
  /// components of Y.
  double distance(const PiecePoint& p, const PiecePoint& q) const {
    return query(p, q, true);
  }

  /// Distance d_X(p, q) in the disjoint union, on the same sampling.
  double piece_distance(const PiecePoint& p, const PiecePoint& q) const {
    if (p.piece != q.piece) return kInfinity;
    return query(p, q, false);
  }

  ShortestPaths class_paths(std::uint32_t c, bool record = false) const {
    const std::pair<std::uint32_t, double> seed{c, 0.0};
    return dijkstra(class_graph_, std::span(&seed, 1), record);
  }

  /// A shortest sample-graph path from p to q as a chain of straight
  /// segments; consecutive segments meet at glued (possibly distinct)
  /// points.
  std::vector<PathSegment> geodesic(const PiecePoint& p, const PiecePoint& q) const {
    const auto [a, b] = ordered(p, q);
    const bool flipped = &a != &p;
    const auto seeds_a = class_seeds(a);
    const auto seeds_b = class_seeds(b);
    std::vector<std::pair<std::uint32_t, double>> init;
    for (const auto& s : seeds_a) init.emplace_back(s.cls, s.dist);
    const auto sp = dijkstra(class_graph_, init, true);
    double best = kInfinity;
    std::size_t best_seed = 0;
    for (std::size_t i = 0; i < seeds_b.size(); ++i) {
      const double d = sp.dist[seeds_b[i].cls] + seeds_b[i].dist;
      if (d < best) { best = d; best_seed = i; }
    }
    std::vector<PathSegment> path;
    std::optional<double> direct;
    if (a.piece == b.piece) direct = direct_between(a, b);
    if (direct && *direct <= best) {
      path.push_back({a, b});
    } else if (std::isfinite(best)) {
      std::vector<PathSegment> rev;
      rev.push_back({node_point(seeds_b[best_seed].node), b});
      std::uint32_t c = seeds_b[best_seed].cls;
      while (sp.pred_edge[c] != kNoEdge) {
        const auto& e = approx_.intra_edges[sp.pred_edge[c]];
        const std::uint32_t prev = sp.pred_vertex[c];
        const bool forward = node_class_[e.u] == prev;
        rev.push_back({node_point(forward ? e.u : e.v), node_point(forward ? e.v : e.u)});
        c = prev;
      }
      for (const auto& s : seeds_a) {
        if (s.cls == c) { rev.push_back({a, node_point(s.node)}); break; }
      }
      path.assign(rev.rbegin(), rev.rend());
      std::erase_if(path, [&](const PathSegment& s) { return same_point(s.from, s.to); });
    }
    if (flipped) {
      std::reverse(path.begin(), path.end());
      for (auto& s : path) std::swap(s.from, s.to);
    }
    return path;
  }

  /// Exact length of a straight segment within a piece, if it is one.
  std::optional<double> segment_length(const PathSegment& s) const {
    if (s.from.piece != s.to.piece) return std::nullopt;
    return direct_between(s.from, s.to);
  }

  bool same_point(const PiecePoint& a, const PiecePoint& b) const {
    if (a.piece != b.piece) return false;
    const auto d = direct_between(a, b);
    return d && *d <= kLocationTolerance;
  }

  /// Boundary location of a point, or nullopt for interior points.
  std::optional<BoundaryLocation> boundary_location(const PiecePoint& p) const {
    const auto& P = pieces_.at(p.piece);
    const auto off = P.boundary_offset(P.locate(p));
    if (!off) return std::nullopt;
    return BoundaryLocation{p.piece, off->first, off->second};
  }

  /// Whether two points of X project to the same point of Y.
  bool glued(const PiecePoint& a, const PiecePoint& b) const {
    if (same_point(a, b)) return true;
    const auto la = boundary_location(a);
    const auto lb = boundary_location(b);
    if (!la || !lb) return false;
    const auto m = maps();
    const auto cls = m.closure(*la, true, settings_.multiplicity_cap + 1);
    return std::any_of(cls.begin(), cls.end(),
                       [&](const auto& x) { return m.same_location(x, *lb); });
  }

  std::string describe_node(std::uint32_t n) const {
    const auto& nd = approx_.nodes[n];
    std::ostringstream os;
    os.precision(17);
    os << pieces_[nd.piece].id();
    if (nd.feature.kind == Feature::Kind::kVertex) {
      os << " vertex " << nd.feature.index;
    } else {
      const auto& e = pieces_[nd.piece].edges()[nd.feature.index];
      os << " edge " << e.a << "-" << e.b << " at " << nd.feature.edge_pos;
    }
    if (nd.boundary()) os << " (cycle " << nd.cycle << ", offset " << nd.offset << ")";
    return os.str();
  }

  std::string describe_class(std::uint32_t c) const {
    return "class " + std::to_string(c) + " [" + describe_node(class_nodes(c).front()) +
           (multiplicity(c) > 1 ? ", m=" + std::to_string(multiplicity(c)) : "") + "]";
  }

 private:
  friend GluedSpace build_quotient(std::vector<FlatPiece>, GluingSpec, GluingSettings);

  struct ClassSeed {
    std::uint32_t cls;
    double dist;
    std::uint32_t node;
  };

  std::vector<ClassSeed> class_seeds(const PiecePoint& p) const {
    std::vector<ClassSeed> out;
    for (const auto& [n, d] : seeds(p)) out.push_back({node_class_[n], d, n});
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
      return std::tie(x.cls, x.dist, x.node) < std::tie(y.cls, y.dist, y.node);
    });
    std::vector<ClassSeed> unique;
    for (const auto& s : out) {
      if (unique.empty() || unique.back().cls != s.cls) unique.push_back(s);
    }
    return unique;
  }

  std::optional<double> direct_between(const PiecePoint& a, const PiecePoint& b) const {
    const auto& P = pieces_.at(a.piece);
    return direct_distance(P, P.locate(a), P.locate(b));
  }

  static bool point_less(const PiecePoint& a, const PiecePoint& b) {
    return std::tie(a.piece, a.triangle, a.barycentric) <
           std::tie(b.piece, b.triangle, b.barycentric);
  }

  static std::pair<const PiecePoint&, const PiecePoint&> ordered(const PiecePoint& p,
                                                                 const PiecePoint& q) {
    if (point_less(q, p)) return {q, p};
    return {p, q};
  }

  double query(const PiecePoint& p, const PiecePoint& q, bool quotient) const {
    // Fixed argument order makes the result exactly symmetric.
    const auto [a, b] = ordered(p, q);
    double best = kInfinity;
    if (a.piece == b.piece) {
      if (auto d = direct_between(a, b)) best = *d;
    }
    std::vector<std::pair<std::uint32_t, double>> init;
    std::vector<std::pair<std::uint32_t, double>> targets;
    if (quotient) {
      for (const auto& s : class_seeds(a)) init.emplace_back(s.cls, s.dist);
      for (const auto& s : class_seeds(b)) targets.emplace_back(s.cls, s.dist);
    } else {
      init = seeds(a);
      targets = seeds(b);
    }
    const auto stop = [&](std::uint32_t v, double d) {
      if (d >= best) return true;
      auto it = std::lower_bound(targets.begin(), targets.end(), std::pair{v, -kInfinity});
      if (it != targets.end() && it->first == v) best = std::min(best, d + it->second);
      return false;
    };
    dijkstra(quotient ? class_graph_ : node_graph_, init, false, stop);
    return best;
  }

  std::pair<std::uint32_t, double> nearest_boundary_node(const BoundaryLocation& loc) const {
    const auto& list = cycle_nodes_.at(loc.piece).at(loc.cycle);
    const auto& P = pieces_[loc.piece];
    const double len = P.cycles()[loc.cycle].length;
    const double s = P.normalize_offset(loc.cycle, loc.offset);
    auto it = std::lower_bound(list.begin(), list.end(), std::pair{s, std::uint32_t{0}});
    std::pair<std::uint32_t, double> best{list.front().second, kInfinity};
    auto consider = [&](const std::pair<double, std::uint32_t>& e) {
      const double g = std::abs(e.first - s);
      const double d = std::min(g, len - g);
      if (d < best.second) best = {e.second, d};
    };
    if (it != list.end()) consider(*it);
    if (it != list.begin()) consider(*std::prev(it));
    consider(list.front());
    consider(list.back());
    return best;
  }

  std::vector<FlatPiece> pieces_;
  GluingSpec spec_;
  GluingSettings settings_;
  MetricApproximation approx_;
  std::vector<std::uint32_t> piece_base_;
  std::vector<std::vector<std::uint32_t>> edge_base_;
  std::vector<std::vector<std::vector<double>>> edge_positions_;
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, Vec2>>>> tri_nodes_;
  std::vector<std::vector<std::vector<std::pair<double, std::uint32_t>>>> cycle_nodes_;
  std::vector<std::uint32_t> node_class_;
  std::vector<std::uint32_t> class_offsets_;
  std::vector<std::uint32_t> class_members_;
  CsrGraph node_graph_;
  CsrGraph class_graph_;
};

namespace detail {

inline void check_arc_reference(std::span<const FlatPiece> pieces, const BoundaryArc& arc,
                                const std::string& what) {
  if (arc.piece >= pieces.size()) {
    throw Error(ErrorCode::kSpecReferenceError, what + ": unknown piece");
  }
  const auto& P = pieces[arc.piece];
  if (arc.cycle < 0 || arc.cycle >= static_cast<int>(P.cycles().size())) {
    throw Error(ErrorCode::kSpecReferenceError, what + ": no such boundary cycle in piece " + P.id());
  }
  const double len = P.cycles()[arc.cycle].length;
  if (!(arc.start >= -kLocationTolerance && arc.start <= len + kLocationTolerance)) {
    throw Error(ErrorCode::kSpecReferenceError, what + ": start offset outside the cycle");
  }
  if (!(arc.length > 0.0 && arc.length <= len * (1.0 + 1e-12) + kLocationTolerance)) {
    throw Error(ErrorCode::kSpecReferenceError,
                what + ": arc length must lie in (0, cycle length]");
  }
}

inline void check_location_reference(std::span<const FlatPiece> pieces,
                                     const BoundaryLocation& loc, const std::string& what) {
  check_arc_reference(pieces, BoundaryArc{loc.piece, loc.cycle, loc.offset, 1e-300, true}, what);
}

// Inserts an interior edge position unless it coincides with an existing
// sample or an endpoint. Returns true when a new sample was created.
inline bool insert_position(std::vector<double>& pos, double x, double len) {
  constexpr double kMerge = 1e-10;
  if (x <= kMerge || x >= len - kMerge) return false;
  auto it = std::lower_bound(pos.begin(), pos.end(), x);
  if (it != pos.end() && *it - x <= kMerge) return false;
  if (it != pos.begin() && x - *std::prev(it) <= kMerge) return false;
  pos.insert(it, x);
  return true;
}

}  // namespace detail

/// Builds the quotient: samples every edge at spacing <= h, closes the
/// boundary samples under the identification maps, merges identified
/// samples into classes and assembles the weighted graphs.
inline GluedSpace build_quotient(std::vector<FlatPiece> pieces, GluingSpec spec,
                                 GluingSettings settings) {
  using detail::insert_position;
  for (const auto& P : pieces) {
    if (!P.structurally_valid()) {
      throw Error(ErrorCode::kInvalidPiece,
                  "piece " + P.id() + ": " + P.structural_issues().front());
    }
    for (const auto& t : P.triangles()) {
      const auto& l = t.lengths;
      if (!(l[0] > 0 && l[1] > 0 && l[2] > 0 && l[0] < l[1] + l[2] && l[1] < l[0] + l[2] &&
            l[2] < l[0] + l[1])) {
        throw Error(ErrorCode::kInvalidPiece, "piece " + P.id() + ": degenerate triangle");
      }
    }
  }
  for (std::size_t k = 0; k < spec.arcs.size(); ++k) {
    detail::check_arc_reference(pieces, spec.arcs[k].a, "arc identification " + std::to_string(k));
    detail::check_arc_reference(pieces, spec.arcs[k].b, "arc identification " + std::to_string(k));
  }
  for (std::size_t k = 0; k < spec.points.size(); ++k) {
    detail::check_location_reference(pieces, spec.points[k].a, "point identification " + std::to_string(k));
    detail::check_location_reference(pieces, spec.points[k].b, "point identification " + std::to_string(k));
  }
  if (!(settings.h > 0.0)) settings.h = default_resolution(pieces);
  const double h = settings.h;

  GluedSpace gs;
  gs.pieces_ = std::move(pieces);
  gs.spec_ = std::move(spec);
  gs.settings_ = settings;
  auto& approx = gs.approx_;
  approx.h = h;
  const auto& P = gs.pieces_;
  const GluingMaps maps(P, gs.spec_);

  // Uniform edge subdivision.
  auto& positions = gs.edge_positions_;
  positions.resize(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    positions[i].resize(P[i].edges().size());
    for (std::size_t e = 0; e < P[i].edges().size(); ++e) {
      const double len = P[i].edges()[e].length;
      const int n = std::max(1, static_cast<int>(std::ceil(len / h - 1e-9)));
      for (int k = 1; k < n; ++k) positions[i][e].push_back(len * k / n);
    }
  }

  // Anchors and closure of the boundary samples under the maps.
  std::vector<std::pair<BoundaryLocation, int>> work;
  auto add_location = [&](const BoundaryLocation& loc, int gen) {
    const auto& piece = P[loc.piece];
    const auto [e, pos] = piece.boundary_edge_position(loc.cycle, loc.offset);
    if (insert_position(positions[loc.piece][e], pos, piece.edges()[e].length)) {
      work.emplace_back(loc, gen);
    }
  };
  for (const auto& id : gs.spec_.arcs) {
    for (const auto* arc : {&id.a, &id.b}) {
      add_location(maps.at(*arc, 0.0), 0);
      add_location(maps.at(*arc, arc->length), 0);
    }
  }
  for (const auto& pid : gs.spec_.points) {
    add_location(pid.a, 0);
    add_location(pid.b, 0);
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (int c = 0; c < static_cast<int>(P[i].cycles().size()); ++c) {
      for (const auto& ce : P[i].cycles()[c].edges) {
        work.emplace_back(BoundaryLocation{i, c, ce.start}, 0);
        const auto& edge = P[i].edges()[ce.edge];
        for (double pos : positions[i][ce.edge]) {
          const double along = ce.from == edge.a ? pos : edge.length - pos;
          work.emplace_back(BoundaryLocation{i, c, ce.start + along}, 0);
        }
      }
    }
  }
  for (std::size_t w = 0; w < work.size(); ++w) {
    const auto [loc, gen] = work[w];
    for (const auto& img : maps.images(loc)) {
      if (gen + 1 > kMaxClosureGenerations) {
        const auto& piece = P[img.piece];
        const auto [e, pos] = piece.boundary_edge_position(img.cycle, img.offset);
        auto probe = positions[img.piece][e];
        if (insert_position(probe, pos, piece.edges()[e].length)) approx.closure_complete = false;
        continue;
      }
      add_location(img, gen + 1);
    }
  }

  // Enumerate nodes: vertices first, then edge samples, piece by piece.
  gs.piece_base_.resize(P.size());
  gs.edge_base_.resize(P.size());
  gs.cycle_nodes_.resize(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto& piece = P[i];
    gs.piece_base_[i] = static_cast<std::uint32_t>(approx.nodes.size());
    for (int v = 0; v < static_cast<int>(piece.vertices().size()); ++v) {
      SampleNode nd{static_cast<std::uint32_t>(i), Feature{Feature::Kind::kVertex, v, 0.0, {}}, -1, 0.0};
      if (auto cp = piece.vertex_cycle_position(v)) {
        nd.cycle = cp->first;
        nd.offset = cp->second;
      }
      approx.nodes.push_back(nd);
    }
    gs.edge_base_[i].resize(piece.edges().size());
    for (int e = 0; e < static_cast<int>(piece.edges().size()); ++e) {
      gs.edge_base_[i][e] = static_cast<std::uint32_t>(approx.nodes.size());
      for (double pos : positions[i][e]) {
        SampleNode nd{static_cast<std::uint32_t>(i), Feature{Feature::Kind::kEdge, e, pos, {}}, -1, 0.0};
        if (auto off = piece.boundary_offset(nd.feature)) {
          nd.cycle = off->first;
          nd.offset = off->second;
        }
        approx.nodes.push_back(nd);
      }
    }
    gs.cycle_nodes_[i].resize(piece.cycles().size());
    for (std::uint32_t n = gs.piece_base_[i]; n < approx.nodes.size(); ++n) {
      const auto& nd = approx.nodes[n];
      if (nd.boundary()) gs.cycle_nodes_[i][nd.cycle].emplace_back(nd.offset, n);
    }
    for (auto& list : gs.cycle_nodes_[i]) std::sort(list.begin(), list.end());
  }
  const auto node_count = static_cast<std::uint32_t>(approx.nodes.size());

  // Identified samples merge into classes.
  DisjointSets sets(node_count);
  for (std::uint32_t n = 0; n < node_count; ++n) {
    const auto& nd = approx.nodes[n];
    if (!nd.boundary()) continue;
    for (const auto& img : maps.images(gs.node_location(n))) {
      const auto [m, gap] = gs.nearest_boundary_node(img);
      approx.max_glue_mismatch = std::max(approx.max_glue_mismatch, gap);
      if (m != n) {
        sets.unite(n, m);
        approx.glue_edges.emplace_back(std::min(n, m), std::max(n, m));
      }
    }
  }
  std::sort(approx.glue_edges.begin(), approx.glue_edges.end());
  approx.glue_edges.erase(std::unique(approx.glue_edges.begin(), approx.glue_edges.end()),
                          approx.glue_edges.end());

  // Class ids ordered by smallest member node.
  gs.node_class_.assign(node_count, 0);
  std::vector<std::uint32_t> root_class(node_count, kNoEdge);
  std::uint32_t classes = 0;
  for (std::uint32_t n = 0; n < node_count; ++n) {
    const auto r = sets.find(n);
    if (root_class[r] == kNoEdge) root_class[r] = classes++;
    gs.node_class_[n] = root_class[r];
  }
  gs.class_offsets_.assign(classes + 1, 0);
  for (auto c : gs.node_class_) ++gs.class_offsets_[c + 1];
  for (std::uint32_t c = 0; c < classes; ++c) gs.class_offsets_[c + 1] += gs.class_offsets_[c];
  gs.class_members_.resize(node_count);
  {
    std::vector<std::uint32_t> fill(gs.class_offsets_.begin(), gs.class_offsets_.end() - 1);
    for (std::uint32_t n = 0; n < node_count; ++n) gs.class_members_[fill[gs.node_class_[n]]++] = n;
  }
  for (std::uint32_t c = 0; c < classes; ++c) {
    if (gs.multiplicity(c) > settings.multiplicity_cap) {
      throw Error(ErrorCode::kMultiplicityExceeded,
                  gs.describe_class(c) + " exceeds the multiplicity cap " +
                      std::to_string(settings.multiplicity_cap));
    }
  }

  // Within-piece edges: straight segments between samples of one triangle.
  gs.tri_nodes_.resize(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto& piece = P[i];
    const auto base = gs.piece_base_[i];
    for (int e = 0; e < static_cast<int>(piece.edges().size()); ++e) {
      const auto& edge = piece.edges()[e];
      std::uint32_t prev = base + edge.a;
      double prev_pos = 0.0;
      for (std::size_t k = 0; k < positions[i][e].size(); ++k) {
        const auto n = gs.edge_base_[i][e] + static_cast<std::uint32_t>(k);
        approx.intra_edges.push_back({prev, n, positions[i][e][k] - prev_pos});
        prev = n;
        prev_pos = positions[i][e][k];
      }
      approx.intra_edges.push_back({prev, base + edge.b, edge.length - prev_pos});
    }
    gs.tri_nodes_[i].resize(piece.triangles().size());
    for (int t = 0; t < static_cast<int>(piece.triangles().size()); ++t) {
      const auto lay = piece.layout(t);
      const auto& tri = piece.triangles()[t];
      auto& list = gs.tri_nodes_[i][t];
      std::array<std::vector<std::pair<std::uint32_t, Vec2>>, 3> side;
      for (int c = 0; c < 3; ++c) list.emplace_back(base + tri.v[c], lay[c]);
      for (int s = 0; s < 3; ++s) {
        const int e = piece.triangle_edge(t, s);
        const auto& edge = piece.edges()[e];
        const Vec2 pa = lay[piece.corner_of(t, edge.a)];
        const Vec2 pb = lay[piece.corner_of(t, edge.b)];
        for (std::size_t k = 0; k < positions[i][e].size(); ++k) {
          const Vec2 x = pa + (positions[i][e][k] / edge.length) * (pb - pa);
          side[s].emplace_back(gs.edge_base_[i][e] + static_cast<std::uint32_t>(k), x);
        }
        list.insert(list.end(), side[s].begin(), side[s].end());
      }
      for (int s = 0; s < 3; ++s) {
        // Corner opposite side s is corner (s + 2) % 3.
        const auto& [vn, vx] = list[(s + 2) % 3];
        for (const auto& [n, x] : side[s]) approx.intra_edges.push_back({vn, n, norm(x - vx)});
        for (int r = s + 1; r < 3; ++r) {
          for (const auto& [n, x] : side[s]) {
            for (const auto& [m, y] : side[r]) approx.intra_edges.push_back({n, m, norm(x - y)});
          }
        }
      }
    }
  }
  gs.node_graph_ = CsrGraph(node_count, approx.intra_edges);
  gs.class_graph_ = CsrGraph(classes, approx.intra_edges, gs.node_class_);
  return gs;
}

inline GluedSpace build_quotient(std::vector<FlatPiece> pieces, GluingSpec spec, double h) {
  return build_quotient(std::move(pieces), std::move(spec), GluingSettings{h, 16});
}

inline double quotient_distance(const GluedSpace& gs, const PiecePoint& p, const PiecePoint& q) {
  return gs.distance(p, q);
}

/// Intrinsic distance within one piece, on a sample graph of resolution h.
inline double intrinsic_distance(const FlatPiece& piece, PiecePoint p, PiecePoint q, double h) {
  const GluedSpace gs = build_quotient({piece}, GluingSpec{}, GluingSettings{h, 16});
  p.piece = 0;
  q.piece = 0;
  const double d = gs.piece_distance(p, q);
  if (!std::isfinite(d)) {
    throw Error(ErrorCode::kResolutionTooCoarse, "sample graph does not connect the points");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Structural checks

/// Arc lengths must agree and correspond monotonically; point-only
/// identifications are flagged because they cannot come from a path
/// isometry of boundary arcs.
inline VerificationReport check_path_isometry(const GluedSpace& gs) {
  VerificationReport report;
  auto& check = report.add("path_isometry");
  const auto maps = gs.maps();
  double worst = 0.0;
  const auto& spec = gs.spec();
  for (std::size_t k = 0; k < spec.arcs.size(); ++k) {
    const auto& id = spec.arcs[k];
    const double la = id.a.length;
    const double lb = id.b.length;
    const double diff = std::abs(la - lb);
    worst = std::max(worst, diff);
    const std::string where = "arc identification " + std::to_string(k);
    if (diff > 1e-9 * std::max(1.0, std::max(la, lb))) {
      check.fail({"PathIsometryViolation", where, diff, 1e-9 * std::max(1.0, std::max(la, lb)),
                  "glued arcs have different lengths"});
      continue;
    }
    // Sampled length comparison of corresponding sub-arcs.
    constexpr int kSamples = 16;
    double prev_b = maps.map_param(k, 0, 0.0);
    double sub_diff = 0.0;
    bool monotone = true;
    for (int s = 1; s <= kSamples; ++s) {
      const double t = la * s / kSamples;
      const double u = maps.map_param(k, 0, t);
      const double step_a = la / kSamples;
      const double step_b = std::abs(u - prev_b);
      if ((id.reversed ? prev_b - u : u - prev_b) < -kLocationTolerance) monotone = false;
      sub_diff = std::max(sub_diff, std::abs(step_a - step_b));
      prev_b = u;
    }
    worst = std::max(worst, sub_diff);
    if (!monotone || sub_diff > 1e-9 * std::max(1.0, la)) {
      check.fail({"PathIsometryViolation", where, sub_diff, 1e-9,
                  "sampled sub-arcs do not correspond by arc length"});
    }
  }
  for (std::size_t k = 0; k < spec.points.size(); ++k) {
    const auto& pid = spec.points[k];
    const auto cls = maps.closure(pid.a, false, gs.settings().multiplicity_cap + 1);
    const bool implied = std::any_of(cls.begin(), cls.end(),
                                     [&](const auto& x) { return maps.same_location(x, pid.b); });
    const std::string where = "point identification " + std::to_string(k);
    if (implied) {
      check.warn({"RedundantPointIdentification", where, 0.0, 0.0,
                  "already implied by the arc identifications"});
    } else {
      check.fail({"IsolatedPointIdentification", where, 0.0, 0.0,
                  "identification of isolated points, not of arcs"});
    }
  }
  check.metrics["max_length_discrepancy"] = worst;
  check.metrics["max_glue_mismatch"] = gs.approx().max_glue_mismatch;
  if (!gs.approx().closure_complete) {
    check.warn({"ClosureTruncated", "sampling", gs.approx().max_glue_mismatch, 0.0,
                "identification closure hit the iteration cap"});
  }
  return report;
}

/// Classes of multiplicity >= 2 with a preimage that lies on no glued arc:
/// such a point has a punctured boundary neighbourhood free of glued points.
inline std::vector<std::uint32_t> detect_isolated_gluing(const GluedSpace& gs) {
  std::vector<std::uint32_t> out;
  const auto maps = gs.maps();
  for (std::uint32_t c = 0; c < gs.class_count(); ++c) {
    if (gs.multiplicity(c) < 2) continue;
    for (auto n : gs.class_nodes(c)) {
      if (!maps.on_any_arc(gs.node_location(n))) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

struct ClassificationRow {
  std::uint32_t node = 0;
  std::uint32_t class_id = 0;
  std::size_t multiplicity = 1;
  std::string label;  // "F", "G2", "G3", ...
  double cone_angle = 0.0;
  bool regular = false;       // (1, eps)-regular: cone angle > pi - eps
  bool in_f_interior = false; // interior of F_X in the boundary topology
  bool in_g2_eps = false;
  bool in_f_eps = false;
};

struct ClassificationTable {
  double eps = 0.0;
  std::vector<ClassificationRow> rows;  // one per boundary sample, node order
  std::map<std::string, std::size_t> counts;
};

inline ClassificationTable classify_points(const GluedSpace& gs, double eps) {
  ClassificationTable table;
  table.eps = eps;
  std::vector<int> row_of(gs.node_count(), -1);
  for (std::uint32_t n = 0; n < gs.node_count(); ++n) {
    if (!gs.node(n).boundary()) continue;
    ClassificationRow row;
    row.node = n;
    row.class_id = gs.class_of_node(n);
    row.multiplicity = gs.multiplicity(row.class_id);
    row.label = row.multiplicity == 1 ? "F" : "G" + std::to_string(row.multiplicity);
    row.cone_angle = gs.node_cone_angle(n).radians;
    row.regular = row.cone_angle > std::numbers::pi - eps;
    row.in_g2_eps = row.multiplicity == 2 && row.regular;
    row.in_f_eps = row.multiplicity == 1 && row.regular;
    row_of[n] = static_cast<int>(table.rows.size());
    table.rows.push_back(row);
  }
  for (std::size_t i = 0; i < gs.pieces().size(); ++i) {
    for (int c = 0; c < static_cast<int>(gs.pieces()[i].cycles().size()); ++c) {
      const auto list = gs.cycle_nodes(i, c);
      const std::size_t k = list.size();
      for (std::size_t j = 0; j < k; ++j) {
        auto& row = table.rows[row_of[list[j].second]];
        const auto& prev = table.rows[row_of[list[(j + k - 1) % k].second]];
        const auto& next = table.rows[row_of[list[(j + 1) % k].second]];
        row.in_f_interior = row.multiplicity == 1 && prev.multiplicity == 1 &&
                            next.multiplicity == 1;
      }
    }
  }
  for (const auto& row : table.rows) {
    ++table.counts[row.label];
    if (row.in_f_interior) ++table.counts["F_interior"];
    if (row.in_g2_eps) ++table.counts["G2_eps"];
    if (row.in_f_eps) ++table.counts["F_eps"];
    if (row.regular) ++table.counts["regular"];
  }
  return table;
}

enum class LocalStructure { kSeparable, kInvolution, kOther };

inline std::string_view to_string(LocalStructure s) {
  switch (s) {
    case LocalStructure::kSeparable: return "Separable";
    case LocalStructure::kInvolution: return "Involution";
    case LocalStructure::kOther: return "Other";
  }
  return "Other";
}

/// Local gluing pattern near a class of multiplicity <= 2, probed at
/// boundary offsets R, R/2, R/4 with R = min(3h, half the gap between the
/// two preimages).
inline LocalStructure local_structure(const GluedSpace& gs, std::uint32_t class_id) {
  const auto m = gs.multiplicity(class_id);
  if (m > 2) {
    throw Error(ErrorCode::kNotApplicable,
                gs.describe_class(class_id) + " has multiplicity " + std::to_string(m));
  }
  const auto nodes = gs.class_nodes(class_id);
  if (!gs.node(nodes[0]).boundary()) return LocalStructure::kOther;
  const auto maps = gs.maps();
  const auto shift = [&](const BoundaryLocation& x, double d) {
    BoundaryLocation y = x;
    y.offset = gs.pieces()[x.piece].normalize_offset(x.cycle, x.offset + d);
    return y;
  };
  const auto glued_to = [&](const BoundaryLocation& x, const BoundaryLocation& y) {
    const auto cls = maps.closure(x, true, gs.settings().multiplicity_cap + 1);
    return std::any_of(cls.begin(), cls.end(), [&](const auto& z) { return maps.same_location(z, y); });
  };
  double radius = 3.0 * gs.h();
  if (m == 1) {
    const auto x = gs.node_location(nodes[0]);
    radius = std::min(radius, 0.25 * gs.pieces()[x.piece].cycles()[x.cycle].length);
    for (double d : {radius, radius / 2, radius / 4}) {
      if (!glued_to(shift(x, d), shift(x, -d))) return LocalStructure::kOther;
    }
    return LocalStructure::kInvolution;
  }
  const auto x1 = gs.node_location(nodes[0]);
  const auto x2 = gs.node_location(nodes[1]);
  if (!gs.node(nodes[1]).boundary()) return LocalStructure::kOther;
  if (x1.piece == x2.piece && x1.cycle == x2.cycle) {
    const auto& piece = gs.pieces()[x1.piece];
    const double g = piece.forward_gap(x1.cycle, x1.offset, x2.offset);
    const double gap = std::min(g, piece.cycles()[x1.cycle].length - g);
    radius = std::min(radius, 0.45 * gap);
  }
  if (!(radius > kLocationTolerance * 10)) return LocalStructure::kOther;
  for (int sign : {1, -1}) {
    bool all = true;
    for (double d : {radius, radius / 2, radius / 4}) {
      if (!glued_to(shift(x1, d), shift(x2, sign * d)) ||
          !glued_to(shift(x1, -d), shift(x2, -sign * d))) {
        all = false;
        break;
      }
    }
    if (all) return LocalStructure::kSeparable;
  }
  return LocalStructure::kOther;
}

// ---------------------------------------------------------------------------
// Length-preserving lifting

struct LiftedPath {
  std::vector<PathSegment> segments;
  // Indices of segments whose start differs from the previous end: the lift
  // switched to another preimage sheet there.
  std::vector<std::size_t> sheet_switches;
  std::vector<double> prefix_lengths;
  double length() const { return prefix_lengths.empty() ? 0.0 : prefix_lengths.back(); }
};

class LiftAmbiguousError : public Error {
 public:
  LiftAmbiguousError(std::size_t segment, std::vector<PathSegment> continuations)
      : Error(ErrorCode::kLiftAmbiguous,
              "segment " + std::to_string(segment) + " admits " +
                  std::to_string(continuations.size()) + " continuations"),
        segment_(segment),
        continuations_(std::move(continuations)) {}
  std::size_t segment() const { return segment_; }
  const std::vector<PathSegment>& continuations() const { return continuations_; }

 private:
  std::size_t segment_;
  std::vector<PathSegment> continuations_;
};

namespace detail {

// All segments of X projecting onto the same segment of Y as `seg`: the
// segment itself and, when it runs along a glued boundary edge, its images.
inline std::vector<PathSegment> segment_lifts(const GluedSpace& gs, const PathSegment& seg) {
  std::vector<PathSegment> out{seg};
  const auto maps = gs.maps();
  for (std::size_t i = 0; i < out.size() && out.size() <= gs.settings().multiplicity_cap; ++i) {
    const auto la = gs.boundary_location(out[i].from);
    const auto lb = gs.boundary_location(out[i].to);
    if (!la || !lb || la->cycle != lb->cycle) continue;
    const auto& piece = gs.pieces()[la->piece];
    const double fwd = piece.forward_gap(la->cycle, la->offset, lb->offset);
    const double len = piece.cycles()[la->cycle].length;
    const double run = std::min(fwd, len - fwd);
    const auto seg_len = gs.segment_length(out[i]);
    if (!seg_len || std::abs(*seg_len - run) > kLocationTolerance) continue;  // not along ∂X
    for (std::size_t k : maps.active_arcs()) {
      for (int s = 0; s < 2; ++s) {
        const auto& arc = maps.side(k, s);
        if (arc.piece != la->piece || arc.cycle != la->cycle) continue;
        for (double ta : maps.params(arc, la->offset)) {
          for (double tb : maps.params(arc, lb->offset)) {
            if (std::abs(std::abs(tb - ta) - run) > kLocationTolerance) continue;
            const auto& other = maps.side(k, 1 - s);
            const auto ia = maps.at(other, maps.map_param(k, s, ta));
            const auto ib = maps.at(other, maps.map_param(k, s, tb));
            const auto& op = gs.pieces()[other.piece];
            PathSegment img{op.boundary_point(ia.cycle, ia.offset),
                            op.boundary_point(ib.cycle, ib.offset)};
            img.from.piece = img.to.piece = other.piece;
            const auto img_len = gs.segment_length(img);
            if (!img_len || std::abs(*img_len - *seg_len) > 1e-9 * std::max(1.0, *seg_len)) continue;
            const bool known = std::any_of(out.begin(), out.end(), [&](const auto& x) {
              return gs.same_point(x.from, img.from) && gs.same_point(x.to, img.to);
            });
            if (!known) out.push_back(img);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Lifts a path of Y, given as a chain of straight within-piece segments
/// whose consecutive endpoints are glued, to X starting at `start`. The lift
/// follows the current sheet while it can and switches to another preimage
/// sheet at seam crossings. Lengths of all prefixes are preserved.
inline LiftedPath lift_path(const GluedSpace& gs, std::span<const PathSegment> path,
                            const PiecePoint& start) {
  LiftedPath out;
  if (path.empty()) return out;
  PiecePoint current = start;
  double total = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto& seg = path[k];
    const auto len = gs.segment_length(seg);
    if (!len) {
      throw Error(ErrorCode::kInvalidPath,
                  "segment " + std::to_string(k) + " is not a straight segment of one piece");
    }
    if (!gs.glued(current, seg.from)) {
      throw Error(ErrorCode::kInvalidPath,
                  k == 0 ? "start preimage does not project to the path start"
                         : "segment " + std::to_string(k) + " does not continue the path");
    }
    const auto lifts = detail::segment_lifts(gs, seg);
    const PathSegment* chosen = nullptr;
    for (const auto& l : lifts) {
      if (gs.same_point(l.from, current)) { chosen = &l; break; }
    }
    if (!chosen) {
      if (lifts.size() > 1) throw LiftAmbiguousError(k, lifts);
      chosen = &lifts.front();
      out.sheet_switches.push_back(k);
    }
    out.segments.push_back(*chosen);
    total += *gs.segment_length(*chosen);
    out.prefix_lengths.push_back(total);
    current = chosen->to;
  }
  return out;
}

}  // namespace alexglue

#endif  // ALEXGLUE_GLUING_ENGINE_HPP

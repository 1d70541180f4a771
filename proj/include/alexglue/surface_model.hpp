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

// Piecewise-flat pieces: abstract triangle complexes given by edge lengths,
// with derived boundary cycles, cone angles and point addressing.

#ifndef ALEXGLUE_SURFACE_MODEL_HPP
#define ALEXGLUE_SURFACE_MODEL_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alexglue/errors.hpp"
#include "alexglue/model_geometry.hpp"
#include "alexglue/report.hpp"

namespace alexglue {

using Vec2 = std::array<double, 2>;

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a[0], s * a[1]}; }
inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
inline double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }

/// Exact rational multiple of pi. Cone angles that are known combinatorially
/// (flat boundary points, declared vertex angles) are summed in this form so
/// that glued angle totals carry no round-off.
struct PiMultiple {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static PiMultiple make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error(ErrorCode::kSchemaError, "zero denominator");
    if (d < 0) { n = -n; d = -d; }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    return g > 1 ? PiMultiple{n / g, d / g} : PiMultiple{n, d};
  }

  /// Parses "2/3", "1" or "-1/2".
  static PiMultiple parse(std::string_view text) {
    const auto slash = text.find('/');
    auto read = [&](std::string_view s) {
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::kSchemaError,
                    "bad rational angle '" + std::string(text) + "'");
      }
      return v;
    };
    if (slash == std::string_view::npos) return make(read(text), 1);
    return make(read(text.substr(0, slash)), read(text.substr(slash + 1)));
  }

  double radians() const {
    return static_cast<double>(num) * std::numbers::pi / static_cast<double>(den);
  }

  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

  friend PiMultiple operator+(const PiMultiple& x, const PiMultiple& y) {
    const std::int64_t g = std::gcd(x.den, y.den);
    return make(x.num * (y.den / g) + y.num * (x.den / g), x.den / g * y.den);
  }
  friend bool operator==(const PiMultiple&, const PiMultiple&) = default;
};

/// A cone angle in radians, plus its exact value when known.
struct ConeAngle {
  double radians = 0.0;
  std::optional<PiMultiple> exact;

  static ConeAngle of(PiMultiple m) { return ConeAngle{m.radians(), m}; }

  friend ConeAngle operator+(const ConeAngle& x, const ConeAngle& y) {
    if (x.exact && y.exact) return of(*x.exact + *y.exact);
    return ConeAngle{x.radians + y.radians, std::nullopt};
  }
};

struct Vertex {
  std::optional<Vec2> xy;
  // Declared total angle at the vertex, in units of pi. Validated against
  // the angle computed from edge lengths, then used as the exact value.
  std::optional<PiMultiple> angle_pi;
};

/// lengths[i] is the length of the edge v[i] -> v[(i + 1) % 3].
struct Triangle {
  std::array<int, 3> v{};
  std::array<double, 3> lengths{};
};

struct Edge {
  int a = 0;  // a < b
  int b = 0;
  double length = 0.0;
  std::array<int, 2> triangles{-1, -1};
  int count = 0;
  bool boundary() const { return count == 1; }
};

/// One boundary edge as traversed by its cycle.
struct CycleEdge {
  int edge = 0;
  int from = 0;
  int to = 0;
  double start = 0.0;  // arc-length offset of `from` along the cycle
  double length = 0.0;
};

struct BoundaryCycle {
  std::vector<CycleEdge> edges;
  double length = 0.0;
};

/// A point of piece `piece`, addressed by barycentric coordinates in one of
/// its triangles. Piece-level functions ignore `piece`; it is interpreted by
/// the glued space.
struct PiecePoint {
  std::size_t piece = 0;
  int triangle = 0;
  std::array<double, 3> barycentric{1.0, 0.0, 0.0};
};

/// A boundary point given by (cycle index, arc-length offset).
struct BoundaryLocation {
  std::size_t piece = 0;
  int cycle = 0;
  double offset = 0.0;
};

/// A sub-arc of a boundary cycle: points start + t (forward) or start - t
/// (backward) for t in [0, length].
struct BoundaryArc {
  std::size_t piece = 0;
  int cycle = 0;
  double start = 0.0;
  double length = 0.0;
  bool forward = true;
};

/// Canonical form of a point: a vertex, a point inside an edge, or a point
/// inside a triangle.
struct Feature {
  enum class Kind { kVertex, kEdge, kFace };
  Kind kind = Kind::kVertex;
  int index = 0;
  double edge_pos = 0.0;  // distance from edges[index].a
  std::array<double, 3> barycentric{};
};

inline constexpr double kBarycentricTolerance = 1e-12;
inline constexpr double kAngleBoundTolerance = 1e-9;

class FlatPiece {
 public:
  FlatPiece() = default;

  FlatPiece(std::string id, std::vector<Vertex> vertices,
            std::vector<Triangle> triangles)
      : id_(std::move(id)),
        vertices_(std::move(vertices)),
        triangles_(std::move(triangles)) {
    build_topology();
  }

  /// Builds a piece from planar vertex positions; edge lengths are measured
  /// in the plane.
  static FlatPiece from_planar(std::string id, const std::vector<Vec2>& xy,
                               const std::vector<std::array<int, 3>>& tris,
                               const std::vector<std::optional<PiMultiple>>&
                                   angles = {}) {
    std::vector<Vertex> verts(xy.size());
    for (std::size_t i = 0; i < xy.size(); ++i) {
      verts[i].xy = xy[i];
      if (i < angles.size()) verts[i].angle_pi = angles[i];
    }
    std::vector<Triangle> out;
    out.reserve(tris.size());
    for (const auto& t : tris) {
      Triangle tri{t, {}};
      for (int i = 0; i < 3; ++i) {
        tri.lengths[i] = norm(xy.at(t[(i + 1) % 3]) - xy.at(t[i]));
      }
      out.push_back(tri);
    }
    return FlatPiece(std::move(id), std::move(verts), std::move(out));
  }

  const std::string& id() const { return id_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<BoundaryCycle>& cycles() const { return cycles_; }
  const std::vector<std::string>& structural_issues() const { return issues_; }
  bool structurally_valid() const { return issues_.empty(); }

  int edge_between(int u, int w) const {
    const auto it = edge_index_.find(std::minmax(u, w));
    return it == edge_index_.end() ? -1 : it->second;
  }

  int triangle_edge(int t, int i) const { return tri_edges_[t][i]; }

  /// Corner angle of triangle t at its i-th vertex.
  double corner_angle(int t, int i) const {
    const auto& l = triangles_[t].lengths;
    return model::comparison_angle(0.0, l[(i + 1) % 3], l[i], l[(i + 2) % 3]);
  }

  bool is_boundary_vertex(int v) const { return vertex_cycle_[v].first >= 0; }

  /// Total angle at a vertex computed from edge lengths.
  double numeric_vertex_angle(int v) const {
    double sum = 0.0;
    for (const auto& [t, i] : vertex_corners_[v]) sum += corner_angle(t, i);
    return sum;
  }

  ConeAngle vertex_angle(int v) const {
    if (vertices_[v].angle_pi) return ConeAngle::of(*vertices_[v].angle_pi);
    return ConeAngle{numeric_vertex_angle(v), std::nullopt};
  }

  const std::vector<std::pair<int, int>>& corners_of(int v) const {
    return vertex_corners_[v];
  }

  /// (cycle, offset) of a boundary vertex.
  std::optional<std::pair<int, double>> vertex_cycle_position(int v) const {
    if (vertex_cycle_[v].first < 0) return std::nullopt;
    return vertex_cycle_[v];
  }

  double min_edge_length() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : edges_) m = std::min(m, e.length);
    return m;
  }

  double total_boundary_length() const {
    double s = 0.0;
    for (const auto& c : cycles_) s += c.length;
    return s;
  }

  double area() const {
    double s = 0.0;
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
      const auto p = layout(static_cast<int>(t));
      s += 0.5 * cross(p[1] - p[0], p[2] - p[0]);
    }
    return s;
  }

  /// Vertex positions of triangle t in its own frame: v0 at the origin, v1 on
  /// the positive x axis, v2 in the upper half plane.
  std::array<Vec2, 3> layout(int t) const {
    const auto& l = triangles_[t].lengths;
    const double x = (l[0] * l[0] + l[2] * l[2] - l[1] * l[1]) / (2.0 * l[0]);
    const double y = std::sqrt(std::max(0.0, l[2] * l[2] - x * x));
    return {Vec2{0.0, 0.0}, Vec2{l[0], 0.0}, Vec2{x, y}};
  }

  int corner_of(int t, int v) const {
    for (int i = 0; i < 3; ++i) {
      if (triangles_[t].v[i] == v) return i;
    }
    return -1;
  }

  /// Canonicalizes a point; throws InvalidPoint for bad coordinates.
  Feature locate(const PiecePoint& p) const {
    if (p.triangle < 0 || p.triangle >= static_cast<int>(triangles_.size())) {
      throw Error(ErrorCode::kInvalidPoint,
                  "triangle index " + std::to_string(p.triangle) +
                      " out of range in piece " + id_);
    }
    auto w = p.barycentric;
    double sum = 0.0;
    for (double& x : w) {
      if (!std::isfinite(x) || x < -1e-9) {
        throw Error(ErrorCode::kInvalidPoint, "negative barycentric coordinate");
      }
      x = std::max(x, 0.0);
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidPoint, "barycentric coordinates must sum to 1");
    }
    for (double& x : w) x /= sum;
    const auto& tri = triangles_[p.triangle];
    int zeros = 0;
    for (double x : w) zeros += x <= kBarycentricTolerance ? 1 : 0;
    if (zeros >= 2) {
      const int i = static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());
      return Feature{Feature::Kind::kVertex, tri.v[i], 0.0, {}};
    }
    if (zeros == 1) {
      int k = 0;
      while (w[k] > kBarycentricTolerance) ++k;
      const int i = (k + 1) % 3;  // edge v[i] -> v[i+1] misses corner k
      const int j = (i + 1) % 3;
      const int e = tri_edges_[p.triangle][i];
      const double len = edges_[e].length;
      const double from_i = w[j] / (w[i] + w[j]) * len;
      const double pos = tri.v[i] == edges_[e].a ? from_i : len - from_i;
      return Feature{Feature::Kind::kEdge, e, pos, {}};
    }
    return Feature{Feature::Kind::kFace, p.triangle, 0.0, w};
  }

  /// All triangles containing the feature, with the point's position in each
  /// triangle's layout frame.
  std::vector<std::pair<int, Vec2>> embeddings(const Feature& f) const {
    std::vector<std::pair<int, Vec2>> out;
    switch (f.kind) {
      case Feature::Kind::kVertex:
        for (const auto& [t, i] : vertex_corners_[f.index]) {
          out.emplace_back(t, layout(t)[i]);
        }
        break;
      case Feature::Kind::kEdge: {
        const auto& e = edges_[f.index];
        for (int t : e.triangles) {
          if (t < 0) continue;
          const auto pts = layout(t);
          const Vec2 pa = pts[corner_of(t, e.a)];
          const Vec2 pb = pts[corner_of(t, e.b)];
          const double s = f.edge_pos / e.length;
          out.emplace_back(t, pa + s * (pb - pa));
        }
        break;
      }
      case Feature::Kind::kFace: {
        const auto pts = layout(f.index);
        Vec2 x{0.0, 0.0};
        for (int i = 0; i < 3; ++i) x = x + f.barycentric[i] * pts[i];
        out.emplace_back(f.index, x);
        break;
      }
    }
    return out;
  }

  PiecePoint vertex_point(int v) const {
    const auto& [t, i] = vertex_corners_.at(v).front();
    PiecePoint p{0, t, {0.0, 0.0, 0.0}};
    p.barycentric[i] = 1.0;
    return p;
  }

  PiecePoint edge_point(int e, double pos) const {
    const auto& edge = edges_.at(e);
    const int t = edge.triangles[0];
    PiecePoint p{0, t, {0.0, 0.0, 0.0}};
    const double s = std::clamp(pos / edge.length, 0.0, 1.0);
    p.barycentric[corner_of(t, edge.a)] = 1.0 - s;
    p.barycentric[corner_of(t, edge.b)] = s;
    return p;
  }

  PiecePoint feature_point(const Feature& f) const {
    switch (f.kind) {
      case Feature::Kind::kVertex: return vertex_point(f.index);
      case Feature::Kind::kEdge: return edge_point(f.index, f.edge_pos);
      case Feature::Kind::kFace: return PiecePoint{0, f.index, f.barycentric};
    }
    return {};
  }

  double normalize_offset(int cycle, double offset) const {
    const double len = cycles_.at(cycle).length;
    double s = std::fmod(offset, len);
    if (s < 0.0) s += len;
    if (s >= len) s -= len;
    return s;
  }

  /// Boundary point at an arc-length offset, as (edge, position from edge.a).
  std::pair<int, double> boundary_edge_position(int cycle, double offset) const {
    if (cycle < 0 || cycle >= static_cast<int>(cycles_.size())) {
      throw Error(ErrorCode::kOutOfRange, "cycle index out of range");
    }
    const auto& cyc = cycles_[cycle];
    const double s = normalize_offset(cycle, offset);
    auto it = std::upper_bound(cyc.edges.begin(), cyc.edges.end(), s,
                               [](double x, const CycleEdge& ce) { return x < ce.start; });
    const auto& ce = *(it == cyc.edges.begin() ? it : std::prev(it));
    const double along = std::clamp(s - ce.start, 0.0, ce.length);
    const double pos = ce.from == edges_[ce.edge].a ? along : ce.length - along;
    return {ce.edge, pos};
  }

  /// Feature at a boundary offset; snaps to a vertex within `snap`.
  Feature boundary_feature(int cycle, double offset, double snap = 1e-12) const {
    const auto [e, pos] = boundary_edge_position(cycle, offset);
    const auto& edge = edges_[e];
    if (pos <= snap) return Feature{Feature::Kind::kVertex, edge.a, 0.0, {}};
    if (pos >= edge.length - snap) return Feature{Feature::Kind::kVertex, edge.b, 0.0, {}};
    return Feature{Feature::Kind::kEdge, e, pos, {}};
  }

  PiecePoint boundary_point(int cycle, double offset) const {
    return feature_point(boundary_feature(cycle, offset));
  }

  /// Cycle offset of a feature lying on the boundary.
  std::optional<std::pair<int, double>> boundary_offset(const Feature& f) const {
    if (f.kind == Feature::Kind::kVertex) return vertex_cycle_position(f.index);
    if (f.kind != Feature::Kind::kEdge || !edges_[f.index].boundary()) return std::nullopt;
    const auto [c, k] = edge_cycle_[f.index];
    const auto& ce = cycles_[c].edges[k];
    const double along = ce.from == edges_[f.index].a ? f.edge_pos : ce.length - f.edge_pos;
    return std::pair{c, ce.start + along};
  }

  /// Oriented boundary arc-length from offset s to offset t on one cycle.
  double forward_gap(int cycle, double s, double t) const {
    const double len = cycles_.at(cycle).length;
    double d = std::fmod(t - s, len);
    if (d < 0.0) d += len;
    return d;
  }

 private:
  void build_topology() {
    const int nv = static_cast<int>(vertices_.size());
    vertex_corners_.assign(nv, {});
    vertex_cycle_.assign(nv, {-1, 0.0});
    tri_edges_.assign(triangles_.size(), {-1, -1, -1});
    // Directed half-edges u->w per triangle, to detect orientation flips.
    std::map<std::pair<int, int>, int> directed;
    for (int t = 0; t < static_cast<int>(triangles_.size()); ++t) {
      const auto& tri = triangles_[t];
      bool ok = true;
      for (int i = 0; i < 3; ++i) {
        if (tri.v[i] < 0 || tri.v[i] >= nv) ok = false;
      }
      if (!ok || tri.v[0] == tri.v[1] || tri.v[1] == tri.v[2] || tri.v[0] == tri.v[2]) {
        issues_.push_back("triangle " + std::to_string(t) + " has invalid vertex indices");
        continue;
      }
      for (int i = 0; i < 3; ++i) {
        const int u = tri.v[i];
        const int w = tri.v[(i + 1) % 3];
        vertex_corners_[u].emplace_back(t, i);
        const auto key = std::minmax(u, w);
        auto [it, inserted] = edge_index_.try_emplace(key, static_cast<int>(edges_.size()));
        if (inserted) {
          edges_.push_back(Edge{key.first, key.second, tri.lengths[i], {t, -1}, 1});
        } else {
          Edge& e = edges_[it->second];
          if (e.count < 2) e.triangles[1] = t;
          ++e.count;
        }
        tri_edges_[t][i] = it->second;
        if (!directed.emplace(std::pair{u, w}, t).second) {
          issues_.push_back("edge " + std::to_string(u) + "-" + std::to_string(w) +
                            " is traversed in the same direction by two triangles "
                            "(inconsistent orientation)");
        }
      }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edges_[e].count > 2) {
        issues_.push_back("edge " + std::to_string(edges_[e].a) + "-" +
                          std::to_string(edges_[e].b) + " belongs to " +
                          std::to_string(edges_[e].count) + " triangles");
      }
    }
    for (int v = 0; v < nv; ++v) {
      if (vertex_corners_[v].empty()) {
        issues_.push_back("vertex " + std::to_string(v) + " belongs to no triangle");
      }
    }
    extract_cycles();
  }

  void extract_cycles() {
    const int nv = static_cast<int>(vertices_.size());
    std::vector<std::vector<std::pair<int, int>>> outgoing(nv);  // (to, edge)
    std::vector<int> incoming(nv, 0);
    for (int t = 0; t < static_cast<int>(triangles_.size()); ++t) {
      if (tri_edges_[t][0] < 0) continue;
      for (int i = 0; i < 3; ++i) {
        const int e = tri_edges_[t][i];
        if (edges_[e].count != 1) continue;
        const int u = triangles_[t].v[i];
        const int w = triangles_[t].v[(i + 1) % 3];
        outgoing[u].emplace_back(w, e);
        ++incoming[w];
      }
    }
    for (int v = 0; v < nv; ++v) {
      if (outgoing[v].size() > 1 || incoming[v] > 1 ||
          outgoing[v].size() != static_cast<std::size_t>(incoming[v])) {
        issues_.push_back("boundary is not a union of simple cycles at vertex " +
                          std::to_string(v));
      }
    }
    if (!issues_.empty()) return;
    edge_cycle_.assign(edges_.size(), {-1, -1});
    for (int start = 0; start < nv; ++start) {
      if (outgoing[start].empty() || vertex_cycle_[start].first >= 0) continue;
      BoundaryCycle cyc;
      const int index = static_cast<int>(cycles_.size());
      int v = start;
      do {
        const auto [w, e] = outgoing[v].front();
        vertex_cycle_[v] = {index, cyc.length};
        edge_cycle_[e] = {index, static_cast<int>(cyc.edges.size())};
        cyc.edges.push_back(CycleEdge{e, v, w, cyc.length, edges_[e].length});
        cyc.length += edges_[e].length;
        v = w;
      } while (v != start);
      cycles_.push_back(std::move(cyc));
    }
  }

  std::string id_;
  std::vector<Vertex> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::map<std::pair<int, int>, int> edge_index_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::vector<std::pair<int, int>>> vertex_corners_;
  std::vector<std::pair<int, double>> vertex_cycle_;
  std::vector<std::pair<int, int>> edge_cycle_;
  std::vector<BoundaryCycle> cycles_;
  std::vector<std::string> issues_;
};

/// Total angle of the tangent cone at p: 2*pi inside a triangle or an
/// interior edge, pi inside a boundary edge, the corner-angle sum at a
/// vertex.
inline ConeAngle cone_angle(const FlatPiece& piece, const PiecePoint& p) {
  const Feature f = piece.locate(p);
  switch (f.kind) {
    case Feature::Kind::kFace: return ConeAngle::of(PiMultiple{2, 1});
    case Feature::Kind::kEdge:
      return ConeAngle::of(piece.edges()[f.index].boundary() ? PiMultiple{1, 1}
                                                              : PiMultiple{2, 1});
    case Feature::Kind::kVertex: return piece.vertex_angle(f.index);
  }
  return {};
}

inline ConeAngle cone_angle(const FlatPiece& piece, const Feature& f) {
  return cone_angle(piece, piece.feature_point(f));
}

/// Point at arc-length t from arc.start, in the arc's orientation.
inline PiecePoint boundary_arclength_param(const FlatPiece& piece,
                                           const BoundaryArc& arc, double t) {
  constexpr double kSlack = 1e-12;
  if (!(t >= -kSlack && t <= arc.length + kSlack)) {
    throw Error(ErrorCode::kOutOfRange, "arc parameter outside [0, length]");
  }
  t = std::clamp(t, 0.0, arc.length);
  const double offset = arc.forward ? arc.start + t : arc.start - t;
  PiecePoint p = piece.boundary_point(arc.cycle, offset);
  p.piece = arc.piece;
  return p;
}

/// Exact distance when both points lie in one closed triangle, or when the
/// straight segment lies in the unfolding of two adjacent triangles.
inline std::optional<double> direct_distance(const FlatPiece& piece,
                                             const Feature& p, const Feature& q) {
  std::optional<double> best;
  auto consider = [&](double d) {
    if (!best || d < *best) best = d;
  };
  const auto ep = piece.embeddings(p);
  const auto eq = piece.embeddings(q);
  for (const auto& [tp, xp] : ep) {
    for (const auto& [tq, xq] : eq) {
      if (tp == tq) {
        consider(norm(xq - xp));
        continue;
      }
      // Shared edge between tp and tq?
      int shared = -1;
      for (int i = 0; i < 3 && shared < 0; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (piece.triangle_edge(tp, i) == piece.triangle_edge(tq, j)) {
            shared = piece.triangle_edge(tp, i);
            break;
          }
        }
      }
      if (shared < 0) continue;
      const auto& e = piece.edges()[shared];
      const auto lp = piece.layout(tp);
      const auto lq = piece.layout(tq);
      const Vec2 ua = lp[piece.corner_of(tp, e.a)];
      const Vec2 ub = lp[piece.corner_of(tp, e.b)];
      const Vec2 va = lq[piece.corner_of(tq, e.a)];
      const Vec2 vb = lq[piece.corner_of(tq, e.b)];
      const int third_p = 3 - piece.corner_of(tp, e.a) - piece.corner_of(tp, e.b);
      const int third_q = 3 - piece.corner_of(tq, e.a) - piece.corner_of(tq, e.b);
      const Vec2 dir_q = (1.0 / e.length) * (vb - va);
      const double side_q = cross(dir_q, lq[third_q] - va) > 0 ? 1.0 : -1.0;
      const double along = dot(xq - va, dir_q);
      const double perp = side_q * cross(dir_q, xq - va);  // >= 0 inside tq
      const Vec2 dir_p = (1.0 / e.length) * (ub - ua);
      Vec2 normal{-dir_p[1], dir_p[0]};
      if (cross(dir_p, lp[third_p] - ua) > 0) normal = -1.0 * normal;
      const Vec2 unfolded = ua + along * dir_p + perp * normal;
      // The segment must cross the shared edge (closed).
      const Vec2 seg = unfolded - xp;
      const double denom = cross(seg, ub - ua);
      if (std::abs(denom) < 1e-300) continue;
      const double s = cross(ua - xp, ub - ua) / denom;
      const double r = cross(ua - xp, seg) / denom;
      constexpr double kEps = 1e-12;
      if (s >= -kEps && s <= 1.0 + kEps && r >= -kEps && r <= 1.0 + kEps) {
        consider(norm(seg));
      }
    }
  }
  return best;
}

/// Checks every FlatPiece invariant and the curvature conditions on cone
/// angles. For kappa <= 0 the same bounds apply: flat pieces have curvature
/// >= kappa for every such kappa.
inline VerificationReport validate_piece(const FlatPiece& piece, double kappa,
                                         double min_angle) {
  VerificationReport report;
  const std::string prefix = "piece " + piece.id() + ": ";
  auto& structure = report.add("piece_structure");
  for (const auto& issue : piece.structural_issues()) {
    structure.fail({"StructuralIssue", piece.id(), 0.0, 0.0, issue});
  }
  if (piece.triangles().empty()) {
    structure.fail({"Empty", piece.id(), 0.0, 0.0, "piece has no triangles"});
  }
  if (piece.structurally_valid() && piece.cycles().empty()) {
    structure.fail({"NoBoundary", piece.id(), 0.0, 0.0,
                    "glued pieces must have non-empty boundary"});
  }

  auto& tri_check = report.add("triangle_inequality");
  const auto& tris = piece.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& l = tris[t].lengths;
    for (int i = 0; i < 3; ++i) {
      const double slack = l[(i + 1) % 3] + l[(i + 2) % 3] - l[i];
      if (!(l[i] > 0.0) || !(slack > 0.0)) {
        tri_check.fail({"InvalidTriangle", "triangle " + std::to_string(t), slack, 0.0,
                        "edge lengths violate the strict triangle inequality"});
        break;
      }
    }
  }
  if (!piece.structurally_valid() || tri_check.status == Status::kFail) {
    return report;
  }

  auto& shared = report.add("shared_edge_lengths");
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const auto& e = piece.edges()[piece.triangle_edge(static_cast<int>(t), i)];
      const double diff = std::abs(e.length - tris[t].lengths[i]);
      if (diff > 1e-12 * std::max(1.0, e.length)) {
        shared.fail({"EdgeLengthMismatch",
                     "edge " + std::to_string(e.a) + "-" + std::to_string(e.b), diff, 0.0,
                     "adjacent triangles disagree on a shared edge length"});
      }
    }
  }

  auto& interior = report.add("interior_cone_angles");
  auto& boundary = report.add("boundary_angles");
  auto& minimum = report.add("min_vertex_angle");
  auto& declared = report.add("declared_angles");
  interior.metrics["kappa"] = kappa;
  minimum.metrics["c_X"] = min_angle;
  for (int v = 0; v < static_cast<int>(piece.vertices().size()); ++v) {
    const double numeric = piece.numeric_vertex_angle(v);
    const std::string where = "vertex " + std::to_string(v);
    if (const auto& d = piece.vertices()[v].angle_pi) {
      const double diff = std::abs(d->radians() - numeric);
      if (diff > kAngleBoundTolerance) {
        declared.fail({"DeclaredAngleMismatch", where, numeric, d->radians(),
                       "declared angle " + d->str() + "*pi does not match edge lengths"});
      }
    }
    const double angle = piece.vertex_angle(v).radians;
    if (piece.is_boundary_vertex(v)) {
      if (!(angle > 0.0) || angle > std::numbers::pi + kAngleBoundTolerance) {
        boundary.fail({"BoundaryAngle", where, angle, std::numbers::pi,
                       "boundary vertex angle must lie in (0, pi]"});
      }
    } else if (!(angle > 0.0) || angle > 2.0 * std::numbers::pi + kAngleBoundTolerance) {
      interior.fail({"InteriorConeAngle", where, angle, 2.0 * std::numbers::pi,
                     "interior cone angle must lie in (0, 2*pi]"});
    }
    if (angle < min_angle) {
      minimum.fail({"MinVertexAngle", where, angle, min_angle,
                    "vertex angle below the uniform lower bound"});
    }
  }
  for (auto& c : report.checks) {
    for (auto& item : c.items) item.location = prefix + item.location;
  }
  return report;
}

}  // namespace alexglue

#endif  // ALEXGLUE_SURFACE_MODEL_HPP

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

// Ready-made gluing scenarios: three sectors assembling a disk and its
// reflection fold, the concave pairwise gluing, doublings, and the
// isolated-point counterexamples.

#ifndef ALEXGLUE_EXAMPLE_CORPUS_HPP
#define ALEXGLUE_EXAMPLE_CORPUS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "alexglue/errors.hpp"
#include "alexglue/gluing_engine.hpp"
#include "alexglue/report.hpp"
#include "alexglue/surface_model.hpp"

namespace alexglue::corpus {

struct ExpectedVerdicts {
  Status angle_criterion = Status::kPass;
  bool isolated_gluing = false;
  Status path_isometry = Status::kPass;
  std::optional<Status> toponogov;  // unset: not asserted
  std::vector<std::string> fail_reasons;
};

struct CorpusEntry {
  std::string name;
  std::string description;
  std::vector<FlatPiece> pieces;
  GluingSpec spec;
  ExpectedVerdicts expected;
};

using Params = std::map<std::string, double>;

inline const std::vector<std::string>& entry_names() {
  static const std::vector<std::string> names{
      "sector_disk_3",  "doubled_half_disk",     "pairwise_two_sectors",
      "square_doubling", "petrunin_pair",        "two_squares_one_point",
      "comb_countable_points", "unit_disk"};
  return names;
}

namespace detail {

// Ring mesh of a fan around the origin: ring j (1..rings) sits at radius
// j / rings with ceil(segments * j / rings) segments. Vertex 0 is the apex.
struct Fan {
  std::vector<Vec2> xy;
  std::vector<std::array<int, 3>> tris;
  std::vector<std::optional<PiMultiple>> angles;
  std::vector<std::vector<int>> rings;  // vertex ids per ring, by angle
};

inline void add_ccw(Fan& f, int a, int b, int c) {
  if (cross(f.xy[b] - f.xy[a], f.xy[c] - f.xy[a]) < 0) std::swap(b, c);
  f.tris.push_back({a, b, c});
}

// angle_pi: opening angle as a multiple of pi (2 for a full disk).
inline Fan ring_fan(double start_deg, PiMultiple angle_pi, int segments, int rings) {
  const bool closed = angle_pi == PiMultiple{2, 1};
  const double start = start_deg * std::numbers::pi / 180.0;
  const double open = angle_pi.radians();
  Fan f;
  f.xy.push_back({0.0, 0.0});
  f.angles.push_back(closed ? PiMultiple{2, 1} : angle_pi);
  f.rings.push_back({0});
  const std::int64_t q = angle_pi.den * segments;  // step = num / q in units of pi
  for (int j = 1; j <= rings; ++j) {
    const int n = (segments * j + rings - 1) / rings;
    const double r = static_cast<double>(j) / rings;
    std::vector<int> ring;
    const int count = closed ? n : n + 1;
    for (int k = 0; k < count; ++k) {
      const double phi = start + open * k / n;
      ring.push_back(static_cast<int>(f.xy.size()));
      f.xy.push_back({r * std::cos(phi), r * std::sin(phi)});
      std::optional<PiMultiple> a;
      const bool outer = j == rings;
      const bool side = !closed && (k == 0 || k == n);
      if (outer && side) {
        a = PiMultiple::make(q - angle_pi.num, 2 * q);
      } else if (outer) {
        a = PiMultiple::make(q - angle_pi.num, q);
      } else {
        a = side ? PiMultiple{1, 1} : PiMultiple{2, 1};
      }
      f.angles.push_back(a);
    }
    f.rings.push_back(ring);
  }
  // Zip consecutive rings by angular fraction.
  for (int j = 1; j <= rings; ++j) {
    const auto& in = f.rings[j - 1];
    const auto& out = f.rings[j];
    const int n_out = closed ? static_cast<int>(out.size()) : static_cast<int>(out.size()) - 1;
    if (j == 1) {
      for (int k = 0; k < n_out; ++k) add_ccw(f, 0, out[k], out[(k + 1) % out.size()]);
      continue;
    }
    const int n_in = closed ? static_cast<int>(in.size()) : static_cast<int>(in.size()) - 1;
    int a = 0, b = 0;
    while (a < n_in || b < n_out) {
      const double next_in = static_cast<double>(a + 1) / n_in;
      const double next_out = static_cast<double>(b + 1) / n_out;
      const int ia = in[a % in.size()];
      const int ob = out[b % out.size()];
      if (b < n_out && (a >= n_in || next_out <= next_in)) {
        add_ccw(f, ia, ob, out[(b + 1) % out.size()]);
        ++b;
      } else {
        add_ccw(f, ia, ob, in[(a + 1) % in.size()]);
        ++a;
      }
    }
  }
  return f;
}

inline FlatPiece fan_piece(const std::string& id, const Fan& f) {
  return FlatPiece::from_planar(id, f.xy, f.tris, f.angles);
}

// Planar polygon with the given triangulation; vertex angles in units of pi.
inline FlatPiece polygon_piece(const std::string& id, std::vector<Vec2> xy,
                               std::vector<std::array<int, 3>> tris,
                               std::vector<std::optional<PiMultiple>> angles) {
  return FlatPiece::from_planar(id, xy, tris, angles);
}

}  // namespace detail

/// Flat sector of radius 1 and opening angle_pi * pi, apex at the origin of
/// the plane, first radius at `start_deg`. Boundary cycle 0 runs
/// O -> A (offset 0..1), along the outer polygonal arc, then B -> O.
inline FlatPiece sector_piece(const std::string& id, double start_deg, PiMultiple angle_pi,
                              int segments = 24, int rings = 12) {
  return detail::fan_piece(id, detail::ring_fan(start_deg, angle_pi, segments, rings));
}

/// Regular polygon inscribed in the unit circle, vertex k at k * 360/segments
/// degrees; boundary cycle 0 starts at the vertex on the positive x-axis.
inline FlatPiece disk_piece(const std::string& id, int segments = 72, int rings = 12) {
  return detail::fan_piece(id, detail::ring_fan(0.0, PiMultiple{2, 1}, segments, rings));
}

inline FlatPiece square_piece(const std::string& id, double w = 1.0, double hgt = 1.0,
                              bool split_bottom_top = false) {
  const std::optional<PiMultiple> corner = PiMultiple{1, 2};
  const std::optional<PiMultiple> flat = PiMultiple{1, 1};
  if (!split_bottom_top) {
    return detail::polygon_piece(id, {{0, 0}, {w, 0}, {w, hgt}, {0, hgt}},
                                 {{0, 1, 2}, {0, 2, 3}}, {corner, corner, corner, corner});
  }
  // Extra boundary vertices at the middle of the bottom and top sides.
  return detail::polygon_piece(
      id, {{0, 0}, {w / 2, 0}, {w, 0}, {w, hgt}, {w / 2, hgt}, {0, hgt}},
      {{0, 1, 5}, {1, 4, 5}, {1, 2, 4}, {2, 3, 4}}, {corner, flat, corner, corner, flat, corner});
}

/// Boundary panels listed in order along a closed curve of the quotient;
/// each panel is a forward arc of some piece.
struct BoundaryChain {
  std::vector<BoundaryArc> panels;

  double length() const {
    double s = 0.0;
    for (const auto& p : panels) s += p.length;
    return s;
  }
};

/// Arc identifications folding a closed boundary chain onto itself by the
/// reflection u -> 2 u_fixed - u; fixes u_fixed and u_fixed + length/2.
inline std::vector<ArcIdentification> reflection_gluing(const std::vector<FlatPiece>& pieces,
                                                        const BoundaryChain& chain,
                                                        double u_fixed) {
  const double total = chain.length();
  std::vector<double> starts;
  double acc = 0.0;
  for (const auto& p : chain.panels) {
    starts.push_back(acc);
    acc += p.length;
  }
  const auto wrap = [&](double u) {
    double x = std::fmod(u, total);
    return x < 0 ? x + total : x;
  };
  const auto panel_of = [&](double u) {
    const double x = wrap(u);
    std::size_t k = std::upper_bound(starts.begin(), starts.end(), x) - starts.begin();
    return k == 0 ? 0 : k - 1;
  };
  const auto offset_at = [&](std::size_t k, double u) {
    const auto& p = chain.panels[k];
    double local = wrap(u) - starts[k];
    if (local < 0) local += total;
    return pieces[p.piece].normalize_offset(p.cycle, p.start + local);
  };
  const double half = 0.5 * total;
  std::vector<double> cuts{0.0, half};
  for (double s : starts) {
    for (double b : {wrap(s - u_fixed), wrap(u_fixed - s)}) {
      if (b > 1e-12 && b < half - 1e-12) cuts.push_back(b);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
             cuts.end());
  std::vector<ArcIdentification> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u1 = u_fixed + cuts[i];
    const double u2 = u_fixed + cuts[i + 1];
    const double len = u2 - u1;
    const std::size_t ka = panel_of(0.5 * (u1 + u2));
    const std::size_t kb = panel_of(2 * u_fixed - 0.5 * (u1 + u2));
    const auto& pa = chain.panels[ka];
    const auto& pb = chain.panels[kb];
    ArcIdentification id;
    id.a = BoundaryArc{pa.piece, pa.cycle, offset_at(ka, u1), len, true};
    id.b = BoundaryArc{pb.piece, pb.cycle, offset_at(kb, 2 * u_fixed - u2), len, true};
    id.reversed = true;
    out.push_back(id);
  }
  return out;
}

namespace detail {

inline double param(const Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

inline double chord(int segments) { return 2.0 * std::sin(std::numbers::pi / segments); }

// Sectors X1, X2, X3 with first radii at 90, -30 and 210 degrees.
inline std::vector<FlatPiece> three_sectors(int segments, int rings) {
  return {sector_piece("X1", 90, PiMultiple{2, 3}, segments, rings),
          sector_piece("X2", -30, PiMultiple{2, 3}, segments, rings),
          sector_piece("X3", 210, PiMultiple{2, 3}, segments, rings)};
}

// O_i A_i glued to O_{i+1} B_{i+1}: both radii parametrized from the apex.
inline ArcIdentification radius_gluing(std::size_t i, std::size_t j) {
  ArcIdentification id;
  id.a = BoundaryArc{i, 0, 0.0, 1.0, true};
  id.b = BoundaryArc{j, 0, 0.0, 1.0, false};
  return id;
}

}  // namespace detail

/// Two copies of a flat sector of angle angle_pi * pi glued along their
/// whole boundaries; the apex becomes a cone point of angle 2 * angle_pi * pi.
inline CorpusEntry doubled_sector(PiMultiple angle_pi, int segments = 24, int rings = 8) {
  CorpusEntry e;
  e.name = "doubled_sector";
  e.description = "two flat sectors glued along their full boundaries";
  e.pieces = {sector_piece("S1", 0, angle_pi, segments, rings),
              sector_piece("S2", 0, angle_pi, segments, rings)};
  const double len = e.pieces[0].cycles()[0].length;
  e.spec.arcs.push_back({{0, 0, 0.0, len, true}, {1, 0, 0.0, len, true}, false});
  e.expected.toponogov = Status::kPass;
  return e;
}

/// Builds a named scenario. Recognized parameters: "segments" and "rings"
/// for the disk meshes, "stages" (1 or 2) for sector_disk_3, "N" for
/// comb_countable_points.
inline CorpusEntry make(const std::string& name, const Params& params = {}) {
  const int segments = static_cast<int>(detail::param(params, "segments", 24));
  const int rings = static_cast<int>(detail::param(params, "rings", 12));
  CorpusEntry e;
  e.name = name;
  if (name == "sector_disk_3") {
    const int stages = static_cast<int>(detail::param(params, "stages", 2));
    e.description = stages == 1
        ? "three flat unit sectors of angle 2pi/3 glued radius to radius into a disk"
        : "three sectors glued into a disk, whose boundary is then folded by the reflection about PQ";
    e.pieces = detail::three_sectors(segments, rings);
    for (std::size_t i = 0; i < 3; ++i) e.spec.arcs.push_back(detail::radius_gluing(i, (i + 1) % 3));
    if (stages >= 2) {
      // Boundary of the disk counterclockwise from -30 degrees: X2, X1, X3.
      const double arc = segments * detail::chord(3 * segments);
      BoundaryChain chain{{{1, 0, 1.0, arc, true}, {0, 0, 1.0, arc, true}, {2, 0, 1.0, arc, true}}};
      // P at 167.5 degrees for the default mesh: the middle of an outer edge.
      const double step = 360.0 / (3 * segments);
      const double p_deg = 180.0 - 2.5 * step;
      const double u_p = (p_deg + 30.0) / step * detail::chord(3 * segments);
      for (auto& id : reflection_gluing(e.pieces, chain, u_p)) e.spec.arcs.push_back(id);
    }
    e.expected.toponogov = Status::kPass;
  } else if (name == "doubled_half_disk") {
    e.description = "unit disk with its boundary folded by the reflection about the diameter PQ";
    const int m = 3 * segments;
    e.pieces = {disk_piece("D", m, rings)};
    const double c = detail::chord(m);
    const double step = 360.0 / m;
    const double u_p = (180.0 - 2.5 * step) / step * c;
    BoundaryChain chain{{{0, 0, 0.0, m * c, true}}};
    e.spec.arcs = reflection_gluing(e.pieces, chain, u_p);
    e.expected.toponogov = Status::kPass;
  } else if (name == "pairwise_two_sectors") {
    e.description = "two of the three 2pi/3 sectors glued along one radius pair";
    auto all = detail::three_sectors(segments, rings);
    e.pieces = {all[0], all[1]};
    e.spec.arcs.push_back(detail::radius_gluing(0, 1));
    e.expected.angle_criterion = Status::kFail;
    e.expected.toponogov = Status::kFail;
    e.expected.fail_reasons = {"apex class is a boundary point with total angle 4pi/3 > pi"};
  } else if (name == "square_doubling") {
    e.description = "two unit squares glued along their full boundaries by the identity";
    e.pieces = {square_piece("S1"), square_piece("S2")};
    e.spec.arcs.push_back({{0, 0, 0.0, 4.0, true}, {1, 0, 0.0, 4.0, true}, false});
    e.expected.toponogov = Status::kPass;
  } else if (name == "petrunin_pair") {
    e.description = "two 2x1 rectangles with different triangulations glued along their boundaries";
    e.pieces = {square_piece("R1", 2.0, 1.0, false), square_piece("R2", 2.0, 1.0, true)};
    e.spec.arcs.push_back({{0, 0, 0.0, 6.0, true}, {1, 0, 0.0, 6.0, true}, false});
    e.expected.toponogov = Status::kPass;
  } else if (name == "two_squares_one_point") {
    e.description = "two unit squares glued only at one corner";
    e.pieces = {square_piece("S1"), square_piece("S2")};
    e.spec.points.push_back({{0, 0, 0.0}, {1, 0, 0.0}});
    e.expected.angle_criterion = Status::kFail;
    e.expected.isolated_gluing = true;
    e.expected.path_isometry = Status::kFail;
    e.expected.fail_reasons = {"isolated gluing point at the shared corner",
                               "point identification is not an arc identification"};
  } else if (name == "comb_countable_points") {
    const int n = static_cast<int>(detail::param(params, "N", 50));
    if (n < 1) throw Error(ErrorCode::kUnknownEntry, "comb_countable_points needs N >= 1");
    e.description = "two unit squares glued at the points at distance 1/i from A along AB";
    e.pieces = {square_piece("S1"), square_piece("S2")};
    for (int i = 1; i <= n; ++i) {
      e.spec.points.push_back({{0, 0, 1.0 / i}, {1, 0, 1.0 / i}});
    }
    e.expected.angle_criterion = Status::kFail;
    e.expected.isolated_gluing = true;
    e.expected.path_isometry = Status::kFail;
    e.expected.fail_reasons = {"identifications are isolated points, not arcs"};
  } else if (name == "unit_disk") {
    e.description = "the flat unit disk (inscribed polygon), no gluing";
    e.pieces = {disk_piece("D", 3 * segments, rings)};
    e.expected.toponogov = Status::kPass;
  } else {
    throw Error(ErrorCode::kUnknownEntry, "unknown corpus entry '" + name + "'");
  }
  return e;
}

}  // namespace alexglue::corpus

#endif  // ALEXGLUE_EXAMPLE_CORPUS_HPP

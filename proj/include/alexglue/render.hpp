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

// SVG 1.1 pictures of a glued space: one panel per piece, seams colored per
// identification, singular classes, and sampled geodesics colored by verdict.
//
// Element ids are stable across runs: piece-<i>, seam-<k>-a / seam-<k>-b,
// point-<k>-a / point-<k>-b, class-<c>-<j>, sample-<index>-<side>.

#ifndef ALEXGLUE_RENDER_HPP
#define ALEXGLUE_RENDER_HPP

#include <algorithm>
#include <cstdio>
#include <deque>
#include <sstream>
#include <string>
#include <vector>

#include "alexglue/curvature_verifier.hpp"
#include "alexglue/gluing_engine.hpp"

namespace alexglue {

struct RenderOptions {
  double width = 900.0;        // SVG width in px
  std::size_t passing_samples = 12;
  std::size_t failing_samples = 20;
};

namespace detail {

/// Planar positions for every vertex of a piece: the given coordinates, or
/// an unfolding across edges for pieces without them. Unfolded cone pieces
/// may overlap themselves.
inline std::vector<Vec2> piece_layout(const FlatPiece& P) {
  const auto& vs = P.vertices();
  std::vector<Vec2> xy(vs.size());
  const bool planar = std::all_of(vs.begin(), vs.end(), [](const Vertex& v) { return v.xy.has_value(); });
  if (planar) {
    for (std::size_t i = 0; i < vs.size(); ++i) xy[i] = *vs[i].xy;
    return xy;
  }
  std::vector<char> placed(vs.size(), 0);
  std::vector<char> done(P.triangles().size(), 0);
  for (int root = 0; root < static_cast<int>(P.triangles().size()); ++root) {
    if (done[root]) continue;
    std::deque<int> queue{root};
    done[root] = 1;
    while (!queue.empty()) {
      const int t = queue.front();
      queue.pop_front();
      const auto& tri = P.triangles()[t];
      const auto local = P.layout(t);
      // Anchor on an already placed edge when there is one.
      int anchor = -1;
      for (int i = 0; i < 3 && anchor < 0; ++i) {
        if (placed[tri.v[i]] && placed[tri.v[(i + 1) % 3]]) anchor = i;
      }
      std::array<Vec2, 3> world = local;
      if (anchor >= 0) {
        const Vec2 a = local[anchor], b = local[(anchor + 1) % 3];
        const Vec2 A = xy[tri.v[anchor]], B = xy[tri.v[(anchor + 1) % 3]];
        const Vec2 d = b - a, D = B - A;
        const double s = norm(D) / std::max(norm(d), 1e-300);
        const double ang = std::atan2(D[1], D[0]) - std::atan2(d[1], d[0]);
        const double c = std::cos(ang) * s, sn = std::sin(ang) * s;
        for (int i = 0; i < 3; ++i) {
          const Vec2 r = local[i] - a;
          world[i] = A + Vec2{c * r[0] - sn * r[1], sn * r[0] + c * r[1]};
        }
      }
      for (int i = 0; i < 3; ++i) {
        if (!placed[tri.v[i]]) {
          xy[tri.v[i]] = world[i];
          placed[tri.v[i]] = 1;
        }
      }
      for (int i = 0; i < 3; ++i) {
        const auto& e = P.edges()[P.triangle_edge(t, i)];
        for (int nt : e.triangles) {
          if (nt >= 0 && !done[nt]) {
            done[nt] = 1;
            queue.push_back(nt);
          }
        }
      }
    }
  }
  return xy;
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline const char* seam_color(std::size_t k) {
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#9467bd", "#8c564b",
                                  "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  return palette[k % 8];
}

}  // namespace detail

/// Renders the glued space. `result` adds sampled geodesics when given.
inline std::string render_svg(const GluedSpace& gs, const ToponogovResult* result = nullptr,
                              const RenderOptions& opt = {}) {
  const auto& pieces = gs.pieces();
  std::vector<std::vector<Vec2>> layouts;
  std::vector<std::array<double, 4>> boxes;  // min x, min y, max x, max y
  for (const auto& P : pieces) {
    layouts.push_back(detail::piece_layout(P));
    std::array<double, 4> b{kInfinity, kInfinity, -kInfinity, -kInfinity};
    for (const auto& v : layouts.back()) {
      b[0] = std::min(b[0], v[0]);
      b[1] = std::min(b[1], v[1]);
      b[2] = std::max(b[2], v[0]);
      b[3] = std::max(b[3], v[1]);
    }
    boxes.push_back(b);
  }
  double total = 0.0, tallest = 0.0;
  for (const auto& b : boxes) {
    total += b[2] - b[0];
    tallest = std::max(tallest, b[3] - b[1]);
  }
  const double gap = 0.15 * std::max(total / std::max<std::size_t>(pieces.size(), 1), 1e-9);
  total += gap * static_cast<double>(pieces.size() + 1);
  const double scale = opt.width / total;
  const double height = (tallest + 2 * gap) * scale;
  std::vector<double> shift;
  double x = gap;
  for (const auto& b : boxes) {
    shift.push_back(x - b[0]);
    x += b[2] - b[0] + gap;
  }
  auto screen = [&](std::size_t piece, const Vec2& p) {
    return Vec2{(p[0] + shift[piece]) * scale, height - (p[1] - boxes[piece][1] + gap) * scale};
  };
  auto to_svg = [&](std::size_t piece, const Vec2& p) {
    const Vec2 s = screen(piece, p);
    return detail::fmt(s[0]) + "," + detail::fmt(s[1]);
  };
  auto point_xy = [&](const PiecePoint& p) {
    const auto& tri = pieces[p.piece].triangles()[p.triangle];
    const auto& L = layouts[p.piece];
    Vec2 out{0.0, 0.0};
    for (int i = 0; i < 3; ++i) out = out + p.barycentric[i] * L[tri.v[i]];
    return out;
  };
  const auto maps = gs.maps();

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << detail::fmt(opt.width)
     << "\" height=\"" << detail::fmt(height) << "\" viewBox=\"0 0 " << detail::fmt(opt.width) << " "
     << detail::fmt(height) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& P = pieces[i];
    os << "<g id=\"piece-" << i << "\" data-piece=\"" << P.id() << "\">\n";
    os << "<path d=\"";
    for (const auto& t : P.triangles()) {
      os << "M" << to_svg(i, layouts[i][t.v[0]]) << "L" << to_svg(i, layouts[i][t.v[1]]) << "L"
         << to_svg(i, layouts[i][t.v[2]]) << "Z";
    }
    os << "\" fill=\"#f4f4f4\" stroke=\"#d0d0d0\" stroke-width=\"0.3\"/>\n";
    for (std::size_t c = 0; c < P.cycles().size(); ++c) {
      os << "<polygon id=\"piece-" << i << "-cycle-" << c << "\" points=\"";
      for (const auto& ce : P.cycles()[c].edges) os << to_svg(i, layouts[i][ce.from]) << " ";
      os << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g id=\"seams\">\n";
  for (std::size_t k = 0; k < gs.spec().arcs.size(); ++k) {
    for (int s = 0; s < 2; ++s) {
      const auto& arc = s == 0 ? gs.spec().arcs[k].a : gs.spec().arcs[k].b;
      const auto& P = pieces[arc.piece];
      std::vector<double> ts{0.0, arc.length};
      for (const auto& ce : P.cycles()[arc.cycle].edges) {
        const double t = arc.forward ? P.forward_gap(arc.cycle, arc.start, ce.start)
                                     : P.forward_gap(arc.cycle, ce.start, arc.start);
        if (t > 0.0 && t < arc.length) ts.push_back(t);
      }
      std::sort(ts.begin(), ts.end());
      os << "<polyline id=\"seam-" << k << "-" << (s == 0 ? 'a' : 'b') << "\" points=\"";
      for (double t : ts) {
        const auto loc = maps.at(arc, t);
        PiecePoint p = P.boundary_point(loc.cycle, loc.offset);
        p.piece = arc.piece;
        os << to_svg(arc.piece, point_xy(p)) << " ";
      }
      os << "\" fill=\"none\" stroke=\"" << detail::seam_color(k) << "\" stroke-width=\"3\""
         << (s == 1 ? " stroke-dasharray=\"6,3\"" : "") << "/>\n";
    }
  }
  for (std::size_t k = 0; k < gs.spec().points.size(); ++k) {
    for (int s = 0; s < 2; ++s) {
      const auto& loc = s == 0 ? gs.spec().points[k].a : gs.spec().points[k].b;
      PiecePoint p = pieces[loc.piece].boundary_point(loc.cycle, loc.offset);
      p.piece = loc.piece;
      const Vec2 xy = screen(loc.piece, point_xy(p));
      os << "<rect id=\"point-" << k << "-" << (s == 0 ? 'a' : 'b') << "\" x=\"" << detail::fmt(xy[0] - 4)
         << "\" y=\"" << detail::fmt(xy[1] - 4) << "\" width=\"8\" height=\"8\" fill=\"#ff7f0e\"/>\n";
    }
  }
  os << "</g>\n";

  os << "<g id=\"classes\">\n";
  for (auto c : detail::candidate_classes(gs)) {
    const auto t = glued_cone_angle(gs, c);
    if (detail::singularity(t) <= 1e-9 && t.multiplicity < 3) continue;
    const bool ok = detail::angle_within(t.theta_sum, t.boundary_class ? 1 : 2);
    const auto nodes = gs.class_nodes(c);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const auto p = gs.node_point(nodes[j]);
      const Vec2 xy = screen(p.piece, point_xy(p));
      os << "<circle id=\"class-" << c << "-" << j << "\" cx=\"" << detail::fmt(xy[0]) << "\" cy=\""
         << detail::fmt(xy[1]) << "\" r=\"4\" fill=\"" << (ok ? "#2a9d8f" : "#d62828")
         << "\"><title>" << detail::angle_text(t.theta_sum) << " (m=" << t.multiplicity
         << ")</title></circle>\n";
    }
  }
  os << "</g>\n";

  if (result) {
    os << "<g id=\"samples\">\n";
    std::size_t passing = 0, failing = 0;
    for (const auto& smp : result->samples) {
      if (smp.violation ? failing >= opt.failing_samples : passing >= opt.passing_samples) continue;
      (smp.violation ? failing : passing)++;
      const auto rep = [&](std::uint32_t c) { return gs.node_point(gs.class_nodes(c)[0]); };
      const char* names[] = {"pa", "pb", "pc"};
      for (int s = 0; s < 3; ++s) {
        const auto path = gs.geodesic(rep(smp.classes[0]), rep(smp.classes[s + 1]));
        os << "<path id=\"sample-" << smp.index << "-" << names[s] << "\" d=\"";
        for (const auto& seg : path) {
          os << "M" << to_svg(seg.from.piece, point_xy(seg.from)) << "L"
             << to_svg(seg.to.piece, point_xy(seg.to));
        }
        os << "\" fill=\"none\" stroke=\"" << (smp.violation ? "#d62828" : "#2a9d8f")
           << "\" stroke-width=\"1.2\" stroke-opacity=\"0.8\"/>\n";
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace alexglue

#endif  // ALEXGLUE_RENDER_HPP

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

// Curvature checks on a glued space: tangent cones at glued points, the
// two-dimensional gluing criterion, and sampled comparison tests
// (quadruple angle sums, angle monotonicity along geodesics, convexity of
// singular points).

#ifndef ALEXGLUE_CURVATURE_VERIFIER_HPP
#define ALEXGLUE_CURVATURE_VERIFIER_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "alexglue/errors.hpp"
#include "alexglue/gluing_engine.hpp"
#include "alexglue/metric_graph.hpp"
#include "alexglue/model_geometry.hpp"
#include "alexglue/report.hpp"
#include "alexglue/surface_model.hpp"

namespace alexglue {

// ---------------------------------------------------------------------------
// Parallel helpers

/// Thread count: ALEXGLUE_THREADS when set, else `requested`, else the
/// hardware concurrency.
inline unsigned resolve_thread_count(unsigned requested = 0) {
  if (const char* env = std::getenv("ALEXGLUE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs f(i) for i in [0, n) on up to `threads` threads. Results must be
/// written to index-addressed storage; the first exception is rethrown.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(n)));
}

// ---------------------------------------------------------------------------
// Tangent cones

enum class ConeTopology { kCircle, kInterval };

inline std::string_view to_string(ConeTopology t) {
  return t == ConeTopology::kCircle ? "Circle" : "Interval";
}

/// Space of directions at a point of Y, glued from the direction sets of
/// its preimages: a circle or interval of length theta_sum.
struct TangentConeData {
  std::uint32_t class_id = 0;
  std::size_t multiplicity = 1;
  ConeAngle theta_sum;
  ConeTopology topology = ConeTopology::kCircle;
  double perimeter = 0.0;
  bool boundary_class = false;  // some preimage keeps an unglued boundary germ
  std::size_t components = 1;
  std::size_t free_ends = 0;
  bool branching = false;       // a direction glued to more than one other
};

inline TangentConeData glued_cone_angle(const GluedSpace& gs, std::uint32_t class_id) {
  TangentConeData out;
  out.class_id = class_id;
  const auto nodes = gs.class_nodes(class_id);
  out.multiplicity = nodes.size();
  out.theta_sum = gs.node_cone_angle(nodes[0]);
  for (std::size_t i = 1; i < nodes.size(); ++i) out.theta_sum = out.theta_sum + gs.node_cone_angle(nodes[i]);
  out.perimeter = out.theta_sum.radians;
  if (!gs.node(nodes[0]).boundary()) return out;  // interior point: a full circle

  // Each boundary preimage contributes an interval with ends (i, -) = 2i and
  // (i, +) = 2i + 1; glued germs join ends.
  const auto maps = gs.maps();
  const std::size_t m = nodes.size();
  DisjointSets intervals(m);
  std::vector<int> degree(2 * m, 0);
  std::vector<std::pair<std::size_t, std::size_t>> joins;
  for (std::size_t i = 0; i < m; ++i) {
    const auto loc = gs.node_location(nodes[i]);
    for (int dir : {-1, 1}) {
      const std::size_t end = 2 * i + (dir > 0 ? 1 : 0);
      for (const auto& g : maps.germ_partners(loc, dir)) {
        for (std::size_t j = 0; j < m; ++j) {
          if (!maps.same_location(gs.node_location(nodes[j]), g.location)) continue;
          const std::size_t other = 2 * j + (g.direction > 0 ? 1 : 0);
          if (other == end) continue;
          joins.emplace_back(std::min(end, other), std::max(end, other));
          intervals.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
      }
    }
  }
  std::sort(joins.begin(), joins.end());
  joins.erase(std::unique(joins.begin(), joins.end()), joins.end());
  for (const auto& [a, b] : joins) {
    ++degree[a];
    ++degree[b];
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < m; ++i) roots += intervals.find(static_cast<std::uint32_t>(i)) == i;
  out.components = roots;
  for (int d : degree) {
    if (d == 0) ++out.free_ends;
    if (d > 1) out.branching = true;
  }
  out.boundary_class = out.free_ends > 0;
  out.topology = out.boundary_class || out.components > 1 ? ConeTopology::kInterval
                                                          : ConeTopology::kCircle;
  return out;
}

namespace detail {

// theta <= bound_pi * pi, exactly when the angle is known combinatorially.
inline bool angle_within(const ConeAngle& theta, std::int64_t bound_pi) {
  if (theta.exact) return theta.exact->num <= bound_pi * theta.exact->den;
  const double bound = static_cast<double>(bound_pi) * std::numbers::pi;
  return theta.radians <= bound * (1.0 + 1e-12);
}

inline std::string angle_text(const ConeAngle& theta) {
  std::ostringstream os;
  if (theta.exact) {
    os << theta.exact->str() << " pi";
  } else {
    os.precision(17);
    os << theta.radians;
  }
  return os.str();
}

// Classes whose tangent cone may differ from a flat one: those containing a
// vertex, glued from several points, or fixed by a self-gluing.
inline std::vector<std::uint32_t> candidate_classes(const GluedSpace& gs) {
  std::vector<std::uint32_t> out;
  const auto maps = gs.maps();
  for (std::uint32_t c = 0; c < gs.class_count(); ++c) {
    const auto nodes = gs.class_nodes(c);
    const bool vertex = std::any_of(nodes.begin(), nodes.end(), [&](auto n) {
      return gs.node(n).feature.kind == Feature::Kind::kVertex;
    });
    if (vertex || nodes.size() > 1 ||
        (gs.node(nodes[0]).boundary() && maps.on_any_arc(gs.node_location(nodes[0])))) {
      out.push_back(c);
    }
  }
  return out;
}

// Deviation of the total angle from the flat value (2 pi inside, pi on the
// boundary).
inline double singularity(const TangentConeData& t) {
  const double flat = t.boundary_class ? std::numbers::pi : 2 * std::numbers::pi;
  return std::abs(t.theta_sum.radians - flat);
}

}  // namespace detail

/// The gluing criterion: path isometry, no isolated gluing points, total
/// angle at most 2 pi at every point of Y and at most pi on its boundary.
inline VerificationReport check_angle_criterion(const GluedSpace& gs) {
  VerificationReport report = check_path_isometry(gs);

  auto& isolated = report.add("isolated_gluing");
  const auto iso = detect_isolated_gluing(gs);
  for (auto c : iso) {
    isolated.fail({"IsolatedGluing", gs.describe_class(c), static_cast<double>(gs.multiplicity(c)), 1.0,
                   "glued point with a preimage that lies on no glued arc"});
  }
  isolated.metrics["isolated_classes"] = static_cast<double>(iso.size());

  auto& angles = report.add("angle_bound");
  auto& cones = report.add("tangent_cones");
  double worst = -kInfinity;
  std::size_t boundary_classes = 0;
  for (auto c : detail::candidate_classes(gs)) {
    const auto t = glued_cone_angle(gs, c);
    const std::int64_t bound = t.boundary_class ? 1 : 2;
    boundary_classes += t.boundary_class;
    worst = std::max(worst, t.theta_sum.radians - static_cast<double>(bound) * std::numbers::pi);
    if (!detail::angle_within(t.theta_sum, bound)) {
      angles.fail({"AngleBoundViolation", gs.describe_class(c), t.theta_sum.radians,
                   static_cast<double>(bound) * std::numbers::pi,
                   std::string(t.boundary_class ? "boundary" : "interior") +
                       " class with theta_sum = " + detail::angle_text(t.theta_sum) + " > " +
                       (bound == 1 ? "pi" : "2 pi")});
    }
    if (t.branching) {
      cones.warn({"BranchedDirections", gs.describe_class(c), 0.0, 0.0,
                  "a boundary direction is glued to more than one other"});
    }
    if (t.components > 1) {
      cones.warn({"DisconnectedDirections", gs.describe_class(c), static_cast<double>(t.components), 1.0,
                  "space of directions has several components"});
    }
  }
  angles.metrics["max_excess_over_bound"] = std::isfinite(worst) ? worst : 0.0;
  angles.metrics["boundary_classes_checked"] = static_cast<double>(boundary_classes);
  return report;
}

// ---------------------------------------------------------------------------
// Sampled comparison

struct QuadrupleSample {
  std::size_t index = 0;
  std::array<std::uint32_t, 4> classes{};  // p, a, b, c
  std::array<double, 6> sides{};           // pa, pb, pc, ab, bc, ca
  double angle_sum = 0.0;
  double excess = 0.0;  // angle_sum - 2 pi
  double tol = 0.0;
  bool violation = false;
};

struct ChainSample {
  std::size_t index = 0;
  std::array<std::uint32_t, 3> classes{};  // a, b, c
  std::array<double, 3> angles{};          // at fractions 1/4, 1/2, 1
  double increase = 0.0;                   // largest step up along the chain
  double tol = 0.0;
  bool violation = false;
};

struct ToponogovResult {
  VerificationReport report;
  std::vector<QuadrupleSample> samples;  // accepted samples, index order
  std::vector<ChainSample> chains;
};

inline constexpr double kToleranceFactor = 10.0;  // tol(h) = 10 h / min side
inline constexpr std::size_t kPoolSize = 96;
inline constexpr std::size_t kSingularPoolSize = 16;
inline constexpr std::size_t kReportedItems = 20;

namespace detail {

// h-independent candidate points: vertices and equally spaced points of
// every edge, mapped to the classes of their nearest samples.
inline std::vector<std::uint32_t> sample_pool(const GluedSpace& gs, std::mt19937_64& rng) {
  std::vector<std::uint32_t> cand;
  std::size_t total_edges = 0;
  for (const auto& P : gs.pieces()) total_edges += P.edges().size();
  for (std::size_t i = 0; i < gs.pieces().size(); ++i) {
    const auto& P = gs.pieces()[i];
    for (int v = 0; v < static_cast<int>(P.vertices().size()); ++v) {
      PiecePoint p = P.vertex_point(v);
      p.piece = i;
      if (auto c = gs.class_at(p)) cand.push_back(*c);
    }
    // Enough points per edge for a pool of a few hundred on coarse meshes.
    const int per_edge = std::max<int>(4, static_cast<int>(std::ceil(400.0 / total_edges)));
    for (int e = 0; e < static_cast<int>(P.edges().size()); ++e) {
      const double len = P.edges()[e].length;
      for (int k = 1; k < per_edge; ++k) {
        const double f = static_cast<double>(k) / per_edge;
        const PiecePoint p0 = P.edge_point(e, f * len);
        // Nearest sample node on the edge.
        std::uint32_t best = 0;
        double gap = kInfinity;
        PiecePoint q = p0;
        q.piece = i;
        for (const auto& [n, d] : gs.seeds(q)) {
          const auto& nd = gs.node(n);
          const bool on_edge = (nd.feature.kind == Feature::Kind::kEdge && nd.feature.index == e) ||
                               (nd.feature.kind == Feature::Kind::kVertex &&
                                (nd.feature.index == P.edges()[e].a || nd.feature.index == P.edges()[e].b));
          if (on_edge && d < gap) { gap = d; best = n; }
        }
        if (std::isfinite(gap)) cand.push_back(gs.class_of_node(best));
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::shuffle(cand.begin(), cand.end(), rng);
  if (cand.size() > kPoolSize) cand.resize(kPoolSize);

  // Most singular classes always take part.
  std::vector<std::pair<double, std::uint32_t>> sing;
  for (auto c : candidate_classes(gs)) {
    const double s = singularity(glued_cone_angle(gs, c));
    if (s > 1e-12) sing.emplace_back(-s, c);
  }
  std::sort(sing.begin(), sing.end());
  for (std::size_t k = 0; k < sing.size() && k < kSingularPoolSize; ++k) cand.push_back(sing[k].second);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  return cand;
}

// Classes along the shortest-path tree branch from the source to `target`,
// source first.
inline std::vector<std::uint32_t> tree_path(const ShortestPaths& sp, std::uint32_t target) {
  std::vector<std::uint32_t> path{target};
  while (sp.pred_vertex[path.back()] != kNoEdge) path.push_back(sp.pred_vertex[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// First class on the path at distance >= d from its source.
inline std::uint32_t point_at(const ShortestPaths& sp, const std::vector<std::uint32_t>& path, double d) {
  for (auto c : path) {
    if (sp.dist[c] >= d) return c;
  }
  return path.back();
}

inline double class_distance(const GluedSpace& gs, std::uint32_t a, std::uint32_t b,
                             double limit = kInfinity) {
  if (a == b) return 0.0;
  const std::pair<std::uint32_t, double> seed{a, 0.0};
  double found = kInfinity;
  dijkstra(gs.class_graph(), std::span(&seed, 1), false, [&](std::uint32_t v, double d) {
    if (v == b) { found = d; return true; }
    return d > limit;
  });
  return found;
}

template <typename T, typename Less>
void keep_worst(std::vector<T>& items, Less less) {
  std::sort(items.begin(), items.end(), less);
  if (items.size() > kReportedItems) items.resize(kReportedItems);
}

}  // namespace detail

/// Samples quadruples (p; a, b, c) of class representatives and checks
/// that the three comparison angles at p sum to at most 2 pi + tol(h); also
/// checks that comparison angles do not grow as the endpoints of two
/// geodesics from a common point move outward.
inline ToponogovResult verify_toponogov(const GluedSpace& gs, double kappa, std::size_t n_samples,
                                        std::uint64_t seed, unsigned threads = 1) {
  ToponogovResult out;
  const double h = gs.h();
  std::mt19937_64 rng(seed);
  const auto pool = detail::sample_pool(gs, rng);
  const std::size_t K = pool.size();
  if (K < 4) {
    throw Error(ErrorCode::kInsufficientSamples, "fewer than four sample classes available");
  }
  std::vector<ShortestPaths> trees(K);
  parallel_for(K, threads, [&](std::size_t i) { trees[i] = gs.class_paths(pool[i], true); });
  const auto D = [&](std::size_t i, std::size_t j) { return trees[i].dist[pool[j]]; };

  // Quadruples: drawn sequentially, evaluated from the distance table.
  auto& topo = out.report.add("toponogov");
  const std::size_t max_attempts = 50 * std::max<std::size_t>(n_samples, 1);
  std::size_t attempts = 0;
  double max_excess = -kInfinity;
  double max_over = -kInfinity;
  std::size_t violations = 0;
  std::vector<QuadrupleSample> bad;
  while (out.samples.size() < n_samples && attempts < max_attempts) {
    ++attempts;
    std::array<std::size_t, 4> idx{};
    for (auto& x : idx) x = uniform_index(rng, K);
    if (idx[0] == idx[1] || idx[0] == idx[2] || idx[0] == idx[3] || idx[1] == idx[2] ||
        idx[1] == idx[3] || idx[2] == idx[3]) {
      continue;
    }
    QuadrupleSample s;
    s.sides = {D(idx[0], idx[1]), D(idx[0], idx[2]), D(idx[0], idx[3]),
               D(idx[1], idx[2]), D(idx[2], idx[3]), D(idx[3], idx[1])};
    const double min_side = *std::min_element(s.sides.begin(), s.sides.end());
    if (!std::all_of(s.sides.begin(), s.sides.end(), [](double x) { return std::isfinite(x); }) ||
        min_side < 10.0 * h) {
      continue;
    }
    for (int k = 0; k < 4; ++k) s.classes[k] = pool[idx[k]];
    s.index = out.samples.size();
    s.angle_sum = model::comparison_angle(kappa, s.sides[3], s.sides[0], s.sides[1]) +
                  model::comparison_angle(kappa, s.sides[4], s.sides[1], s.sides[2]) +
                  model::comparison_angle(kappa, s.sides[5], s.sides[2], s.sides[0]);
    s.excess = s.angle_sum - 2 * std::numbers::pi;
    s.tol = kToleranceFactor * h / min_side;
    s.violation = s.excess > s.tol;
    max_excess = std::max(max_excess, s.excess);
    max_over = std::max(max_over, s.excess - s.tol);
    if (s.violation) {
      ++violations;
      bad.push_back(s);
    }
    out.samples.push_back(s);
  }
  topo.metrics["h"] = h;
  topo.metrics["kappa"] = kappa;
  topo.metrics["seed"] = static_cast<double>(seed);
  topo.metrics["pool_size"] = static_cast<double>(K);
  topo.metrics["requested"] = static_cast<double>(n_samples);
  topo.metrics["accepted"] = static_cast<double>(out.samples.size());
  topo.metrics["attempts"] = static_cast<double>(attempts);
  topo.metrics["violations"] = static_cast<double>(violations);
  topo.metrics["tolerance_factor"] = kToleranceFactor;
  topo.metrics["max_excess"] = out.samples.empty() ? 0.0 : max_excess;
  topo.metrics["max_excess_minus_tol"] = out.samples.empty() ? 0.0 : max_over;
  if (2 * out.samples.size() < n_samples) {
    throw Error(ErrorCode::kInsufficientSamples,
                std::to_string(out.samples.size()) + " of " + std::to_string(n_samples) +
                    " quadruples have all sides >= 10h");
  }
  detail::keep_worst(bad, [](const auto& x, const auto& y) { return x.excess - x.tol > y.excess - y.tol; });
  for (const auto& s : bad) {
    std::ostringstream where;
    where << "sample " << s.index << " classes " << s.classes[0] << "; " << s.classes[1] << ", "
          << s.classes[2] << ", " << s.classes[3];
    topo.fail({"ToponogovViolation", where.str(), s.excess, s.tol,
               "comparison angles at " + gs.describe_class(s.classes[0]) + " sum beyond 2 pi"});
  }

  // Monotonicity along pairs of geodesics from a common point.
  auto& mono = out.report.add("monotonicity");
  const std::size_t n_chains = std::clamp<std::size_t>(n_samples / 50, 16, 200);
  std::mt19937_64 chain_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  struct ChainSeed {
    std::size_t a, b, c;
  };
  std::vector<ChainSeed> seeds;
  for (std::size_t k = 0; k < n_chains; ++k) {
    std::size_t a = uniform_index(chain_rng, K), b = uniform_index(chain_rng, K),
                c = uniform_index(chain_rng, K);
    if (a == b || b == c || a == c) continue;
    seeds.push_back({a, b, c});
  }
  std::vector<std::optional<ChainSample>> chains(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t k) {
    const auto& [a, b, c] = seeds[k];
    const auto& tree = trees[a];
    if (!std::isfinite(D(a, b)) || !std::isfinite(D(a, c))) return;
    const auto pb = detail::tree_path(tree, pool[b]);
    const auto pc = detail::tree_path(tree, pool[c]);
    ChainSample s;
    s.classes = {pool[a], pool[b], pool[c]};
    const std::array<double, 3> fractions{0.25, 0.5, 1.0};
    double min_adjacent = kInfinity;
    for (int f = 0; f < 3; ++f) {
      const auto xb = detail::point_at(tree, pb, fractions[f] * D(a, b));
      const auto xc = detail::point_at(tree, pc, fractions[f] * D(a, c));
      const double sb = tree.dist[xb], sc = tree.dist[xc];
      min_adjacent = std::min({min_adjacent, sb, sc});
      if (sb < 10.0 * h || sc < 10.0 * h) return;
      const double bc = f == 2 ? D(b, c) : detail::class_distance(gs, xb, xc);
      s.angles[f] = model::comparison_angle(kappa, bc, sb, sc);
    }
    s.tol = kToleranceFactor * h / min_adjacent;
    s.increase = std::max(s.angles[1] - s.angles[0], s.angles[2] - s.angles[1]);
    s.violation = s.increase > s.tol;
    chains[k] = s;
  });
  std::vector<ChainSample> bad_chains;
  double max_increase = -kInfinity;
  for (auto& c : chains) {
    if (!c) continue;
    c->index = out.chains.size();
    max_increase = std::max(max_increase, c->increase);
    if (c->violation) bad_chains.push_back(*c);
    out.chains.push_back(*c);
  }
  mono.metrics["chains"] = static_cast<double>(out.chains.size());
  mono.metrics["violations"] = static_cast<double>(bad_chains.size());
  mono.metrics["max_increase"] = out.chains.empty() ? 0.0 : max_increase;
  detail::keep_worst(bad_chains, [](const auto& x, const auto& y) { return x.increase - x.tol > y.increase - y.tol; });
  for (const auto& s : bad_chains) {
    std::ostringstream where;
    where << "chain " << s.index << " from " << gs.describe_class(s.classes[0]);
    mono.fail({"MonotonicityViolation", where.str(), s.increase, s.tol,
               "comparison angle grows as the endpoints move outward"});
  }
  if (out.chains.empty()) {
    mono.warn({"NoChains", "sampling", 0.0, 0.0, "no geodesic pair long enough to test"});
  }
  return out;
}

/// Convexity of a point p: for geodesics [x, y] through p and witnesses z,
/// angle(z, x) + angle(z, y) at p must not exceed pi. Angles are estimated
/// by comparison angles at the scales s, s/2 and s/4, taking the maximum.
inline VerificationReport convexity_check(const GluedSpace& gs, std::uint32_t class_id,
                                          std::size_t n_samples, double kappa = 0.0,
                                          std::uint64_t seed = 1) {
  VerificationReport report;
  auto& check = report.add("convexity");
  const double h = gs.h();
  const auto tree = gs.class_paths(class_id, true);
  const std::string where = gs.describe_class(class_id);

  // Scale: well below the distance to the next singular point.
  double feature = kInfinity;
  for (auto c : detail::candidate_classes(gs)) {
    if (c == class_id || !std::isfinite(tree.dist[c])) continue;
    if (detail::singularity(glued_cone_angle(gs, c)) > 1e-12) feature = std::min(feature, tree.dist[c]);
  }
  double reach = 0.0;
  for (double d : tree.dist) {
    if (std::isfinite(d)) reach = std::max(reach, d);
  }
  const double s = std::min({100.0 * h, 0.45 * feature, 0.45 * reach});
  check.metrics["scale"] = s;
  check.metrics["h"] = h;
  // The smallest scale s / 4 must keep sides >= 10 h, as for quadruples.
  if (!(s >= 40.0 * h)) {
    check.warn({"ScaleTooSmall", where, s, 40.0 * h, "no room for three scales at this resolution"});
    return report;
  }

  std::vector<std::uint32_t> ring;
  for (std::uint32_t c = 0; c < gs.class_count(); ++c) {
    if (std::abs(tree.dist[c] - s) <= 0.5 * h) ring.push_back(c);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(ring.begin(), ring.end(), rng);
  if (ring.size() > std::max<std::size_t>(n_samples, 8)) ring.resize(std::max<std::size_t>(n_samples, 8));
  std::sort(ring.begin(), ring.end());
  check.metrics["ring_points"] = static_cast<double>(ring.size());

  const auto bounded = [&](std::uint32_t src, double radius) {
    const std::pair<std::uint32_t, double> seed_item{src, 0.0};
    return dijkstra(gs.class_graph(), std::span(&seed_item, 1), false,
                    [&](std::uint32_t, double d) { return d > radius; });
  };

  // Geodesics through p: ring pairs realizing d(x, y) = d(x, p) + d(p, y).
  const double slack = 4.0 * h;
  std::vector<std::tuple<double, std::size_t, std::size_t>> through;
  std::vector<ShortestPaths> from_ring(ring.size());
  parallel_for(ring.size(), 1, [&](std::size_t i) { from_ring[i] = bounded(ring[i], 2.5 * s); });
  for (std::size_t i = 0; i < ring.size(); ++i) {
    for (std::size_t j = i + 1; j < ring.size(); ++j) {
      const double defect = tree.dist[ring[i]] + tree.dist[ring[j]] - from_ring[i].dist[ring[j]];
      if (defect <= slack) through.emplace_back(defect, i, j);
    }
  }
  std::sort(through.begin(), through.end());
  if (through.size() > 6) through.resize(6);
  check.metrics["geodesics_through"] = static_cast<double>(through.size());
  if (through.empty()) {
    // Directions at an interior point of total angle < 2 pi are less than pi
    // apart, so no geodesic can pass through it.
    const auto cone = glued_cone_angle(gs, class_id);
    if (!cone.boundary_class && cone.components == 1 &&
        cone.theta_sum.radians < 2 * std::numbers::pi - kAngleBoundTolerance) {
      check.metrics["vacuous"] = 1.0;
      return report;
    }
    check.warn({"NoGeodesicThrough", where, 0.0, 0.0, "no sampled geodesic passes through the point"});
    return report;
  }

  std::vector<std::vector<std::uint32_t>> ring_paths(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) ring_paths[i] = detail::tree_path(tree, ring[i]);
  const std::array<double, 3> scales{s, s / 2, s / 4};
  double worst = -kInfinity;
  double worst_spread = 0.0;
  for (const auto& [defect, i, j] : through) {
    // max over scales of the comparison angle at p between ring[w] and the
    // geodesic end e (0 = x, 1 = y).
    std::vector<std::array<double, 2>> angle(ring.size(), {-kInfinity, -kInfinity});
    std::vector<std::array<double, 2>> low(ring.size(), {kInfinity, kInfinity});
    double tol = 0.0;
    for (double sigma : scales) {
      std::array<std::uint32_t, 2> ends{detail::point_at(tree, ring_paths[i], sigma),
                                        detail::point_at(tree, ring_paths[j], sigma)};
      std::vector<std::uint32_t> zs(ring.size());
      double farthest = 0.0;
      for (std::size_t w = 0; w < ring.size(); ++w) {
        zs[w] = detail::point_at(tree, ring_paths[w], sigma);
        farthest = std::max(farthest, tree.dist[zs[w]]);
      }
      for (int e = 0; e < 2; ++e) {
        // Distances up to this radius are final; d(end, z) <= d(end, p) + d(p, z).
        const auto sp = bounded(ends[e], tree.dist[ends[e]] + farthest + h);
        for (std::size_t w = 0; w < ring.size(); ++w) {
          if (w == i || w == j) continue;
          const auto z = zs[w];
          const double a = tree.dist[ends[e]], b = tree.dist[z];
          if (!(a > 0 && b > 0) || !std::isfinite(sp.dist[z])) continue;
          tol = std::max(tol, kToleranceFactor * h / std::min(a, b));
          const double t = model::comparison_angle(kappa, sp.dist[z], a, b);
          angle[w][e] = std::max(angle[w][e], t);
          low[w][e] = std::min(low[w][e], t);
        }
      }
    }
    for (std::size_t w = 0; w < ring.size(); ++w) {
      if (w == i || w == j || !std::isfinite(angle[w][0]) || !std::isfinite(angle[w][1])) continue;
      const double excess = angle[w][0] + angle[w][1] - std::numbers::pi;
      worst = std::max(worst, excess);
      worst_spread = std::max({worst_spread, angle[w][0] - low[w][0], angle[w][1] - low[w][1]});
      if (excess > tol) {
        std::ostringstream os;
        os << "witness class " << ring[w] << " against geodesic " << ring[i] << " - " << ring[j];
        check.fail({"ConvexityViolation", where, excess, tol, os.str()});
      }
    }
    check.metrics["tol"] = std::max(check.metrics["tol"], tol);
  }
  check.metrics["max_excess"] = std::isfinite(worst) ? worst : 0.0;
  check.metrics["max_scale_spread"] = worst_spread;
  if (check.items.size() > kReportedItems) check.items.resize(kReportedItems);
  if (worst_spread > check.metrics["tol"]) {
    check.warn({"ScaleDisagreement", where, worst_spread, check.metrics["tol"],
                "comparison angles disagree across scales beyond the tolerance"});
  }
  return report;
}

struct VerifySettings {
  double kappa = 0.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t convexity_classes = 8;
  std::size_t convexity_samples = 24;
};

/// Quadruple comparison, monotonicity, and convexity at the most singular
/// classes, combined into one report.
inline ToponogovResult verify_curvature(const GluedSpace& gs, const VerifySettings& cfg) {
  ToponogovResult out;
  try {
    out = verify_toponogov(gs, cfg.kappa, cfg.samples, cfg.seed, cfg.threads);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsufficientSamples) throw;
    out.report.add("toponogov").fail({"InsufficientSamples", "sampling", 0.0,
                                      static_cast<double>(cfg.samples) / 2, e.what()});
  }
  // Classes glued from three or more points first, then the most singular.
  std::vector<std::tuple<int, double, std::uint32_t>> ranked;
  for (auto c : detail::candidate_classes(gs)) {
    const auto t = glued_cone_angle(gs, c);
    const double s = detail::singularity(t);
    if (t.multiplicity >= 3) {
      ranked.emplace_back(0, -s, c);
    } else if (s > 1e-12) {
      ranked.emplace_back(1, -s, c);
    }
  }
  std::sort(ranked.begin(), ranked.end());
  auto& conv = out.report.add("convexity");
  std::size_t checked = 0, skipped = 0;
  double max_excess = 0.0;
  for (std::size_t begin = 0; begin < ranked.size() && checked < cfg.convexity_classes;) {
    const std::size_t end = std::min(ranked.size(), begin + cfg.convexity_classes - checked);
    std::vector<VerificationReport> parts(end - begin);
    parallel_for(parts.size(), cfg.threads, [&](std::size_t i) {
      parts[i] = convexity_check(gs, std::get<2>(ranked[begin + i]), cfg.convexity_samples, cfg.kappa,
                                 cfg.seed + begin + i);
    });
    for (const auto& part : parts) {
      const auto& c = part.checks.front();
      const bool small = std::any_of(c.items.begin(), c.items.end(),
                                     [](const auto& v) { return v.kind == "ScaleTooSmall"; });
      if (small) {
        ++skipped;
        continue;
      }
      ++checked;
      for (const auto& v : c.items) {
        if (v.kind == "ConvexityViolation") {
          conv.fail(v);
        } else {
          conv.warn(v);
        }
      }
      if (auto it = c.metrics.find("max_excess"); it != c.metrics.end()) max_excess = std::max(max_excess, it->second);
    }
    begin = end;
  }
  conv.metrics["classes_checked"] = static_cast<double>(checked);
  conv.metrics["classes_skipped_small_scale"] = static_cast<double>(skipped);
  conv.metrics["max_excess"] = max_excess;
  return out;
}

}  // namespace alexglue

#endif  // ALEXGLUE_CURVATURE_VERIFIER_HPP

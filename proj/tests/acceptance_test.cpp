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


// Acceptance suite: one line per criterion, exit status = number of failures.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alexglue/cli.hpp"
#include "alexglue/curvature_verifier.hpp"
#include "alexglue/example_corpus.hpp"
#include "alexglue/gluing_engine.hpp"
#include "alexglue/model_geometry.hpp"
#include "alexglue/space_file.hpp"
#include "test_oracles.hpp"
#include "test_support.hpp"

namespace {

using namespace alexglue;
using namespace alexglue::testing_support;
using std::numbers::pi;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  return r;
}

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / ("alexglue_acceptance_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }

  std::string export_entry(const std::string& name) const {
    return write(name + ".json", cli_run({"examples", "export", name}).out);
  }

 private:
  fs::path dir_;
};

const CheckResult* find_check(const Json& report, const std::string& name, CheckResult& storage) {
  for (const auto& c : report["checks"]) {
    if (c["name"] != name) continue;
    storage.name = name;
    const auto s = c["status"].get<std::string>();
    storage.status = s == "pass" ? Status::kPass : s == "warn" ? Status::kWarn : Status::kFail;
    for (const auto& [k, v] : c["metrics"].items()) storage.metrics[k] = v.is_number() ? v.get<double>() : NAN;
    for (const auto& item : c["items"]) {
      storage.items.push_back({item["kind"], item["location"], 0.0, 0.0, item["detail"]});
    }
    return &storage;
  }
  return nullptr;
}

// Random pairs inside the inscribed 72-gon of the three-sector disk.
std::vector<std::pair<Vec2, Vec2>> disk_pairs() {
  std::mt19937_64 rng(2026);
  std::vector<std::pair<Vec2, Vec2>> pairs;
  for (int i = 0; i < 200; ++i) pairs.push_back({random_in_disk(rng, 0.99), random_in_disk(rng, 0.99)});
  return pairs;
}

double worst_disk_error(double h) {
  const auto e = corpus::make("sector_disk_3", {{"stages", 1}});
  const auto gs = build(e, h);
  double worst = 0.0;
  for (const auto& [x, y] : disk_pairs()) {
    const double d = gs.distance(*point_at_xy(gs.pieces(), x), *point_at_xy(gs.pieces(), y));
    worst = std::max(worst, std::abs(d - norm(x - y)));
  }
  return worst;
}

Outcome criterion_1(const Workspace&) {
  const auto t0 = std::chrono::steady_clock::now();
  const double worst = worst_disk_error(0.01);
  const double t = seconds_since(t0);
  return {worst <= 0.05 && t <= 60.0,
          fmt("h=0.01, 200 pairs: max |d - d_disk| = %.3g (limit 0.05), %.1f s single-threaded (limit 60 s)", worst, t)};
}

Outcome criterion_2(const Workspace& ws) {
  const auto file = ws.export_entry("doubled_half_disk");
  const auto check = cli_run({"check", file});
  const auto t0 = std::chrono::steady_clock::now();
  const auto verify = cli_run({"--resolution", "0.01", "--kappa", "0", "--samples", "10000", "verify", file});
  const double t = seconds_since(t0);
  CheckResult topo_store;
  const auto* topo = find_check(Json::parse(verify.out), "toponogov", topo_store);
  if (!topo) return {false, "verify report has no toponogov check"};
  const double over = topo->metrics.at("max_excess_minus_tol");
  const bool ok = check.code == 0 && topo->status == Status::kPass && over <= 0.0 &&
                  topo->metrics.at("accepted") >= 10000 && t <= 300.0;
  return {ok, fmt("check exit %.0f; verify h=0.01, %.0f samples: max(excess - tol) = %.3g (<= 0), verify exit %.0f",
                  check.code, topo->metrics.at("accepted"), over, verify.code) +
                  fmt(", %.1f s (limit 300 s)", t)};
}

Outcome criterion_3(const Workspace& ws) {
  const auto file = ws.export_entry("pairwise_two_sectors");
  const auto check = cli_run({"check", file});
  CheckResult angles_store;
  const auto* angles = find_check(Json::parse(check.out), "angle_bound", angles_store);
  bool cites_apex = false;
  if (angles) {
    for (const auto& v : angles->items) {
      cites_apex |= v.location.find("X1 vertex 0") != std::string::npos &&
                    v.detail.find("boundary class with theta_sum = 4/3 pi > pi") != std::string::npos;
    }
  }
  // Sampled violations and their distance to the apex.
  const auto e = corpus::make("pairwise_two_sectors");
  const auto gs = build(e, 0.01);
  const auto res = verify_toponogov(gs, 0.0, 1000, 1);
  const auto apex = *gs.class_at(PiecePoint{0, 0, {1, 0, 0}});
  const auto tree = gs.class_paths(apex);
  std::size_t violations = 0, near = 0;
  double max_over = -kInfinity;
  for (const auto& s : res.samples) {
    if (!s.violation) continue;
    ++violations;
    max_over = std::max(max_over, s.excess - s.tol);
    double closest = kInfinity;
    for (auto c : s.classes) closest = std::min(closest, tree.dist[c]);
    near += closest <= 0.25;
  }
  const auto verify = cli_run({"--resolution", "0.01", "--samples", "1000", "verify", file});
  const bool ok = check.code == 1 && cites_apex && near >= 1 && verify.code == 1;
  return {ok, "check exit " + std::to_string(check.code) + ", apex cited with 4/3 pi > pi at a boundary class: " +
                  (cites_apex ? "yes" : "no") + "; " +
                  fmt("%.0f violating samples (%.0f within 0.25 of the apex), max(excess - tol) = %.3g; verify exit %.0f",
                      static_cast<double>(violations), static_cast<double>(near), max_over, verify.code)};
}

Outcome criterion_4(const Workspace& ws) {
  const auto one_point = cli_run({"check", ws.export_entry("two_squares_one_point")});
  CheckResult iso_store;
  const auto* iso = find_check(Json::parse(one_point.out), "isolated_gluing", iso_store);
  const auto comb = cli_run({"check", ws.export_entry("comb_countable_points")});
  CheckResult comb_store;
  const auto* comb_iso = find_check(Json::parse(comb.out), "path_isometry", comb_store);

  auto unequal = Json::parse(cli_run({"examples", "export", "square_doubling"}).out);
  unequal["gluing"]["arcs"][0]["a"]["length"] = 1.0;
  unequal["gluing"]["arcs"][0]["b"]["length"] = 2.0;
  const auto bad = cli_run({"check", ws.write("unequal.json", unequal.dump())});
  CheckResult bad_store;
  const auto* bad_iso = find_check(Json::parse(bad.out), "path_isometry", bad_store);
  bool violation = false;
  if (bad_iso) {
    for (const auto& v : bad_iso->items) violation |= v.kind == "PathIsometryViolation";
  }
  const bool ok = one_point.code == 1 && iso && iso->status == Status::kFail && comb.code == 1 && comb_iso &&
                  comb_iso->status == Status::kFail && bad.code == 1 && violation;
  return {ok, "two_squares_one_point: isolated_gluing " + std::string(iso ? to_string(iso->status) : "missing") +
                  ", exit " + std::to_string(one_point.code) + "; comb_countable_points: path_isometry " +
                  std::string(comb_iso ? to_string(comb_iso->status) : "missing") + ", exit " +
                  std::to_string(comb.code) + "; unequal arcs: PathIsometryViolation " +
                  (violation ? "reported" : "missing") + ", exit " + std::to_string(bad.code)};
}

Outcome criterion_5(const Workspace&) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int triangles = 0;
  while (triangles < 10000) {
    const auto [a, b, c] = oracle::random_planar_triangle(rng);
    const double cosine = (b * b + c * c - a * a) / (2 * b * c);
    worst = std::max(worst, std::abs(std::cos(model::comparison_angle(0.0, a, b, c)) - cosine));
    ++triangles;
  }
  int disagreements = 0, configs = 0;
  while (configs < 1000) {
    const Vec2 q{u(rng), u(rng)}, s{u(rng), u(rng)}, p{u(rng), u(rng)};
    const double t = 0.05 + 0.9 * u(rng);
    const Vec2 x = q + t * (s - q);
    const double dqs = norm(s - q), dqx = t * dqs;
    if (dqs < 1e-3 || norm(p - x) < 1e-3 || norm(p - q) < 1e-3 || norm(p - s) < 1e-3) continue;
    const auto [first, second] = model::alexandrov_lemma_predicates(0.0, norm(p - q), dqs, dqx, norm(p - x), norm(p - s));
    disagreements += first != second;
    ++configs;
  }
  return {worst <= 1e-12 && disagreements == 0,
          fmt("law of cosines on 10^4 triangles: max cosine error %.3g (limit 1e-12); Alexandrov lemma: %.0f disagreements "
              "in 10^3 configurations",
              worst, disagreements)};
}

Outcome criterion_6(const Workspace&) {
  const double h = 0.02;
  const double tol = 5 * h;
  std::size_t asym = 0, tri = 0, above = 0, identity = 0, spaces = 0;
  for (const auto& name : corpus::entry_names()) {
    const auto e = corpus::make(name);
    const auto gs = build(e, h);
    const auto plain = build_quotient(e.pieces, GluingSpec{}, h);
    std::mt19937_64 rng(6);
    std::vector<PiecePoint> pts;
    for (std::size_t i = 0; i < gs.pieces().size(); ++i) {
      const auto& P = gs.pieces()[i];
      std::exponential_distribution<double> ex(1.0);
      for (int k = 0; k < 10; ++k) {
        const double a = ex(rng), b = ex(rng), c = ex(rng);
        const int t = static_cast<int>(uniform_index(rng, P.triangles().size()));
        pts.push_back(PiecePoint{i, t, {a / (a + b + c), b / (a + b + c), c / (a + b + c)}});
      }
    }
    const std::size_t n = pts.size();
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i * n + j] = gs.distance(pts[i], pts[j]);
        above += d[i * n + j] > gs.piece_distance(pts[i], pts[j]);
        identity += plain.distance(pts[i], pts[j]) != plain.piece_distance(pts[i], pts[j]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        asym += d[i * n + j] != d[j * n + i];
        for (std::size_t k = 0; k < n; ++k) {
          if (std::isinf(d[i * n + j]) || std::isinf(d[j * n + k])) continue;
          tri += d[i * n + k] > d[i * n + j] + d[j * n + k] + 2 * tol;
        }
      }
    }
    ++spaces;
  }
  return {asym == 0 && tri == 0 && above == 0 && identity == 0,
          fmt("%.0f corpus spaces at h=0.02: %.0f asymmetric pairs, %.0f triangle violations beyond 2 tol, ", spaces, asym,
              tri) +
              fmt("%.0f pairs with d_R > d_X, %.0f empty-spec mismatches", above, identity)};
}

Outcome criterion_7(const Workspace&) {
  const auto disk = build(corpus::make("sector_disk_3"), 0.02);
  const auto O = glued_cone_angle(disk, *disk.class_at(PiecePoint{0, 0, {1, 0, 0}}));
  const bool o_ok = O.theta_sum.exact && *O.theta_sum.exact == PiMultiple{2, 1} && O.multiplicity == 3;
  const auto sq = build(corpus::make("square_doubling"), 0.02);
  bool corners_ok = true;
  std::string corners;
  for (int v = 0; v < 4; ++v) {
    PiecePoint p = sq.pieces()[0].vertex_point(v);
    const auto t = glued_cone_angle(sq, *sq.class_at(p));
    corners_ok &= t.theta_sum.exact && *t.theta_sum.exact == PiMultiple{1, 1};
    corners += (v ? ", " : "") + (t.theta_sum.exact ? t.theta_sum.exact->str() : std::string("inexact"));
  }
  return {o_ok && corners_ok, "theta_sum(O) = " + (O.theta_sum.exact ? O.theta_sum.exact->str() : "inexact") +
                                  " pi over " + std::to_string(O.multiplicity) + " preimages; square corners: " +
                                  corners + " (units of pi)"};
}

Outcome criterion_8(const Workspace&) {
  const auto gs = build(corpus::make("square_doubling"), 0.02);
  const auto& S = gs.pieces()[0];
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  double worst = 0.0;
  std::size_t not_projecting = 0, switches = 0;
  auto interior = [&](std::size_t piece) { return *point_at_xy(gs.pieces(), {u(rng), u(rng)}, piece); };
  auto rim = [&](std::size_t piece, double offset) {
    PiecePoint p = S.boundary_point(0, offset);
    p.piece = piece;
    return p;
  };
  for (int k = 0; k < 100; ++k) {
    std::vector<PathSegment> path;
    std::size_t piece = k % 2;
    PiecePoint cur = interior(piece);
    const int crossings = 1 + static_cast<int>(uniform_index(rng, 4));
    for (int c = 0; c < crossings; ++c) {
      const double off = 4.0 * unit_uniform(rng);
      path.push_back({cur, rim(piece, off)});
      if (k % 3 == 0) {
        // Run along the seam for a while before crossing.
        const double run_to = std::floor(off) + std::min(0.999, off - std::floor(off) + 0.3 * unit_uniform(rng));
        path.push_back({rim(piece, off), rim(piece, run_to)});
        piece = 1 - piece;
        cur = rim(piece, run_to);
      } else {
        piece = 1 - piece;
        cur = rim(piece, off);
      }
      const auto next = interior(piece);
      path.push_back({cur, next});
      cur = next;
    }
    const auto lift = lift_path(gs, path, path.front().from);
    double input = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      input += *gs.segment_length(path[i]);
      worst = std::max(worst, std::abs(lift.prefix_lengths[i] - input));
      not_projecting += !gs.glued(lift.segments[i].from, path[i].from) || !gs.glued(lift.segments[i].to, path[i].to);
    }
    switches += lift.sheet_switches.size();
  }
  return {worst <= 1e-9 && not_projecting == 0,
          fmt("100 polylines (%.0f sheet switches): max prefix-length error %.3g (limit 1e-9), %.0f segments not "
              "projecting onto the input",
              static_cast<double>(switches), worst, static_cast<double>(not_projecting))};
}

Outcome criterion_9(const Workspace&) {
  const double coarse = worst_disk_error(0.01);
  const double fine = worst_disk_error(0.005);
  const double ratio = coarse / fine;
  return {ratio >= 1.5, fmt("worst error %.3g at h=0.01, %.3g at h=0.005: factor %.2f (limit 1.5)", coarse, fine, ratio)};
}

Outcome criterion_10(const Workspace&) {
  const auto y = build(corpus::make("sector_disk_3", {{"stages", 1}}), 0.02);
  const auto ty = classify_points(y, 0.1);
  std::size_t apex_ok = 0, g2_ok = 0, g2_total = 0, wrong = 0;
  for (const auto& row : ty.rows) {
    const auto loc = y.node_location(row.node);
    const double len = y.pieces()[loc.piece].cycles()[0].length;
    const bool apex = loc.offset < 1e-9;
    const bool radius = loc.offset <= 1.0 + 1e-9 || loc.offset >= len - 1.0 - 1e-9;
    if (apex) {
      apex_ok += row.multiplicity == 3;
    } else if (radius) {
      ++g2_total;
      g2_ok += row.label == "G2";
    } else {
      wrong += row.label != "F";
    }
  }
  const auto z = build(corpus::make("sector_disk_3"), 0.02);
  const auto tz = classify_points(z, 0.1);
  std::vector<Vec2> fixed;
  for (const auto& row : tz.rows) {
    if (row.multiplicity == 1) fixed.push_back(*z.node_xy(row.node));
  }
  const Vec2 P = std::cos(pi / 72) * polar(1.0, 167.5);
  bool pq = fixed.size() == 2;
  for (const auto& x : fixed) pq &= std::min(norm(x - P), norm(x + P)) < 1e-12;
  const bool ok = apex_ok == 3 && g2_ok == g2_total && wrong == 0 && pq;
  return {ok, fmt("Y: %.0f/3 apex samples with multiplicity 3, %.0f/%.0f radius samples in G2, ", apex_ok, g2_ok,
                  g2_total) +
                  fmt("%.0f rim samples mislabeled; Z: %.0f samples in F_Y", wrong, fixed.size()) +
                  (pq ? " = {P, Q}" : " (expected {P, Q})")};
}

}  // namespace

int main() {
  Workspace ws;
  const std::vector<std::pair<const char*, std::function<Outcome(const Workspace&)>>> criteria{
      {"three-sector reconstruction", criterion_1},  {"doubled half disk", criterion_2},
      {"pairwise negative control", criterion_3},    {"counterexample detection", criterion_4},
      {"model geometry oracles", criterion_5},       {"pseudometric properties", criterion_6},
      {"tangent cone perimeter", criterion_7},       {"lifting", criterion_8},
      {"refinement convergence", criterion_9},       {"classification fixtures", criterion_10}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second(ws);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " acceptance criteria met" << std::endl;
  return failures;
}

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

#include "alexglue/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alexglue/curvature_verifier.hpp"
#include "alexglue/example_corpus.hpp"
#include "alexglue/gluing_engine.hpp"
#include "alexglue/model_geometry.hpp"
#include "alexglue/render.hpp"
#include "alexglue/space_file.hpp"

namespace alexglue::cli {
namespace {

struct Options {
  std::optional<double> resolution;
  std::optional<double> kappa;
  std::optional<double> eps;
  std::size_t samples = 1000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string format = "json";
  std::string out_path;
};

struct Input {
  SpaceFile file;
  std::string digest;
};

Input load(const std::string& path) {
  const std::string text = read_text(path);
  Input in;
  in.digest = "fnv1a64:" + fnv1a_digest(text);
  in.file = parse_space(parse_json_text(text));
  return in;
}

double kappa_of(const Options& o, const Input& in) { return o.kappa.value_or(in.file.settings.kappa); }
double eps_of(const Options& o, const Input& in) { return o.eps.value_or(in.file.settings.eps); }
std::uint64_t seed_of(const Options& o, const Input& in) { return o.seed.value_or(in.file.settings.seed); }

GluedSpace build(const Input& in, const Options& o) {
  GluingSettings s;
  if (o.resolution) {
    s.h = *o.resolution;
  } else if (in.file.settings.h) {
    s.h = *in.file.settings.h;
  }
  s.multiplicity_cap = in.file.settings.n0_cap;
  return build_quotient(in.file.pieces, in.file.spec, s);
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(std::initializer_list<std::string> fields) {
  std::string line;
  for (const auto& f : fields) {
    if (!line.empty() || &f != fields.begin()) line += ',';
    line += csv_field(f);
  }
  return line + "\n";
}

OrderedJson envelope(const std::string& command, const Input& in, const Options& o, double h) {
  OrderedJson j;
  j["tool"] = {{"name", kToolName}, {"version", kVersion}};
  j["command"] = command;
  j["input"] = {{"digest", in.digest},
                {"pieces", in.file.pieces.size()},
                {"arc_identifications", in.file.spec.arcs.size()},
                {"point_identifications", in.file.spec.points.size()}};
  OrderedJson s;
  s["h"] = number_json(h);
  s["kappa"] = kappa_of(o, in);
  s["eps"] = eps_of(o, in);
  s["c_X"] = in.file.settings.c_X;
  s["n0_cap"] = in.file.settings.n0_cap;
  s["seed"] = seed_of(o, in);
  s["samples"] = o.samples;
  j["settings"] = s;
  j["tolerances"] = {{"location", kLocationTolerance},
                     {"angle_bound", kAngleBoundTolerance},
                     {"cosine_clamp", model::kCosineClampTolerance},
                     {"toponogov_tol_factor", kToleranceFactor}};
  return j;
}

void attach(OrderedJson& j, const VerificationReport& r) {
  j["status"] = std::string(to_string(r.status()));
  j["checks"] = to_json(r);
}

std::string report_csv(const VerificationReport& r) {
  std::string s = csv_row({"check", "status", "kind", "location", "measured", "limit", "detail"});
  for (const auto& c : r.checks) {
    const std::string st(to_string(c.status));
    if (c.items.empty()) s += csv_row({c.name, st, "", "", "", "", ""});
    for (const auto& v : c.items) {
      s += csv_row({c.name, st, v.kind, v.location, num(v.measured), num(v.limit), v.detail});
    }
  }
  return s;
}

int verdict(const VerificationReport& r) { return r.passed() ? kExitPass : kExitFail; }

// Points on the command line:
//   ID/vN             vertex N of piece ID
//   ID/tT/b0,b1,b2    barycentric point of triangle T
//   ID/cC/s           boundary cycle C at arc length s
PiecePoint parse_point(const std::vector<FlatPiece>& pieces, const std::string& text) {
  auto bad = [&](const std::string& why) -> Error {
    return Error(ErrorCode::kInvalidPoint, "'" + text + "': " + why);
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, '/');) parts.push_back(tok);
  if (parts.size() < 2) throw bad("expected ID/vN, ID/tT/b0,b1,b2 or ID/cC/s");
  std::size_t piece = pieces.size();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].id() == parts[0]) piece = i;
  }
  if (piece == pieces.size()) throw bad("unknown piece");
  const auto& P = pieces[piece];
  auto to_num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw bad("malformed number '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw bad("malformed number '" + s + "'");
    return v;
  };
  auto to_index = [&](const std::string& s, std::size_t n) {
    const double v = to_num(s);
    if (v != std::floor(v) || v < 0 || v >= static_cast<double>(n)) throw bad("index out of range");
    return static_cast<int>(v);
  };
  const char kind = parts[1].empty() ? '?' : parts[1][0];
  const std::string rest = parts[1].substr(std::min<std::size_t>(1, parts[1].size()));
  PiecePoint p;
  if (kind == 'v' && parts.size() == 2) {
    p = P.vertex_point(to_index(rest, P.vertices().size()));
  } else if (kind == 't' && parts.size() == 3) {
    p.triangle = to_index(rest, P.triangles().size());
    std::vector<std::string> bs;
    std::stringstream bss(parts[2]);
    for (std::string tok; std::getline(bss, tok, ',');) bs.push_back(tok);
    if (bs.size() != 3) throw bad("expected three barycentric coordinates");
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      p.barycentric[i] = to_num(bs[i]);
      if (p.barycentric[i] < -kBarycentricTolerance) throw bad("negative barycentric coordinate");
      sum += p.barycentric[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) throw bad("barycentric coordinates must sum to 1");
  } else if (kind == 'c' && parts.size() == 3) {
    const int c = to_index(rest, P.cycles().size());
    p = P.boundary_point(c, to_num(parts[2]));
  } else {
    throw bad("expected ID/vN, ID/tT/b0,b1,b2 or ID/cC/s");
  }
  p.piece = piece;
  return p;
}

std::string point_text(const std::vector<FlatPiece>& pieces, const PiecePoint& p) {
  return pieces[p.piece].id() + "/t" + std::to_string(p.triangle) + "/" + num(p.barycentric[0]) + "," +
         num(p.barycentric[1]) + "," + num(p.barycentric[2]);
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  void emit(const std::string& text) const {
    if (o_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(o_.out_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kSchemaError, "cannot write '" + o_.out_path + "'");
    f << text;
  }

  void emit(const OrderedJson& j) const { emit(j.dump(2) + "\n"); }

  bool csv() const { return o_.format == "csv"; }

  int validate(const std::string& path) const {
    const auto in = load(path);
    VerificationReport r;
    const double kappa = kappa_of(o_, in);
    for (const auto& P : in.file.pieces) r.append(validate_piece(P, kappa, in.file.settings.c_X));
    auto& spec = r.add("gluing_spec");
    double h = kInfinity;
    if (r.passed()) {
      try {
        const auto gs = build(in, o_);
        h = gs.h();
        spec.metrics["classes"] = static_cast<double>(gs.class_count());
        spec.metrics["sample_nodes"] = static_cast<double>(gs.node_count());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kSpecReferenceError && e.code() != ErrorCode::kMultiplicityExceeded) throw;
        spec.fail({std::string(to_string(e.code())), "gluing", 0.0, 0.0, e.what()});
      }
    } else {
      spec.warn({"Skipped", "gluing", 0.0, 0.0, "pieces failed validation"});
    }
    if (csv()) {
      emit(report_csv(r));
    } else {
      auto j = envelope("validate", in, o_, h);
      attach(j, r);
      emit(j);
    }
    return verdict(r);
  }

  int dist(const std::string& path, const std::string& ps, const std::string& qs) const {
    const auto in = load(path);
    const auto p = parse_point(in.file.pieces, ps);
    const auto q = parse_point(in.file.pieces, qs);
    const auto gs = build(in, o_);
    const double d = gs.distance(p, q);
    const double dx = gs.piece_distance(p, q);
    if (csv()) {
      emit(csv_row({"p", "q", "distance", "piece_distance"}) + csv_row({ps, qs, num(d), num(dx)}));
      return kExitPass;
    }
    auto j = envelope("dist", in, o_, gs.h());
    j["status"] = "pass";
    j["result"] = {{"p", ps},
                   {"q", qs},
                   {"connected", std::isfinite(d)},
                   {"distance", number_json(d)},
                   {"piece_distance", number_json(dx)}};
    emit(j);
    return kExitPass;
  }

  int check(const std::string& path) const {
    const auto in = load(path);
    const auto gs = build(in, o_);
    const auto r = check_angle_criterion(gs);
    if (csv()) {
      emit(report_csv(r));
    } else {
      auto j = envelope("check", in, o_, gs.h());
      attach(j, r);
      emit(j);
    }
    return verdict(r);
  }

  int classify(const std::string& path) const {
    const auto in = load(path);
    const auto gs = build(in, o_);
    const auto table = classify_points(gs, eps_of(o_, in));
    if (csv()) {
      std::string s = csv_row({"node", "class", "piece", "cycle", "offset", "multiplicity", "label", "cone_angle",
                               "regular", "f_interior", "g2_eps", "f_eps"});
      for (const auto& row : table.rows) {
        const auto& nd = gs.node(row.node);
        s += csv_row({std::to_string(row.node), std::to_string(row.class_id), gs.pieces()[nd.piece].id(),
                      std::to_string(nd.cycle), num(nd.offset), std::to_string(row.multiplicity), row.label,
                      num(row.cone_angle), row.regular ? "1" : "0", row.in_f_interior ? "1" : "0",
                      row.in_g2_eps ? "1" : "0", row.in_f_eps ? "1" : "0"});
      }
      emit(s);
      return kExitPass;
    }
    std::map<std::uint32_t, std::vector<const ClassificationRow*>> by_class;
    for (const auto& row : table.rows) by_class[row.class_id].push_back(&row);
    OrderedJson classes = OrderedJson::array();
    for (const auto& [c, rows] : by_class) {
      OrderedJson members = OrderedJson::array();
      for (const auto* row : rows) members.push_back(gs.describe_node(row->node));
      classes.push_back({{"class", c},
                         {"label", rows.front()->label},
                         {"multiplicity", rows.front()->multiplicity},
                         {"regular", std::all_of(rows.begin(), rows.end(), [](auto* r) { return r->regular; })},
                         {"members", members}});
    }
    auto j = envelope("classify", in, o_, gs.h());
    j["status"] = "pass";
    OrderedJson counts = OrderedJson::object();
    for (const auto& [k, v] : table.counts) counts[k] = v;
    j["result"] = {{"eps", table.eps}, {"counts", counts}, {"classes", classes}};
    emit(j);
    return kExitPass;
  }

  ToponogovResult run_verify(const Input& in, const GluedSpace& gs) const {
    VerifySettings cfg;
    cfg.kappa = kappa_of(o_, in);
    cfg.samples = o_.samples;
    cfg.seed = seed_of(o_, in);
    cfg.threads = resolve_thread_count(o_.threads);
    return verify_curvature(gs, cfg);
  }

  int verify(const std::string& path) const {
    const auto in = load(path);
    const auto gs = build(in, o_);
    const auto res = run_verify(in, gs);
    if (csv()) {
      std::string s = csv_row({"index", "p", "a", "b", "c", "pa", "pb", "pc", "ab", "bc", "ca", "angle_sum",
                               "excess", "tol", "violation"});
      for (const auto& q : res.samples) {
        s += csv_row({std::to_string(q.index), std::to_string(q.classes[0]), std::to_string(q.classes[1]),
                      std::to_string(q.classes[2]), std::to_string(q.classes[3]), num(q.sides[0]),
                      num(q.sides[1]), num(q.sides[2]), num(q.sides[3]), num(q.sides[4]), num(q.sides[5]),
                      num(q.angle_sum), num(q.excess), num(q.tol), q.violation ? "1" : "0"});
      }
      emit(s);
    } else {
      auto j = envelope("verify", in, o_, gs.h());
      attach(j, res.report);
      j["result"] = {{"accepted_samples", res.samples.size()}, {"chains", res.chains.size()}};
      emit(j);
    }
    return verdict(res.report);
  }

  int lift(const std::string& path, const std::string& path_file) const {
    const auto in = load(path);
    const Json pj = parse_json_text(read_text(path_file));
    detail::allow_fields(pj, "$", {"start", "segments"});
    const auto& segs = detail::require(pj, "$", "segments");
    if (!segs.is_array()) detail::schema_fail("$.segments", "expected an array");
    std::vector<PathSegment> segments;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& s = segs[i];
      if (!s.is_array() || s.size() != 2 || !s[0].is_string() || !s[1].is_string()) {
        detail::schema_fail("$.segments[" + std::to_string(i) + "]", "expected [\"from\", \"to\"]");
      }
      segments.push_back({parse_point(in.file.pieces, s[0].get<std::string>()),
                          parse_point(in.file.pieces, s[1].get<std::string>())});
    }
    if (segments.empty()) detail::schema_fail("$.segments", "expected at least one segment");
    PiecePoint start = segments.front().from;
    if (auto it = pj.find("start"); it != pj.end()) {
      if (!it->is_string()) detail::schema_fail("$.start", "expected a point string");
      start = parse_point(in.file.pieces, it->get<std::string>());
    }
    const auto gs = build(in, o_);
    VerificationReport r;
    auto& check = r.add("lift");
    OrderedJson result;
    double input_length = 0.0;
    for (const auto& s : segments) {
      const auto len = gs.segment_length(s);
      if (!len) throw Error(ErrorCode::kInvalidPath, "segment is not a straight segment of one piece");
      input_length += *len;
    }
    result["input_length"] = input_length;
    try {
      const auto lifted = lift_path(gs, segments, start);
      OrderedJson out_segs = OrderedJson::array();
      for (const auto& s : lifted.segments) {
        out_segs.push_back({point_text(gs.pieces(), s.from), point_text(gs.pieces(), s.to)});
      }
      result["segments"] = out_segs;
      result["prefix_lengths"] = lifted.prefix_lengths;
      result["sheet_switches"] = lifted.sheet_switches;
      result["lifted_length"] = lifted.length();
      check.metrics["length_error"] = std::abs(lifted.length() - input_length);
    } catch (const LiftAmbiguousError& e) {
      for (const auto& c : e.continuations()) {
        check.fail({"LiftAmbiguous", "segment " + std::to_string(e.segment()), 0.0, 0.0,
                    "continuation " + point_text(gs.pieces(), c.from) + " -> " + point_text(gs.pieces(), c.to)});
      }
    }
    if (csv()) {
      emit(report_csv(r));
    } else {
      auto j = envelope("lift", in, o_, gs.h());
      attach(j, r);
      j["result"] = result;
      emit(j);
    }
    return verdict(r);
  }

  int examples_list() const {
    if (csv()) {
      std::string s = csv_row({"name", "description"});
      for (const auto& name : corpus::entry_names()) s += csv_row({name, corpus::make(name).description});
      emit(s);
      return kExitPass;
    }
    OrderedJson list = OrderedJson::array();
    for (const auto& name : corpus::entry_names()) {
      const auto e = corpus::make(name);
      OrderedJson expected;
      expected["angle_criterion"] = std::string(to_string(e.expected.angle_criterion));
      expected["isolated_gluing"] = e.expected.isolated_gluing;
      expected["path_isometry"] = std::string(to_string(e.expected.path_isometry));
      expected["toponogov"] = e.expected.toponogov ? OrderedJson(std::string(to_string(*e.expected.toponogov)))
                                                   : OrderedJson(nullptr);
      expected["fail_reasons"] = e.expected.fail_reasons;
      list.push_back({{"name", name}, {"description", e.description}, {"expected", expected}});
    }
    emit(OrderedJson{{"entries", list}});
    return kExitPass;
  }

  int examples_export(const std::string& name, const std::vector<std::string>& params) const {
    corpus::Params p;
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::kSchemaError, "parameter '" + kv + "' is not key=value");
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(kv.substr(eq + 1), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != kv.size() - eq - 1) {
        throw Error(ErrorCode::kSchemaError, "parameter '" + kv + "' has a non-numeric value");
      }
      p[kv.substr(0, eq)] = v;
    }
    auto e = corpus::make(name, p);
    SpaceFile f;
    f.pieces = std::move(e.pieces);
    f.spec = std::move(e.spec);
    if (o_.resolution) f.settings.h = *o_.resolution;
    if (o_.kappa) f.settings.kappa = *o_.kappa;
    if (o_.eps) f.settings.eps = *o_.eps;
    if (o_.seed) f.settings.seed = *o_.seed;
    emit(to_json(f));
    return kExitPass;
  }

  int render(const std::string& path) const {
    const auto in = load(path);
    const auto gs = build(in, o_);
    std::optional<ToponogovResult> res;
    if (o_.samples > 0) res = run_verify(in, gs);
    emit(render_svg(gs, res ? &*res : nullptr));
    return kExitPass;
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Glue flat surfaces along their boundaries and check curvature bounds", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--resolution", o.resolution, "sampling resolution h (default: min edge / 20)")
      ->check(CLI::PositiveNumber);
  app.add_option("--kappa", o.kappa, "curvature lower bound for comparison");
  app.add_option("--eps", o.eps, "regularity threshold for classify");
  app.add_option("--samples", o.samples, "number of sampled quadruples");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--threads", o.threads, "worker threads (0: all; ALEXGLUE_THREADS overrides)");
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out_path, "write the report to PATH instead of stdout");

  std::string file, p, q, path_file, name;
  std::vector<std::string> params;

  auto* validate = app.add_subcommand("validate", "validate pieces and gluing references");
  validate->add_option("file", file, "space file (- for stdin)")->required();
  auto* dist = app.add_subcommand("dist", "quotient distance between two points");
  dist->add_option("file", file)->required();
  dist->add_option("p", p, "point: ID/vN, ID/tT/b0,b1,b2 or ID/cC/s")->required();
  dist->add_option("q", q)->required();
  auto* check = app.add_subcommand("check", "angle criterion, path isometry and isolated gluing");
  check->add_option("file", file)->required();
  auto* classify = app.add_subcommand("classify", "boundary point classification by multiplicity");
  classify->add_option("file", file)->required();
  auto* verify = app.add_subcommand("verify", "sampled comparison, monotonicity and convexity");
  verify->add_option("file", file)->required();
  auto* lift = app.add_subcommand("lift", "lift a path of the glued space to the pieces");
  lift->add_option("file", file)->required();
  lift->add_option("path", path_file, "JSON {\"start\": point, \"segments\": [[from, to], ...]}")->required();
  auto* examples = app.add_subcommand("examples", "built-in example spaces");
  examples->require_subcommand(1);
  auto* list = examples->add_subcommand("list", "list example names");
  auto* exp = examples->add_subcommand("export", "write an example as a space file");
  exp->add_option("name", name)->required();
  exp->add_option("--param", params, "mesh parameter key=value (segments, rings, stages, N)");
  auto* render = app.add_subcommand("render", "SVG of pieces, seams, classes and sampled geodesics");
  render->add_option("file", file)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    Runner r(o, out);
    if (*validate) return r.validate(file);
    if (*dist) return r.dist(file, p, q);
    if (*check) return r.check(file);
    if (*classify) return r.classify(file);
    if (*verify) return r.verify(file);
    if (*lift) return r.lift(file, path_file);
    if (*list) return r.examples_list();
    if (*exp) return r.examples_export(name, params);
    if (*render) return r.render(file);
  } catch (const Error& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << kToolName << ": internal error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace alexglue::cli

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

// JSON input format for glued spaces and JSON serialization of reports.
//
//   {
//     "schema_version": 1,
//     "pieces": [{"id": "X1",
//                 "vertices": [{"xy": [0, 0], "angle_pi": "2/3"}, ...],
//                 "triangles": [{"v": [0, 1, 2], "lengths": [1, 1, 1]}, ...]}],
//     "gluing": {
//       "arcs": [{"a": {"piece": "X1", "cycle": 0, "offset": 0, "length": 1,
//                       "orientation": "forward"},
//                 "b": {...}, "reversed": false}],
//       "points": [{"a": {"piece": "X1", "cycle": 0, "offset": 0}, "b": {...}}]},
//     "settings": {"h": 0.01, "kappa": 0, "eps": 0.1, "c_X": 0.001,
//                  "n0_cap": 16, "seed": 1}
//   }
//
// Triangle lengths may be omitted when all three vertices carry "xy".
// Unknown fields are rejected.

#ifndef ALEXGLUE_SPACE_FILE_HPP
#define ALEXGLUE_SPACE_FILE_HPP

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alexglue/errors.hpp"
#include "alexglue/gluing_engine.hpp"
#include "alexglue/report.hpp"
#include "alexglue/surface_model.hpp"
#include "json.hpp"

namespace alexglue {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct SpaceSettings {
  std::optional<double> h;
  double kappa = 0.0;
  double eps = 0.1;
  double c_X = 1e-3;
  std::size_t n0_cap = 16;
  std::uint64_t seed = 1;
};

struct SpaceFile {
  std::vector<FlatPiece> pieces;
  GluingSpec spec;
  SpaceSettings settings;
};

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kSchemaError, path + ": " + msg);
}

inline void allow_fields(const Json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* key : keys) ok = ok || k == key;
    if (!ok) schema_fail(path, "unknown field '" + k + "'");
  }
}

inline const Json& require(const Json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path, std::string("missing field '") + key + "'");
  return *it;
}

inline double number(const Json& v, const std::string& path) {
  if (!v.is_number()) schema_fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema_fail(path, "expected a finite number");
  return x;
}

inline std::int64_t integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::size_t piece_index(const std::map<std::string, std::size_t>& ids, const Json& v,
                               const std::string& path) {
  if (!v.is_string()) schema_fail(path, "expected a piece id string");
  const auto it = ids.find(v.get<std::string>());
  if (it == ids.end()) {
    throw Error(ErrorCode::kSpecReferenceError, path + ": unknown piece '" + v.get<std::string>() + "'");
  }
  return it->second;
}

inline FlatPiece parse_piece(const Json& j, const std::string& path) {
  allow_fields(j, path, {"id", "vertices", "triangles"});
  const auto& id = require(j, path, "id");
  if (!id.is_string() || id.get<std::string>().empty()) schema_fail(path + ".id", "expected a non-empty string");
  const auto& vs = require(j, path, "vertices");
  if (!vs.is_array() || vs.empty()) schema_fail(path + ".vertices", "expected a non-empty array");
  std::vector<Vertex> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string vp = path + ".vertices[" + std::to_string(i) + "]";
    allow_fields(vs[i], vp, {"xy", "angle_pi"});
    Vertex v;
    if (auto it = vs[i].find("xy"); it != vs[i].end()) {
      if (!it->is_array() || it->size() != 2) schema_fail(vp + ".xy", "expected [x, y]");
      v.xy = Vec2{number((*it)[0], vp + ".xy[0]"), number((*it)[1], vp + ".xy[1]")};
    }
    if (auto it = vs[i].find("angle_pi"); it != vs[i].end()) {
      if (it->is_string()) {
        v.angle_pi = PiMultiple::parse(it->get<std::string>());
      } else if (it->is_number_integer()) {
        v.angle_pi = PiMultiple::make(it->get<std::int64_t>(), 1);
      } else {
        schema_fail(vp + ".angle_pi", "expected a rational string such as \"2/3\"");
      }
      if (v.angle_pi->num <= 0) schema_fail(vp + ".angle_pi", "angle must be positive");
    }
    vertices.push_back(v);
  }
  const auto& ts = require(j, path, "triangles");
  if (!ts.is_array() || ts.empty()) schema_fail(path + ".triangles", "expected a non-empty array");
  std::vector<Triangle> triangles;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string tp = path + ".triangles[" + std::to_string(i) + "]";
    allow_fields(ts[i], tp, {"v", "lengths"});
    const auto& v = require(ts[i], tp, "v");
    if (!v.is_array() || v.size() != 3) schema_fail(tp + ".v", "expected three vertex indices");
    Triangle t;
    for (int k = 0; k < 3; ++k) {
      const auto idx = integer(v[k], tp + ".v");
      if (idx < 0 || idx >= static_cast<std::int64_t>(vertices.size())) {
        schema_fail(tp + ".v", "vertex index out of range");
      }
      t.v[k] = static_cast<int>(idx);
    }
    if (auto it = ts[i].find("lengths"); it != ts[i].end()) {
      if (!it->is_array() || it->size() != 3) schema_fail(tp + ".lengths", "expected three lengths");
      for (int k = 0; k < 3; ++k) t.lengths[k] = number((*it)[k], tp + ".lengths");
    } else {
      for (int k = 0; k < 3; ++k) {
        const auto& a = vertices[t.v[k]].xy;
        const auto& b = vertices[t.v[(k + 1) % 3]].xy;
        if (!a || !b) schema_fail(tp, "lengths are required when vertices have no xy");
        t.lengths[k] = norm(*b - *a);
      }
    }
    triangles.push_back(t);
  }
  return FlatPiece(id.get<std::string>(), std::move(vertices), std::move(triangles));
}

inline BoundaryArc parse_arc(const Json& j, const std::string& path,
                             const std::map<std::string, std::size_t>& ids) {
  allow_fields(j, path, {"piece", "cycle", "offset", "length", "orientation"});
  BoundaryArc arc;
  arc.piece = piece_index(ids, require(j, path, "piece"), path + ".piece");
  arc.cycle = static_cast<int>(integer(require(j, path, "cycle"), path + ".cycle"));
  arc.start = number(require(j, path, "offset"), path + ".offset");
  arc.length = number(require(j, path, "length"), path + ".length");
  arc.forward = true;
  if (auto it = j.find("orientation"); it != j.end()) {
    if (*it == "forward") {
      arc.forward = true;
    } else if (*it == "backward") {
      arc.forward = false;
    } else {
      schema_fail(path + ".orientation", "expected \"forward\" or \"backward\"");
    }
  }
  return arc;
}

inline BoundaryLocation parse_location(const Json& j, const std::string& path,
                                       const std::map<std::string, std::size_t>& ids) {
  allow_fields(j, path, {"piece", "cycle", "offset"});
  BoundaryLocation loc;
  loc.piece = piece_index(ids, require(j, path, "piece"), path + ".piece");
  loc.cycle = static_cast<int>(integer(require(j, path, "cycle"), path + ".cycle"));
  loc.offset = number(require(j, path, "offset"), path + ".offset");
  return loc;
}

}  // namespace detail

inline SpaceFile parse_space(const Json& j) {
  using namespace detail;
  allow_fields(j, "$", {"schema_version", "pieces", "gluing", "settings"});
  const auto version = integer(require(j, "$", "schema_version"), "$.schema_version");
  if (version != kSchemaVersion) schema_fail("$.schema_version", "unsupported version " + std::to_string(version));
  SpaceFile out;
  const auto& ps = require(j, "$", "pieces");
  if (!ps.is_array() || ps.empty()) schema_fail("$.pieces", "expected a non-empty array");
  std::map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out.pieces.push_back(parse_piece(ps[i], "$.pieces[" + std::to_string(i) + "]"));
    if (!ids.emplace(out.pieces.back().id(), i).second) {
      schema_fail("$.pieces[" + std::to_string(i) + "].id", "duplicate piece id");
    }
  }
  if (auto g = j.find("gluing"); g != j.end()) {
    allow_fields(*g, "$.gluing", {"arcs", "points"});
    if (auto arcs = g->find("arcs"); arcs != g->end()) {
      if (!arcs->is_array()) schema_fail("$.gluing.arcs", "expected an array");
      for (std::size_t i = 0; i < arcs->size(); ++i) {
        const std::string ap = "$.gluing.arcs[" + std::to_string(i) + "]";
        const auto& a = (*arcs)[i];
        allow_fields(a, ap, {"a", "b", "reversed"});
        ArcIdentification id;
        id.a = parse_arc(require(a, ap, "a"), ap + ".a", ids);
        id.b = parse_arc(require(a, ap, "b"), ap + ".b", ids);
        if (auto r = a.find("reversed"); r != a.end()) {
          if (!r->is_boolean()) schema_fail(ap + ".reversed", "expected a boolean");
          id.reversed = r->get<bool>();
        }
        out.spec.arcs.push_back(id);
      }
    }
    if (auto pts = g->find("points"); pts != g->end()) {
      if (!pts->is_array()) schema_fail("$.gluing.points", "expected an array");
      for (std::size_t i = 0; i < pts->size(); ++i) {
        const std::string pp = "$.gluing.points[" + std::to_string(i) + "]";
        const auto& p = (*pts)[i];
        allow_fields(p, pp, {"a", "b"});
        out.spec.points.push_back({parse_location(require(p, pp, "a"), pp + ".a", ids),
                                   parse_location(require(p, pp, "b"), pp + ".b", ids)});
      }
    }
  }
  if (auto s = j.find("settings"); s != j.end()) {
    allow_fields(*s, "$.settings", {"h", "kappa", "eps", "c_X", "n0_cap", "seed"});
    auto& st = out.settings;
    if (auto it = s->find("h"); it != s->end()) {
      st.h = number(*it, "$.settings.h");
      if (!(*st.h > 0)) schema_fail("$.settings.h", "must be positive");
    }
    if (auto it = s->find("kappa"); it != s->end()) st.kappa = number(*it, "$.settings.kappa");
    if (auto it = s->find("eps"); it != s->end()) st.eps = number(*it, "$.settings.eps");
    if (auto it = s->find("c_X"); it != s->end()) st.c_X = number(*it, "$.settings.c_X");
    if (auto it = s->find("n0_cap"); it != s->end()) {
      const auto v = integer(*it, "$.settings.n0_cap");
      if (v < 1) schema_fail("$.settings.n0_cap", "must be >= 1");
      st.n0_cap = static_cast<std::size_t>(v);
    }
    if (auto it = s->find("seed"); it != s->end()) {
      if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
        schema_fail("$.settings.seed", "expected a non-negative integer");
      }
      st.seed = it->get<std::uint64_t>();
    }
  }
  return out;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSchemaError, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

/// 64-bit FNV-1a of the raw input bytes, as 16 hex digits.
inline std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline OrderedJson to_json(const SpaceFile& f) {
  OrderedJson j;
  j["schema_version"] = kSchemaVersion;
  j["pieces"] = OrderedJson::array();
  for (const auto& p : f.pieces) {
    OrderedJson pj;
    pj["id"] = p.id();
    pj["vertices"] = OrderedJson::array();
    for (const auto& v : p.vertices()) {
      OrderedJson vj = OrderedJson::object();
      if (v.xy) vj["xy"] = {(*v.xy)[0], (*v.xy)[1]};
      if (v.angle_pi) vj["angle_pi"] = v.angle_pi->str();
      pj["vertices"].push_back(vj);
    }
    pj["triangles"] = OrderedJson::array();
    for (const auto& t : p.triangles()) {
      pj["triangles"].push_back({{"v", t.v}, {"lengths", t.lengths}});
    }
    j["pieces"].push_back(pj);
  }
  auto arc = [&](const BoundaryArc& a) {
    return OrderedJson{{"piece", f.pieces[a.piece].id()}, {"cycle", a.cycle}, {"offset", a.start},
                       {"length", a.length}, {"orientation", a.forward ? "forward" : "backward"}};
  };
  auto loc = [&](const BoundaryLocation& l) {
    return OrderedJson{{"piece", f.pieces[l.piece].id()}, {"cycle", l.cycle}, {"offset", l.offset}};
  };
  j["gluing"]["arcs"] = OrderedJson::array();
  for (const auto& id : f.spec.arcs) {
    j["gluing"]["arcs"].push_back({{"a", arc(id.a)}, {"b", arc(id.b)}, {"reversed", id.reversed}});
  }
  j["gluing"]["points"] = OrderedJson::array();
  for (const auto& id : f.spec.points) j["gluing"]["points"].push_back({{"a", loc(id.a)}, {"b", loc(id.b)}});
  OrderedJson s;
  if (f.settings.h) s["h"] = *f.settings.h;
  s["kappa"] = f.settings.kappa;
  s["eps"] = f.settings.eps;
  s["c_X"] = f.settings.c_X;
  s["n0_cap"] = f.settings.n0_cap;
  s["seed"] = f.settings.seed;
  j["settings"] = s;
  return j;
}

// ---------------------------------------------------------------------------
// Reports

/// Finite doubles as numbers; non-finite values as null.
inline OrderedJson number_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline OrderedJson to_json(const CheckResult& c) {
  OrderedJson j;
  j["name"] = c.name;
  j["status"] = std::string(to_string(c.status));
  OrderedJson m = OrderedJson::object();
  for (const auto& [k, v] : c.metrics) m[k] = number_json(v);
  j["metrics"] = m;
  j["items"] = OrderedJson::array();
  for (const auto& v : c.items) {
    j["items"].push_back({{"kind", v.kind}, {"location", v.location}, {"measured", number_json(v.measured)},
                          {"limit", number_json(v.limit)}, {"detail", v.detail}});
  }
  return j;
}

inline OrderedJson to_json(const VerificationReport& r) {
  OrderedJson j = OrderedJson::array();
  for (const auto& c : r.checks) j.push_back(to_json(c));
  return j;
}

}  // namespace alexglue

#endif  // ALEXGLUE_SPACE_FILE_HPP

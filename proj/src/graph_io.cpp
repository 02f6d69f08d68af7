// Copyright 2026 The MGE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mge/graph_io.hpp"

#include "mge/error.hpp"

#include "json.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace mge {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSchema, where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema(where, "expected a number");
  return j.get<double>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where, "expected a string");
  return j.get<std::string>();
}

Point3 point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) schema(where, "expected [x, y, z]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]"),
          number(j[2], where + "[2]")};
}

std::vector<Point3> points(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array of points");
  std::vector<Point3> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(point(j[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

EdgeCurve curve_from(const json& c, const std::string& where) {
  const std::string kind = text(field(c, "kind", where), where + ".kind");
  try {
    if (kind == "arc") {
      return ArcCurve::make(point(field(c, "center", where), where + ".center"),
                            point(field(c, "normal", where), where + ".normal"),
                            number(field(c, "radius", where), where + ".radius"),
                            number(field(c, "angle0", where), where + ".angle0"),
                            number(field(c, "angle1", where), where + ".angle1"));
    }
    if (kind == "hermite") {
      HermiteCurve h;
      h.points = points(field(c, "points", where), where + ".points");
      h.tangents = points(field(c, "tangents", where), where + ".tangents");
      if (h.points.size() != h.tangents.size() || h.points.size() < 2) {
        schema(where, "hermite needs >= 2 points and one tangent per point");
      }
      return h;
    }
    if (kind == "samples") {
      auto p = points(field(c, "points", where), where + ".points");
      if (p.size() < 2) schema(where, "samples needs >= 2 points");
      return SampledCurve::fit(std::move(p));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchema) throw;
    schema(where, e.what());
  }
  schema(where + ".kind", "unknown curve kind '" + kind + "'");
}

json to_json(const Point3& p) { return json::array({p.x(), p.y(), p.z()}); }

json to_json(const std::vector<Point3>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

json curve_to_json(const EdgeCurve& c, int hermite_nodes) {
  if (const auto* a = c.as<ArcCurve>()) {
    return {{"kind", "arc"},
            {"center", to_json(a->center)},
            {"normal", to_json(a->normal)},
            {"radius", a->radius},
            {"angle0", a->angle0},
            {"angle1", a->angle1}};
  }
  if (const auto* h = c.as<HermiteCurve>()) {
    return {{"kind", "hermite"},
            {"points", to_json(h->points)},
            {"tangents", to_json(h->tangents)}};
  }
  if (const auto* s = c.as<SampledCurve>()) {
    return {{"kind", "samples"}, {"points", to_json(s->points)}};
  }
  const EdgeCurve h = resample_hermite(
      c, hermite_nodes, [](const Point3& x, const Vec3& dx, Point3& y, Vec3& dy) {
        y = x;
        dy = dx;
      });
  return curve_to_json(h, hermite_nodes);
}

}  // namespace

EmbeddedGraph load_graph(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  const json& jv = field(doc, "vertices", "$");
  const json& je = field(doc, "edges", "$");
  if (!jv.is_array()) schema("$.vertices", "expected an array");
  if (!je.is_array()) schema("$.edges", "expected an array");

  std::vector<Vertex> verts;
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < jv.size(); ++k) {
    const std::string where = "$.vertices[" + std::to_string(k) + "]";
    const std::string id = text(field(jv[k], "id", where), where + ".id");
    if (!index.emplace(id, verts.size()).second) {
      schema(where + ".id", "duplicate vertex id '" + id + "'");
    }
    verts.push_back({id, point(field(jv[k], "pos", where), where + ".pos")});
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < je.size(); ++k) {
    const std::string where = "$.edges[" + std::to_string(k) + "]";
    const std::string id = text(field(je[k], "id", where), where + ".id");
    auto vertex_ref = [&](const char* key) {
      const std::string vid = text(field(je[k], key, where), where + "." + key);
      auto it = index.find(vid);
      if (it == index.end()) {
        schema(where + "." + key, "unknown vertex '" + vid + "'");
      }
      return it->second;
    };
    const std::size_t from = vertex_ref("from");
    const std::size_t to = vertex_ref("to");
    edges.push_back({id, from, to,
                     curve_from(field(je[k], "curve", where), where + ".curve")});
  }
  return EmbeddedGraph(std::move(verts), std::move(edges));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

EmbeddedGraph load_graph_file(const std::string& path) {
  return load_graph(read_text_file(path));
}

std::string save_graph(const EmbeddedGraph& g, int hermite_nodes) {
  nlohmann::ordered_json doc;
  doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : g.vertices()) {
    doc["vertices"].push_back({{"id", v.id}, {"pos", to_json(v.position)}});
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) {
    doc["edges"].push_back({{"id", e.id},
                            {"from", g.vertex(e.from).id},
                            {"to", g.vertex(e.to).id},
                            {"curve", curve_to_json(e.curve, hermite_nodes)}});
  }
  return doc.dump(1) + "\n";
}

void save_graph_file(const EmbeddedGraph& g, const std::string& path) {
  write_text_file(path, save_graph(g));
}

std::string export_polylines(const EmbeddedGraph& g, MeshFormat format,
                             int samples_per_edge) {
  if (samples_per_edge < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need >= 1 segment per edge");
  }
  const int per = samples_per_edge + 1;
  std::vector<Point3> pts;
  for (const auto& e : g.edges()) {
    for (int k = 0; k < per; ++k) {
      pts.push_back(e.curve.position(static_cast<double>(k) / samples_per_edge));
    }
  }
  std::ostringstream os;
  os.precision(17);
  const std::size_t segs = g.edge_count() * samples_per_edge;
  if (format == MeshFormat::kPly) {
    os << "ply\nformat ascii 1.0\nelement vertex " << pts.size()
       << "\nproperty double x\nproperty double y\nproperty double z\n"
       << "element edge " << segs
       << "\nproperty int vertex1\nproperty int vertex2\nend_header\n";
    for (const auto& p : pts) os << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      for (int k = 0; k < samples_per_edge; ++k) {
        const std::size_t a = e * per + k;
        os << a << ' ' << a + 1 << '\n';
      }
    }
  } else {
    for (const auto& p : pts) {
      os << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      os << "o " << g.edge(e).id << "\nl";
      for (int k = 0; k < per; ++k) os << ' ' << e * per + k + 1;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace mge

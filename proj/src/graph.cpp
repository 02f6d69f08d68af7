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

#include "mge/graph.hpp"

#include "mge/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>
#include <utility>

namespace mge {

EmbeddedGraph::EmbeddedGraph(std::vector<Vertex> vertices,
                             std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::set<std::string> vids;
  for (const auto& v : vertices_) {
    if (!vids.insert(v.id).second) {
      throw Error(ErrorCode::kSchema, "duplicate vertex id '" + v.id + "'");
    }
  }
  std::set<std::string> eids;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  incident_.assign(vertices_.size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& ed = edges_[e];
    if (!eids.insert(ed.id).second) {
      throw Error(ErrorCode::kSchema, "duplicate edge id '" + ed.id + "'");
    }
    if (ed.from >= vertices_.size() || ed.to >= vertices_.size()) {
      throw Error(ErrorCode::kSchema,
                  "edge '" + ed.id + "' references a missing vertex");
    }
    if (ed.from == ed.to) {
      throw Error(ErrorCode::kSchema, "edge '" + ed.id + "' is a loop");
    }
    const auto key = std::minmax(ed.from, ed.to);
    if (!pairs.insert(key).second) {
      throw Error(ErrorCode::kMultipleEdge,
                  "edge '" + ed.id + "' duplicates another edge between '" +
                      vertices_[ed.from].id + "' and '" + vertices_[ed.to].id +
                      "'");
    }
    incident_[ed.from].push_back(e);
    incident_[ed.to].push_back(e);
  }
}

std::vector<std::size_t> EmbeddedGraph::shared_vertices(std::size_t i,
                                                        std::size_t j) const {
  const Edge& a = edges_.at(i);
  const Edge& b = edges_.at(j);
  std::vector<std::size_t> out;
  for (std::size_t v : {a.from, a.to}) {
    if (b.touches(v)) out.push_back(v);
  }
  return out;
}

std::optional<std::size_t> EmbeddedGraph::find_vertex(
    const std::string& id) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].id == id) return v;
  }
  return std::nullopt;
}

std::optional<std::size_t> EmbeddedGraph::find_edge(
    const std::string& id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].id == id) return e;
  }
  return std::nullopt;
}

double EmbeddedGraph::diameter() const {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  auto add = [&](const Point3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  };
  for (const auto& v : vertices_) add(v.position);
  for (const auto& e : edges_) {
    for (int k = 0; k <= 64; ++k) add(e.curve.position(k / 64.0));
  }
  if (vertices_.empty()) return 0.0;
  return (hi - lo).norm();
}

EmbeddedGraph EmbeddedGraph::with_edge_curve(std::size_t e,
                                             EdgeCurve curve) const {
  auto edges = edges_;
  edges.at(e).curve = std::move(curve);
  return EmbeddedGraph(vertices_, std::move(edges));
}

EmbeddedGraph EmbeddedGraph::with_edge_reversed(std::size_t e) const {
  auto edges = edges_;
  Edge& ed = edges.at(e);
  std::swap(ed.from, ed.to);
  ed.curve = reversed(ed.curve);
  return EmbeddedGraph(vertices_, std::move(edges));
}

Vec3 outgoing_direction(const EmbeddedGraph& g, std::size_t e, std::size_t v) {
  const Edge& ed = g.edge(e);
  if (!ed.touches(v)) {
    throw Error(ErrorCode::kInvalidArgument, "edge does not touch vertex");
  }
  const Vec3 d = ed.from == v ? ed.curve.derivative(0.0)
                              : Vec3(-ed.curve.derivative(1.0));
  const double n = d.norm();
  if (!(n > 0.0)) {
    throw Error(ErrorCode::kDegenerateInput,
                "zero one-sided derivative on edge '" + ed.id + "'");
  }
  return d / n;
}

double VertexAngles::alpha(std::size_t v, std::size_t i, std::size_t j) const {
  const auto [a, b] = std::minmax(i, j);
  for (const auto& x : angles_) {
    if (x.vertex == v && x.edge_a == a && x.edge_b == b) return x.alpha;
  }
  throw Error(ErrorCode::kInvalidArgument, "edges are not adjacent at vertex");
}

std::vector<VertexAngle> VertexAngles::at(std::size_t v) const {
  std::vector<VertexAngle> out;
  for (const auto& x : angles_) {
    if (x.vertex == v) out.push_back(x);
  }
  return out;
}

VertexAngles vertex_angles(const EmbeddedGraph& g) {
  VertexAngles out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incident(v);
    std::vector<Vec3> dirs;
    dirs.reserve(inc.size());
    for (std::size_t e : inc) dirs.push_back(outgoing_direction(g, e, v));
    for (std::size_t a = 0; a < inc.size(); ++a) {
      for (std::size_t b = a + 1; b < inc.size(); ++b) {
        out.angles_.push_back(
            {v, inc[a], inc[b], kernel::unit_angle<Vec3>(dirs[a], dirs[b])});
      }
    }
  }
  return out;
}

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kEndpointMismatch: return "endpoint-mismatch";
    case Violation::Kind::kZeroDerivative: return "zero-derivative";
    case Violation::Kind::kZeroAngle: return "zero-angle";
    case Violation::Kind::kIntersection: return "intersection";
    case Violation::Kind::kSelfIntersection: return "self-intersection";
  }
  return "unknown";
}

namespace {

struct Polyline {
  std::vector<Point3> pts;
  double deviation;  // bound on curve-to-chord distance
};

Polyline sample_polyline(const EdgeCurve& c, int n) {
  Polyline p;
  p.pts.resize(n + 1);
  for (int k = 0; k <= n; ++k) p.pts[k] = c.position(static_cast<double>(k) / n);
  double dev = 0.0;
  for (int k = 0; k < n; ++k) {
    const Point3 mid = c.position((k + 0.5) / n);
    dev = std::max(dev, (mid - 0.5 * (p.pts[k] + p.pts[k + 1])).norm());
  }
  p.deviation = 1.5 * dev;
  return p;
}

// Closest parameters (s, t) in [0,1]^2 of segments p0p1 and q0q1.
std::pair<double, double> segment_closest(const Point3& p0, const Point3& p1,
                                          const Point3& q0, const Point3& q1) {
  const Vec3 d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a <= 1e-300 && e <= 1e-300) return {0.0, 0.0};
  if (a <= 1e-300) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 1e-300) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return {s, t};
}

// Local minimization of |c1(s) - c2(t)| by projected Gauss-Newton.
std::pair<double, double> refine_closest(const EdgeCurve& c1,
                                         const EdgeCurve& c2, double s,
                                         double t) {
  for (int it = 0; it < 40; ++it) {
    Point3 x, y;
    Vec3 dx, dy;
    c1.evaluate(s, x, dx);
    c2.evaluate(t, y, dy);
    const Vec3 r = x - y;
    Eigen::Matrix2d jtj;
    jtj << dx.dot(dx), -dx.dot(dy), -dx.dot(dy), dy.dot(dy);
    const Eigen::Vector2d jtr(dx.dot(r), -dy.dot(r));
    jtj += 1e-12 * jtj.trace() * Eigen::Matrix2d::Identity();
    const Eigen::Vector2d step = jtj.ldlt().solve(-jtr);
    const double ns = std::clamp(s + step[0], 0.0, 1.0);
    const double nt = std::clamp(t + step[1], 0.0, 1.0);
    if (std::abs(ns - s) + std::abs(nt - t) < 1e-14) break;
    s = ns;
    t = nt;
  }
  return {s, t};
}

}  // namespace

ValidationReport validate(const EmbeddedGraph& g,
                          const ValidationPolicy& policy) {
  ValidationReport rep;
  const double diam = std::max(g.diameter(), 1e-300);
  auto add = [&](Violation::Kind k, std::string loc, std::string msg) {
    rep.violations.push_back({k, std::move(loc), std::move(msg)});
  };

  for (const auto& e : g.edges()) {
    const double tol = policy.endpoint_tol * diam;
    if ((e.curve.position(0.0) - g.vertex(e.from).position).norm() > tol) {
      add(Violation::Kind::kEndpointMismatch, "edge " + e.id,
          "curve start is not at vertex '" + g.vertex(e.from).id + "'");
    }
    if ((e.curve.position(1.0) - g.vertex(e.to).position).norm() > tol) {
      add(Violation::Kind::kEndpointMismatch, "edge " + e.id,
          "curve end is not at vertex '" + g.vertex(e.to).id + "'");
    }
    const double len = e.curve.approximate_length();
    for (int k = 0; k < policy.derivative_samples; ++k) {
      const double t = static_cast<double>(k) / (policy.derivative_samples - 1);
      if (!(e.curve.derivative(t).norm() > policy.derivative_floor * len)) {
        add(Violation::Kind::kZeroDerivative, "edge " + e.id,
            "first derivative vanishes near t=" + std::to_string(t));
        break;
      }
    }
  }
  if (!rep.ok()) return rep;  // angles need sane derivatives

  const VertexAngles angles = vertex_angles(g);
  for (const auto& a : angles.all()) {
    if (!(a.alpha > policy.angle_floor)) {
      add(Violation::Kind::kZeroAngle, "vertex " + g.vertex(a.vertex).id,
          "edges '" + g.edge(a.edge_a).id + "' and '" + g.edge(a.edge_b).id +
              "' meet at a zero angle");
    }
  }

  const int n = policy.intersection_samples;
  std::vector<Polyline> polys;
  polys.reserve(g.edge_count());
  for (const auto& e : g.edges()) polys.push_back(sample_polyline(e.curve, n));
  const double tol = policy.intersection_tol * diam;

  auto check_pair = [&](std::size_t i, std::size_t j) {
    const auto shared = i == j ? std::vector<std::size_t>{}
                               : g.shared_vertices(i, j);
    const auto& pi = polys[i];
    const auto& pj = polys[j];
    const double gate = pi.deviation + pj.deviation + tol;
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) {
      for (int b = (i == j ? a + 2 : 0); b < n; ++b) {
        bool skip = false;
        for (std::size_t v : shared) {
          const bool a_end = g.edge(i).from == v ? a == 0 : a == n - 1;
          const bool b_end = g.edge(j).from == v ? b == 0 : b == n - 1;
          if (a_end && b_end) skip = true;
        }
        if (skip) continue;
        const auto [s, t] = segment_closest(pi.pts[a], pi.pts[a + 1],
                                            pj.pts[b], pj.pts[b + 1]);
        const Point3 x = pi.pts[a] + s * (pi.pts[a + 1] - pi.pts[a]);
        const Point3 y = pj.pts[b] + t * (pj.pts[b + 1] - pj.pts[b]);
        if ((x - y).norm() > gate) continue;
        auto [cs, ct] = refine_closest(g.edge(i).curve, g.edge(j).curve,
                                       (a + s) / n, (b + t) / n);
        if (i == j && std::abs(cs - ct) * n < 1.5) continue;
        const Point3 cx = g.edge(i).curve.position(cs);
        const Point3 cy = g.edge(j).curve.position(ct);
        bool at_shared = false;
        for (std::size_t v : shared) {
          const Point3& pv = g.vertex(v).position;
          if ((cx - pv).norm() <= 10 * tol && (cy - pv).norm() <= 10 * tol) {
            at_shared = true;
          }
        }
        if (!at_shared) best = std::min(best, (cx - cy).norm());
      }
    }
    if (best <= tol) {
      if (i == j) {
        add(Violation::Kind::kSelfIntersection, "edge " + g.edge(i).id,
            "edge image is not injective");
      } else {
        add(Violation::Kind::kIntersection,
            "edges " + g.edge(i).id + "," + g.edge(j).id,
            "edge images meet away from shared vertices");
      }
    }
  };
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    for (std::size_t j = i; j < g.edge_count(); ++j) check_pair(i, j);
  }
  return rep;
}

double distance_to_image(const EmbeddedGraph& g, const Point3& p,
                         int samples_per_edge) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : g.vertices()) best = std::min(best, (v.position - p).norm());
  for (const auto& e : g.edges()) {
    for (int k = 0; k <= samples_per_edge; ++k) {
      const double t = static_cast<double>(k) / samples_per_edge;
      best = std::min(best, (e.curve.position(t) - p).norm());
    }
  }
  return best;
}

EmbeddedGraph transform(const EmbeddedGraph& g, const MobiusMap& m,
                        const TransformOptions& options) {
  if (m.is_identity()) return g;
  const double diam = g.diameter();
  for (const auto& pole : m.poles()) {
    if (distance_to_image(g, pole, options.pole_check_samples) <
        options.pole_margin * diam) {
      throw Error(ErrorCode::kPole,
                  "a pole of the Möbius map lies on or near the graph");
    }
  }
  std::vector<Vertex> verts;
  verts.reserve(g.vertex_count());
  for (const auto& v : g.vertices()) verts.push_back({v.id, m.apply(v.position)});
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    auto curve = resample_hermite(
        e.curve, options.nodes_per_edge,
        [&](const Point3& x, const Vec3& dx, Point3& y, Vec3& dy) {
          y = m.apply(x);
          dy = m.push_forward(x, dx);
        });
    edges.push_back({e.id, e.from, e.to, std::move(curve)});
  }
  return EmbeddedGraph(std::move(verts), std::move(edges));
}

}  // namespace mge

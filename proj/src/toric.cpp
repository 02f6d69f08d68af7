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

#include "mge/toric.hpp"

#include "mge/error.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

namespace mge {

ToricSpec ToricSpec::parse(const std::string& text) {
  std::istringstream in(text);
  int v[4];
  char sep;
  for (int k = 0; k < 4; ++k) {
    if (!(in >> v[k])) {
      throw Error(ErrorCode::kParse, "toric spec must be 'p,q,m,n'");
    }
    if (k < 3 && (!(in >> sep) || (sep != ',' && sep != ';'))) {
      throw Error(ErrorCode::kParse, "toric spec must be 'p,q,m,n'");
    }
  }
  in >> std::ws;
  if (!in.eof()) throw Error(ErrorCode::kParse, "trailing text in toric spec");
  return {v[0], v[1], v[2], v[3]};
}

std::string ToricSpec::to_string() const {
  return "(" + std::to_string(p) + "," + std::to_string(q) + ";" +
         std::to_string(m) + "," + std::to_string(n) + ")";
}

void validate_spec(const ToricSpec& s) {
  const bool knot = s.p >= s.q && s.q >= 1;
  const bool unknot = s.p == 1 && s.q == 0;
  if (!knot && !unknot) {
    throw Error(ErrorCode::kInvalidArgument,
                "need p >= q >= 1 or (p, q) = (1, 0) in " + s.to_string());
  }
  if (knot && std::gcd(s.p, s.q) != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "gcd(p, q) must be 1 in " + s.to_string());
  }
  if (s.n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need n >= 1 in " + s.to_string());
  }
  if (s.m < s.n) {
    throw Error(ErrorCode::kInvalidArgument, "need m >= n in " + s.to_string());
  }
}

FlatLattice build_flat_lattice(const ToricSpec& s) {
  validate_spec(s);
  const std::int64_t p = s.p, q = s.q, m = s.m, n = s.n;
  const std::int64_t N = p * p + q * q;
  const std::int64_t M = m * n * N;
  const double unit = 2.0 * std::numbers::pi / static_cast<double>(M);

  FlatLattice L;
  L.spec = s;
  L.horizontal_spacing = 2.0 * std::numbers::pi / (m * std::sqrt(double(N)));
  L.vertical_spacing = 2.0 * std::numbers::pi / (n * std::sqrt(double(N)));
  std::map<std::array<std::int64_t, 2>, std::size_t> index;
  auto vid = [&](std::int64_t a, std::int64_t b) {
    std::array<std::int64_t, 2> key{((a % M) + M) % M, ((b % M) + M) % M};
    auto [it, fresh] = index.emplace(key, L.keys.size());
    if (fresh) {
      L.keys.push_back(key);
      L.vertices.push_back({unit * key[0], unit * key[1]});
    }
    return it->second;
  };

  // Horizontal geodesic a: (-q, p) * 2 pi a / (m N) + s (p, q), vertices at
  // s = 2 pi k / (n N). Vertical geodesic b: (p, q) * 2 pi b / (n N) +
  // r (-q, p), vertices at r = 2 pi j / (m N). Keys are in units of 2 pi / M.
  for (std::int64_t a = 0; a < m; ++a) {
    const std::int64_t steps = n * N;
    std::vector<std::size_t> ids;
    for (std::int64_t k = 0; k < steps; ++k) {
      ids.push_back(vid(-q * a * n + p * k * m, p * a * n + q * k * m));
    }
    for (std::int64_t k = 0; k < steps; ++k) {
      LatticeArc arc;
      arc.from = ids[k];
      arc.to = ids[(k + 1) % steps];
      arc.horizontal = true;
      arc.family_index = static_cast<int>(a);
      arc.step = static_cast<int>(k);
      arc.start = {unit * double(-q * a * n + p * k * m),
                   unit * double(p * a * n + q * k * m)};
      arc.direction = {unit * double(p * m), unit * double(q * m)};
      L.arcs.push_back(arc);
    }
  }
  for (std::int64_t b = 0; b < n; ++b) {
    const std::int64_t steps = m * N;
    std::vector<std::size_t> ids;
    for (std::int64_t j = 0; j < steps; ++j) {
      ids.push_back(vid(p * b * m - q * j * n, q * b * m + p * j * n));
    }
    for (std::int64_t j = 0; j < steps; ++j) {
      LatticeArc arc;
      arc.from = ids[j];
      arc.to = ids[(j + 1) % steps];
      arc.horizontal = false;
      arc.family_index = static_cast<int>(b);
      arc.step = static_cast<int>(j);
      arc.start = {unit * double(p * b * m - q * j * n),
                   unit * double(q * b * m + p * j * n)};
      arc.direction = {unit * double(-q * n), unit * double(p * n)};
      L.arcs.push_back(arc);
    }
  }
  return L;
}

Point4 clifford_embed(double u, double v) {
  return Point4(std::cos(u), std::sin(u), std::cos(v), std::sin(v)) /
         std::sqrt(2.0);
}

EmbeddedGraph build_toric_graph(const ToricSpec& s, const ToricOptions& o) {
  const FlatLattice L = build_flat_lattice(s);
  if (std::abs(o.pole.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "pole must lie on the unit 3-sphere");
  }
  // The torus is x^2 + y^2 = z^2 + t^2 = 1/2; stay clear of it.
  const double off = std::abs(o.pole.head<2>().squaredNorm() - 0.5);
  if (off < 1e-6) {
    throw Error(ErrorCode::kPole, "pole lies on the Clifford torus");
  }
  if (o.samples_per_edge < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need >= 2 samples per edge");
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& a : L.arcs) {
    if (a.from == a.to) {
      throw Error(ErrorCode::kMultipleEdge,
                  s.to_string() + " has a lattice loop; graphs need simple edges");
    }
    if (!seen.insert(std::minmax(a.from, a.to)).second) {
      throw Error(ErrorCode::kMultipleEdge,
                  s.to_string() + " has parallel lattice arcs between two vertices");
    }
  }

  std::vector<Vertex> verts;
  for (std::size_t k = 0; k < L.vertices.size(); ++k) {
    const auto& uv = L.vertices[k];
    verts.push_back({"v" + std::to_string(k),
                     stereographic_project(o.pole, clifford_embed(uv[0] + o.phase[0],
                                                                  uv[1] + o.phase[1]))});
  }
  std::vector<Edge> edges;
  for (const auto& a : L.arcs) {
    HermiteCurve h;
    for (int k = 0; k < o.samples_per_edge; ++k) {
      const double t = static_cast<double>(k) / (o.samples_per_edge - 1);
      const double u = a.start[0] + o.phase[0] + t * a.direction[0];
      const double v = a.start[1] + o.phase[1] + t * a.direction[1];
      const Point4 x = clifford_embed(u, v);
      const Point4 dx = Point4(-std::sin(u) * a.direction[0],
                               std::cos(u) * a.direction[0],
                               -std::sin(v) * a.direction[1],
                               std::cos(v) * a.direction[1]) /
                        std::sqrt(2.0);
      h.points.push_back(stereographic_project(o.pole, x));
      h.tangents.push_back(stereographic_push_forward(o.pole, x, dx));
    }
    // Pin the curve ends to the vertex images.
    h.points.front() = verts[a.from].position;
    h.points.back() = verts[a.to].position;
    const std::string id = std::string(a.horizontal ? "h" : "w") +
                           std::to_string(a.family_index) + "_" +
                           std::to_string(a.step);
    edges.push_back({id, a.from, a.to, EdgeCurve(std::move(h))});
  }
  return EmbeddedGraph(std::move(verts), std::move(edges));
}

}  // namespace mge

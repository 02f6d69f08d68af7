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

#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mge/graph.hpp"
#include "mge/graph_io.hpp"

namespace mge::test {

inline constexpr double kPi = std::numbers::pi;

inline std::string data_path(const std::string& name) {
  return std::string(MGE_TEST_DATA_DIR) + "/" + name;
}

inline EmbeddedGraph load_fixture(const std::string& name) {
  return load_graph_file(data_path(name));
}

inline EdgeCurve segment(const Point3& a, const Point3& b) {
  return EdgeCurve(HermiteCurve{{a, b}, {b - a, b - a}});
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec3 v;
  do {
    v = Vec3(n(rng), n(rng), n(rng));
  } while (v.norm() < 1e-3);
  return v.normalized();
}

inline Point3 random_point(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Point3(u(rng), u(rng), u(rng));
}

/// Straight-sided polygon through the given points (closed).
inline EmbeddedGraph polygon(const std::vector<Point3>& pts) {
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    vs.push_back({"v" + std::to_string(k), pts[k]});
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const std::size_t l = (k + 1) % pts.size();
    es.push_back({"e" + std::to_string(k), k, l, segment(pts[k], pts[l])});
  }
  return EmbeddedGraph(std::move(vs), std::move(es));
}

/// Two unconnected straight segments.
inline EmbeddedGraph two_segments(const Point3& a0, const Point3& a1,
                                  const Point3& b0, const Point3& b1) {
  std::vector<Vertex> vs{{"a0", a0}, {"a1", a1}, {"b0", b0}, {"b1", b1}};
  std::vector<Edge> es{{"a", 0, 1, segment(a0, a1)},
                       {"b", 2, 3, segment(b0, b1)}};
  return EmbeddedGraph(std::move(vs), std::move(es));
}

}  // namespace mge::test

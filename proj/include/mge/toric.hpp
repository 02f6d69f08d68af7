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

#include "mge/graph.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mge {

struct ToricSpec {
  int p;
  int q;
  int m;
  int n;

  /// Parses "p,q,m,n".
  static ToricSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Throws kInvalidArgument naming the violated constraint.
void validate_spec(const ToricSpec& s);

/// One arc of a lattice geodesic on the flat torus [0, 2pi)^2.
struct LatticeArc {
  std::size_t from;
  std::size_t to;
  bool horizontal;
  int family_index;  // which geodesic of its family
  int step;          // position along the geodesic
  std::array<double, 2> start;      // (u, v), unwrapped
  std::array<double, 2> direction;  // (u, v) displacement over the arc
};

struct FlatLattice {
  ToricSpec spec;
  /// Exact vertex keys: (u, v) = 2 pi * key / (m n (p^2 + q^2)).
  std::vector<std::array<std::int64_t, 2>> keys;
  std::vector<std::array<double, 2>> vertices;  // (u, v) in [0, 2pi)
  std::vector<LatticeArc> arcs;
  double horizontal_spacing;  // distance between parallel horizontal lines
  double vertical_spacing;
};

FlatLattice build_flat_lattice(const ToricSpec& s);

/// (cos u, sin u, cos v, sin v) / sqrt(2).
Point4 clifford_embed(double u, double v);

struct ToricOptions {
  Point4 pole = Point4(0, 0, 0, 1);
  int samples_per_edge = 64;  // hermite nodes per edge
  /// Flat-torus shift (du, dv) applied to the whole lattice.
  std::array<double, 2> phase{0.0, 0.0};
};

EmbeddedGraph build_toric_graph(const ToricSpec& s, const ToricOptions& o = {});

}  // namespace mge

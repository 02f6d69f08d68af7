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

#include "mge/curve.hpp"
#include "mge/geom.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mge {

struct Vertex {
  std::string id;
  Point3 position;
};

/// The curve runs from vertex `from` (t = 0) to vertex `to` (t = 1).
struct Edge {
  std::string id;
  std::size_t from;
  std::size_t to;
  EdgeCurve curve;

  bool touches(std::size_t v) const { return from == v || to == v; }
  std::size_t other(std::size_t v) const { return from == v ? to : from; }
};

/// Combinatorial graph plus one parametric curve per edge. Immutable after
/// construction. The constructor enforces the combinatorial invariants
/// (unique ids, no loops, no multiple edges); geometric ones are checked by
/// validate().
class EmbeddedGraph {
 public:
  EmbeddedGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(std::size_t v) const { return vertices_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edge indices incident to v, ascending.
  const std::vector<std::size_t>& incident(std::size_t v) const {
    return incident_.at(v);
  }
  std::size_t degree(std::size_t v) const { return incident(v).size(); }

  /// Vertices shared by the two edges (0, 1 or 2 entries for i != j).
  std::vector<std::size_t> shared_vertices(std::size_t i, std::size_t j) const;

  std::optional<std::size_t> find_vertex(const std::string& id) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;

  /// Diagonal of the bounding box of the sampled edge images.
  double diameter() const;

  /// Copy with edge `e` replaced by `curve` (endpoints unchanged).
  EmbeddedGraph with_edge_curve(std::size_t e, EdgeCurve curve) const;
  /// Copy with edge `e` traversed in the opposite direction.
  EmbeddedGraph with_edge_reversed(std::size_t e) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Unit one-sided derivative of edge e at its endpoint v, pointing into e.
Vec3 outgoing_direction(const EmbeddedGraph& g, std::size_t e, std::size_t v);

struct VertexAngle {
  std::size_t vertex;
  std::size_t edge_a;  // edge_a < edge_b
  std::size_t edge_b;
  double alpha;
};

/// The set of angles between one-sided derivatives at every vertex.
class VertexAngles {
 public:
  const std::vector<VertexAngle>& all() const& { return angles_; }
  std::vector<VertexAngle> all() && { return std::move(angles_); }
  /// Angle between edges i and j at v (symmetric in i, j).
  double alpha(std::size_t v, std::size_t i, std::size_t j) const;
  std::vector<VertexAngle> at(std::size_t v) const;

 private:
  friend VertexAngles vertex_angles(const EmbeddedGraph& g);
  std::vector<VertexAngle> angles_;
};

VertexAngles vertex_angles(const EmbeddedGraph& g);

struct ValidationPolicy {
  double endpoint_tol = 1e-9;            // relative to graph diameter
  double angle_floor = 1e-6;             // radians
  int derivative_samples = 256;
  double derivative_floor = 1e-9;        // times edge length
  int intersection_samples = 128;        // per edge
  double intersection_tol = 1e-6;        // times graph diameter
};

struct Violation {
  enum class Kind {
    kEndpointMismatch,
    kZeroDerivative,
    kZeroAngle,
    kIntersection,
    kSelfIntersection,
  };
  Kind kind;
  std::string location;
  std::string message;
};

const char* to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const EmbeddedGraph& g,
                          const ValidationPolicy& policy = {});

struct TransformOptions {
  int nodes_per_edge = 129;
  /// Poles closer than this fraction of the graph diameter are rejected.
  double pole_margin = 1e-3;
  int pole_check_samples = 256;
};

/// Image of the graph under m. Curves are resampled into Hermite splines with
/// tangents mapped by the analytic differential.
EmbeddedGraph transform(const EmbeddedGraph& g, const MobiusMap& m,
                        const TransformOptions& options = {});

/// Smallest distance from `p` to the sampled image of the graph.
double distance_to_image(const EmbeddedGraph& g, const Point3& p,
                         int samples_per_edge = 256);

}  // namespace mge

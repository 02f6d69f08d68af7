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
#include "mge/quadrature.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mge {

enum class PairKind {
  kSameEdge,
  kDisjoint,
  kAdjacent,
  kStrand,  // distinct edges of one smooth strand, knot integrand
};
const char* to_string(PairKind kind);

/// Normalization used for pairs adjacent at a vertex.
enum class AdjacentRule {
  kSignResolved,  // max over the sign of theta; bounded at the corner
  kReflected,     // cos(angle(a, -R_b T2) - alpha)
  kLiteral,       // unsigned angles as written; diverges at corners
};
const char* to_string(AdjacentRule rule);

enum class Counting { kOrdered, kUnordered };
const char* to_string(Counting counting);

struct EnergyConvention {
  Counting counting = Counting::kUnordered;
  /// Edges chained through straight vertices (alpha = pi) form a strand and
  /// interact through the knot integrand with the strand orientation.
  bool strand_self_energy = true;
  AdjacentRule adjacent = AdjacentRule::kSignResolved;
  double straight_tol = 1e-6;

  /// Matches the published toric values (default).
  static EnergyConvention reference();
  /// Ordered double sum over edge pairs without strands.
  static EnergyConvention definition();
  static EnergyConvention from_name(const std::string& name);
  std::string name() const;
};

/// Maximal chains of edges meeting at straight vertices.
struct Strands {
  std::vector<int> strand;  // per edge
  std::vector<int> sign;    // +1 if the edge runs along its strand
  /// joint[v] lists the edge pairs (a < b) chained at v.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> joint;

  bool joined_at(std::size_t v, std::size_t i, std::size_t j) const;
  int count() const;
};
Strands find_strands(const EmbeddedGraph& g, double straight_tol = 1e-6);

/// An ordered edge pair with everything the integrand needs.
struct PairSpec {
  PairKind kind;
  std::size_t i;
  std::size_t j;
  std::size_t vertex = 0;  // common vertex (kAdjacent, joined kStrand)
  bool has_corner = false;
  double corner_i = 0.0;  // parameter of vertex on edge i
  double corner_j = 0.0;
  double sign_i = 1.0;  // tangent orientation multipliers
  double sign_j = 1.0;
  double alpha = 0.0;
  Point3 corner_point = Point3::Zero();
};

class EnergyModel {
 public:
  explicit EnergyModel(const EmbeddedGraph& g,
                       EnergyConvention convention = {});

  const EmbeddedGraph& graph() const { return g_; }
  const EnergyConvention& convention() const { return conv_; }
  const Strands& strands() const { return strands_; }

  PairSpec classify(std::size_t i, std::size_t j) const;
  /// Integrand per unit parameter squared; (t1, t2) on edges i and j.
  double integrand(const PairSpec& pair, double t1, double t2) const;
  Integral pair_energy(const PairSpec& pair, const QuadratureConfig& q) const;

 private:
  const EmbeddedGraph& g_;
  EnergyConvention conv_;
  Strands strands_;
  VertexAngles angles_;
};

struct PairEnergy {
  std::size_t i;
  std::size_t j;
  PairKind kind;
  double value;
  double error;
  bool converged;
};

struct EnergyReport {
  std::vector<PairEnergy> pairs;  // ordered pairs, row-major
  double pair_weight = 1.0;       // total = pair_weight * sum of values
  double total = 0.0;
  double error = 0.0;
  bool converged = true;
  EnergyConvention convention;
  QuadratureConfig quadrature;
  double seconds = 0.0;  // wall clock, never serialized
};

EnergyReport total_energy(const EmbeddedGraph& g,
                          const QuadratureConfig& q = {},
                          const EnergyConvention& convention = {});

std::string report_csv(const EnergyReport& r, const EmbeddedGraph& g);
std::string report_json(const EnergyReport& r, const EmbeddedGraph& g);

/// 17 significant digits, lossless for doubles.
std::string format_double(double v);

}  // namespace mge

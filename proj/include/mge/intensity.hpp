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

#include "mge/geom.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mge {

/// Intensity of a vertex angle: 1 - (pi - a) / sin(a) on (0, pi), 0 at pi.
double psi(double alpha);
/// d psi / d alpha = (sin a + (pi - a) cos a) / sin^2 a, 0 at pi.
double dpsi(double alpha);

/// k >= 2 unit vectors at the origin.
class TupleConfig {
 public:
  /// Normalizes the inputs; rejects zero vectors, k < 2 and pairwise angles at
  /// or below `angle_floor`.
  static TupleConfig make(std::vector<Vec3> u, double angle_floor = 1e-6);

  std::size_t size() const { return u_.size(); }
  const std::vector<Vec3>& vectors() const { return u_; }
  const Vec3& operator[](std::size_t i) const { return u_[i]; }
  /// Pairwise angles, i < j in row-major order.
  std::vector<double> angles() const;
  double min_angle() const;
  bool collinear(double tol = 1e-9) const;

 private:
  std::vector<Vec3> u_;
};

/// Sum of psi over unordered pairs.
double big_psi(const TupleConfig& w);

struct TangentVector {
  std::vector<Vec3> components;  // one tangent vector per sphere
  double norm = 0.0;
};

/// Riemannian gradient of big_psi on the product of spheres.
TangentVector riemannian_gradient(const TupleConfig& w,
                                  double angle_floor = 1e-6);

enum class Classification { kMin, kMax, kSaddle, kDegenerate, kNoncritical };
const char* to_string(Classification c);

struct CriticalityReport {
  double psi;
  double phi;  // -psi
  double gradient_norm;
  std::vector<double> eigenvalues;  // Hessian of phi, ascending
  int zero_modes;
  int expected_zero_modes;
  bool critical;
  Classification classification;  // for phi
  std::vector<double> angles;
};

struct CriticalityOptions {
  double fd_step = 1e-4;
  double zero_mode_rel = 1e-6;   // times the spectral radius
  double critical_tol = 1e-8;    // gradient norm
  double angle_floor = 1e-6;
};

CriticalityReport criticality_report(const TupleConfig& w,
                                     const CriticalityOptions& o = {});

/// "straight2", "planar3", "square4", "tetrahedral4".
TupleConfig canonical_config(const std::string& name);

struct SearchPolicy {
  int max_iterations = 200000;
  double gradient_tol = 1e-8;
  double initial_step = 0.1;
  double max_step = 1.0;
  double armijo = 1e-4;
  double shrink = 0.5;
  double angle_floor = 1e-6;
};

struct SearchResult {
  std::uint64_t seed;
  TupleConfig config;
  CriticalityReport report;
  int iterations;
  bool converged;
  bool barrier_hit;
};

/// Descent on phi over (S^2)^k from a seeded random start.
SearchResult local_search(int k, std::uint64_t seed,
                          const SearchPolicy& policy = {});

struct SearchCluster {
  double phi;
  std::vector<double> angles;  // sorted, from the first member
  int count;
  Classification classification;
};

struct CriticalBatch {
  int k;
  std::vector<SearchResult> runs;
  std::vector<SearchCluster> clusters;  // by descending count
};

/// Runs with seeds first_seed, first_seed + 1, ...
CriticalBatch critical_batch(int k, std::uint64_t first_seed, int count,
                             const SearchPolicy& policy = {}, int threads = 1);

std::string criticality_json(const CriticalityReport& r);
std::string batch_csv(const CriticalBatch& b);
std::string batch_json(const CriticalBatch& b);

}  // namespace mge

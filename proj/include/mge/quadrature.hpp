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

#include <functional>
#include <vector>

namespace mge {

struct QuadratureConfig {
  int base_panels = 16;  // per axis on [0,1]
  int nodes_u = 8;       // Gauss nodes along the first axis of a panel
  int nodes_v = 9;       // unequal counts keep nodes off the diagonal
  int max_depth = 6;
  double rel_tol = 1e-4;
  double abs_tol = 1e-10;
  bool deterministic = true;
  int threads = 0;  // 0: hardware concurrency

  void check() const;
};

/// Gauss-Legendre rule mapped to [0,1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
GaussRule gauss_legendre(int n);

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Panel {
  double x0, x1, y0, y1;
};

struct Integral {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  double max_abs_integrand = 0.0;
  long evaluations = 0;
};

/// Integration region inside [0,1]^2. Base cells are the products of the
/// breakpoint intervals, each split uniformly to roughly base_panels per unit
/// length. `include` drops whole base cells; `forced` marks cells that must be
/// refined down to max_depth (singular sets).
struct Region2D {
  std::vector<double> xs{0.0, 1.0};
  std::vector<double> ys{0.0, 1.0};
  std::function<bool(const Panel&)> include;
  std::function<bool(const Panel&)> forced;
};

using Integrand2D = std::function<double(double, double)>;

/// Adaptive tensor Gauss quadrature. Each panel is compared against the sum
/// over its four children; the error estimate is the sum of |fine - coarse|
/// over accepted panels. Summation order is fixed by the panel tree.
Integral integrate_2d(const Integrand2D& f, const Region2D& region,
                      const QuadratureConfig& config);

/// Panel predicates for the two singular geometries.
bool touches_diagonal(const Panel& p);
bool contains_point(const Panel& p, double x, double y);

}  // namespace mge

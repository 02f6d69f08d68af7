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

#include <string>
#include <vector>

namespace mge {

/// Which parameter pairs survive the cut by the eps-ball around the vertex.
enum class TruncationDomain {
  kNotBothInside,  // at least one image outside the ball (default)
  kBothOutside,    // both images outside the ball
};
const char* to_string(TruncationDomain d);
TruncationDomain truncation_domain_from_name(const std::string& name);

/// Parameter distance from the vertex end of edge e at which the image first
/// leaves the eps-ball around the vertex (1 if it never does).
double clip_parameter(const EmbeddedGraph& g, std::size_t e, std::size_t v,
                      double eps);

/// Largest eps for which the truncated domain is nonempty.
double truncation_eps_max(const EmbeddedGraph& g, std::size_t i, std::size_t j,
                          std::size_t v, TruncationDomain d);

/// Integral of |g_i'||g_j'|/|g_i - g_j|^2 over the truncated domain.
Integral truncated_principal(const EmbeddedGraph& g, std::size_t i,
                             std::size_t j, std::size_t v, double eps,
                             const QuadratureConfig& q = {},
                             TruncationDomain d = TruncationDomain::kNotBothInside);

struct LogSlopeFit {
  double slope;
  double intercept;
  double r2;
};

/// Least-squares fit of values against ln(1/eps).
LogSlopeFit log_slope_fit(const std::vector<double>& eps,
                          const std::vector<double>& values);

/// Log-divergence coefficient of two straight unit rays at angle alpha, by a
/// midpoint Riemann sum in logarithmic coordinates over an eps ladder.
double wedge_oracle_slope(double alpha,
                          TruncationDomain d = TruncationDomain::kNotBothInside,
                          double step = 0.02);

struct AsymptoticsRow {
  double eps;
  double value;
  double error;
};

struct AsymptoticsReport {
  std::size_t vertex;
  std::size_t edge_i;
  std::size_t edge_j;
  double alpha;
  TruncationDomain domain;
  std::vector<AsymptoticsRow> rows;
  LogSlopeFit fit;
  double psi;           // 1 - (pi - alpha) / sin(alpha)
  double wedge_coeff;   // (pi - alpha) / sin(alpha)
  double oracle_slope;
};

AsymptoticsReport asymptotics_report(
    const EmbeddedGraph& g, std::size_t v, std::size_t i, std::size_t j,
    const std::vector<double>& eps, const QuadratureConfig& q = {},
    TruncationDomain d = TruncationDomain::kNotBothInside);

std::string asymptotics_json(const AsymptoticsReport& r, const EmbeddedGraph& g);
std::string asymptotics_csv(const AsymptoticsReport& r);

}  // namespace mge

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

#include "mge/quadrature.hpp"

#include "mge/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mge {

void QuadratureConfig::check() const {
  if (base_panels < 1 || nodes_u < 1 || nodes_v < 1 || max_depth < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrature counts must be positive");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(abs_tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrature tolerance must lie in (0, 1)");
  }
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "need >= 1 Gauss node");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = 0.5 * (1.0 - z);
    r.x[n - 1 - i] = 0.5 * (1.0 + z);
    r.w[i] = r.w[n - 1 - i] = 0.5 * w;
  }
  return r;
}

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

bool touches_diagonal(const Panel& p) {
  return std::max(p.x0, p.y0) <= std::min(p.x1, p.y1);
}

bool contains_point(const Panel& p, double x, double y) {
  return p.x0 <= x && x <= p.x1 && p.y0 <= y && y <= p.y1;
}

namespace {

class Integrator {
 public:
  Integrator(const Integrand2D& f, const Region2D& region,
             const QuadratureConfig& c)
      : f_(f),
        region_(region),
        c_(c),
        gu_(gauss_legendre(c.nodes_u)),
        gv_(gauss_legendre(c.nodes_v)) {}

  double panel(const Panel& p) {
    const double hx = p.x1 - p.x0, hy = p.y1 - p.y0;
    CompensatedSum s;
    for (int i = 0; i < c_.nodes_u; ++i) {
      const double x = p.x0 + hx * gu_.x[i];
      for (int j = 0; j < c_.nodes_v; ++j) {
        const double y = p.y0 + hy * gv_.x[j];
        const double v = f_(x, y);
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::kDomain, "integrand is not finite");
        }
        out_.max_abs_integrand = std::max(out_.max_abs_integrand, std::abs(v));
        s.add(gu_.w[i] * gv_.w[j] * v);
      }
    }
    out_.evaluations += static_cast<long>(c_.nodes_u) * c_.nodes_v;
    return s.value() * hx * hy;
  }

  void refine(const Panel& p, double coarse, int depth, double tol_density) {
    const double xm = 0.5 * (p.x0 + p.x1), ym = 0.5 * (p.y0 + p.y1);
    const Panel kids[4] = {{p.x0, xm, p.y0, ym},
                           {xm, p.x1, p.y0, ym},
                           {p.x0, xm, ym, p.y1},
                           {xm, p.x1, ym, p.y1}};
    double fine[4];
    for (int k = 0; k < 4; ++k) fine[k] = panel(kids[k]);
    const double sum = fine[0] + fine[1] + fine[2] + fine[3];
    const double diff = std::abs(sum - coarse);
    const double area = (p.x1 - p.x0) * (p.y1 - p.y0);
    const bool forced = region_.forced && region_.forced(p);
    if (depth < c_.max_depth && (forced || diff > tol_density * area)) {
      for (int k = 0; k < 4; ++k) refine(kids[k], fine[k], depth + 1, tol_density);
      return;
    }
    total_.add(sum);
    error_.add(diff);
  }

  Integral run() {
    std::vector<double> xs = splits(region_.xs);
    std::vector<double> ys = splits(region_.ys);
    std::vector<Panel> cells;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
        const Panel p{xs[i], xs[i + 1], ys[j], ys[j + 1]};
        if (region_.include && !region_.include(p)) continue;
        cells.push_back(p);
      }
    }
    std::vector<double> coarse(cells.size());
    CompensatedSum est;
    double area = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      coarse[k] = panel(cells[k]);
      est.add(coarse[k]);
      area += (cells[k].x1 - cells[k].x0) * (cells[k].y1 - cells[k].y0);
    }
    const double target = std::max(c_.abs_tol, c_.rel_tol * std::abs(est.value()));
    const double density = area > 0.0 ? target / area : 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      refine(cells[k], coarse[k], 0, density);
    }
    out_.value = total_.value();
    out_.error = error_.value();
    const double final_target =
        std::max(c_.abs_tol, c_.rel_tol * std::abs(out_.value));
    out_.converged = out_.error <= final_target;
    return out_;
  }

 private:
  std::vector<double> splits(std::vector<double> bps) const {
    for (double& b : bps) b = std::clamp(b, 0.0, 1.0);
    bps.push_back(0.0);
    bps.push_back(1.0);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
      const double a = bps[i], b = bps[i + 1];
      const int k = std::max(1, static_cast<int>(std::ceil((b - a) * c_.base_panels - 1e-9)));
      for (int s = 0; s < k; ++s) out.push_back(a + (b - a) * s / k);
    }
    out.push_back(bps.back());
    return out;
  }

  const Integrand2D& f_;
  const Region2D& region_;
  const QuadratureConfig& c_;
  GaussRule gu_, gv_;
  Integral out_;
  CompensatedSum total_, error_;
};

}  // namespace

Integral integrate_2d(const Integrand2D& f, const Region2D& region,
                      const QuadratureConfig& config) {
  config.check();
  return Integrator(f, region, config).run();
}

}  // namespace mge

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

#include "mge/curve.hpp"

#include "mge/error.hpp"

#include <algorithm>
#include <cmath>

namespace mge {

namespace {

void hermite_eval(const HermiteCurve& h, double t, Point3& x, Vec3& dx) {
  const int n = static_cast<int>(h.points.size());
  const double segs = n - 1;
  const double u = std::clamp(t, 0.0, 1.0) * segs;
  int k = std::min(static_cast<int>(u), n - 2);
  const double s = u - k;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  const double dt = 1.0 / segs;  // tangents are per unit t
  const Vec3& p0 = h.points[k];
  const Vec3& p1 = h.points[k + 1];
  const Vec3 m0 = h.tangents[k] * dt;
  const Vec3 m1 = h.tangents[k + 1] * dt;
  x = h00 * p0 + h10 * m0 + h01 * p1 + h11 * m1;
  const double d00 = 6 * s2 - 6 * s;
  const double d10 = 3 * s2 - 4 * s + 1;
  const double d01 = -6 * s2 + 6 * s;
  const double d11 = 3 * s2 - 2 * s;
  dx = (d00 * p0 + d10 * m0 + d01 * p1 + d11 * m1) * segs;
}

}  // namespace

Vec3 ArcCurve::default_ref(const Vec3& n) {
  const Vec3 seed = std::abs(n.x()) > 0.9 ? Vec3::UnitY() : Vec3::UnitX();
  return (seed - seed.dot(n) * n).normalized();
}

ArcCurve ArcCurve::make(const Point3& center, const Vec3& normal,
                        double radius, double angle0, double angle1) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "arc radius must be positive");
  }
  if (angle0 == angle1) {
    throw Error(ErrorCode::kDegenerateInput, "arc with zero angular extent");
  }
  const Vec3 n = Dir3::normalize(normal).vec();
  return ArcCurve{center, n, radius, angle0, angle1, default_ref(n)};
}

SampledCurve SampledCurve::fit(std::vector<Point3> pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "samples curve needs >= 2 points");
  }
  // Natural cubic spline on nodes spaced h = 1/(n-1); solve for node
  // derivatives D_k:  D_{k-1} + 4 D_k + D_{k+1} = 3 (P_{k+1} - P_{k-1}) / h
  // with natural ends 2 D_0 + D_1 = 3 (P_1 - P_0) / h.
  const double h = 1.0 / (n - 1);
  std::vector<Vec3> rhs(n);
  std::vector<double> diag(n, 4.0), upper(n, 1.0), lower(n, 1.0);
  diag[0] = 2.0;
  diag[n - 1] = 2.0;
  rhs[0] = 3.0 * (pts[1] - pts[0]) / h;
  rhs[n - 1] = 3.0 * (pts[n - 1] - pts[n - 2]) / h;
  for (int k = 1; k < n - 1; ++k) rhs[k] = 3.0 * (pts[k + 1] - pts[k - 1]) / h;
  // Thomas algorithm
  for (int k = 1; k < n; ++k) {
    const double w = lower[k] / diag[k - 1];
    diag[k] -= w * upper[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  std::vector<Vec3> d(n);
  d[n - 1] = rhs[n - 1] / diag[n - 1];
  for (int k = n - 2; k >= 0; --k) d[k] = (rhs[k] - upper[k] * d[k + 1]) / diag[k];
  SampledCurve out;
  out.spline = HermiteCurve{pts, std::move(d)};
  out.points = std::move(pts);
  return out;
}

EdgeCurve::EdgeCurve(HermiteCurve h) {
  if (h.points.size() < 2 || h.points.size() != h.tangents.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "hermite curve needs >= 2 nodes and one tangent per node");
  }
  rep_ = std::move(h);
}

EdgeCurve::Kind EdgeCurve::kind() const {
  return static_cast<Kind>(rep_.index());
}

void EdgeCurve::evaluate(double t, Point3& x, Vec3& dx) const {
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ArcCurve>) {
          const double span = c.angle1 - c.angle0;
          const double a = c.angle0 + t * span;
          const Vec3 e2 = c.normal.cross(c.ref);
          const double ca = std::cos(a), sa = std::sin(a);
          x = c.center + c.radius * (ca * c.ref + sa * e2);
          dx = c.radius * span * (-sa * c.ref + ca * e2);
        } else if constexpr (std::is_same_v<T, HermiteCurve>) {
          hermite_eval(c, t, x, dx);
        } else if constexpr (std::is_same_v<T, SampledCurve>) {
          hermite_eval(c.spline, t, x, dx);
        } else if constexpr (std::is_same_v<T, ReparamCurve>) {
          c.base->evaluate(c.map.value(t), x, dx);
          dx *= c.map.derivative(t);
        } else {
          c.base->evaluate(1.0 - t, x, dx);
          dx = -dx;
        }
      },
      rep_);
}

Point3 EdgeCurve::position(double t) const {
  Point3 x;
  Vec3 dx;
  evaluate(t, x, dx);
  return x;
}

Vec3 EdgeCurve::derivative(double t) const {
  Point3 x;
  Vec3 dx;
  evaluate(t, x, dx);
  return dx;
}

double EdgeCurve::approximate_length(int samples) const {
  double len = 0.0;
  Point3 prev = position(0.0);
  for (int k = 1; k <= samples; ++k) {
    const Point3 cur = position(static_cast<double>(k) / samples);
    len += (cur - prev).norm();
    prev = cur;
  }
  return len;
}

EdgeCurve reparametrize(const EdgeCurve& e, ParameterMap map) {
  if (!map.value || !map.derivative) {
    throw Error(ErrorCode::kInvalidArgument, "parameter map is empty");
  }
  if (std::abs(map.value(0.0)) > 1e-12 || std::abs(map.value(1.0) - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument,
                "parameter map must fix 0 and 1");
  }
  constexpr int kGrid = 1024;
  double prev = map.value(0.0);
  for (int k = 1; k <= kGrid; ++k) {
    const double s = static_cast<double>(k) / kGrid;
    const double cur = map.value(s);
    if (!(cur > prev) || !(map.derivative(s) >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "parameter map is not strictly increasing");
    }
    prev = cur;
  }
  return EdgeCurve(ReparamCurve{std::make_shared<const EdgeCurve>(e), std::move(map)});
}

EdgeCurve reversed(const EdgeCurve& e) {
  return EdgeCurve(ReversedCurve{std::make_shared<const EdgeCurve>(e)});
}

EdgeCurve resample_hermite(
    const EdgeCurve& e, int nodes,
    const std::function<void(const Point3&, const Vec3&, Point3&, Vec3&)>& f) {
  if (nodes < 2) {
    throw Error(ErrorCode::kInvalidArgument, "resampling needs >= 2 nodes");
  }
  HermiteCurve h;
  h.points.resize(nodes);
  h.tangents.resize(nodes);
  for (int k = 0; k < nodes; ++k) {
    Point3 x;
    Vec3 dx;
    e.evaluate(static_cast<double>(k) / (nodes - 1), x, dx);
    f(x, dx, h.points[k], h.tangents[k]);
  }
  return EdgeCurve(std::move(h));
}

}  // namespace mge

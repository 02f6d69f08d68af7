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

#include "mge/geom.hpp"

#include "mge/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mge {

namespace {

constexpr double kIncidenceTol = 1e-8;

Point4 householder_to_north(const Point4& pole, const Point4& x) {
  const Point4 north(0, 0, 0, 1);
  Point4 w = pole - north;
  const double wn = w.squaredNorm();
  if (wn < 1e-30) return x;
  return x - 2.0 * w * (w.dot(x) / wn);
}

}  // namespace

Dir3 Dir3::normalize(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kDegenerateInput, "zero or non-finite direction");
  }
  return Dir3(v / n);
}

double angle_between(const Vec3& a, const Vec3& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw Error(ErrorCode::kDegenerateInput, "angle of a zero vector");
  }
  return kernel::unit_angle<Vec3>(a / na, b / nb);
}

OrientedCircleOrLine OrientedCircleOrLine::circle(const Point3& center,
                                                  double radius,
                                                  const Dir3& normal) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "circle radius must be positive");
  }
  return OrientedCircleOrLine(Kind::kCircle, center, radius, normal);
}

OrientedCircleOrLine OrientedCircleOrLine::line(const Point3& base,
                                                const Dir3& direction) {
  return OrientedCircleOrLine(Kind::kLine, base, 0.0, direction);
}

double OrientedCircleOrLine::distance_to(const Point3& p) const {
  const Vec3 r = p - point_;
  if (kind_ == Kind::kLine) {
    return (r - r.dot(dir_.vec()) * dir_.vec()).norm();
  }
  const double h = r.dot(dir_.vec());
  const double in_plane = (r - h * dir_.vec()).norm();
  return std::hypot(h, in_plane - radius_);
}

bool OrientedCircleOrLine::contains(const Point3& p, double rel_tol) const {
  const double scale =
      kind_ == Kind::kLine ? std::max(1.0, (p - point_).norm()) : radius_;
  return distance_to(p) <= rel_tol * scale;
}

OrientedCircleOrLine circle_through_points(const Point3& a, const Point3& b,
                                           const Point3& c) {
  const Vec3 u = b - a;
  const Vec3 w = c - a;
  const double spread = std::max({u.norm(), w.norm(), (c - b).norm()});
  if (u.norm() == 0.0 || w.norm() == 0.0 || (c - b).norm() == 0.0) {
    throw Error(ErrorCode::kDegenerateInput, "coincident points");
  }
  const Vec3 n = u.cross(w);
  const double n2 = n.squaredNorm();
  // circumradius = |u||w||c-b| / (2|n|)
  const double radius_estimate =
      u.norm() * w.norm() * (c - b).norm() / (2.0 * std::sqrt(n2));
  if (n2 == 0.0 || radius_estimate > kCollinearRadiusRatio * spread) {
    const Vec3 dir = kernel::three_point_end_direction<Vec3>(a, b, c);
    return OrientedCircleOrLine::line(a, Dir3::normalize(dir));
  }
  const Point3 center =
      a + (u.squaredNorm() * w.cross(n) + w.squaredNorm() * n.cross(u)) /
              (2.0 * n2);
  return OrientedCircleOrLine::circle(center, (a - center).norm(),
                                      Dir3::normalize(n));
}

OrientedCircleOrLine tangent_circle(const Point3& p, const Dir3& d,
                                    const Point3& q) {
  const Vec3 w = q - p;
  const double wn = w.norm();
  if (wn == 0.0) {
    throw Error(ErrorCode::kDegenerateInput, "tangent circle through p = q");
  }
  const Vec3 perp = w - w.dot(d.vec()) * d.vec();
  const double pn = perp.norm();
  // radius = |w|^2 / (2 |perp|)
  if (pn == 0.0 || wn * wn / (2.0 * pn) > kCollinearRadiusRatio * wn) {
    return OrientedCircleOrLine::line(p, d);
  }
  const double radius = wn * wn / (2.0 * pn);
  const Point3 center = p + radius * perp / pn;
  const Vec3 radial = (p - center) / radius;
  return OrientedCircleOrLine::circle(center, radius,
                                      Dir3::normalize(radial.cross(d.vec())));
}

Dir3 tangent_at(const OrientedCircleOrLine& c, const Point3& p) {
  if (!c.contains(p, kIncidenceTol)) {
    throw Error(ErrorCode::kIncidence, "point does not lie on the circle");
  }
  if (c.is_line()) return c.direction();
  return Dir3::normalize(c.normal().vec().cross(p - c.center()));
}

double angle_between_circles_at(const OrientedCircleOrLine& c1,
                                const OrientedCircleOrLine& c2,
                                const Point3& p) {
  return kernel::unit_angle<Vec3>(tangent_at(c1, p).vec(),
                                  tangent_at(c2, p).vec());
}

double conformal_angle_theta(const PointTangent& first,
                             const PointTangent& second) {
  if ((first.point - second.point).norm() == 0.0) {
    throw Error(ErrorCode::kDegenerateInput, "coincident base points");
  }
  const auto c1 = tangent_circle(first.point, first.tangent, second.point);
  const auto c2 = tangent_circle(second.point, second.tangent, first.point);
  return angle_between_circles_at(c1, c2, second.point);
}

double beta_angle(const Point3& v, const Point3& p1,
                  const PointTangent& second) {
  const auto through = circle_through_points(v, p1, second.point);
  const auto tangent = tangent_circle(second.point, second.tangent, p1);
  return angle_between_circles_at(through, tangent, second.point);
}

MobiusMap& MobiusMap::then_invert(const Point3& center, double radius) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "inversion radius must be > 0");
  }
  ops_.emplace_back(SphereInversion{center, radius});
  return *this;
}

MobiusMap& MobiusMap::then_similarity(const Similarity& s) {
  if (!(s.scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "similarity scale must be > 0");
  }
  const Mat3 rtr = s.rotation.transpose() * s.rotation;
  if (!rtr.isApprox(Mat3::Identity(), 1e-9)) {
    throw Error(ErrorCode::kInvalidArgument, "similarity rotation not orthogonal");
  }
  ops_.emplace_back(s);
  return *this;
}

namespace {

struct ApplyOp {
  Point3& x;
  void operator()(const SphereInversion& inv) const {
    const Vec3 r = x - inv.center;
    const double r2 = r.squaredNorm();
    if (r2 == 0.0) {
      throw Error(ErrorCode::kPole, "evaluation at an inversion center");
    }
    x = inv.center + inv.radius * inv.radius * r / r2;
  }
  void operator()(const Similarity& s) const {
    x = s.scale * (s.rotation * x) + s.translation;
  }
};

}  // namespace

Point3 MobiusMap::apply(const Point3& x) const {
  Point3 y = x;
  for (const auto& op : ops_) std::visit(ApplyOp{y}, op);
  return y;
}

Vec3 MobiusMap::push_forward(const Point3& x, const Vec3& v) const {
  Point3 y = x;
  Vec3 t = v;
  for (const auto& op : ops_) {
    if (const auto* inv = std::get_if<SphereInversion>(&op)) {
      const Vec3 r = y - inv->center;
      const double r2 = r.squaredNorm();
      if (r2 == 0.0) {
        throw Error(ErrorCode::kPole, "differential at an inversion center");
      }
      // D = (R^2 / |r|^2) (I - 2 r r^T / |r|^2)
      t = (inv->radius * inv->radius / r2) * (t - 2.0 * r * (r.dot(t) / r2));
    } else {
      const auto& s = std::get<Similarity>(op);
      t = s.scale * (s.rotation * t);
    }
    std::visit(ApplyOp{y}, op);
  }
  return t;
}

MobiusMap MobiusMap::inverse() const {
  MobiusMap inv;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    if (const auto* i = std::get_if<SphereInversion>(&*it)) {
      inv.ops_.emplace_back(*i);
    } else {
      const auto& s = std::get<Similarity>(*it);
      Similarity r;
      r.rotation = s.rotation.transpose();
      r.scale = 1.0 / s.scale;
      r.translation = -(r.scale * (r.rotation * s.translation));
      inv.ops_.emplace_back(r);
    }
  }
  return inv;
}

std::vector<Point3> MobiusMap::poles() const {
  std::vector<Point3> out;
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    const auto* inv = std::get_if<SphereInversion>(&ops_[k]);
    if (inv == nullptr) continue;
    MobiusMap prefix;
    prefix.ops_.assign(ops_.begin(), ops_.begin() + static_cast<long>(k));
    try {
      out.push_back(prefix.inverse().apply(inv->center));
    } catch (const Error&) {
      // The center is the image of infinity under the prefix; nothing finite
      // maps onto it.
    }
  }
  return out;
}

Point3 stereographic_project(const Point4& pole, const Point4& x) {
  const Point4 y = householder_to_north(pole.normalized(), x);
  const double denom = 1.0 - y[3];
  if (denom < 1e-14) {
    throw Error(ErrorCode::kPole, "stereographic projection of the pole");
  }
  return y.head<3>() / denom;
}

Vec3 stereographic_push_forward(const Point4& pole, const Point4& x,
                                const Point4& v) {
  const Point4 pn = pole.normalized();
  const Point4 y = householder_to_north(pn, x);
  // Householder reflection is linear: it maps v the same way.
  const Point4 dy = householder_to_north(pn, v);
  const double denom = 1.0 - y[3];
  if (denom < 1e-14) {
    throw Error(ErrorCode::kPole, "stereographic projection of the pole");
  }
  return dy.head<3>() / denom + y.head<3>() * (dy[3] / (denom * denom));
}

}  // namespace mge

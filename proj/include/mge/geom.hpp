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

// Oriented circles and lines in R^3, angles between them, Möbius maps and
// the stereographic chart of the unit 3-sphere.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <variant>
#include <vector>

namespace mge {

using Vec3 = Eigen::Vector3d;
using Point3 = Eigen::Vector3d;
using Point4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

/// Unit vector in R^3. Construction normalizes and rejects zero input.
class Dir3 {
 public:
  static Dir3 normalize(const Vec3& v);

  const Vec3& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  Dir3 operator-() const { return Dir3(-v_); }

 private:
  explicit Dir3(const Vec3& unit) : v_(unit) {}
  Vec3 v_;
};

/// Unsigned angle in [0, pi] between two nonzero vectors.
double angle_between(const Vec3& a, const Vec3& b);

class OrientedCircleOrLine {
 public:
  enum class Kind { kCircle, kLine };

  /// Counterclockwise traversal seen from the tip of `normal`.
  static OrientedCircleOrLine circle(const Point3& center, double radius,
                                     const Dir3& normal);
  static OrientedCircleOrLine line(const Point3& base, const Dir3& direction);

  Kind kind() const { return kind_; }
  bool is_line() const { return kind_ == Kind::kLine; }

  // circle accessors
  const Point3& center() const { return point_; }
  double radius() const { return radius_; }
  const Dir3& normal() const { return dir_; }
  // line accessors
  const Point3& base() const { return point_; }
  const Dir3& direction() const { return dir_; }

  double distance_to(const Point3& p) const;
  /// Relative incidence test; the scale is the radius (circle) or the
  /// distance of `p` from the base point (line), floored at 1.
  bool contains(const Point3& p, double rel_tol = 1e-9) const;

 private:
  OrientedCircleOrLine(Kind kind, const Point3& point, double radius,
                       const Dir3& dir)
      : kind_(kind), point_(point), radius_(radius), dir_(dir) {}

  Kind kind_;
  Point3 point_;
  double radius_;
  Dir3 dir_;
};

/// Circumradius / spread ratio above which a triple counts as collinear.
inline constexpr double kCollinearRadiusRatio = 1e8;

/// Circle (or line) through a, b, c oriented to visit a, b, c in this cyclic
/// order. Collinear triples give a line ordered the same way on the
/// projective line.
OrientedCircleOrLine circle_through_points(const Point3& a, const Point3& b,
                                           const Point3& c);

/// Circle through p and q whose oriented tangent at p is d.
OrientedCircleOrLine tangent_circle(const Point3& p, const Dir3& d,
                                    const Point3& q);

Dir3 tangent_at(const OrientedCircleOrLine& c, const Point3& p);

double angle_between_circles_at(const OrientedCircleOrLine& c1,
                                const OrientedCircleOrLine& c2,
                                const Point3& p);

struct PointTangent {
  Point3 point;
  Dir3 tangent;
};

/// Angle between C(x1,x1,x2) and C(x2,x2,x1), built explicitly from circles.
double conformal_angle_theta(const PointTangent& first,
                             const PointTangent& second);

/// Angle at p2 between the circle through (v, p1, p2), visited in that
/// order, and the circle tangent to the p2 data passing through p1.
double beta_angle(const Point3& v, const Point3& p1,
                  const PointTangent& second);

// Closed-form kernels used by the energy integrands. They agree with the
// circle constructions above and avoid building objects per quadrature node.
namespace kernel {

/// Unit tangent at q of the circle through p tangent to the unit vector d.
/// Works in any dimension.
template <typename V>
V tangent_circle_end_direction(const V& p, const V& d, const V& q) {
  V w = (q - p).normalized();
  return 2.0 * d.dot(w) * w - d;
}

/// Tangent (not normalized) at c of the circle visiting a, b, c in order.
template <typename V>
V three_point_end_direction(const V& a, const V& b, const V& c) {
  V da = a - c;
  V db = b - c;
  return da / da.squaredNorm() - db / db.squaredNorm();
}

/// 2 atan2(|a-b|, |a+b|) for unit vectors.
template <typename V>
double unit_angle(const V& a, const V& b) {
  return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
}

}  // namespace kernel

struct SphereInversion {
  Point3 center;
  double radius;
};

/// x -> scale * rotation * x + translation, scale > 0.
struct Similarity {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  double scale = 1.0;
};

using MobiusPrimitive = std::variant<SphereInversion, Similarity>;

/// Composition of primitives applied front to back.
class MobiusMap {
 public:
  MobiusMap() = default;

  MobiusMap& then_invert(const Point3& center, double radius);
  MobiusMap& then_similarity(const Similarity& s);

  const std::vector<MobiusPrimitive>& primitives() const { return ops_; }
  bool is_identity() const { return ops_.empty(); }

  Point3 apply(const Point3& x) const;
  /// Image of the tangent vector v at x (analytic differential).
  Vec3 push_forward(const Point3& x, const Vec3& v) const;
  MobiusMap inverse() const;
  /// Points of R^3 sent to infinity by some prefix of the composition.
  std::vector<Point3> poles() const;

 private:
  std::vector<MobiusPrimitive> ops_;
};

/// Stereographic projection of the unit 3-sphere from `pole`. With pole
/// (0,0,0,1): (x,y,z,t) -> (x,y,z)/(1-t). Other poles are first moved to
/// (0,0,0,1) by a Householder reflection.
Point3 stereographic_project(const Point4& pole, const Point4& x);

/// Differential of stereographic_project at x applied to v.
Vec3 stereographic_push_forward(const Point4& pole, const Point4& x,
                                const Point4& v);

}  // namespace mge

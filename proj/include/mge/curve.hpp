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

#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace mge {

/// Circular arc. angle(t) = angle0 + t (angle1 - angle0) measured in the
/// plane with basis (ref, normal x ref). When not supplied, ref is the
/// x axis (y axis when the normal is within ~25 degrees of x) projected into
/// the plane.
struct ArcCurve {
  Point3 center;
  Vec3 normal;
  double radius;
  double angle0;
  double angle1;
  Vec3 ref;  // unit, orthogonal to normal

  static ArcCurve make(const Point3& center, const Vec3& normal, double radius,
                       double angle0, double angle1);
  static Vec3 default_ref(const Vec3& unit_normal);
};

/// Piecewise cubic Hermite curve on uniform nodes t_k = k/(N-1). Tangents are
/// derivatives with respect to t.
struct HermiteCurve {
  std::vector<Point3> points;
  std::vector<Vec3> tangents;
};

/// Natural cubic spline through uniformly parametrized samples.
struct SampledCurve {
  std::vector<Point3> points;
  HermiteCurve spline;

  static SampledCurve fit(std::vector<Point3> points);
};

class EdgeCurve;

/// Monotone reparametrization s -> phi(s) of [0,1] fixing the endpoints.
struct ParameterMap {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

struct ReparamCurve {
  std::shared_ptr<const EdgeCurve> base;
  ParameterMap map;
};

struct ReversedCurve {
  std::shared_ptr<const EdgeCurve> base;
};

/// Parametric edge [0,1] -> R^3 with position and first derivative.
class EdgeCurve {
 public:
  enum class Kind { kArc, kHermite, kSamples, kReparam, kReversed };

  EdgeCurve(ArcCurve arc) : rep_(std::move(arc)) {}
  EdgeCurve(HermiteCurve h);
  EdgeCurve(SampledCurve s) : rep_(std::move(s)) {}
  EdgeCurve(ReparamCurve r) : rep_(std::move(r)) {}
  EdgeCurve(ReversedCurve r) : rep_(std::move(r)) {}

  Kind kind() const;

  Point3 position(double t) const;
  Vec3 derivative(double t) const;
  void evaluate(double t, Point3& x, Vec3& dx) const;

  /// Polyline length estimate from `samples` uniform evaluations.
  double approximate_length(int samples = 256) const;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&rep_);
  }

 private:
  std::variant<ArcCurve, HermiteCurve, SampledCurve, ReparamCurve,
               ReversedCurve>
      rep_;
};

/// Same image, same orientation, new speed. Throws kInvalidArgument unless
/// the map is strictly increasing with phi(0)=0, phi(1)=1 (checked on a
/// 1025-point grid).
EdgeCurve reparametrize(const EdgeCurve& e, ParameterMap map);

EdgeCurve reversed(const EdgeCurve& e);

/// Samples `nodes` uniform parameters of `e`, maps them and their derivatives
/// through `f`/`df` and returns the Hermite interpolant.
EdgeCurve resample_hermite(
    const EdgeCurve& e, int nodes,
    const std::function<void(const Point3&, const Vec3&, Point3&, Vec3&)>&
        map_point_and_tangent);

}  // namespace mge

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

#include <doctest.h>

#include <cmath>
#include <random>

#include "mge/error.hpp"
#include "mge/graph.hpp"
#include "mge/intensity.hpp"
#include "support.hpp"

using namespace mge;
using namespace mge::test;

namespace {

const double kTetra = std::acos(-1.0 / 3.0);

TupleConfig random_config(std::mt19937_64& rng, int k, double min_angle) {
  for (;;) {
    std::vector<Vec3> u;
    for (int i = 0; i < k; ++i) u.push_back(random_unit(rng));
    auto w = TupleConfig::make(u);
    if (w.min_angle() > min_angle) return w;
  }
}

// Orthonormal basis of the tangent plane at a unit vector.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& u) {
  const Vec3 seed = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = (seed - seed.dot(u) * u).normalized();
  return {e1, u.cross(e1)};
}

}  // namespace

TEST_CASE("psi values") {
  CHECK(psi(kPi) == 0.0);
  CHECK(psi(kPi / 2) == doctest::Approx(-0.570796).epsilon(1e-6));
  CHECK(psi(2 * kPi / 3) == doctest::Approx(1 - 2 * kPi / (3 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(psi(2 * kPi / 3) == doctest::Approx(-0.209200).epsilon(1e-5));
  // Continuous through the series branch near pi.
  for (double d : {1e-2, 2e-3, 1e-3, 9.99e-4, 1e-5, 1e-9}) {
    const double a = kPi - d;
    const double direct = 1 - (kPi - a) / std::sin(kPi - a);
    CHECK(psi(a) == doctest::Approx(direct).epsilon(1e-7).scale(1e-3));
  }
  for (double a : {0.3, 1.0, 2.0, 3.0, kPi - 5e-4}) {
    const double h = 1e-6;
    CHECK(dpsi(a) == doctest::Approx((psi(a + h) - psi(a - h)) / (2 * h)).epsilon(1e-6));
  }
  CHECK(dpsi(kPi) == 0.0);
}

TEST_CASE("tuple intensity") {
  auto pair = TupleConfig::make({{1, 0, 0}, {0, 1, 0}});
  CHECK(big_psi(pair) == doctest::Approx(1 - kPi / 2).epsilon(1e-14));
  CHECK(big_psi(canonical_config("square4")) == doctest::Approx(4 - 2 * kPi).epsilon(1e-12));
  CHECK(big_psi(canonical_config("square4")) == doctest::Approx(-2.283185).epsilon(1e-6));
  CHECK(big_psi(canonical_config("tetrahedral4")) == doctest::Approx(6 * psi(kTetra)).epsilon(1e-12));
  CHECK(std::abs(big_psi(canonical_config("tetrahedral4")) + 1.833786) < 1e-5);
}

TEST_CASE("tuple construction") {
  CHECK_THROWS_AS(TupleConfig::make({{1, 0, 0}}), Error);
  CHECK_THROWS_AS(TupleConfig::make({{1, 0, 0}, {0, 0, 0}}), Error);
  CHECK_THROWS_AS(TupleConfig::make({{1, 0, 0}, {2, 0, 0}}), Error);
  auto w = TupleConfig::make({{2, 0, 0}, {0, 0, 3}});
  CHECK(w[0].norm() == doctest::Approx(1.0));
  CHECK(canonical_config("straight2").collinear());
  CHECK_FALSE(canonical_config("planar3").collinear());
  CHECK_THROWS_AS(canonical_config("cube8"), Error);
}

TEST_CASE("canonical configurations") {
  for (double a : canonical_config("straight2").angles()) CHECK(a == doctest::Approx(kPi));
  for (double a : canonical_config("planar3").angles()) CHECK(a == doctest::Approx(2 * kPi / 3));
  const auto t = canonical_config("tetrahedral4").angles();
  CHECK(t.size() == 6);
  for (double a : t) CHECK(a == doctest::Approx(kTetra).epsilon(1e-14));
}

TEST_CASE("gradient examples") {
  CHECK(riemannian_gradient(canonical_config("straight2")).norm < 1e-10);
  CHECK(riemannian_gradient(canonical_config("planar3")).norm < 1e-10);
  const double c = std::cos(2 * kPi / 3 + 0.1), s = std::sin(2 * kPi / 3 + 0.1);
  auto bent = TupleConfig::make({{1, 0, 0}, {c, s, 0}, {std::cos(4 * kPi / 3), std::sin(4 * kPi / 3), 0}});
  CHECK(riemannian_gradient(bent).norm > 1e-3);
}

TEST_CASE("property: gradient matches central differences") {
  std::mt19937_64 rng(41);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 4;
    const auto w = random_config(rng, k, 0.2);
    const auto g = riemannian_gradient(w);
    for (int i = 0; i < k; ++i) {
      const auto [e1, e2] = tangent_basis(w[i]);
      CHECK(std::abs(g.components[i].dot(w[i])) < 1e-12);
      for (const Vec3& e : {e1, e2}) {
        auto moved = [&](double t) {
          auto u = w.vectors();
          u[i] = std::cos(t) * w[i] + std::sin(t) * e;
          return big_psi(TupleConfig::make(u));
        };
        const double fd = (moved(h) - moved(-h)) / (2 * h);
        CHECK(g.components[i].dot(e) == doctest::Approx(fd).epsilon(1e-6).scale(std::max(1.0, g.norm)));
      }
    }
  }
}

TEST_CASE("property: rotation invariance and sign independence") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = random_config(rng, 4, 0.1);
    const Mat3 r = Eigen::Quaterniond::UnitRandom().toRotationMatrix();
    std::vector<Vec3> u;
    for (const auto& v : w.vectors()) u.push_back(r * v);
    CHECK(big_psi(TupleConfig::make(u)) == doctest::Approx(big_psi(w)).epsilon(1e-12));
    const auto report = criticality_report(w);
    CHECK(report.phi == -report.psi);
    CHECK(report.gradient_norm == doctest::Approx(riemannian_gradient(w).norm).epsilon(1e-14));
  }
}

TEST_CASE("intensity depends only on tangent directions") {
  // A straight star and a curved star with identical one-sided derivatives.
  const std::vector<Vec3> dirs{{1, 0, 0}, {-0.5, 0.8, 0.1}, {0.2, -0.7, 0.6}};
  std::vector<Vertex> vs{{"o", {0, 0, 0}}};
  std::vector<Edge> straight, curved;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    vs.push_back({"p" + std::to_string(k), dirs[k]});
  }
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    straight.push_back({"e" + std::to_string(k), 0, k + 1, segment({0, 0, 0}, dirs[k])});
    HermiteCurve h{{{0, 0, 0}, dirs[k]}, {3.0 * dirs[k], Vec3(0.3, 1.0, -0.5)}};
    curved.push_back({"e" + std::to_string(k), 0, k + 1, EdgeCurve(h)});
  }
  EmbeddedGraph a(vs, straight), b(vs, curved);
  std::vector<Vec3> ua, ub;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    ua.push_back(outgoing_direction(a, k, 0));
    ub.push_back(outgoing_direction(b, k, 0));
  }
  CHECK(big_psi(TupleConfig::make(ua)) == big_psi(TupleConfig::make(ub)));
}

TEST_CASE("criticality reports") {
  const auto s2 = criticality_report(canonical_config("straight2"));
  CHECK(s2.critical);
  CHECK(s2.expected_zero_modes == 2);
  CHECK(s2.zero_modes == 2);
  CHECK(s2.classification == Classification::kMin);

  const auto p3 = criticality_report(canonical_config("planar3"));
  CHECK(p3.critical);
  CHECK(p3.zero_modes == 3);
  CHECK(p3.classification == Classification::kMin);
  CHECK(p3.phi == doctest::Approx(0.627600).epsilon(1e-6));

  for (const char* name : {"square4", "tetrahedral4"}) {
    const auto r = criticality_report(canonical_config(name));
    CHECK(r.critical);
    CHECK(r.gradient_norm < 1e-8);
  }
  const auto t4 = criticality_report(canonical_config("tetrahedral4"));
  CHECK(t4.zero_modes == 3);
  CHECK(t4.classification == Classification::kMin);

  const double c = std::cos(2 * kPi / 3 + 0.1), s = std::sin(2 * kPi / 3 + 0.1);
  auto bent = TupleConfig::make({{1, 0, 0}, {c, s, 0}, {std::cos(4 * kPi / 3), std::sin(4 * kPi / 3), 0}});
  CHECK(criticality_report(bent).classification == Classification::kNoncritical);
  CHECK(criticality_json(p3).find("\"eigenvalues\"") != std::string::npos);
}

TEST_CASE("local search") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto r2 = local_search(2, seed);
    CHECK(r2.converged);
    CHECK(r2.config.angles()[0] == doctest::Approx(kPi).epsilon(1e-6));

    const auto r3 = local_search(3, seed);
    CHECK(r3.converged);
    for (double a : r3.config.angles()) CHECK(std::abs(a - 2 * kPi / 3) < 1e-5);
    CHECK(std::abs(r3.report.phi - 0.627600) < 1e-5);
  }
  CHECK(local_search(3, 7).report.phi == local_search(3, 7).report.phi);
  CHECK_THROWS_AS(local_search(1, 1), Error);
}

TEST_CASE("critical batch clustering") {
  const auto b = critical_batch(3, 100, 6);
  CHECK(b.runs.size() == 6);
  REQUIRE(b.clusters.size() == 1);
  CHECK(b.clusters[0].count == 6);
  CHECK(b.clusters[0].phi == doctest::Approx(0.627600).epsilon(1e-6));
  CHECK(batch_csv(b).find("seed") == 0);
  CHECK(batch_json(b) == batch_json(critical_batch(3, 100, 6, {}, 2)));
}

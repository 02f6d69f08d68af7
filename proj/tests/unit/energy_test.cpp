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

#include <algorithm>
#include <cmath>
#include <random>

#include "mge/energy.hpp"
#include "mge/error.hpp"
#include "support.hpp"

using namespace mge;
using namespace mge::test;

namespace {

EnergyConvention with_rule(AdjacentRule rule) {
  EnergyConvention c = EnergyConvention::reference();
  c.adjacent = rule;
  return c;
}

// Integrand rebuilt from the explicit circle constructions.
double oracle_integrand(const EmbeddedGraph& g, const PairSpec& p,
                        const EnergyConvention& conv, double t1, double t2) {
  Point3 x1, x2;
  Vec3 d1, d2;
  g.edge(p.i).curve.evaluate(t1, x1, d1);
  g.edge(p.j).curve.evaluate(t2, x2, d2);
  const double principal = d1.norm() * d2.norm() / (x2 - x1).squaredNorm();
  if (p.kind == PairKind::kDisjoint) return principal;
  const PointTangent a{x1, Dir3::normalize(p.sign_i * d1)};
  const PointTangent b{x2, Dir3::normalize(p.sign_j * d2)};
  const double theta = conformal_angle_theta(a, b);
  if (p.kind != PairKind::kAdjacent) return (1 - std::cos(theta)) * principal;
  const double beta = beta_angle(p.corner_point, x1, b);
  const double base = 2 * beta - p.alpha - kPi;
  if (conv.adjacent == AdjacentRule::kLiteral) {
    return (1 - std::cos(theta + base)) * principal;
  }
  REQUIRE(conv.adjacent == AdjacentRule::kSignResolved);
  return (1 - std::max(std::cos(base + theta), std::cos(base - theta))) * principal;
}

}  // namespace

TEST_CASE("integrand examples") {
  std::vector<Vertex> vs{{"a", {0, 0, 0}}, {"b", {3, 1, 2}}};
  std::vector<Edge> es{{"e", 0, 1, segment({0, 0, 0}, {3, 1, 2})}};
  EmbeddedGraph line(vs, es);
  EnergyModel m(line);
  const PairSpec same = m.classify(0, 0);
  CHECK(same.kind == PairKind::kSameEdge);
  for (double t1 : {0.1, 0.4, 0.9}) {
    for (double t2 : {0.0, 0.35, 1.0}) CHECK(m.integrand(same, t1, t2) == doctest::Approx(0.0).epsilon(1e-15));
  }

  auto two = two_segments({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0});
  EnergyModel md(two);
  const PairSpec dis = md.classify(0, 1);
  CHECK(dis.kind == PairKind::kDisjoint);
  CHECK(md.integrand(dis, 0.3, 0.3) == doctest::Approx(1.0).epsilon(1e-15));

  auto circle = load_fixture("circle3.json");
  EnergyModel mc(circle, EnergyConvention::definition());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const PairSpec p = mc.classify(i, j);
      CHECK(p.kind == PairKind::kAdjacent);
      CHECK(p.alpha == doctest::Approx(kPi));
      for (double t1 : {0.05, 0.5, 0.93}) {
        for (double t2 : {0.02, 0.6, 0.97}) {
          CHECK(mc.integrand(p, t1, t2) == doctest::Approx(0.0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("integrand agrees with the circle-construction oracle") {
  auto g = load_fixture("triangle.json");
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (AdjacentRule rule : {AdjacentRule::kSignResolved, AdjacentRule::kLiteral}) {
    EnergyConvention conv = with_rule(rule);
    conv.strand_self_energy = false;
    EnergyModel m(g, conv);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      for (std::size_t j = 0; j < g.edge_count(); ++j) {
        const PairSpec p = m.classify(i, j);
        for (int k = 0; k < 50; ++k) {
          const double t1 = u(rng), t2 = u(rng);
          if (i == j && std::abs(t1 - t2) < 1e-3) continue;
          const double want = oracle_integrand(g, p, conv, t1, t2);
          CHECK(m.integrand(p, t1, t2) == doctest::Approx(want).epsilon(1e-7).scale(std::max(1.0, std::abs(want))));
        }
      }
    }
  }
}

TEST_CASE("pair energy examples") {
  QuadratureConfig q;
  std::vector<Vertex> vs{{"a", {0, 0, 0}}, {"b", {1, 2, 0}}};
  std::vector<Edge> es{{"e", 0, 1, segment({0, 0, 0}, {1, 2, 0})}};
  EmbeddedGraph line(vs, es);
  EnergyModel ml(line);
  CHECK(std::abs(ml.pair_energy(ml.classify(0, 0), q).value) <= 1e-12);

  auto far = two_segments({0, 0, 0}, {1, 0, 0}, {0, 100, 0}, {1, 100, 0});
  EnergyModel mf(far);
  const double value = mf.pair_energy(mf.classify(0, 1), q).value;
  CHECK(value == doctest::Approx(1e-4).epsilon(0.02));
  // Midpoint Riemann sum of 1 / (100^2 + (s - t)^2).
  const int n = 400;
  double riemann = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double s = (a + 0.5) / n, t = (b + 0.5) / n;
      riemann += 1.0 / (1e4 + (s - t) * (s - t));
    }
  }
  riemann /= static_cast<double>(n) * n;
  CHECK(value == doctest::Approx(riemann).epsilon(1e-8));

  auto circle = load_fixture("circle3.json");
  EnergyModel mc(circle, EnergyConvention::definition());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::abs(mc.pair_energy(mc.classify(i, j), q).value) <= 1e-10);
    }
  }
}

TEST_CASE("subdivided round circle has zero energy") {
  auto circle = load_fixture("circle3.json");
  for (const auto& conv : {EnergyConvention::reference(), EnergyConvention::definition()}) {
    const auto r = total_energy(circle, {}, conv);
    CHECK(std::abs(r.total) < 1e-4);
    CHECK(r.converged);
  }
  CHECK(find_strands(circle).count() == 1);
}

TEST_CASE("straight wedge") {
  auto w = load_fixture("wedge_90.json");
  const auto signed_total = total_energy(w, {}, with_rule(AdjacentRule::kSignResolved));
  CHECK(std::abs(signed_total.total) < 1e-10);
  const auto reflected = total_energy(w, {}, with_rule(AdjacentRule::kReflected));
  CHECK(std::abs(reflected.total) < 1e-10);
  EnergyModel lit(w, with_rule(AdjacentRule::kLiteral));
  EnergyModel sr(w, with_rule(AdjacentRule::kSignResolved));
  const PairSpec p = lit.classify(0, 1);
  double lit_max = 0.0, sr_max = 0.0;
  for (int a = 1; a < 20; ++a) {
    for (int b = 1; b < 20; ++b) {
      lit_max = std::max(lit_max, lit.integrand(p, a / 20.0, b / 20.0));
      sr_max = std::max(sr_max, sr.integrand(p, a / 20.0, b / 20.0));
    }
  }
  // The literal reading does not vanish on a straight corner.
  CHECK(lit_max > 0.1);
  CHECK(sr_max < 1e-12);
}

TEST_CASE("ordered and unordered counting") {
  auto far = two_segments({0, 0, 0}, {1, 0, 0}, {0.2, 3, 1}, {1, 2, 0});
  const auto ref = total_energy(far, {}, EnergyConvention::reference());
  const auto def = total_energy(far, {}, EnergyConvention::definition());
  CHECK(ref.pair_weight == 0.5);
  CHECK(def.pair_weight == 1.0);
  CHECK(def.total == doctest::Approx(2 * ref.total).epsilon(1e-12));
  REQUIRE(ref.pairs.size() == 4);
  CHECK(ref.pairs[1].value == ref.pairs[2].value);
}

TEST_CASE("property: integrand and pair energies are nonnegative") {
  auto g = load_fixture("triangle.json");
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (AdjacentRule rule :
       {AdjacentRule::kSignResolved, AdjacentRule::kReflected, AdjacentRule::kLiteral}) {
    EnergyModel m(g, with_rule(rule));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const PairSpec p = m.classify(i, j);
        for (int k = 0; k < 200; ++k) {
          const double t1 = u(rng), t2 = u(rng);
          if (i == j && t1 == t2) continue;
          if (p.has_corner && t1 == p.corner_i && t2 == p.corner_j) continue;
          CHECK(m.integrand(p, t1, t2) >= 0.0);
        }
      }
    }
  }
  const auto r = total_energy(g);
  for (const auto& pe : r.pairs) CHECK(pe.value >= -pe.error);
}

TEST_CASE("property: integrand stays bounded near the corner") {
  auto g = load_fixture("triangle.json");
  EnergyModel m(g);
  const PairSpec p = m.classify(0, 1);
  REQUIRE(p.kind == PairKind::kAdjacent);
  double prev_cap = 0.0;
  for (int level = 2; level <= 6; ++level) {
    const double h = std::pow(10.0, -level);
    double cap = 0.0;
    for (double a : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const double t1 = p.corner_i == 1.0 ? 1.0 - h : h;
      const double s = std::min(1.0, a * h);
      const double t2 = p.corner_j == 0.0 ? s : 1.0 - s;
      cap = std::max(cap, m.integrand(p, t1, t2));
    }
    if (level > 2) CHECK(cap <= 2.0 * prev_cap + 1.0);
    prev_cap = cap;
  }
  CHECK(std::isfinite(prev_cap));
}

TEST_CASE("property: parametrization and orientation invariance") {
  auto g = load_fixture("triangle.json");
  const auto base = total_energy(g);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto rep = g.with_edge_curve(
        e, reparametrize(g.edge(e).curve, {[](double s) { return s + 0.4 * s * (1 - s); },
                                           [](double s) { return 1 + 0.4 * (1 - 2 * s); }}));
    const auto r1 = total_energy(rep);
    CHECK(std::abs(r1.total - base.total) <= 2 * (r1.error + base.error) + 1e-12);

    const auto r2 = total_energy(g.with_edge_reversed(e));
    CHECK(std::abs(r2.total - base.total) <= 2 * (r2.error + base.error) + 1e-12);
  }
}

TEST_CASE("reports are deterministic") {
  auto g = load_fixture("triangle.json");
  QuadratureConfig one;
  one.threads = 1;
  QuadratureConfig two;
  two.threads = 3;
  const auto a = total_energy(g, one);
  const auto b = total_energy(g, two);
  CHECK(report_csv(a, g) == report_csv(b, g));
  CHECK(a.total == b.total);
  const std::string csv = report_csv(a, g);
  CHECK(csv.rfind("pair_i,pair_j,kind,value,err\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
  CHECK(report_json(a, g).find("\"total\"") != std::string::npos);
}

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 40);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("convention names") {
  CHECK(EnergyConvention::from_name("reference").name() == "reference");
  CHECK(EnergyConvention::from_name("definition").name() == "definition");
  CHECK(with_rule(AdjacentRule::kLiteral).name() == "custom");
  CHECK_THROWS_AS(EnergyConvention::from_name("other"), Error);
}

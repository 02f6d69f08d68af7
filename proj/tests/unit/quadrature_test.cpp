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
#include <vector>

#include "mge/error.hpp"
#include "mge/quadrature.hpp"

using namespace mge;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {1, 2, 5, 8, 9, 16}) {
    const GaussRule r = gauss_legendre(n);
    REQUIRE(r.x.size() == static_cast<std::size_t>(n));
    for (int deg = 0; deg < 2 * n; ++deg) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += r.w[k] * std::pow(r.x[k], deg);
      CHECK(s == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), Error);
}

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s.add(1.0);
  for (int k = 0; k < 1000; ++k) s.add(1e-17);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-14).epsilon(1e-10));

  CompensatedSum t;
  for (double v : {1e100, 1.0, -1e100}) t.add(v);
  CHECK(t.value() == 1.0);
}

TEST_CASE("smooth integrand") {
  QuadratureConfig q;
  Region2D r;
  auto res = integrate_2d([](double x, double y) { return std::exp(x + 2 * y); }, r, q);
  const double exact = (std::exp(1.0) - 1) * (std::exp(2.0) - 1) / 2;
  CHECK(res.value == doctest::Approx(exact).epsilon(1e-13));
  CHECK(res.converged);
  CHECK(res.error <= 1e-10);
  CHECK(res.evaluations > 0);
}

TEST_CASE("breakpoints and excluded cells") {
  QuadratureConfig q;
  Region2D r;
  r.xs = {0.0, 0.5, 1.0};
  r.ys = {0.0, 0.25, 1.0};
  r.include = [](const Panel& p) { return p.x0 >= 0.5 || p.y0 >= 0.25; };
  auto res = integrate_2d([](double, double) { return 1.0; }, r, q);
  CHECK(res.value == doctest::Approx(1.0 - 0.125).epsilon(1e-14));
}

TEST_CASE("diagonal singularity of log type") {
  QuadratureConfig q;
  q.max_depth = 10;
  Region2D r;
  r.forced = touches_diagonal;
  // Integral of log|x - y| over the unit square is -3/2.
  auto res = integrate_2d(
      [](double x, double y) { return x == y ? 0.0 : std::log(std::abs(x - y)); }, r, q);
  CHECK(res.value == doctest::Approx(-1.5).epsilon(1e-4));
}

TEST_CASE("corner singularity") {
  QuadratureConfig q;
  q.max_depth = 12;
  Region2D r;
  r.forced = [](const Panel& p) { return contains_point(p, 0.0, 0.0); };
  // 1/sqrt(x^2 + y^2) integrates to 2 asinh(1) over the unit square.
  auto res = integrate_2d([](double x, double y) { return 1.0 / std::hypot(x, y); }, r, q);
  CHECK(res.value == doctest::Approx(2 * std::asinh(1.0)).epsilon(1e-3));
}

TEST_CASE("panel predicates") {
  CHECK(touches_diagonal({0.0, 0.5, 0.25, 0.75}));
  CHECK_FALSE(touches_diagonal({0.0, 0.25, 0.5, 0.75}));
  CHECK(contains_point({0.0, 0.5, 0.0, 0.5}, 0.0, 0.0));
  CHECK_FALSE(contains_point({0.5, 1.0, 0.0, 0.5}, 0.0, 0.0));
}

TEST_CASE("configuration checks and non-finite values") {
  QuadratureConfig bad;
  bad.nodes_u = 0;
  CHECK_THROWS_AS(bad.check(), Error);
  bad = QuadratureConfig{};
  bad.rel_tol = -1;
  CHECK_THROWS_AS(bad.check(), Error);

  try {
    integrate_2d([](double, double) { return std::nan(""); }, Region2D{}, QuadratureConfig{});
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
  }
}

TEST_CASE("deterministic and thread-count independent") {
  auto f = [](double x, double y) { return std::sin(7 * x) * std::cos(3 * y) + 1.0 / (0.01 + (x - y) * (x - y)); };
  Region2D r;
  r.forced = touches_diagonal;
  QuadratureConfig a;
  a.threads = 1;
  QuadratureConfig b;
  b.threads = 4;
  const auto ra = integrate_2d(f, r, a);
  const auto rb = integrate_2d(f, r, b);
  CHECK(ra.value == rb.value);
  CHECK(ra.error == rb.error);
}

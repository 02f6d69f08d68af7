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
#include <set>

#include "mge/energy.hpp"
#include "mge/error.hpp"
#include "mge/toric.hpp"
#include "support.hpp"

using namespace mge;
using namespace mge::test;

namespace {

ErrorCode spec_error(const ToricSpec& s) {
  try {
    validate_spec(s);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;  // sentinel: no error
}

ErrorCode build_error(const ToricSpec& s, const ToricOptions& o = {}) {
  try {
    build_toric_graph(s, o);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK(spec_error({2, 1, 1, 1}) == ErrorCode::kIo);
  CHECK(spec_error({1, 0, 3, 3}) == ErrorCode::kIo);
  CHECK(spec_error({2, 2, 1, 1}) == ErrorCode::kInvalidArgument);
  CHECK(spec_error({1, 1, 1, 2}) == ErrorCode::kInvalidArgument);
  CHECK(spec_error({1, 2, 1, 1}) == ErrorCode::kInvalidArgument);
  CHECK(spec_error({2, 1, 1, 0}) == ErrorCode::kInvalidArgument);

  const auto s = ToricSpec::parse("3,1,1,1");
  CHECK(s.p == 3);
  CHECK(s.q == 1);
  CHECK(s.to_string() == "(3,1;1,1)");
  CHECK_THROWS_AS(ToricSpec::parse("3,1,1"), Error);
  CHECK_THROWS_AS(ToricSpec::parse("a,b,c,d"), Error);
}

TEST_CASE("flat lattice combinatorics") {
  const struct {
    ToricSpec s;
    std::size_t v;
  } cases[] = {{{1, 0, 3, 3}, 9}, {{2, 1, 1, 1}, 5}, {{1, 1, 2, 2}, 8},
               {{3, 1, 1, 1}, 10}, {{2, 1, 2, 1}, 10}};
  for (const auto& c : cases) {
    const auto L = build_flat_lattice(c.s);
    CHECK(L.vertices.size() == c.v);
    CHECK(L.arcs.size() == 2 * c.v);
    std::vector<int> degree(L.vertices.size(), 0);
    for (const auto& a : L.arcs) {
      ++degree[a.from];
      ++degree[a.to];
    }
    for (int d : degree) CHECK(d == 4);
    std::set<std::array<std::int64_t, 2>> keys(L.keys.begin(), L.keys.end());
    CHECK(keys.size() == L.keys.size());
    CHECK((L.horizontal_spacing == L.vertical_spacing) == (c.s.m == c.s.n));
  }
}

TEST_CASE("Clifford embedding") {
  const Point4 o = clifford_embed(0, 0);
  CHECK((o - Point4(1, 0, 1, 0) / std::sqrt(2.0)).norm() < 1e-15);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int k = 0; k < 100; ++k) {
    const Point4 x = clifford_embed(u(rng), u(rng));
    CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x[0] * x[0] + x[1] * x[1] == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("toric graphs") {
  const auto g = build_toric_graph({1, 0, 3, 3});
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 18);
  CHECK(validate(g).ok());
  for (const auto& a : vertex_angles(g).all()) {
    const bool straight = std::abs(a.alpha - kPi) < 1e-6;
    CHECK((straight || std::abs(a.alpha - kPi / 2) < 1e-6));
  }

  const auto h = build_toric_graph({2, 1, 1, 1});
  CHECK(h.vertex_count() == 5);
  for (std::size_t v = 0; v < h.vertex_count(); ++v) CHECK(h.degree(v) == 4);
  CHECK(validate(h).ok());
  // Each closed geodesic is one strand.
  CHECK(find_strands(h).count() == 2);
  CHECK(find_strands(g).count() == 6);

  for (const auto& s : {ToricSpec{1, 1, 2, 2}, ToricSpec{3, 1, 1, 1}}) {
    CHECK(validate(build_toric_graph(s)).ok());
  }
}

TEST_CASE("right angles between crossing geodesics") {
  const auto g = build_toric_graph({3, 1, 1, 1});
  const auto L = build_flat_lattice({3, 1, 1, 1});
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (const auto& a : vertex_angles(g).at(v)) {
      const bool crossing = L.arcs[a.edge_a].horizontal != L.arcs[a.edge_b].horizontal;
      CHECK(a.alpha == doctest::Approx(crossing ? kPi / 2 : kPi).epsilon(1e-6));
    }
  }
}

TEST_CASE("rejected graphs") {
  CHECK(build_error({1, 0, 1, 1}) == ErrorCode::kMultipleEdge);
  CHECK(build_error({1, 0, 2, 2}) == ErrorCode::kMultipleEdge);
  ToricOptions on_torus;
  on_torus.pole = clifford_embed(0.3, 1.1);
  CHECK(build_error({2, 1, 1, 1}, on_torus) == ErrorCode::kPole);
}

TEST_CASE("energy does not depend on the pole or the phase") {
  const ToricSpec s{2, 1, 1, 1};
  const double base = total_energy(build_toric_graph(s)).total;
  ToricOptions other;
  other.pole = Point4(0.3, -0.2, 0.1, 0.9).normalized();
  other.phase = {0.17, -0.4};
  const double moved = total_energy(build_toric_graph(s, other)).total;
  CHECK(moved == doctest::Approx(base).epsilon(1e-3));
}

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

#include "mge/asymptotics.hpp"
#include "mge/error.hpp"
#include "mge/intensity.hpp"
#include "support.hpp"

using namespace mge;
using namespace mge::test;

namespace {

const std::vector<double> kLadder{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};

}  // namespace

TEST_CASE("clip parameters on straight legs") {
  auto w = load_fixture("wedge_90.json");
  CHECK(clip_parameter(w, 0, 0, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(clip_parameter(w, 1, 0, 1e-3) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(clip_parameter(w, 0, 0, 2.0) == 1.0);
  CHECK(truncation_eps_max(w, 0, 1, 0, TruncationDomain::kNotBothInside) ==
        doctest::Approx(1.0));
}

TEST_CASE("empty domain at eps_max") {
  auto w = load_fixture("wedge_120.json");
  for (auto d : {TruncationDomain::kNotBothInside, TruncationDomain::kBothOutside}) {
    const double emax = truncation_eps_max(w, 0, 1, 0, d);
    CHECK(truncated_principal(w, 0, 1, 0, emax, {}, d).value == 0.0);
  }
}

TEST_CASE("log slope fit") {
  std::vector<double> eps, values;
  for (double e : kLadder) {
    eps.push_back(e);
    values.push_back(2 * std::log(1 / e) + 5);
  }
  const auto fit = log_slope_fit(eps, values);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(log_slope_fit({1e-1, 1e-2, 1e-3}, {1, 2, 3}), Error);
}

TEST_CASE("wedge oracle") {
  CHECK(wedge_oracle_slope(kPi) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(wedge_oracle_slope(kPi / 2) == doctest::Approx(kPi / 2).epsilon(1e-3));
  CHECK(wedge_oracle_slope(2 * kPi / 3) ==
        doctest::Approx((kPi / 3) / (std::sqrt(3.0) / 2)).epsilon(1e-3));
}

TEST_CASE("right-angle wedge difference between two cut radii") {
  auto w = load_fixture("wedge_90.json");
  const double a = truncated_principal(w, 0, 1, 0, 1e-2).value;
  const double b = truncated_principal(w, 0, 1, 0, 1e-3).value;
  CHECK(b - a == doctest::Approx(wedge_oracle_slope(kPi / 2) * std::log(10.0)).epsilon(1e-3));
}

TEST_CASE("fitted slopes match the oracle") {
  const struct {
    const char* file;
    double alpha;
  } cases[] = {{"wedge_90.json", kPi / 2}, {"wedge_120.json", 2 * kPi / 3}, {"wedge_180.json", kPi}};
  for (const auto& c : cases) {
    auto w = load_fixture(c.file);
    const auto r = asymptotics_report(w, 0, 0, 1, kLadder);
    CHECK(r.alpha == doctest::Approx(c.alpha).epsilon(1e-12));
    CHECK(r.fit.r2 > 0.999);
    CHECK(r.fit.slope == doctest::Approx(r.oracle_slope).epsilon(0.01));
    CHECK(r.psi == doctest::Approx(psi(c.alpha)));
    CHECK(r.rows.size() == kLadder.size());
    CHECK(asymptotics_csv(r).find("eps,") == 0);
  }
}

TEST_CASE("both-outside domain") {
  auto w = load_fixture("wedge_90.json");
  // O(eps) corrections are larger for this domain; stay deeper in the ladder.
  const auto r = asymptotics_report(w, 0, 0, 1, {1e-3, 1e-4, 1e-5, 1e-6}, {},
                                    TruncationDomain::kBothOutside);
  CHECK(r.fit.r2 > 0.999);
  CHECK(r.fit.slope == doctest::Approx(r.oracle_slope).epsilon(0.01));
}

TEST_CASE("domain names") {
  CHECK(truncation_domain_from_name("not-both-inside") == TruncationDomain::kNotBothInside);
  CHECK(truncation_domain_from_name("both-outside") == TruncationDomain::kBothOutside);
  CHECK_THROWS_AS(truncation_domain_from_name("inside"), Error);
}

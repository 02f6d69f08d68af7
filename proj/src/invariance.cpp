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

#include "mge/invariance.hpp"

#include "mge/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mge {

MobiusMap random_mobius(const EmbeddedGraph& g, std::mt19937_64& rng,
                        double margin) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::normal_distribution<double> normal;
  const double diam = g.diameter();
  Point3 lo = Point3::Constant(std::numeric_limits<double>::infinity());
  Point3 hi = -lo;
  for (const auto& v : g.vertices()) {
    lo = lo.cwiseMin(v.position);
    hi = hi.cwiseMax(v.position);
  }
  const Point3 mid = 0.5 * (lo + hi);

  for (int attempt = 0; attempt < 10000; ++attempt) {
    Similarity s;
    Eigen::Quaterniond qr(normal(rng), normal(rng), normal(rng), normal(rng));
    qr.normalize();
    s.rotation = qr.toRotationMatrix();
    s.scale = std::exp(std::log(2.0) * uni(rng));
    s.translation = 0.5 * diam * Vec3(uni(rng), uni(rng), uni(rng));
    // Inversion center near the moved graph, radius comparable to it.
    const Point3 moved_mid = s.scale * s.rotation * mid + s.translation;
    const double moved_diam = s.scale * diam;
    const Point3 c = moved_mid + 0.75 * moved_diam * Vec3(uni(rng), uni(rng), uni(rng));
    const double radius = moved_diam * (0.5 + 0.5 * (uni(rng) + 1.0));
    MobiusMap m;
    m.then_similarity(s);
    // Distance from c to the moved image equals distance from the preimage
    // of c to the original image, scaled.
    const Point3 pre = s.rotation.transpose() * (c - s.translation) / s.scale;
    if (distance_to_image(g, pre) < margin * diam) continue;
    m.then_invert(c, radius);
    return m;
  }
  throw Error(ErrorCode::kDegenerateInput, "could not place an inversion center");
}

InvarianceReport invariance_study(const EmbeddedGraph& g,
                                  const InvarianceOptions& o) {
  InvarianceReport r;
  const EnergyReport base = total_energy(g, o.quadrature, o.convention);
  r.base_energy = base.total;
  r.base_error = base.error;
  r.max_rel_deviation = 0.0;
  r.skipped = 0;
  const double denom = std::max(std::abs(base.total), 1e-300);

  auto run = [&](const std::string& label, const MobiusMap& m) {
    InvarianceRow row{label, false, "", 0.0, 0.0};
    try {
      const EmbeddedGraph img = transform(g, m, o.transform);
      row.energy = total_energy(img, o.quadrature, o.convention).total;
      row.rel_deviation = std::abs(row.energy - base.total) / denom;
      r.max_rel_deviation = std::max(r.max_rel_deviation, row.rel_deviation);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPole) throw;
      row.skipped = true;
      row.note = e.what();
      ++r.skipped;
    }
    r.rows.push_back(row);
  };

  if (o.identity_only) {
    for (int k = 0; k < o.count; ++k) run("identity" + std::to_string(k), MobiusMap{});
  } else {
    std::mt19937_64 rng(o.seed);
    for (int k = 0; k < o.count; ++k) {
      run("random" + std::to_string(k), random_mobius(g, rng, o.margin));
    }
  }
  for (std::size_t k = 0; k < o.extra_maps.size(); ++k) {
    run("given" + std::to_string(k), o.extra_maps[k]);
  }
  return r;
}

std::string invariance_csv(const InvarianceReport& r) {
  std::ostringstream os;
  os << "map,skipped,energy,rel_deviation,base_energy\n";
  for (const auto& row : r.rows) {
    os << row.label << ',' << (row.skipped ? 1 : 0) << ','
       << format_double(row.energy) << ',' << format_double(row.rel_deviation)
       << ',' << format_double(r.base_energy) << '\n';
  }
  return os.str();
}

}  // namespace mge

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

#include "mge/intensity.hpp"

#include "mge/energy.hpp"
#include "mge/error.hpp"

#include "json.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <mutex>
#include <optional>
#include <thread>

namespace mge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesWindow = 1e-3;  // series in pi - alpha below this

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= kPi)) {
    throw Error(ErrorCode::kDomain, "angle must lie in (0, pi]");
  }
}

}  // namespace

double psi(double alpha) {
  check_alpha(alpha);
  if (alpha == kPi) return 0.0;
  const double d = kPi - alpha;
  if (d < kSeriesWindow) {
    const double d2 = d * d;
    return -d2 / 6.0 - 7.0 * d2 * d2 / 360.0;
  }
  return 1.0 - d / std::sin(alpha);
}

double dpsi(double alpha) {
  check_alpha(alpha);
  const double d = kPi - alpha;
  if (d < kSeriesWindow) return d / 3.0 + 7.0 * d * d * d / 90.0;
  const double s = std::sin(alpha);
  return (s + d * std::cos(alpha)) / (s * s);
}

TupleConfig TupleConfig::make(std::vector<Vec3> u, double angle_floor) {
  if (u.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a tuple needs k >= 2 vectors");
  }
  TupleConfig c;
  for (auto& v : u) c.u_.push_back(Dir3::normalize(v).vec());
  if (!(c.min_angle() > angle_floor)) {
    throw Error(ErrorCode::kBarrier, "tuple vectors coincide (angle at floor)");
  }
  return c;
}

std::vector<double> TupleConfig::angles() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < u_.size(); ++i) {
    for (std::size_t j = i + 1; j < u_.size(); ++j) {
      out.push_back(kernel::unit_angle<Vec3>(u_[i], u_[j]));
    }
  }
  return out;
}

double TupleConfig::min_angle() const {
  const auto a = angles();
  return *std::min_element(a.begin(), a.end());
}

bool TupleConfig::collinear(double tol) const {
  for (const auto& v : u_) {
    if (u_[0].cross(v).norm() > tol) return false;
  }
  return true;
}

double big_psi(const TupleConfig& w) {
  CompensatedSum s;
  for (double a : w.angles()) s.add(psi(a));
  return s.value();
}

TangentVector riemannian_gradient(const TupleConfig& w, double angle_floor) {
  const std::size_t k = w.size();
  TangentVector g;
  g.components.assign(k, Vec3::Zero());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const double a = kernel::unit_angle<Vec3>(w[i], w[j]);
      if (!(a > angle_floor)) {
        throw Error(ErrorCode::kBarrier, "pairwise angle at the floor");
      }
      const Vec3 t = w[j] - w[i].dot(w[j]) * w[i];
      const double tn = t.norm();
      if (tn == 0.0) continue;  // alpha = pi, dpsi vanishes
      // d alpha = -(t / |t|) . du_i
      g.components[i] -= dpsi(a) * t / tn;
    }
  }
  double sq = 0.0;
  for (const auto& c : g.components) sq += c.squaredNorm();
  g.norm = std::sqrt(sq);
  return g;
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::kMin: return "min";
    case Classification::kMax: return "max";
    case Classification::kSaddle: return "saddle";
    case Classification::kDegenerate: return "degenerate";
    case Classification::kNoncritical: return "noncritical";
  }
  return "unknown";
}

namespace {

void tangent_basis(const Vec3& u, Vec3& e1, Vec3& e2) {
  const Vec3 seed = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  e1 = (seed - seed.dot(u) * u).normalized();
  e2 = u.cross(e1);
}

Vec3 exp_map(const Vec3& u, const Vec3& v) {
  const double r = v.norm();
  if (r == 0.0) return u;
  return (std::cos(r) * u + std::sin(r) / r * v).normalized();
}

double phi_of(const std::vector<Vec3>& u) {
  CompensatedSum s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      s.add(-psi(kernel::unit_angle<Vec3>(u[i], u[j])));
    }
  }
  return s.value();
}

}  // namespace

CriticalityReport criticality_report(const TupleConfig& w,
                                     const CriticalityOptions& o) {
  CriticalityReport r;
  r.psi = big_psi(w);
  r.phi = -r.psi;
  r.angles = w.angles();
  r.gradient_norm = riemannian_gradient(w, o.angle_floor).norm;
  r.critical = r.gradient_norm < o.critical_tol;

  const std::size_t k = w.size();
  const int n = static_cast<int>(2 * k);
  std::vector<Vec3> e1(k), e2(k);
  for (std::size_t i = 0; i < k; ++i) tangent_basis(w[i], e1[i], e2[i]);
  auto at = [&](int p, double hp, int q, double hq) {
    std::vector<Vec3> u = w.vectors();
    std::vector<Vec3> v(k, Vec3::Zero());
    if (p >= 0) v[p / 2] += hp * (p % 2 == 0 ? e1[p / 2] : e2[p / 2]);
    if (q >= 0) v[q / 2] += hq * (q % 2 == 0 ? e1[q / 2] : e2[q / 2]);
    for (std::size_t s = 0; s < k; ++s) u[s] = exp_map(w[s], v[s]);
    return phi_of(u);
  };
  const double h = o.fd_step;
  const double f0 = at(-1, 0, -1, 0);
  Eigen::MatrixXd H(n, n);
  for (int p = 0; p < n; ++p) {
    H(p, p) = (at(p, h, -1, 0) - 2.0 * f0 + at(p, -h, -1, 0)) / (h * h);
    for (int q = p + 1; q < n; ++q) {
      H(p, q) = H(q, p) = (at(p, h, q, h) - at(p, h, q, -h) - at(p, -h, q, h) +
                           at(p, -h, q, -h)) /
                          (4.0 * h * h);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  double radius = 0.0;
  for (double l : r.eigenvalues) radius = std::max(radius, std::abs(l));
  int pos = 0, neg = 0;
  r.zero_modes = 0;
  for (double l : r.eigenvalues) {
    if (std::abs(l) < o.zero_mode_rel * radius) {
      ++r.zero_modes;
    } else if (l > 0) {
      ++pos;
    } else {
      ++neg;
    }
  }
  r.expected_zero_modes = w.collinear() ? 2 : 3;
  if (!r.critical) {
    r.classification = Classification::kNoncritical;
  } else if (r.zero_modes > r.expected_zero_modes) {
    r.classification = Classification::kDegenerate;
  } else if (neg == 0) {
    r.classification = Classification::kMin;
  } else if (pos == 0) {
    r.classification = Classification::kMax;
  } else {
    r.classification = Classification::kSaddle;
  }
  return r;
}

TupleConfig canonical_config(const std::string& name) {
  if (name == "straight2") return TupleConfig::make({Vec3::UnitX(), -Vec3::UnitX()});
  if (name == "planar3") {
    const double c = -0.5, s = std::sqrt(3.0) / 2.0;
    return TupleConfig::make({Vec3(1, 0, 0), Vec3(c, s, 0), Vec3(c, -s, 0)});
  }
  if (name == "square4") {
    return TupleConfig::make(
        {Vec3::UnitX(), Vec3::UnitY(), -Vec3::UnitX(), -Vec3::UnitY()});
  }
  if (name == "tetrahedral4") {
    return TupleConfig::make({Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1),
                              Vec3(-1, -1, 1)});
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown configuration '" + name + "'");
}

SearchResult local_search(int k, std::uint64_t seed, const SearchPolicy& pol) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Vec3> u;
  do {
    u.clear();
    for (int i = 0; i < k; ++i) {
      Vec3 v;
      do {
        v = Vec3(normal(rng), normal(rng), normal(rng));
      } while (v.norm() < 1e-3);
      u.push_back(v.normalized());
    }
  } while (TupleConfig::make(u, 0.0).min_angle() <= 100 * pol.angle_floor);

  auto feasible = [&](const std::vector<Vec3>& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        if (!(kernel::unit_angle<Vec3>(x[i], x[j]) > pol.angle_floor)) return false;
      }
    }
    return true;
  };

  SearchResult res{seed, TupleConfig::make(u, pol.angle_floor), {}, 0, false, false};
  double f = phi_of(u);
  double step = pol.initial_step;
  int it = 0;
  for (; it < pol.max_iterations; ++it) {
    const TangentVector g = riemannian_gradient(TupleConfig::make(u, 0.0), 0.0);
    // gradient of phi is -g
    if (g.norm < pol.gradient_tol) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    bool blocked = false;
    for (int ls = 0; ls < 80; ++ls) {
      std::vector<Vec3> trial(k);
      for (int i = 0; i < k; ++i) trial[i] = exp_map(u[i], step * g.components[i]);
      if (!feasible(trial)) {
        blocked = true;
        step *= pol.shrink;
        continue;
      }
      const double ft = phi_of(trial);
      if (ft <= f - pol.armijo * step * g.norm * g.norm) {
        u = std::move(trial);
        f = ft;
        accepted = true;
        break;
      }
      step *= pol.shrink;
    }
    if (!accepted) {
      res.barrier_hit = blocked;
      break;  // no descent possible at double precision
    }
    step = std::min(pol.max_step, 2.0 * step);
  }
  res.iterations = it;
  res.config = TupleConfig::make(u, 0.0);
  if (res.config.min_angle() <= pol.angle_floor * 10) res.barrier_hit = true;
  CriticalityOptions co;
  co.critical_tol = std::max(co.critical_tol, pol.gradient_tol);
  co.angle_floor = 0.0;
  res.report = criticality_report(res.config, co);
  if (!res.converged) res.converged = res.report.gradient_norm < pol.gradient_tol;
  return res;
}

CriticalBatch critical_batch(int k, std::uint64_t first_seed, int count,
                             const SearchPolicy& policy, int threads) {
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "count must be >= 1");
  CriticalBatch b;
  b.k = k;
  std::vector<std::optional<SearchResult>> slots(count);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  auto worker = [&] {
    for (int n = next++; n < count; n = next++) {
      try {
        slots[n] = local_search(k, first_seed + n, policy);
      } catch (...) {
        std::lock_guard lock(fail_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int nt = std::clamp(threads, 1, count);
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (auto& s : slots) b.runs.push_back(std::move(*s));

  for (const auto& run : b.runs) {
    auto angles = run.report.angles;
    std::sort(angles.begin(), angles.end());
    bool placed = false;
    for (auto& c : b.clusters) {
      bool same = std::abs(c.phi - run.report.phi) < 1e-6;
      for (std::size_t a = 0; same && a < angles.size(); ++a) {
        same = std::abs(c.angles[a] - angles[a]) < 1e-4;
      }
      if (same) {
        ++c.count;
        placed = true;
        break;
      }
    }
    if (!placed) {
      b.clusters.push_back({run.report.phi, angles, 1, run.report.classification});
    }
  }
  std::stable_sort(b.clusters.begin(), b.clusters.end(),
                   [](const SearchCluster& x, const SearchCluster& y) {
                     return x.count > y.count;
                   });
  return b;
}

namespace {

nlohmann::ordered_json report_to_json(const CriticalityReport& r) {
  nlohmann::ordered_json j;
  j["psi"] = r.psi;
  j["phi"] = r.phi;
  j["gradient_norm"] = r.gradient_norm;
  j["critical"] = r.critical;
  j["eigenvalues"] = r.eigenvalues;
  j["zero_modes"] = r.zero_modes;
  j["expected_zero_modes"] = r.expected_zero_modes;
  j["classification"] = to_string(r.classification);
  j["angles"] = r.angles;
  return j;
}

}  // namespace

std::string criticality_json(const CriticalityReport& r) {
  return report_to_json(r).dump(2) + "\n";
}

std::string batch_csv(const CriticalBatch& b) {
  std::ostringstream os;
  os << "seed,iterations,converged,barrier_hit,phi,gradient_norm,"
        "classification,min_angle,max_angle\n";
  for (const auto& r : b.runs) {
    const auto& a = r.report.angles;
    os << r.seed << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << ','
       << (r.barrier_hit ? 1 : 0) << ',' << format_double(r.report.phi) << ','
       << format_double(r.report.gradient_norm) << ','
       << to_string(r.report.classification) << ','
       << format_double(*std::min_element(a.begin(), a.end())) << ','
       << format_double(*std::max_element(a.begin(), a.end())) << '\n';
  }
  return os.str();
}

std::string batch_json(const CriticalBatch& b) {
  nlohmann::ordered_json j;
  j["k"] = b.k;
  auto clusters = nlohmann::ordered_json::array();
  for (const auto& c : b.clusters) {
    clusters.push_back({{"phi", c.phi},
                        {"count", c.count},
                        {"classification", to_string(c.classification)},
                        {"angles", c.angles}});
  }
  j["clusters"] = std::move(clusters);
  auto runs = nlohmann::ordered_json::array();
  for (const auto& r : b.runs) {
    auto rj = report_to_json(r.report);
    runs.push_back({{"seed", r.seed},
                    {"iterations", r.iterations},
                    {"converged", r.converged},
                    {"barrier_hit", r.barrier_hit},
                    {"report", std::move(rj)}});
  }
  j["runs"] = std::move(runs);
  return j.dump(2) + "\n";
}

}  // namespace mge

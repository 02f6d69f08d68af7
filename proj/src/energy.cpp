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

#include "mge/energy.hpp"

#include "mge/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

namespace mge {

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::kSameEdge: return "same";
    case PairKind::kDisjoint: return "disjoint";
    case PairKind::kAdjacent: return "adjacent";
    case PairKind::kStrand: return "strand";
  }
  return "unknown";
}

const char* to_string(AdjacentRule rule) {
  switch (rule) {
    case AdjacentRule::kSignResolved: return "sign-resolved";
    case AdjacentRule::kReflected: return "reflected";
    case AdjacentRule::kLiteral: return "literal";
  }
  return "unknown";
}

const char* to_string(Counting counting) {
  return counting == Counting::kOrdered ? "ordered" : "unordered";
}

EnergyConvention EnergyConvention::reference() { return {}; }

EnergyConvention EnergyConvention::definition() {
  EnergyConvention c;
  c.counting = Counting::kOrdered;
  c.strand_self_energy = false;
  return c;
}

EnergyConvention EnergyConvention::from_name(const std::string& name) {
  if (name == "reference") return reference();
  if (name == "definition") return definition();
  throw Error(ErrorCode::kInvalidArgument, "unknown convention '" + name + "'");
}

std::string EnergyConvention::name() const {
  const auto r = reference();
  const auto d = definition();
  auto same = [&](const EnergyConvention& o) {
    return counting == o.counting && strand_self_energy == o.strand_self_energy &&
           adjacent == o.adjacent;
  };
  if (same(r)) return "reference";
  if (same(d)) return "definition";
  return "custom";
}

bool Strands::joined_at(std::size_t v, std::size_t i, std::size_t j) const {
  const auto key = std::minmax(i, j);
  const auto& js = joint.at(v);
  return std::find(js.begin(), js.end(), std::pair(key.first, key.second)) !=
         js.end();
}

int Strands::count() const {
  return strand.empty() ? 0 : *std::max_element(strand.begin(), strand.end()) + 1;
}

Strands find_strands(const EmbeddedGraph& g, double straight_tol) {
  const std::size_t ne = g.edge_count();
  Strands s;
  s.strand.assign(ne, -1);
  s.sign.assign(ne, 1);
  s.joint.assign(g.vertex_count(), {});

  // partner[v][e]: edge continuing e straight through v.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> links(ne);
  const auto angles = vertex_angles(g);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto cand = angles.at(v);
    std::erase_if(cand, [&](const VertexAngle& a) {
      return a.alpha < std::numbers::pi - straight_tol;
    });
    std::sort(cand.begin(), cand.end(),
              [](const VertexAngle& a, const VertexAngle& b) {
                if (a.alpha != b.alpha) return a.alpha > b.alpha;
                return std::pair(a.edge_a, a.edge_b) < std::pair(b.edge_a, b.edge_b);
              });
    std::vector<std::size_t> used;
    for (const auto& a : cand) {
      auto taken = [&](std::size_t e) {
        return std::find(used.begin(), used.end(), e) != used.end();
      };
      if (taken(a.edge_a) || taken(a.edge_b)) continue;
      used.push_back(a.edge_a);
      used.push_back(a.edge_b);
      s.joint[v].push_back({a.edge_a, a.edge_b});
      links[a.edge_a].push_back({v, a.edge_b});
      links[a.edge_b].push_back({v, a.edge_a});
    }
    std::sort(s.joint[v].begin(), s.joint[v].end());
  }

  int next = 0;
  for (std::size_t start = 0; start < ne; ++start) {
    if (s.strand[start] >= 0) continue;
    s.strand[start] = next;
    s.sign[start] = 1;
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      const std::size_t e = stack.back();
      stack.pop_back();
      const Edge& ed = g.edge(e);
      for (const auto& [v, f] : links[e]) {
        if (s.strand[f] >= 0) continue;
        const bool e_arrives = (s.sign[e] > 0) == (ed.to == v);
        const Edge& fd = g.edge(f);
        s.sign[f] = e_arrives ? (fd.from == v ? 1 : -1) : (fd.to == v ? 1 : -1);
        s.strand[f] = next;
        stack.push_back(f);
      }
    }
    ++next;
  }
  return s;
}

EnergyModel::EnergyModel(const EmbeddedGraph& g, EnergyConvention convention)
    : g_(g),
      conv_(convention),
      strands_(find_strands(g, convention.straight_tol)),
      angles_(vertex_angles(g)) {}

PairSpec EnergyModel::classify(std::size_t i, std::size_t j) const {
  PairSpec p;
  p.i = i;
  p.j = j;
  if (i == j) {
    p.kind = PairKind::kSameEdge;
    return p;
  }
  const Edge& ei = g_.edge(i);
  const Edge& ej = g_.edge(j);
  const auto shared = g_.shared_vertices(i, j);
  const bool same_strand = conv_.strand_self_energy &&
                           strands_.strand[i] == strands_.strand[j];
  if (shared.empty()) {
    if (same_strand) {
      p.kind = PairKind::kStrand;
      p.sign_i = strands_.sign[i];
      p.sign_j = strands_.sign[j];
    } else {
      p.kind = PairKind::kDisjoint;
    }
    return p;
  }
  const std::size_t v = shared.front();
  p.vertex = v;
  p.has_corner = true;
  p.corner_i = ei.to == v ? 1.0 : 0.0;
  p.corner_j = ej.to == v ? 1.0 : 0.0;
  p.corner_point = ei.curve.position(p.corner_i);
  p.alpha = angles_.alpha(v, i, j);
  if (same_strand && strands_.joined_at(v, i, j)) {
    p.kind = PairKind::kStrand;
    p.sign_i = strands_.sign[i];
    p.sign_j = strands_.sign[j];
  } else {
    p.kind = PairKind::kAdjacent;
    p.sign_i = ei.to == v ? 1.0 : -1.0;    // toward v
    p.sign_j = ej.from == v ? 1.0 : -1.0;  // away from v
  }
  return p;
}

namespace {

double one_minus_cos(double x) {
  const double h = std::sin(0.5 * x);
  return 2.0 * h * h;
}

}  // namespace

double EnergyModel::integrand(const PairSpec& p, double t1, double t2) const {
  Point3 x1, x2;
  Vec3 d1, d2;
  g_.edge(p.i).curve.evaluate(t1, x1, d1);
  g_.edge(p.j).curve.evaluate(t2, x2, d2);
  const Vec3 delta = x2 - x1;
  const double r2 = delta.squaredNorm();
  if (!(r2 > 0.0)) {
    throw Error(ErrorCode::kDomain, "integrand evaluated at coincident points");
  }
  const double n1 = d1.norm(), n2 = d2.norm();
  const double principal = n1 * n2 / r2;
  if (p.kind == PairKind::kDisjoint) return principal;

  const Vec3 T1 = (p.sign_i / n1) * d1;
  const Vec3 T2 = (p.sign_j / n2) * d2;
  const Vec3 a = kernel::tangent_circle_end_direction<Vec3>(x1, T1, x2);
  if (p.kind != PairKind::kAdjacent) {
    // 1 - cos(theta) for unit vectors
    return 0.5 * (a - T2).squaredNorm() * principal;
  }
  Vec3 b = kernel::three_point_end_direction<Vec3>(p.corner_point, x1, x2);
  const double bn = b.norm();
  if (!(bn > 0.0) || !std::isfinite(bn)) {
    throw Error(ErrorCode::kDomain, "degenerate three-point circle");
  }
  b /= bn;
  const double pi = std::numbers::pi;
  double factor = 0.0;
  switch (conv_.adjacent) {
    case AdjacentRule::kSignResolved: {
      const double theta = kernel::unit_angle<Vec3>(a, T2);
      const double beta = kernel::unit_angle<Vec3>(b, T2);
      const double base = 2.0 * beta - p.alpha - pi;
      factor = std::min(one_minus_cos(base + theta), one_minus_cos(base - theta));
      break;
    }
    case AdjacentRule::kReflected: {
      const Vec3 e = T2 - 2.0 * T2.dot(b) * b;
      factor = one_minus_cos(kernel::unit_angle<Vec3>(a, e) - p.alpha);
      break;
    }
    case AdjacentRule::kLiteral: {
      const double theta = kernel::unit_angle<Vec3>(a, T2);
      const double beta = kernel::unit_angle<Vec3>(b, T2);
      factor = one_minus_cos(theta + 2.0 * beta - p.alpha - pi);
      break;
    }
  }
  return factor * principal;
}

Integral EnergyModel::pair_energy(const PairSpec& p,
                                  const QuadratureConfig& q) const {
  Region2D region;
  if (p.kind == PairKind::kSameEdge) {
    region.forced = touches_diagonal;
  } else if (p.has_corner) {
    const double ci = p.corner_i, cj = p.corner_j;
    region.forced = [ci, cj](const Panel& panel) {
      return contains_point(panel, ci, cj);
    };
  }
  return integrate_2d(
      [&](double t1, double t2) { return integrand(p, t1, t2); }, region, q);
}

EnergyReport total_energy(const EmbeddedGraph& g, const QuadratureConfig& q,
                          const EnergyConvention& convention) {
  q.check();
  const auto t0 = std::chrono::steady_clock::now();
  const EnergyModel model(g, convention);
  const std::size_t ne = g.edge_count();

  struct Task {
    PairSpec spec;
    Integral result;
    std::exception_ptr failure;
  };
  std::vector<Task> tasks;
  std::vector<std::size_t> slot(ne * ne);
  for (std::size_t i = 0; i < ne; ++i) {
    for (std::size_t j = 0; j < ne; ++j) {
      const PairSpec spec = model.classify(i, j);
      const bool symmetric =
          spec.kind == PairKind::kDisjoint || spec.kind == PairKind::kStrand;
      if (symmetric && j < i) {
        slot[i * ne + j] = slot[j * ne + i];
        continue;
      }
      slot[i * ne + j] = tasks.size();
      tasks.push_back({spec, {}, nullptr});
    }
  }

  std::size_t nthreads = q.threads > 0
                             ? static_cast<std::size_t>(q.threads)
                             : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min(nthreads, std::max<std::size_t>(1, tasks.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        tasks[k].result = model.pair_energy(tasks[k].spec, q);
      } catch (...) {
        tasks[k].failure = std::current_exception();
      }
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& t : tasks) {
    if (t.failure) std::rethrow_exception(t.failure);
  }

  EnergyReport r;
  r.convention = convention;
  r.quadrature = q;
  r.pair_weight = convention.counting == Counting::kOrdered ? 1.0 : 0.5;
  CompensatedSum total, error;
  for (std::size_t i = 0; i < ne; ++i) {
    for (std::size_t j = 0; j < ne; ++j) {
      const Task& t = tasks[slot[i * ne + j]];
      r.pairs.push_back({i, j, t.spec.kind, t.result.value, t.result.error,
                         t.result.converged});
      total.add(t.result.value);
      error.add(t.result.error);
    }
  }
  r.total = r.pair_weight * total.value();
  r.error = r.pair_weight * error.value();
  // Individual tiny pairs may miss their own relative target while the sum
  // is well inside the requested accuracy.
  r.converged = r.error <= std::max(q.abs_tol, q.rel_tol * std::abs(r.total));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                  .count();
  return r;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_csv(const EnergyReport& r, const EmbeddedGraph& g) {
  std::ostringstream os;
  os << "pair_i,pair_j,kind,value,err\n";
  for (const auto& p : r.pairs) {
    os << g.edge(p.i).id << ',' << g.edge(p.j).id << ',' << to_string(p.kind)
       << ',' << format_double(p.value) << ',' << format_double(p.error) << '\n';
  }
  return os.str();
}

std::string report_json(const EnergyReport& r, const EmbeddedGraph& g) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["convention"] = {{"name", r.convention.name()},
                     {"counting", to_string(r.convention.counting)},
                     {"strand_self_energy", r.convention.strand_self_energy},
                     {"adjacent_rule", to_string(r.convention.adjacent)},
                     {"straight_tol", r.convention.straight_tol}};
  j["quadrature"] = {{"base_panels", r.quadrature.base_panels},
                     {"nodes_u", r.quadrature.nodes_u},
                     {"nodes_v", r.quadrature.nodes_v},
                     {"max_depth", r.quadrature.max_depth},
                     {"rel_tol", r.quadrature.rel_tol},
                     {"abs_tol", r.quadrature.abs_tol}};
  j["pair_weight"] = r.pair_weight;
  j["total"] = r.total;
  j["error"] = r.error;
  j["converged"] = r.converged;
  ordered_json pairs = ordered_json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"pair_i", g.edge(p.i).id},
                     {"pair_j", g.edge(p.j).id},
                     {"kind", to_string(p.kind)},
                     {"value", p.value},
                     {"err", p.error}});
  }
  j["pairs"] = std::move(pairs);
  return j.dump(2) + "\n";
}

}  // namespace mge

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

#include "mge/asymptotics.hpp"

#include "mge/energy.hpp"
#include "mge/error.hpp"
#include "mge/intensity.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mge {

const char* to_string(TruncationDomain d) {
  return d == TruncationDomain::kNotBothInside ? "not-both-inside"
                                               : "both-outside";
}

TruncationDomain truncation_domain_from_name(const std::string& name) {
  if (name == "not-both-inside") return TruncationDomain::kNotBothInside;
  if (name == "both-outside") return TruncationDomain::kBothOutside;
  throw Error(ErrorCode::kInvalidArgument, "unknown truncation domain '" + name + "'");
}

namespace {

// Edge parameter at parameter distance s from the vertex end.
double param_from_vertex(const Edge& e, std::size_t v, double s) {
  return e.from == v ? s : 1.0 - s;
}

void check_adjacent(const EmbeddedGraph& g, std::size_t i, std::size_t j,
                    std::size_t v) {
  if (i == j || !g.edge(i).touches(v) || !g.edge(j).touches(v)) {
    throw Error(ErrorCode::kInvalidArgument,
                "truncation needs two distinct edges meeting at the vertex");
  }
}

}  // namespace

double clip_parameter(const EmbeddedGraph& g, std::size_t e, std::size_t v,
                      double eps) {
  const Edge& ed = g.edge(e);
  const Point3 c = ed.curve.position(param_from_vertex(ed, v, 0.0));
  auto dist = [&](double s) {
    return (ed.curve.position(param_from_vertex(ed, v, s)) - c).norm();
  };
  constexpr int kSamples = 1024;
  double prev = 0.0;
  for (int k = 1; k <= kSamples; ++k) {
    const double s = static_cast<double>(k) / kSamples;
    if (dist(s) >= eps) {
      double lo = prev, hi = s;
      for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dist(mid) >= eps ? hi : lo) = mid;
      }
      return hi;
    }
    prev = s;
  }
  return 1.0;
}

double truncation_eps_max(const EmbeddedGraph& g, std::size_t i, std::size_t j,
                          std::size_t v, TruncationDomain d) {
  check_adjacent(g, i, j, v);
  const Point3& c = g.vertex(v).position;
  auto reach = [&](std::size_t e) {
    const Edge& ed = g.edge(e);
    double r = 0.0;
    for (int k = 1; k <= 1024; ++k) {
      r = std::max(r, (ed.curve.position(k / 1024.0) - c).norm());
      r = std::max(r, (ed.curve.position(1.0 - k / 1024.0) - c).norm());
    }
    return r;
  };
  const double ri = reach(i), rj = reach(j);
  return d == TruncationDomain::kNotBothInside ? std::max(ri, rj)
                                               : std::min(ri, rj);
}

Integral truncated_principal(const EmbeddedGraph& g, std::size_t i,
                             std::size_t j, std::size_t v, double eps,
                             const QuadratureConfig& q, TruncationDomain d) {
  check_adjacent(g, i, j, v);
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::kDomain, "eps must be positive");
  }
  const double eps_max = truncation_eps_max(g, i, j, v, d);
  if (eps > eps_max * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kDomain, "eps exceeds the largest admissible radius");
  }
  const Edge& ei = g.edge(i);
  const Edge& ej = g.edge(j);
  const double ai = clip_parameter(g, i, v, eps);
  const double aj = clip_parameter(g, j, v, eps);
  const bool not_both = d == TruncationDomain::kNotBothInside;
  if ((not_both && ai >= 1.0 && aj >= 1.0) ||
      (!not_both && (ai >= 1.0 || aj >= 1.0))) {
    return {};
  }

  // Breakpoints graded geometrically toward the vertex so panels match the
  // local length scale of the integrand.
  auto breaks = [](const Edge& e, std::size_t vv, double a) {
    std::vector<double> s{a};
    for (double x = a; x > a * 1e-4; x *= 0.5) s.push_back(x);
    for (double x = a; x < 1.0; x *= 2.0) s.push_back(x);
    std::vector<double> t;
    for (double x : s) t.push_back(param_from_vertex(e, vv, std::min(x, 1.0)));
    return t;
  };
  Region2D region;
  region.xs = breaks(ei, v, ai);
  region.ys = breaks(ej, v, aj);
  region.include = [&](const Panel& p) {
    const double si = ei.from == v ? 0.5 * (p.x0 + p.x1) : 1.0 - 0.5 * (p.x0 + p.x1);
    const double sj = ej.from == v ? 0.5 * (p.y0 + p.y1) : 1.0 - 0.5 * (p.y0 + p.y1);
    const bool out_i = si > ai, out_j = sj > aj;
    return not_both ? (out_i || out_j) : (out_i && out_j);
  };
  return integrate_2d(
      [&](double t1, double t2) {
        Point3 x1, x2;
        Vec3 d1, d2;
        ei.curve.evaluate(t1, x1, d1);
        ej.curve.evaluate(t2, x2, d2);
        return d1.norm() * d2.norm() / (x2 - x1).squaredNorm();
      },
      region, q);
}

LogSlopeFit log_slope_fit(const std::vector<double>& eps,
                          const std::vector<double>& values) {
  if (eps.size() != values.size()) {
    throw Error(ErrorCode::kInvalidArgument, "eps and values differ in length");
  }
  if (eps.size() < 4) {
    throw Error(ErrorCode::kInvalidArgument, "log-slope fit needs >= 4 points");
  }
  const std::size_t n = eps.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(eps[k] > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "eps values must be positive");
    }
    x[k] = std::log(1.0 / eps[k]);
    mx += x[k];
    my += values[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (values[k] - my);
    syy += (values[k] - my) * (values[k] - my);
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps values must be distinct");
  }
  LogSlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = values[k] - (f.intercept + f.slope * x[k]);
    sse += r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return f;
}

double wedge_oracle_slope(double alpha, TruncationDomain d, double step) {
  if (!(alpha > 0.0 && alpha <= std::numbers::pi)) {
    throw Error(ErrorCode::kDomain, "alpha must lie in (0, pi]");
  }
  // s = exp(-x), t = exp(-y): ds dt / (s^2 + t^2 - 2 s t cos a) becomes
  // dx dy / (2 cosh(x - y) - 2 cos a).
  const double h = std::min(step, alpha / 10.0);
  const double band = 36.0;  // integrand ~ exp(-|x - y|)
  const int nb = static_cast<int>(std::ceil(band / h));
  std::vector<double> kern(2 * nb + 1);
  for (int k = -nb; k <= nb; ++k) {
    kern[k + nb] = 1.0 / (2.0 * std::cosh(k * h) - 2.0 * std::cos(alpha));
  }
  const std::vector<double> ladder{1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> values;
  for (double eps : ladder) {
    const int nl = static_cast<int>(std::lround(std::log(1.0 / eps) / h));
    const int n = d == TruncationDomain::kNotBothInside ? nl + nb : nl;
    CompensatedSum sum;
    for (int ix = 0; ix < n; ++ix) {
      const int lo = std::max(0, ix - nb), hi = std::min(n - 1, ix + nb);
      for (int iy = lo; iy <= hi; ++iy) {
        if (ix >= nl && iy >= nl) continue;
        sum.add(kern[ix - iy + nb]);
      }
    }
    values.push_back(sum.value() * h * h);
  }
  // The grid quantizes ln(1/eps); fit against the quantized values.
  std::vector<double> eps_q;
  for (double eps : ladder) {
    eps_q.push_back(std::exp(-std::lround(std::log(1.0 / eps) / h) * h));
  }
  return log_slope_fit(eps_q, values).slope;
}

AsymptoticsReport asymptotics_report(const EmbeddedGraph& g, std::size_t v,
                                     std::size_t i, std::size_t j,
                                     const std::vector<double>& eps,
                                     const QuadratureConfig& q,
                                     TruncationDomain d) {
  if (eps.size() < 4) {
    throw Error(ErrorCode::kInvalidArgument, "eps ladder needs >= 4 values");
  }
  AsymptoticsReport r;
  r.vertex = v;
  r.edge_i = i;
  r.edge_j = j;
  r.domain = d;
  r.alpha = vertex_angles(g).alpha(v, i, j);
  std::vector<double> vals;
  for (double e : eps) {
    const Integral in = truncated_principal(g, i, j, v, e, q, d);
    r.rows.push_back({e, in.value, in.error});
    vals.push_back(in.value);
  }
  r.fit = log_slope_fit(eps, vals);
  r.psi = psi(r.alpha);
  r.wedge_coeff = 1.0 - r.psi;
  r.oracle_slope = wedge_oracle_slope(r.alpha, d);
  return r;
}

std::string asymptotics_json(const AsymptoticsReport& r, const EmbeddedGraph& g) {
  nlohmann::ordered_json j;
  j["vertex"] = g.vertex(r.vertex).id;
  j["edge_i"] = g.edge(r.edge_i).id;
  j["edge_j"] = g.edge(r.edge_j).id;
  j["alpha"] = r.alpha;
  j["domain"] = to_string(r.domain);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"eps", row.eps}, {"value", row.value}, {"err", row.error}});
  }
  j["rows"] = std::move(rows);
  j["slope"] = r.fit.slope;
  j["intercept"] = r.fit.intercept;
  j["r2"] = r.fit.r2;
  j["psi"] = r.psi;
  j["wedge_coeff"] = r.wedge_coeff;
  j["oracle_slope"] = r.oracle_slope;
  return j.dump(2) + "\n";
}

std::string asymptotics_csv(const AsymptoticsReport& r) {
  std::ostringstream os;
  os << "eps,ln_inv_eps,value,err\n";
  for (const auto& row : r.rows) {
    os << format_double(row.eps) << ',' << format_double(std::log(1.0 / row.eps))
       << ',' << format_double(row.value) << ',' << format_double(row.error) << '\n';
  }
  return os.str();
}

}  // namespace mge

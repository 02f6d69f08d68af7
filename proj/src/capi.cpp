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

#include "mge/mge.h"

#include "mge/asymptotics.hpp"
#include "mge/energy.hpp"
#include "mge/error.hpp"
#include "mge/graph.hpp"
#include "mge/graph_io.hpp"
#include "mge/intensity.hpp"
#include "mge/invariance.hpp"
#include "mge/toric.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <random>
#include <string>

struct mge_graph {
  mge::EmbeddedGraph g;
};

struct mge_mobius {
  mge::MobiusMap m;
};

struct mge_energy_report {
  mge::EnergyReport r;
  std::shared_ptr<const mge::EmbeddedGraph> g;  // for edge ids
};

namespace {

thread_local std::string last_error;

mge_status code_of(mge::ErrorCode c) {
  using mge::ErrorCode;
  switch (c) {
    case ErrorCode::kInvalidArgument: return MGE_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDegenerateInput: return MGE_ERR_DEGENERATE;
    case ErrorCode::kIncidence: return MGE_ERR_INCIDENCE;
    case ErrorCode::kPole: return MGE_ERR_POLE;
    case ErrorCode::kParse: return MGE_ERR_PARSE;
    case ErrorCode::kSchema: return MGE_ERR_SCHEMA;
    case ErrorCode::kMultipleEdge: return MGE_ERR_MULTIPLE_EDGE;
    case ErrorCode::kValidation: return MGE_ERR_VALIDATION;
    case ErrorCode::kToleranceNotMet: return MGE_ERR_TOLERANCE;
    case ErrorCode::kDomain: return MGE_ERR_DOMAIN;
    case ErrorCode::kBarrier: return MGE_ERR_BARRIER;
    case ErrorCode::kIo: return MGE_ERR_IO;
  }
  return MGE_ERR_INTERNAL;
}

template <typename F>
mge_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return MGE_OK;
  } catch (const mge::Error& e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return MGE_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (p == nullptr) {
    throw mge::Error(mge::ErrorCode::kInvalidArgument,
                     std::string(what) + " must not be NULL");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_string(char** out, const std::string& s) {
  if (out != nullptr) *out = dup(s);
}

mge::QuadratureConfig quad_of(const mge_energy_options* o) {
  mge::QuadratureConfig q;
  if (o == nullptr) return q;
  q.base_panels = o->base_panels;
  q.nodes_u = o->nodes_u;
  q.nodes_v = o->nodes_v;
  q.max_depth = o->max_depth;
  q.rel_tol = o->rel_tol;
  q.abs_tol = o->abs_tol;
  q.threads = o->threads;
  q.check();
  return q;
}

mge::EnergyConvention conv_of(const mge_energy_options* o) {
  mge::EnergyConvention c;
  if (o == nullptr) return c;
  c.counting = o->counting == MGE_COUNT_ORDERED ? mge::Counting::kOrdered
                                                : mge::Counting::kUnordered;
  c.strand_self_energy = o->strand_self_energy != 0;
  switch (o->adjacent_rule) {
    case MGE_ADJ_SIGN_RESOLVED: c.adjacent = mge::AdjacentRule::kSignResolved; break;
    case MGE_ADJ_REFLECTED: c.adjacent = mge::AdjacentRule::kReflected; break;
    case MGE_ADJ_LITERAL: c.adjacent = mge::AdjacentRule::kLiteral; break;
    default:
      throw mge::Error(mge::ErrorCode::kInvalidArgument, "unknown adjacent rule");
  }
  c.straight_tol = o->straight_tol;
  return c;
}

mge::TruncationDomain domain_of(mge_truncation d) {
  return d == MGE_TRUNC_BOTH_OUTSIDE ? mge::TruncationDomain::kBothOutside
                                     : mge::TruncationDomain::kNotBothInside;
}

std::vector<mge::Vec3> vectors_of(const double* u, size_t k) {
  need(u, "u");
  std::vector<mge::Vec3> out;
  for (size_t i = 0; i < k; ++i) out.emplace_back(u[3 * i], u[3 * i + 1], u[3 * i + 2]);
  return out;
}

}  // namespace

extern "C" {

const char* mge_version(void) { return "1.0.0"; }

const char* mge_status_string(mge_status s) {
  switch (s) {
    case MGE_OK: return "ok";
    case MGE_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case MGE_ERR_DEGENERATE: return "degenerate-input";
    case MGE_ERR_INCIDENCE: return "incidence";
    case MGE_ERR_POLE: return "pole";
    case MGE_ERR_PARSE: return "parse";
    case MGE_ERR_SCHEMA: return "schema";
    case MGE_ERR_MULTIPLE_EDGE: return "multiple-edge";
    case MGE_ERR_VALIDATION: return "validation";
    case MGE_ERR_TOLERANCE: return "tolerance-not-met";
    case MGE_ERR_DOMAIN: return "domain";
    case MGE_ERR_BARRIER: return "barrier";
    case MGE_ERR_IO: return "io";
    case MGE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* mge_last_error(void) { return last_error.c_str(); }

void mge_string_free(char* s) { std::free(s); }

mge_status mge_graph_from_json(const char* text, mge_graph** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new mge_graph{mge::load_graph(text)};
  });
}

mge_status mge_graph_load(const char* path, mge_graph** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new mge_graph{mge::load_graph_file(path)};
  });
}

mge_status mge_graph_to_json(const mge_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup(mge::save_graph(g->g));
  });
}

mge_status mge_graph_save(const mge_graph* g, const char* path) {
  return guard([&] {
    need(g, "graph");
    need(path, "path");
    mge::save_graph_file(g->g, path);
  });
}

void mge_graph_free(mge_graph* g) { delete g; }

size_t mge_graph_vertex_count(const mge_graph* g) {
  return g ? g->g.vertex_count() : 0;
}

size_t mge_graph_edge_count(const mge_graph* g) {
  return g ? g->g.edge_count() : 0;
}

mge_status mge_graph_vertex_index(const mge_graph* g, const char* id, size_t* out) {
  return guard([&] {
    need(g, "graph");
    need(id, "id");
    need(out, "out");
    auto v = g->g.find_vertex(id);
    if (!v) throw mge::Error(mge::ErrorCode::kInvalidArgument,
                             std::string("no vertex '") + id + "'");
    *out = *v;
  });
}

mge_status mge_graph_edge_index(const mge_graph* g, const char* id, size_t* out) {
  return guard([&] {
    need(g, "graph");
    need(id, "id");
    need(out, "out");
    auto e = g->g.find_edge(id);
    if (!e) throw mge::Error(mge::ErrorCode::kInvalidArgument,
                             std::string("no edge '") + id + "'");
    *out = *e;
  });
}

mge_status mge_graph_vertex_position(const mge_graph* g, size_t v, double xyz[3]) {
  return guard([&] {
    need(g, "graph");
    need(xyz, "xyz");
    if (v >= g->g.vertex_count()) {
      throw mge::Error(mge::ErrorCode::kInvalidArgument, "vertex index out of range");
    }
    const auto& p = g->g.vertex(v).position;
    xyz[0] = p.x();
    xyz[1] = p.y();
    xyz[2] = p.z();
  });
}

mge_status mge_graph_diameter(const mge_graph* g, double* out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    *out = g->g.diameter();
  });
}

mge_status mge_graph_vertex_angles(const mge_graph* g, char** json) {
  return guard([&] {
    need(g, "graph");
    need(json, "json");
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    const auto angles = mge::vertex_angles(g->g);
    for (const auto& x : angles.all()) {
      a.push_back({{"vertex", g->g.vertex(x.vertex).id},
                   {"edge_a", g->g.edge(x.edge_a).id},
                   {"edge_b", g->g.edge(x.edge_b).id},
                   {"alpha", x.alpha}});
    }
    *json = dup(a.dump(2) + "\n");
  });
}

mge_status mge_graph_validate(const mge_graph* g, int* ok, char** report) {
  return guard([&] {
    need(g, "graph");
    need(ok, "ok");
    const auto rep = mge::validate(g->g);
    *ok = rep.ok() ? 1 : 0;
    if (report != nullptr) {
      nlohmann::ordered_json a = nlohmann::ordered_json::array();
      for (const auto& v : rep.violations) {
        a.push_back({{"kind", mge::to_string(v.kind)},
                     {"location", v.location},
                     {"message", v.message}});
      }
      *report = dup(a.dump(2) + "\n");
    }
  });
}

mge_status mge_graph_export(const mge_graph* g, mge_mesh_format format,
                            int samples_per_edge, char** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup(mge::export_polylines(
        g->g, format == MGE_MESH_OBJ ? mge::MeshFormat::kObj : mge::MeshFormat::kPly,
        samples_per_edge));
  });
}

mge_status mge_graph_reparametrize_edge(const mge_graph* g, size_t e, double a,
                                        mge_graph** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    if (e >= g->g.edge_count()) {
      throw mge::Error(mge::ErrorCode::kInvalidArgument, "edge index out of range");
    }
    if (!(std::abs(a) < 1.0)) {
      throw mge::Error(mge::ErrorCode::kInvalidArgument, "need |a| < 1");
    }
    mge::ParameterMap map{[a](double s) { return s + a * s * (1.0 - s); },
                          [a](double s) { return 1.0 + a * (1.0 - 2.0 * s); }};
    *out = new mge_graph{
        g->g.with_edge_curve(e, mge::reparametrize(g->g.edge(e).curve, map))};
  });
}

mge_status mge_graph_reverse_edge(const mge_graph* g, size_t e, mge_graph** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    if (e >= g->g.edge_count()) {
      throw mge::Error(mge::ErrorCode::kInvalidArgument, "edge index out of range");
    }
    *out = new mge_graph{g->g.with_edge_reversed(e)};
  });
}

mge_status mge_mobius_create(mge_mobius** out) {
  return guard([&] {
    need(out, "out");
    *out = new mge_mobius{};
  });
}

void mge_mobius_free(mge_mobius* m) { delete m; }

mge_status mge_mobius_add_inversion(mge_mobius* m, const double center[3],
                                    double radius) {
  return guard([&] {
    need(m, "map");
    need(center, "center");
    m->m.then_invert(mge::Point3(center[0], center[1], center[2]), radius);
  });
}

mge_status mge_mobius_add_similarity(mge_mobius* m, const double rotation[9],
                                     const double translation[3], double scale) {
  return guard([&] {
    need(m, "map");
    mge::Similarity s;
    if (rotation != nullptr) {
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) s.rotation(r, c) = rotation[3 * r + c];
      }
    }
    if (translation != nullptr) {
      s.translation = mge::Vec3(translation[0], translation[1], translation[2]);
    }
    s.scale = scale;
    m->m.then_similarity(s);
  });
}

mge_status mge_mobius_random_for_graph(const mge_graph* g, uint64_t seed,
                                       double margin, mge_mobius** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    std::mt19937_64 rng(seed);
    *out = new mge_mobius{mge::random_mobius(g->g, rng, margin)};
  });
}

mge_status mge_mobius_apply(const mge_mobius* m, const double x[3], double out[3]) {
  return guard([&] {
    need(m, "map");
    need(x, "x");
    need(out, "out");
    const auto y = m->m.apply(mge::Point3(x[0], x[1], x[2]));
    out[0] = y.x();
    out[1] = y.y();
    out[2] = y.z();
  });
}

mge_status mge_graph_transform(const mge_graph* g, const mge_mobius* m,
                               mge_graph** out) {
  return guard([&] {
    need(g, "graph");
    need(m, "map");
    need(out, "out");
    *out = new mge_graph{mge::transform(g->g, m->m)};
  });
}

void mge_energy_options_default(mge_energy_options* o) {
  if (o == nullptr) return;
  const mge::QuadratureConfig q;
  const mge::EnergyConvention c;
  o->base_panels = q.base_panels;
  o->nodes_u = q.nodes_u;
  o->nodes_v = q.nodes_v;
  o->max_depth = q.max_depth;
  o->rel_tol = q.rel_tol;
  o->abs_tol = q.abs_tol;
  o->threads = q.threads;
  o->counting = c.counting == mge::Counting::kOrdered ? MGE_COUNT_ORDERED
                                                      : MGE_COUNT_UNORDERED;
  o->strand_self_energy = c.strand_self_energy ? 1 : 0;
  o->adjacent_rule = MGE_ADJ_SIGN_RESOLVED;
  o->straight_tol = c.straight_tol;
}

mge_status mge_energy_options_preset(mge_energy_options* o, const char* name) {
  return guard([&] {
    need(o, "options");
    need(name, "name");
    const auto c = mge::EnergyConvention::from_name(name);
    o->counting = c.counting == mge::Counting::kOrdered ? MGE_COUNT_ORDERED
                                                        : MGE_COUNT_UNORDERED;
    o->strand_self_energy = c.strand_self_energy ? 1 : 0;
    o->adjacent_rule = MGE_ADJ_SIGN_RESOLVED;
    o->straight_tol = c.straight_tol;
  });
}

mge_status mge_energy_compute(const mge_graph* g, const mge_energy_options* o,
                              mge_energy_report** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    auto shared = std::make_shared<const mge::EmbeddedGraph>(g->g);
    auto r = mge::total_energy(*shared, quad_of(o), conv_of(o));
    *out = new mge_energy_report{std::move(r), std::move(shared)};
  });
}

void mge_energy_report_free(mge_energy_report* r) { delete r; }

double mge_energy_report_total(const mge_energy_report* r) {
  return r ? r->r.total : 0.0;
}

double mge_energy_report_error(const mge_energy_report* r) {
  return r ? r->r.error : 0.0;
}

int mge_energy_report_converged(const mge_energy_report* r) {
  return r && r->r.converged ? 1 : 0;
}

double mge_energy_report_seconds(const mge_energy_report* r) {
  return r ? r->r.seconds : 0.0;
}

size_t mge_energy_report_pair_count(const mge_energy_report* r) {
  return r ? r->r.pairs.size() : 0;
}

mge_status mge_energy_report_pair(const mge_energy_report* r, size_t k, size_t* i,
                                  size_t* j, mge_pair_kind* kind, double* value,
                                  double* error) {
  return guard([&] {
    need(r, "report");
    if (k >= r->r.pairs.size()) {
      throw mge::Error(mge::ErrorCode::kInvalidArgument, "pair index out of range");
    }
    const auto& p = r->r.pairs[k];
    if (i) *i = p.i;
    if (j) *j = p.j;
    if (kind) *kind = static_cast<mge_pair_kind>(static_cast<int>(p.kind));
    if (value) *value = p.value;
    if (error) *error = p.error;
  });
}

mge_status mge_energy_report_csv(const mge_energy_report* r, char** out) {
  return guard([&] {
    need(r, "report");
    need(out, "out");
    *out = dup(mge::report_csv(r->r, *r->g));
  });
}

mge_status mge_energy_report_json(const mge_energy_report* r, char** out) {
  return guard([&] {
    need(r, "report");
    need(out, "out");
    *out = dup(mge::report_json(r->r, *r->g));
  });
}

mge_status mge_toric_validate_spec(int p, int q, int m, int n) {
  return guard([&] { mge::validate_spec({p, q, m, n}); });
}

mge_status mge_toric_build(int p, int q, int m, int n, const double pole[4],
                           int samples_per_edge, mge_graph** out) {
  return guard([&] {
    need(out, "out");
    mge::ToricOptions o;
    if (pole != nullptr) o.pole = mge::Point4(pole[0], pole[1], pole[2], pole[3]);
    if (samples_per_edge > 0) o.samples_per_edge = samples_per_edge;
    *out = new mge_graph{mge::build_toric_graph({p, q, m, n}, o)};
  });
}

mge_status mge_truncated_principal(const mge_graph* g, size_t i, size_t j,
                                   size_t v, double eps,
                                   const mge_energy_options* o,
                                   mge_truncation domain, double* value,
                                   double* error) {
  return guard([&] {
    need(g, "graph");
    need(value, "value");
    if (i >= g->g.edge_count() || j >= g->g.edge_count() ||
        v >= g->g.vertex_count()) {
      throw mge::Error(mge::ErrorCode::kInvalidArgument, "index out of range");
    }
    const auto in = mge::truncated_principal(g->g, i, j, v, eps, quad_of(o),
                                             domain_of(domain));
    *value = in.value;
    if (error) *error = in.error;
  });
}

mge_status mge_log_slope_fit(const double* eps, const double* values, size_t n,
                             double* slope, double* intercept, double* r2) {
  return guard([&] {
    need(eps, "eps");
    need(values, "values");
    const auto f = mge::log_slope_fit({eps, eps + n}, {values, values + n});
    if (slope) *slope = f.slope;
    if (intercept) *intercept = f.intercept;
    if (r2) *r2 = f.r2;
  });
}

mge_status mge_wedge_oracle_slope(double alpha, mge_truncation domain, double* out) {
  return guard([&] {
    need(out, "out");
    *out = mge::wedge_oracle_slope(alpha, domain_of(domain));
  });
}

mge_status mge_asymptotics_report(const mge_graph* g, size_t v, size_t i,
                                  size_t j, const double* eps, size_t n,
                                  const mge_energy_options* o,
                                  mge_truncation domain, char** json, char** csv) {
  return guard([&] {
    need(g, "graph");
    need(eps, "eps");
    if (i >= g->g.edge_count() || j >= g->g.edge_count() ||
        v >= g->g.vertex_count()) {
      throw mge::Error(mge::ErrorCode::kInvalidArgument, "index out of range");
    }
    const auto r = mge::asymptotics_report(g->g, v, i, j, {eps, eps + n},
                                           quad_of(o), domain_of(domain));
    set_string(json, mge::asymptotics_json(r, g->g));
    set_string(csv, mge::asymptotics_csv(r));
  });
}

mge_status mge_psi(double alpha, double* out) {
  return guard([&] {
    need(out, "out");
    *out = mge::psi(alpha);
  });
}

mge_status mge_tuple_intensity(const double* u, size_t k, double* out) {
  return guard([&] {
    need(out, "out");
    *out = mge::big_psi(mge::TupleConfig::make(vectors_of(u, k)));
  });
}

mge_status mge_tuple_gradient(const double* u, size_t k, double* gradient,
                              double* norm) {
  return guard([&] {
    const auto g = mge::riemannian_gradient(mge::TupleConfig::make(vectors_of(u, k)));
    if (gradient != nullptr) {
      for (size_t i = 0; i < k; ++i) {
        for (int c = 0; c < 3; ++c) gradient[3 * i + c] = g.components[i][c];
      }
    }
    if (norm) *norm = g.norm;
  });
}

mge_status mge_criticality_report(const double* u, size_t k, char** json) {
  return guard([&] {
    need(json, "json");
    *json = dup(mge::criticality_json(
        mge::criticality_report(mge::TupleConfig::make(vectors_of(u, k)))));
  });
}

mge_status mge_canonical_config(const char* name, double* out, size_t* k) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    const auto c = mge::canonical_config(name);
    for (size_t i = 0; i < c.size(); ++i) {
      for (int d = 0; d < 3; ++d) out[3 * i + d] = c[i][d];
    }
    if (k) *k = c.size();
  });
}

mge_status mge_local_search(int k, uint64_t seed, double angle_floor,
                            double* u_out, char** report_json) {
  return guard([&] {
    mge::SearchPolicy p;
    if (angle_floor > 0.0) p.angle_floor = angle_floor;
    const auto r = mge::local_search(k, seed, p);
    if (u_out != nullptr) {
      for (size_t i = 0; i < r.config.size(); ++i) {
        for (int d = 0; d < 3; ++d) u_out[3 * i + d] = r.config[i][d];
      }
    }
    set_string(report_json, mge::criticality_json(r.report));
  });
}

mge_status mge_critical_batch(int k, uint64_t first_seed, int count,
                              double angle_floor, int threads, char** csv,
                              char** json) {
  return guard([&] {
    mge::SearchPolicy p;
    if (angle_floor > 0.0) p.angle_floor = angle_floor;
    const auto b = mge::critical_batch(k, first_seed, count, p, threads);
    set_string(csv, mge::batch_csv(b));
    set_string(json, mge::batch_json(b));
  });
}

mge_status mge_invariance_run(const mge_graph* g, const mge_energy_options* o,
                              int count, uint64_t seed, int identity_only,
                              const mge_mobius* const* extra, size_t n_extra,
                              double* max_rel_dev, int* skipped, char** csv) {
  return guard([&] {
    need(g, "graph");
    mge::InvarianceOptions io;
    io.count = count;
    io.seed = seed;
    io.identity_only = identity_only != 0;
    io.quadrature = quad_of(o);
    io.convention = conv_of(o);
    for (size_t k = 0; k < n_extra; ++k) {
      need(extra[k], "extra map");
      io.extra_maps.push_back(extra[k]->m);
    }
    const auto r = mge::invariance_study(g->g, io);
    if (max_rel_dev) *max_rel_dev = r.max_rel_deviation;
    if (skipped) *skipped = r.skipped;
    set_string(csv, mge::invariance_csv(r));
  });
}

}  // extern "C"

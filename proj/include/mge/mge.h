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

#ifndef MGE_MGE_H_
#define MGE_MGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MGE_BUILDING_LIBRARY)
#define MGE_API __declspec(dllexport)
#else
#define MGE_API __declspec(dllimport)
#endif
#else
#define MGE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mge_status {
  MGE_OK = 0,
  MGE_ERR_INVALID_ARGUMENT = 1,
  MGE_ERR_DEGENERATE = 2,
  MGE_ERR_INCIDENCE = 3,
  MGE_ERR_POLE = 4,
  MGE_ERR_PARSE = 5,
  MGE_ERR_SCHEMA = 6,
  MGE_ERR_MULTIPLE_EDGE = 7,
  MGE_ERR_VALIDATION = 8,
  MGE_ERR_TOLERANCE = 9,
  MGE_ERR_DOMAIN = 10,
  MGE_ERR_BARRIER = 11,
  MGE_ERR_IO = 12,
  MGE_ERR_INTERNAL = 99
} mge_status;

MGE_API const char* mge_version(void);
MGE_API const char* mge_status_string(mge_status status);
/* Message of the last failed call on this thread ("" if none). */
MGE_API const char* mge_last_error(void);
/* Frees strings returned through char** out-parameters. */
MGE_API void mge_string_free(char* s);

/* ---- graphs ---- */

typedef struct mge_graph mge_graph;

MGE_API mge_status mge_graph_from_json(const char* text, mge_graph** out);
MGE_API mge_status mge_graph_load(const char* path, mge_graph** out);
MGE_API mge_status mge_graph_to_json(const mge_graph* g, char** out);
MGE_API mge_status mge_graph_save(const mge_graph* g, const char* path);
MGE_API void mge_graph_free(mge_graph* g);

MGE_API size_t mge_graph_vertex_count(const mge_graph* g);
MGE_API size_t mge_graph_edge_count(const mge_graph* g);
MGE_API mge_status mge_graph_vertex_index(const mge_graph* g, const char* id,
                                          size_t* out);
MGE_API mge_status mge_graph_edge_index(const mge_graph* g, const char* id,
                                        size_t* out);
MGE_API mge_status mge_graph_vertex_position(const mge_graph* g, size_t v,
                                             double xyz[3]);
MGE_API mge_status mge_graph_diameter(const mge_graph* g, double* out);

/* JSON list of {vertex, edge_a, edge_b, alpha}. */
MGE_API mge_status mge_graph_vertex_angles(const mge_graph* g, char** json);

/* *ok = 1 when valid; report is a JSON list of violations. */
MGE_API mge_status mge_graph_validate(const mge_graph* g, int* ok,
                                      char** report);

typedef enum mge_mesh_format { MGE_MESH_PLY = 0, MGE_MESH_OBJ = 1 } mge_mesh_format;
MGE_API mge_status mge_graph_export(const mge_graph* g, mge_mesh_format format,
                                    int samples_per_edge, char** out);

/* Copy with edge e reparametrized by s -> s + a s (1 - s), |a| < 1. */
MGE_API mge_status mge_graph_reparametrize_edge(const mge_graph* g, size_t e,
                                                double a, mge_graph** out);
MGE_API mge_status mge_graph_reverse_edge(const mge_graph* g, size_t e,
                                          mge_graph** out);

/* ---- Moebius maps ---- */

typedef struct mge_mobius mge_mobius;

MGE_API mge_status mge_mobius_create(mge_mobius** out);
MGE_API void mge_mobius_free(mge_mobius* m);
MGE_API mge_status mge_mobius_add_inversion(mge_mobius* m,
                                            const double center[3],
                                            double radius);
/* x -> scale * R x + t, R row-major. */
MGE_API mge_status mge_mobius_add_similarity(mge_mobius* m,
                                             const double rotation[9],
                                             const double translation[3],
                                             double scale);
MGE_API mge_status mge_mobius_random_for_graph(const mge_graph* g,
                                               uint64_t seed, double margin,
                                               mge_mobius** out);
MGE_API mge_status mge_mobius_apply(const mge_mobius* m, const double x[3],
                                    double out[3]);
MGE_API mge_status mge_graph_transform(const mge_graph* g, const mge_mobius* m,
                                       mge_graph** out);

/* ---- energy ---- */

typedef enum mge_counting {
  MGE_COUNT_UNORDERED = 0,
  MGE_COUNT_ORDERED = 1
} mge_counting;

typedef enum mge_adjacent_rule {
  MGE_ADJ_SIGN_RESOLVED = 0,
  MGE_ADJ_REFLECTED = 1,
  MGE_ADJ_LITERAL = 2
} mge_adjacent_rule;

typedef enum mge_pair_kind {
  MGE_PAIR_SAME = 0,
  MGE_PAIR_DISJOINT = 1,
  MGE_PAIR_ADJACENT = 2,
  MGE_PAIR_STRAND = 3
} mge_pair_kind;

typedef struct mge_energy_options {
  int base_panels;
  int nodes_u;
  int nodes_v;
  int max_depth;
  double rel_tol;
  double abs_tol;
  int threads; /* 0: hardware concurrency */
  mge_counting counting;
  int strand_self_energy;
  mge_adjacent_rule adjacent_rule;
  double straight_tol;
} mge_energy_options;

MGE_API void mge_energy_options_default(mge_energy_options* o);
/* "reference" or "definition"; keeps the quadrature fields. */
MGE_API mge_status mge_energy_options_preset(mge_energy_options* o,
                                             const char* name);

typedef struct mge_energy_report mge_energy_report;

MGE_API mge_status mge_energy_compute(const mge_graph* g,
                                      const mge_energy_options* o,
                                      mge_energy_report** out);
MGE_API void mge_energy_report_free(mge_energy_report* r);
MGE_API double mge_energy_report_total(const mge_energy_report* r);
MGE_API double mge_energy_report_error(const mge_energy_report* r);
MGE_API int mge_energy_report_converged(const mge_energy_report* r);
MGE_API double mge_energy_report_seconds(const mge_energy_report* r);
MGE_API size_t mge_energy_report_pair_count(const mge_energy_report* r);
MGE_API mge_status mge_energy_report_pair(const mge_energy_report* r, size_t k,
                                          size_t* i, size_t* j,
                                          mge_pair_kind* kind, double* value,
                                          double* error);
MGE_API mge_status mge_energy_report_csv(const mge_energy_report* r, char** out);
MGE_API mge_status mge_energy_report_json(const mge_energy_report* r,
                                          char** out);

/* ---- toric graphs ---- */

MGE_API mge_status mge_toric_validate_spec(int p, int q, int m, int n);
/* pole may be NULL for (0,0,0,1); samples_per_edge <= 0 selects the default. */
MGE_API mge_status mge_toric_build(int p, int q, int m, int n,
                                   const double pole[4], int samples_per_edge,
                                   mge_graph** out);

/* ---- truncated principal term ---- */

typedef enum mge_truncation {
  MGE_TRUNC_NOT_BOTH_INSIDE = 0,
  MGE_TRUNC_BOTH_OUTSIDE = 1
} mge_truncation;

MGE_API mge_status mge_truncated_principal(const mge_graph* g, size_t i,
                                           size_t j, size_t v, double eps,
                                           const mge_energy_options* o,
                                           mge_truncation domain,
                                           double* value, double* error);
MGE_API mge_status mge_log_slope_fit(const double* eps, const double* values,
                                     size_t n, double* slope,
                                     double* intercept, double* r2);
MGE_API mge_status mge_wedge_oracle_slope(double alpha, mge_truncation domain,
                                          double* out);
MGE_API mge_status mge_asymptotics_report(const mge_graph* g, size_t v,
                                          size_t i, size_t j,
                                          const double* eps, size_t n,
                                          const mge_energy_options* o,
                                          mge_truncation domain, char** json,
                                          char** csv);

/* ---- vertex intensity ---- */

MGE_API mge_status mge_psi(double alpha, double* out);
/* u holds k unit vectors, 3 doubles each. */
MGE_API mge_status mge_tuple_intensity(const double* u, size_t k, double* out);
MGE_API mge_status mge_tuple_gradient(const double* u, size_t k,
                                      double* gradient, double* norm);
MGE_API mge_status mge_criticality_report(const double* u, size_t k,
                                          char** json);
/* out must hold 12 doubles. */
MGE_API mge_status mge_canonical_config(const char* name, double* out,
                                        size_t* k);
/* u_out may be NULL; otherwise holds 3k doubles. */
MGE_API mge_status mge_local_search(int k, uint64_t seed, double angle_floor,
                                    double* u_out, char** report_json);
MGE_API mge_status mge_critical_batch(int k, uint64_t first_seed, int count,
                                      double angle_floor, int threads,
                                      char** csv, char** json);

/* ---- Moebius invariance study ---- */

MGE_API mge_status mge_invariance_run(const mge_graph* g,
                                      const mge_energy_options* o, int count,
                                      uint64_t seed, int identity_only,
                                      const mge_mobius* const* extra,
                                      size_t n_extra, double* max_rel_dev,
                                      int* skipped, char** csv);

#ifdef __cplusplus
}
#endif

#endif  // MGE_MGE_H_

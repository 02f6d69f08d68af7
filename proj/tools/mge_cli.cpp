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

// Batch driver over the C API.

#include "mge/mge.h"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitTolerance = 4;

struct Options {
  int quad_panels = 0;
  int quad_depth = -1;
  double tol = 0.0;
  std::uint64_t seed = 1;
  int threads = 0;
  bool quiet = false;
  std::string out = ".";
  std::string convention = "reference";
};

class Failure {
 public:
  Failure(int code, std::string msg) : code_(code), msg_(std::move(msg)) {}
  int code() const { return code_; }
  const std::string& message() const { return msg_; }

 private:
  int code_;
  std::string msg_;
};

int exit_code_for(mge_status s) {
  switch (s) {
    case MGE_ERR_INVALID_ARGUMENT:
    case MGE_ERR_PARSE:
    case MGE_ERR_SCHEMA:
    case MGE_ERR_MULTIPLE_EDGE:
    case MGE_ERR_IO:
      return kExitUsage;
    case MGE_ERR_VALIDATION:
      return kExitValidation;
    case MGE_ERR_TOLERANCE:
      return kExitTolerance;
    default:
      return kExitFailure;
  }
}

void check(mge_status s) {
  if (s != MGE_OK) {
    throw Failure(exit_code_for(s),
                  std::string(mge_status_string(s)) + ": " + mge_last_error());
  }
}

struct StrDel {
  void operator()(char* s) const { mge_string_free(s); }
};
using OwnedStr = std::unique_ptr<char, StrDel>;

struct GraphDel {
  void operator()(mge_graph* g) const { mge_graph_free(g); }
};
using Graph = std::unique_ptr<mge_graph, GraphDel>;

struct MapDel {
  void operator()(mge_mobius* m) const { mge_mobius_free(m); }
};
using Map = std::unique_ptr<mge_mobius, MapDel>;

struct ReportDel {
  void operator()(mge_energy_report* r) const { mge_energy_report_free(r); }
};
using Report = std::unique_ptr<mge_energy_report, ReportDel>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void note(const Options& o, const std::string& msg) {
  if (!o.quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

void write_file(const Options& o, const std::string& name, const char* text) {
  fs::create_directories(o.out);
  const fs::path path = fs::path(o.out) / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure(kExitFailure, "cannot write " + path.string());
  note(o, "wrote " + path.string());
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure(kExitUsage, "not a number: '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

mge_energy_options energy_options(const Options& o) {
  mge_energy_options e;
  mge_energy_options_default(&e);
  check(mge_energy_options_preset(&e, o.convention.c_str()));
  if (o.quad_panels > 0) e.base_panels = o.quad_panels;
  if (o.quad_depth >= 0) e.max_depth = o.quad_depth;
  if (o.tol > 0.0) e.rel_tol = o.tol;
  e.threads = o.threads;
  return e;
}

Graph load(const std::string& path) {
  mge_graph* g = nullptr;
  check(mge_graph_load(path.c_str(), &g));
  return Graph(g);
}

void require_valid(const Options& o, const mge_graph* g) {
  int ok = 0;
  char* rep = nullptr;
  check(mge_graph_validate(g, &ok, &rep));
  OwnedStr owned(rep);
  if (!ok) {
    std::fprintf(stderr, "%s", rep);
    throw Failure(kExitValidation, "graph failed validation");
  }
  note(o, "graph valid");
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

int run_energy_on(const Options& o, const mge_graph* g, const std::string& name) {
  const auto eo = energy_options(o);
  mge_energy_report* raw = nullptr;
  check(mge_energy_compute(g, &eo, &raw));
  Report r(raw);
  char* csv = nullptr;
  char* json = nullptr;
  check(mge_energy_report_csv(r.get(), &csv));
  OwnedStr c(csv);
  check(mge_energy_report_json(r.get(), &json));
  OwnedStr j(json);
  write_file(o, name + ".energy.csv", csv);
  write_file(o, name + ".energy.json", json);
  std::printf("%s\n", fmt(mge_energy_report_total(r.get())).c_str());
  note(o, "total " + fmt(mge_energy_report_total(r.get())) + " +- " +
              fmt(mge_energy_report_error(r.get())) + " (" +
              fmt(mge_energy_report_seconds(r.get())) + " s)");
  if (!mge_energy_report_converged(r.get())) {
    std::fprintf(stderr, "quadrature tolerance not met\n");
    return kExitTolerance;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moebius energy of embedded graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--quad-panels", o.quad_panels, "base panels per axis");
  app.add_option("--quad-depth", o.quad_depth, "maximum refinement depth");
  app.add_option("--tol", o.tol, "relative quadrature tolerance");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--threads", o.threads, "worker threads (0: all cores)");
  app.add_flag("--quiet", o.quiet, "machine output only");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--convention", o.convention, "reference or definition")
      ->check(CLI::IsMember({"reference", "definition"}));

  auto* energy = app.add_subcommand("energy", "total energy of a graph file");
  std::string energy_file;
  energy->add_option("graph", energy_file)->required();

  auto* toric = app.add_subcommand("toric", "symmetric toric graph (p,q;m,n)");
  std::string spec, pole_text;
  bool emit_graph = false, toric_energy = false;
  int samples = 0;
  std::string toric_mesh;
  toric->add_option("--spec", spec, "p,q,m,n")->required();
  toric->add_flag("--emit-graph", emit_graph, "write the graph JSON");
  toric->add_flag("--energy", toric_energy, "compute the energy");
  toric->add_option("--pole", pole_text, "x,y,z,t on the unit 3-sphere");
  toric->add_option("--samples", samples, "hermite nodes per edge");
  toric->add_option("--mesh", toric_mesh, "also export ply or obj")
      ->check(CLI::IsMember({"ply", "obj"}));

  auto* inv = app.add_subcommand("invariance", "energy under random Moebius maps");
  std::string inv_file;
  int inv_count = 5;
  bool identity = false;
  std::vector<std::string> inversions;
  inv->add_option("graph", inv_file)->required();
  inv->add_option("--count", inv_count, "number of random maps");
  inv->add_flag("--identity", identity, "use identity maps only");
  inv->add_option("--inversion", inversions, "extra inversion cx,cy,cz,r");

  auto* crit = app.add_subcommand("critical", "multi-start search for critical vertices");
  int k = 3, seeds = 20;
  double floor = 1e-6;
  crit->add_option("--k", k, "vectors per configuration")->required();
  crit->add_option("--seeds", seeds, "number of random starts");
  crit->add_option("--floor", floor, "angle floor");

  auto* asym = app.add_subcommand("asymptotics", "truncated principal term near a vertex");
  std::string asym_file, vertex_id, edge_ids, eps_text = "1e-1,3e-2,1e-2,3e-3,1e-3";
  std::string domain = "not-both-inside";
  asym->add_option("graph", asym_file)->required();
  asym->add_option("--vertex", vertex_id, "vertex id")->required();
  asym->add_option("--edges", edge_ids, "edge ids i,j")->required();
  asym->add_option("--eps", eps_text, "comma-separated radii");
  asym->add_option("--domain", domain, "truncation domain")
      ->check(CLI::IsMember({"not-both-inside", "both-outside"}));

  auto* exp = app.add_subcommand("export", "polyline mesh export");
  std::string exp_file, format = "ply";
  int exp_samples = 64;
  exp->add_option("graph", exp_file)->required();
  exp->add_option("--format", format)->check(CLI::IsMember({"ply", "obj"}));
  exp->add_option("--samples", exp_samples, "segments per edge");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*energy) {
      Graph g = load(energy_file);
      require_valid(o, g.get());
      return run_energy_on(o, g.get(), stem(energy_file));
    }
    if (*toric) {
      std::vector<int> s;
      for (const auto& part : split(spec)) {
        try {
          std::size_t used = 0;
          s.push_back(std::stoi(part, &used));
          if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
          throw Failure(kExitUsage, "spec must be p,q,m,n");
        }
      }
      if (s.size() != 4) throw Failure(kExitUsage, "spec must be p,q,m,n");
      check(mge_toric_validate_spec(s[0], s[1], s[2], s[3]));
      double pole[4] = {0, 0, 0, 1};
      if (!pole_text.empty()) {
        const auto p = split_doubles(pole_text);
        if (p.size() != 4) throw Failure(kExitUsage, "pole must be x,y,z,t");
        for (int i = 0; i < 4; ++i) pole[i] = p[i];
      }
      mge_graph* raw = nullptr;
      check(mge_toric_build(s[0], s[1], s[2], s[3], pole, samples, &raw));
      Graph g(raw);
      const std::string name = "toric_" + std::to_string(s[0]) + "_" +
                               std::to_string(s[1]) + "_" + std::to_string(s[2]) +
                               "_" + std::to_string(s[3]);
      if (emit_graph || !toric_energy) {
        char* json = nullptr;
        check(mge_graph_to_json(g.get(), &json));
        OwnedStr j(json);
        write_file(o, name + ".json", json);
      }
      if (!toric_mesh.empty()) {
        char* mesh = nullptr;
        check(mge_graph_export(g.get(), toric_mesh == "obj" ? MGE_MESH_OBJ : MGE_MESH_PLY,
                               64, &mesh));
        OwnedStr m(mesh);
        write_file(o, name + "." + toric_mesh, mesh);
      }
      if (toric_energy) {
        require_valid(o, g.get());
        return run_energy_on(o, g.get(), name);
      }
      return 0;
    }
    if (*inv) {
      Graph g = load(inv_file);
      require_valid(o, g.get());
      std::vector<Map> maps;
      std::vector<const mge_mobius*> extra;
      for (const auto& text : inversions) {
        const auto v = split_doubles(text);
        if (v.size() != 4) throw Failure(kExitUsage, "inversion must be cx,cy,cz,r");
        mge_mobius* m = nullptr;
        check(mge_mobius_create(&m));
        maps.emplace_back(m);
        check(mge_mobius_add_inversion(m, v.data(), v[3]));
        extra.push_back(m);
      }
      const auto eo = energy_options(o);
      double max_dev = 0.0;
      int skipped = 0;
      char* csv = nullptr;
      check(mge_invariance_run(g.get(), &eo, inv_count, o.seed, identity ? 1 : 0,
                               extra.data(), extra.size(), &max_dev, &skipped, &csv));
      OwnedStr c(csv);
      write_file(o, stem(inv_file) + ".invariance.csv", csv);
      if (skipped > 0) {
        std::fprintf(stderr, "warning: %d map(s) skipped, pole near the graph\n",
                     skipped);
      }
      std::printf("%s\n", fmt(max_dev).c_str());
      return 0;
    }
    if (*crit) {
      char* csv = nullptr;
      char* json = nullptr;
      check(mge_critical_batch(k, o.seed, seeds, floor, std::max(1, o.threads),
                               &csv, &json));
      OwnedStr c(csv), j(json);
      const std::string name = "critical_k" + std::to_string(k);
      write_file(o, name + ".csv", csv);
      write_file(o, name + ".json", json);
      std::printf("%s", csv);
      return 0;
    }
    if (*asym) {
      Graph g = load(asym_file);
      require_valid(o, g.get());
      const auto eps = split_doubles(eps_text);
      if (eps.size() < 4) throw Failure(kExitUsage, "need at least 4 eps values");
      const auto ids = split(edge_ids);
      if (ids.size() != 2) throw Failure(kExitUsage, "edges must be i,j");
      std::size_t v = 0, i = 0, j = 0;
      check(mge_graph_vertex_index(g.get(), vertex_id.c_str(), &v));
      check(mge_graph_edge_index(g.get(), ids[0].c_str(), &i));
      check(mge_graph_edge_index(g.get(), ids[1].c_str(), &j));
      const auto eo = energy_options(o);
      char* json = nullptr;
      char* csv = nullptr;
      check(mge_asymptotics_report(
          g.get(), v, i, j, eps.data(), eps.size(), &eo,
          domain == "both-outside" ? MGE_TRUNC_BOTH_OUTSIDE : MGE_TRUNC_NOT_BOTH_INSIDE,
          &json, &csv));
      OwnedStr js(json), cs(csv);
      write_file(o, stem(asym_file) + ".asymptotics.json", json);
      write_file(o, stem(asym_file) + ".asymptotics.csv", csv);
      std::printf("%s", json);
      return 0;
    }
    if (*exp) {
      Graph g = load(exp_file);
      char* mesh = nullptr;
      check(mge_graph_export(g.get(), format == "obj" ? MGE_MESH_OBJ : MGE_MESH_PLY,
                             exp_samples, &mesh));
      OwnedStr m(mesh);
      write_file(o, stem(exp_file) + "." + format, mesh);
      return 0;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message().c_str());
    return f.code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

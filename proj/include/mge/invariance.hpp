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

#pragma once

#include "mge/energy.hpp"
#include "mge/graph.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mge {

/// Random similarity followed by a sphere inversion whose center keeps at
/// least `margin` * diameter away from the (similarity-moved) graph image.
MobiusMap random_mobius(const EmbeddedGraph& g, std::mt19937_64& rng,
                        double margin = 0.1);

struct InvarianceOptions {
  int count = 5;
  std::uint64_t seed = 1;
  double margin = 0.1;
  bool identity_only = false;
  /// Extra caller-supplied maps; ones with a pole near the graph are skipped.
  std::vector<MobiusMap> extra_maps;
  QuadratureConfig quadrature;
  EnergyConvention convention;
  TransformOptions transform;
};

struct InvarianceRow {
  std::string label;
  bool skipped;
  std::string note;
  double energy;
  double rel_deviation;
};

struct InvarianceReport {
  double base_energy;
  double base_error;
  std::vector<InvarianceRow> rows;
  double max_rel_deviation;
  int skipped;
};

InvarianceReport invariance_study(const EmbeddedGraph& g,
                                  const InvarianceOptions& o = {});

std::string invariance_csv(const InvarianceReport& r);

}  // namespace mge

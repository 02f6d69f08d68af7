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

#include "mge/graph.hpp"

#include <string>
#include <string_view>

namespace mge {

EmbeddedGraph load_graph(std::string_view json_text);
EmbeddedGraph load_graph_file(const std::string& path);

/// Curve kinds without a file representation (reparametrized, reversed) are
/// written as hermite curves with `hermite_nodes` nodes.
std::string save_graph(const EmbeddedGraph& g, int hermite_nodes = 129);
void save_graph_file(const EmbeddedGraph& g, const std::string& path);

enum class MeshFormat { kPly, kObj };

/// ASCII polylines, one chain of `samples_per_edge` segments per edge.
std::string export_polylines(const EmbeddedGraph& g, MeshFormat format,
                             int samples_per_edge = 64);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mge

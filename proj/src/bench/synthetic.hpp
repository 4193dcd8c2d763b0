// Copyright 2026 The PGQP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>

#include "graph/graph.hpp"
#include "query/query.hpp"

namespace pgqp {

struct SyntheticParams {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::uint32_t vertex_labels = 1;
  std::uint32_t edge_labels = 1;
  /// Planted first, vertex-disjoint.
  std::uint32_t embed_count = 0;
  std::uint64_t seed = 1;
  /// Random edges join vertices at most this far apart in id order. 0 means
  /// uniform endpoints.
  std::uint64_t window = 0;
};

/// Random labeled graph with `embed_count` copies of `templ` planted in it.
/// Vertex ids run 1..vertices; random labels are "v<i>" and "e<i>", drawn
/// uniformly. Every copy occupies a contiguous id range.
Graph generate_synthetic(const SyntheticParams& params, const Graph& templ);

/// Query matching `templ` exactly: one node per vertex with an exact label,
/// one edge per template edge.
Query template_query(const Graph& templ);

}  // namespace pgqp

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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "common/types.hpp"

namespace pgqp {

/// Interns label strings. Vertex and edge labels share one table.
class LabelTable {
 public:
  LabelId intern(std::string_view label);
  std::optional<LabelId> find(std::string_view label) const;
  const std::string& name(LabelId id) const { return names_[id]; }
  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LabelId> ids_;
};

struct Vertex {
  VertexId vid = 0;
  LabelId label = 0;
  PartitionId pid = kUnpartitioned;
};

struct Edge {
  EdgeDir dir = EdgeDir::undirected;
  VertexIndex src = 0;
  VertexIndex dst = 0;
  LabelId label = 0;
};

/// One adjacency entry. `outgoing` is true when the owning vertex is the
/// edge's source; undirected edges appear at both ends with the flag set
/// accordingly. A self-loop appears once.
struct Incidence {
  EdgeIndex edge = 0;
  VertexIndex neighbor = 0;
  bool outgoing = false;
};

/// Labeled multigraph keyed by external vertex ids. Build with add_vertex /
/// add_edge, then call finalize() once to build adjacency; the graph is
/// read-only afterwards.
class Graph {
 public:
  VertexIndex add_vertex(VertexId vid, std::string_view label, PartitionId pid = kUnpartitioned);
  EdgeIndex add_edge(EdgeDir dir, VertexId src, VertexId dst, std::string_view label);
  EdgeIndex add_edge_by_index(EdgeDir dir, VertexIndex src, VertexIndex dst, LabelId label);
  void finalize();
  bool finalized() const noexcept { return finalized_; }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

  const Vertex& vertex(VertexIndex i) const { return vertices_[i]; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> incident(VertexIndex i) const;

  std::optional<VertexIndex> find(VertexId vid) const;
  VertexId vid(VertexIndex i) const { return vertices_[i].vid; }
  const std::string& label_of(VertexIndex i) const { return labels_.name(vertices_[i].label); }
  const std::string& edge_label(EdgeIndex e) const { return labels_.name(edges_[e].label); }

  LabelTable& labels() { return labels_; }
  const LabelTable& labels() const { return labels_; }

  /// Rough resident footprint, used to bound memory in partitioned runs.
  std::size_t resident_bytes() const;

 private:
  LabelTable labels_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<VertexId, VertexIndex> index_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<Incidence> adj_;
  bool finalized_ = false;
};

/// Vertex set and edge multiset equality (undirected endpoints unordered).
/// Vertex pids are compared only when `compare_pids` is set.
bool structurally_equal(const Graph& a, const Graph& b, bool compare_pids = false);

/// Parses the line-oriented graph format. `v` lines accept an optional fourth
/// pid token. Edges may reference vertices declared later in the stream.
Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);

/// Writes vertices (sorted by vid) then edges in insertion order. Pids are
/// emitted as a fourth `v` token when `with_pids` is set.
std::string serialize_graph(const Graph& g, bool with_pids = false);

struct ComponentLabeling {
  std::size_t count = 0;
  /// Component id per vertex index, numbered in order of first appearance.
  std::vector<std::uint32_t> component;
};

/// Connected components ignoring edge direction.
ComponentLabeling connected_components(const Graph& g);

}  // namespace pgqp

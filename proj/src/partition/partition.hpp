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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graph/graph.hpp"

namespace pgqp {

/// Home partition for every vertex of a graph. Pids are 1-based.
struct PartitionAssignment {
  std::uint32_t k = 1;
  /// Pid per vertex index of the source graph.
  std::vector<PartitionId> pid_of;
  std::string scheme_name;
};

/// Reads METIS-style output: line i holds the 0-based part of the i-th vertex
/// in ascending vid order.
PartitionAssignment import_assignment(const Graph& g, std::string_view lines, std::uint32_t k,
                                      std::string scheme_name = "imported");

/// Greedy graph growing: each part is grown from a peripheral unassigned
/// vertex, always absorbing the frontier vertex with the most neighbours
/// already inside the part. Parts hold at most ceil(n/k) vertices.
PartitionAssignment partition_builtin(const Graph& g, std::uint32_t k, std::uint64_t seed);

/// Inverse of import_assignment: one 0-based part per line, ascending vid.
std::string serialize_assignment(const Graph& g, const PartitionAssignment& a);

/// A partition plus the replicated one-edge cut set. The graph holds local
/// vertices (pid == this pid), boundary vertices (replicated far endpoints of
/// cut edges, carrying their home pid), local edges first and then cut edges.
/// Every edge incident to a local vertex is present, so local adjacency is
/// complete.
class ExtendedPartition {
 public:
  ExtendedPartition() = default;
  ExtendedPartition(PartitionId pid, Graph graph, std::size_t local_edge_count);

  PartitionId pid() const noexcept { return pid_; }
  const Graph& graph() const noexcept { return graph_; }
  bool is_local(VertexIndex i) const { return graph_.vertex(i).pid == pid_; }
  std::size_t local_edge_count() const noexcept { return local_edges_; }
  std::size_t cut_edge_count() const noexcept { return graph_.edge_count() - local_edges_; }
  std::span<const Edge> local_edges() const { return graph_.edges().first(local_edges_); }
  std::span<const Edge> cut_edges() const { return graph_.edges().subspan(local_edges_); }
  std::size_t local_vertex_count() const noexcept { return local_vertices_; }
  std::size_t boundary_vertex_count() const noexcept { return graph_.vertex_count() - local_vertices_; }

 private:
  PartitionId pid_ = 0;
  Graph graph_;
  std::size_t local_edges_ = 0;
  std::size_t local_vertices_ = 0;
};

std::vector<ExtendedPartition> extend_with_cutset(const Graph& g, const PartitionAssignment& a);

/// Merges extended partitions back into one graph, taking each cut edge from
/// the partition that owns its source vertex.
Graph reconstruct_graph(std::span<const ExtendedPartition> parts);

/// Partition file: `# partition <pid>` header, vertex records with pids,
/// local edges, a `# cutset` marker, then cut edges.
std::string serialize_partition(const ExtendedPartition& p);
ExtendedPartition parse_partition(std::string_view text);

/// Connected components over local vertices and local edges only.
std::size_t local_component_count(const ExtendedPartition& p);

struct SchemeMetrics {
  std::string scheme_name;
  std::vector<PartitionId> pids;
  std::vector<std::uint64_t> cc_count;
  std::vector<std::uint64_t> local_vertices;
  std::vector<std::uint64_t> boundary_vertices;
  std::vector<std::uint64_t> local_edges;
  std::vector<std::uint64_t> cut_edges;
  std::uint64_t total_cc = 0;
};

SchemeMetrics scheme_metrics(std::span<const ExtendedPartition> parts, std::string scheme_name);

/// Index into `schemes` picked by MIN-CC / MAX-CC / RANDOM-CC. Extremum ties
/// go to the lexicographically smallest scheme name.
std::size_t choose_scheme(std::span<const SchemeMetrics> schemes, SchemeChoice mode, std::uint64_t seed);

}  // namespace pgqp

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

#include "graph/graph.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "common/error.hpp"

namespace pgqp {

LabelId LabelTable::intern(std::string_view label) {
  auto it = ids_.find(std::string(label));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<LabelId>(names_.size());
  names_.emplace_back(label);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<LabelId> LabelTable::find(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

VertexIndex Graph::add_vertex(VertexId vid, std::string_view label, PartitionId pid) {
  if (finalized_) throw InvariantError("graph already finalized");
  auto idx = static_cast<VertexIndex>(vertices_.size());
  if (!index_.emplace(vid, idx).second)
    throw ValidationError("duplicate vertex id " + std::to_string(vid));
  vertices_.push_back(Vertex{vid, labels_.intern(label), pid});
  return idx;
}

EdgeIndex Graph::add_edge(EdgeDir dir, VertexId src, VertexId dst, std::string_view label) {
  auto s = find(src);
  auto d = find(dst);
  if (!s) throw ReferenceError("edge references unknown vertex " + std::to_string(src));
  if (!d) throw ReferenceError("edge references unknown vertex " + std::to_string(dst));
  return add_edge_by_index(dir, *s, *d, labels_.intern(label));
}

EdgeIndex Graph::add_edge_by_index(EdgeDir dir, VertexIndex src, VertexIndex dst, LabelId label) {
  if (finalized_) throw InvariantError("graph already finalized");
  auto e = static_cast<EdgeIndex>(edges_.size());
  edges_.push_back(Edge{dir, src, dst, label});
  return e;
}

void Graph::finalize() {
  if (finalized_) return;
  std::vector<std::size_t> degree(vertices_.size() + 1, 0);
  for (const auto& e : edges_) {
    ++degree[e.src];
    if (e.dst != e.src) ++degree[e.dst];
  }
  adj_offsets_.assign(vertices_.size() + 1, 0);
  std::partial_sum(degree.begin(), degree.end() - 1, adj_offsets_.begin() + 1);
  adj_.resize(adj_offsets_.back());
  std::vector<std::size_t> fill(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (EdgeIndex i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    adj_[fill[e.src]++] = Incidence{i, e.dst, true};
    if (e.dst != e.src) adj_[fill[e.dst]++] = Incidence{i, e.src, false};
  }
  finalized_ = true;
}

std::span<const Incidence> Graph::incident(VertexIndex i) const {
  if (!finalized_) throw InvariantError("adjacency requested before finalize()");
  return std::span<const Incidence>(adj_).subspan(adj_offsets_[i], adj_offsets_[i + 1] - adj_offsets_[i]);
}

std::optional<VertexIndex> Graph::find(VertexId vid) const {
  auto it = index_.find(vid);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Graph::resident_bytes() const {
  std::size_t bytes = vertices_.capacity() * sizeof(Vertex) + edges_.capacity() * sizeof(Edge) +
                      adj_.capacity() * sizeof(Incidence) +
                      adj_offsets_.capacity() * sizeof(std::size_t);
  // unordered_map node: key + value + next pointer + cached hash, plus buckets.
  bytes += index_.size() * (sizeof(VertexId) + sizeof(VertexIndex) + 2 * sizeof(void*)) +
           index_.bucket_count() * sizeof(void*);
  for (std::size_t i = 0; i < labels_.size(); ++i)
    bytes += 2 * (sizeof(std::string) + labels_.name(static_cast<LabelId>(i)).capacity()) + 32;
  return bytes;
}

bool structurally_equal(const Graph& a, const Graph& b, bool compare_pids) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  for (const auto& v : a.vertices()) {
    auto j = b.find(v.vid);
    if (!j) return false;
    const auto& w = b.vertex(*j);
    if (a.labels().name(v.label) != b.labels().name(w.label)) return false;
    if (compare_pids && v.pid != w.pid) return false;
  }
  using Key = std::tuple<int, VertexId, VertexId, std::string>;
  auto keys = [](const Graph& g) {
    std::vector<Key> out;
    out.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
      VertexId s = g.vid(e.src), d = g.vid(e.dst);
      if (e.dir == EdgeDir::undirected && d < s) std::swap(s, d);
      out.emplace_back(static_cast<int>(e.dir), s, d, g.labels().name(e.label));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return keys(a) == keys(b);
}

namespace {

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t root(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

ComponentLabeling connected_components(const Graph& g) {
  Dsu dsu(g.vertex_count());
  for (const auto& e : g.edges()) dsu.unite(e.src, e.dst);
  ComponentLabeling out;
  out.component.assign(g.vertex_count(), 0);
  std::vector<std::uint32_t> id_of_root(g.vertex_count(), UINT32_MAX);
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) {
    auto r = dsu.root(i);
    if (id_of_root[r] == UINT32_MAX) id_of_root[r] = static_cast<std::uint32_t>(out.count++);
    out.component[i] = id_of_root[r];
  }
  return out;
}

}  // namespace pgqp

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


#include "bench/synthetic.hpp"

#include <algorithm>
#include <random>

#include "common/error.hpp"

namespace pgqp {

Graph generate_synthetic(const SyntheticParams& p, const Graph& templ) {
  const std::uint64_t tv = templ.vertex_count(), te = templ.edge_count();
  if (p.embed_count > 0 && tv == 0) throw ArgumentError("template graph is empty");
  const std::uint64_t planted_v = p.embed_count * tv, planted_e = p.embed_count * te;
  if (planted_v > p.vertices) throw ArgumentError("not enough vertices for the embeddings");
  if (planted_e > p.edges) throw ArgumentError("not enough edges for the embeddings");
  if (p.vertices > 0xFFFFFFFFull) throw ArgumentError("too many vertices");
  if (p.vertex_labels == 0 || p.edge_labels == 0) throw ArgumentError("label alphabets must be non-empty");
  if (p.edges > planted_e && p.vertices < 2) throw ArgumentError("random edges need at least two vertices");

  std::mt19937_64 rng(p.seed);
  // Each copy goes to a random offset inside its own block of ids.
  std::vector<std::uint64_t> base(p.embed_count);
  if (p.embed_count > 0) {
    const std::uint64_t block = p.vertices / p.embed_count;
    for (std::uint32_t i = 0; i < p.embed_count; ++i)
      base[i] = i * block + std::uniform_int_distribution<std::uint64_t>(0, block - tv)(rng);
  }
  std::vector<std::int64_t> planted_at(p.vertices, -1);
  for (std::uint32_t i = 0; i < p.embed_count; ++i)
    for (std::uint64_t j = 0; j < tv; ++j) planted_at[base[i] + j] = static_cast<std::int64_t>(j);

  Graph g;
  std::vector<LabelId> vlabel(p.vertex_labels), elabel(p.edge_labels);
  for (std::uint32_t i = 0; i < p.vertex_labels; ++i) vlabel[i] = g.labels().intern("v" + std::to_string(i));
  for (std::uint32_t i = 0; i < p.edge_labels; ++i) elabel[i] = g.labels().intern("e" + std::to_string(i));
  std::uniform_int_distribution<std::uint32_t> vl(0, p.vertex_labels - 1), el(0, p.edge_labels - 1);
  for (std::uint64_t i = 0; i < p.vertices; ++i) {
    if (planted_at[i] >= 0)
      g.add_vertex(i + 1, templ.label_of(static_cast<VertexIndex>(planted_at[i])));
    else
      g.add_vertex(i + 1, g.labels().name(vlabel[vl(rng)]));
  }
  for (std::uint32_t i = 0; i < p.embed_count; ++i)
    for (const auto& e : templ.edges())
      g.add_edge_by_index(e.dir, static_cast<VertexIndex>(base[i] + e.src), static_cast<VertexIndex>(base[i] + e.dst),
                          g.labels().intern(templ.labels().name(e.label)));

  std::uniform_int_distribution<std::uint64_t> any(0, p.vertices ? p.vertices - 1 : 0);
  for (std::uint64_t k = planted_e; k < p.edges; ++k) {
    std::uint64_t u = any(rng), v;
    do {
      if (p.window == 0) {
        v = any(rng);
      } else {
        std::uint64_t lo = u > p.window ? u - p.window : 0, hi = std::min(p.vertices - 1, u + p.window);
        v = std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
      }
    } while (v == u);
    g.add_edge_by_index(EdgeDir::undirected, static_cast<VertexIndex>(u), static_cast<VertexIndex>(v), elabel[el(rng)]);
  }
  g.finalize();
  return g;
}

Query template_query(const Graph& templ) {
  QueryGraph qg;
  for (VertexIndex i = 0; i < templ.vertex_count(); ++i) qg.add_node(i + 1, Predicate::exact(templ.label_of(i)));
  for (EdgeIndex e = 0; e < templ.edge_count(); ++e) {
    const auto& edge = templ.edge(e);
    qg.add_edge(edge.src + 1, edge.dst + 1, edge.dir, Predicate::exact(templ.edge_label(e)));
  }
  if (!qg.connected()) throw ValidationError("template graph is not connected");
  Query q;
  q.disjuncts.push_back(std::move(qg));
  return q;
}

}  // namespace pgqp

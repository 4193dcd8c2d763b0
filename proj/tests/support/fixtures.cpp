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


#include "fixtures.hpp"

#include <random>

#include "test_util.hpp"

namespace pgqp::testing {

Setup make_setup(Graph g, const PartitionAssignment& a) {
  Setup s;
  s.catalog = build_catalog(g);
  s.parts = extend_with_cutset(g, a);
  s.store = std::make_unique<MemoryPartitionStore>(s.parts, a.scheme_name);
  s.graph = std::move(g);
  return s;
}

Setup movie_setup() {
  auto g = parse_graph(read_data("fig1.graph"));
  auto a = import_assignment(g, read_data("fig1.parts"), 2, "movie");
  return make_setup(std::move(g), a);
}

Setup random_setup(Graph g, std::uint32_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string lines;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) lines += std::to_string(rng() % k) + "\n";
  auto a = import_assignment(g, lines, k, "random-" + std::to_string(seed));
  return make_setup(std::move(g), a);
}

namespace {

Predicate node_predicate(const std::string& label, std::mt19937_64& rng) {
  switch (rng() % 6) {
    case 0: return Predicate::wildcard();
    case 1: return Predicate::one_of({label, "L0"});
    case 2: return Predicate::compare(CompareOp::le, label);
    default: return Predicate::exact(label);
  }
}

}  // namespace

Query sampled_query(const Graph& g, std::size_t nodes, std::size_t extra_edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<VertexIndex> picked{static_cast<VertexIndex>(rng() % g.vertex_count())};
    std::vector<EdgeIndex> used;
    std::set<VertexIndex> seen{picked[0]};
    for (int tries = 0; picked.size() < nodes && tries < 200; ++tries) {
      auto from = picked[rng() % picked.size()];
      auto inc = g.incident(from);
      if (inc.empty()) continue;
      const auto& x = inc[rng() % inc.size()];
      if (seen.count(x.neighbor)) continue;
      seen.insert(x.neighbor);
      picked.push_back(x.neighbor);
      used.push_back(x.edge);
    }
    if (picked.size() < nodes) continue;
    std::vector<EdgeIndex> extra;
    for (auto v : picked)
      for (const auto& x : g.incident(v))
        if (seen.count(x.neighbor) && x.neighbor != v && std::find(used.begin(), used.end(), x.edge) == used.end() &&
            std::find(extra.begin(), extra.end(), x.edge) == extra.end())
          extra.push_back(x.edge);
    std::shuffle(extra.begin(), extra.end(), rng);
    if (extra.size() > extra_edges) extra.resize(extra_edges);
    used.insert(used.end(), extra.begin(), extra.end());

    QueryGraph qg;
    auto qid = [&](VertexIndex v) {
      return static_cast<QNodeId>(std::find(picked.begin(), picked.end(), v) - picked.begin() + 1);
    };
    for (auto v : picked) qg.add_node(qid(v), node_predicate(g.label_of(v), rng));
    for (auto e : used) {
      const auto& edge = g.edge(e);
      auto pred = rng() % 4 == 0 ? Predicate::wildcard() : Predicate::exact(g.edge_label(e));
      qg.add_edge(qid(edge.src), qid(edge.dst), edge.dir, pred);
    }
    Query q;
    q.disjuncts.push_back(std::move(qg));
    return q;
  }
  return {};
}

std::set<std::string> keys(const std::vector<Answer>& answers) {
  std::set<std::string> out;
  for (const auto& a : answers) out.insert(a.key());
  return out;
}

std::set<std::string> keys(const std::map<std::string, Answer>& answers) {
  std::set<std::string> out;
  for (const auto& [k, a] : answers) out.insert(k);
  return out;
}

}  // namespace pgqp::testing

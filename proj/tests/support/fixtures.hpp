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
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "engine/engine.hpp"
#include "graph/catalog.hpp"
#include "partition/partition.hpp"
#include "partition/store.hpp"
#include "query/query.hpp"

namespace pgqp::testing {

/// A graph split into an in-memory store, with its catalog.
struct Setup {
  Graph graph;
  Catalog catalog;
  std::vector<ExtendedPartition> parts;
  std::unique_ptr<MemoryPartitionStore> store;
};

Setup make_setup(Graph g, const PartitionAssignment& a);
/// fig1.graph split by fig1.parts.
Setup movie_setup();
/// Random assignment into k parts.
Setup random_setup(Graph g, std::uint32_t k, std::uint64_t seed);

/// Connected query sampled from a subgraph of `g` so that at least one
/// match exists. Mixes exact, wildcard, any-of and compare predicates and
/// keeps edge directions of the sampled edges.
Query sampled_query(const Graph& g, std::size_t nodes, std::size_t extra_edges, std::uint64_t seed);

std::set<std::string> keys(const std::vector<Answer>& answers);
std::set<std::string> keys(const std::map<std::string, Answer>& answers);

}  // namespace pgqp::testing

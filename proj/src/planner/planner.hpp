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
#include <string>
#include <vector>

#include "graph/catalog.hpp"
#include "query/query.hpp"

namespace pgqp {

struct StartEstimate {
  std::uint32_t node = 0;  // qnode index
  double estimate = 0.0;
};

/// One tree edge of a plan. `parent` is bound before `child`.
struct PlanEdge {
  std::uint32_t parent = 0;
  std::uint32_t child = 0;
  std::uint32_t qedge = 0;
};

/// Rooted spanning tree over one conjunctive query graph. Node and edge
/// fields are indices into the QueryGraph.
struct QueryPlan {
  std::uint32_t disjunct = 0;
  std::uint32_t start = 0;
  /// Breadth-first from start.
  std::vector<PlanEdge> edges;
  /// Query edges not in the tree; checked once both endpoints are bound.
  std::vector<std::uint32_t> checks;
  double est_cost = 0.0;
  std::uint32_t max_path_length = 0;
  /// Tree depth per qnode index.
  std::vector<std::uint32_t> depth;
};

/// Candidates for the plan root, most selective first. Exact nodes cost
/// their instance count, other predicates the summed count of matching
/// catalog labels. Wildcards always sort last.
std::vector<StartEstimate> estimate_start(const QueryGraph& qg, const Catalog& cat);

/// Estimated instances of a node predicate.
double estimate_node(const Predicate& p, const Catalog& cat);

/// Average number of `child` neighbors reached over `edge` per `parent`
/// vertex. 1.0 when the catalog has no matching triple.
double estimate_fanout(const Predicate& parent, const Predicate& edge, const Predicate& child, const Catalog& cat);

QueryPlan generate_plan(const QueryGraph& qg, const Catalog& cat, std::uint32_t disjunct = 0);

/// Same greedy tree growth, rooted at a caller-chosen qnode index.
QueryPlan plan_from(const QueryGraph& qg, const Catalog& cat, std::uint32_t start, std::uint32_t disjunct = 0);

/// Catalog subset that plans `q` exactly like the full catalog: every label
/// some node or edge predicate of `q` can match, and their triples.
Catalog catalog_for_query(const Catalog& cat, const Query& q);

/// Human-readable plan listing for run logs.
std::string dump_plan(const QueryPlan& plan, const QueryGraph& qg);

}  // namespace pgqp

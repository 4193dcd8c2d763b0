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
#include <vector>

#include "match/answer.hpp"
#include "partition/partition.hpp"

namespace pgqp {

/// Accounting for one expander. Every processed partial ends in exactly one
/// of: answer, continuation, failure, split (advanced into >= 1 children).
/// Hence processed == seeds + children == answers + continuations +
/// failures + splits.
struct ExpandCounters {
  std::uint64_t seeds = 0;
  std::uint64_t processed = 0;
  std::uint64_t children = 0;
  std::uint64_t splits = 0;
  std::uint64_t answers = 0;
  std::uint64_t continuations = 0;
  std::uint64_t failures = 0;

  ExpandCounters& operator+=(const ExpandCounters& o);
  bool balanced() const {
    return processed == seeds + children && processed == answers + continuations + failures + splits;
  }
};

struct ExpandOutput {
  std::vector<Answer> answers;
  std::vector<Continuation> continuations;
};

/// Matches one plan inside one extended partition. Not thread-safe; use one
/// instance per task.
class Expander {
 public:
  Expander(const ExtendedPartition& part, const QueryGraph& qg, const QueryPlan& plan);

  /// Local vertices matching the plan's start predicate, ascending index.
  std::vector<VertexIndex> start_vertices();
  PartialAnswer start_at(VertexIndex v) const;

  /// Consumes every plan edge reachable without leaving the partition.
  void expand(const PartialAnswer& seed, ExpandOutput& out);
  /// Advances by exactly one tree edge (checks that become closable are
  /// verified on the way). Children that still have work are returned as
  /// continuations whose target may be this partition.
  void step(const PartialAnswer& seed, ExpandOutput& out);

  /// Validates a continuation seed: its entry must be a local vertex.
  void check_entry(const Continuation& c) const;

  const ExpandCounters& counters() const noexcept { return counters_; }

 private:
  bool node_accepts(std::uint32_t node, VertexIndex v);
  bool edge_accepts(std::uint32_t qedge, EdgeIndex e);
  bool direction_ok(std::uint32_t qedge, std::uint32_t from_node, const Incidence& inc) const;
  std::optional<VertexIndex> local_index(const PartialAnswer& p, std::uint32_t node) const;
  /// Verifies closable checks. False when one fails.
  bool run_checks(PartialAnswer& p);
  /// Index into plan.edges of the first expandable tree edge, if any.
  std::optional<std::size_t> local_edge(const PartialAnswer& p) const;
  void advance(const PartialAnswer& p, std::size_t plan_edge, std::vector<PartialAnswer>& children);
  void finish(const PartialAnswer& p, ExpandOutput& out);

  const ExtendedPartition& part_;
  const Graph& g_;
  const QueryGraph& qg_;
  const QueryPlan& plan_;
  std::vector<std::vector<std::int8_t>> node_cache_;
  std::vector<std::vector<std::int8_t>> edge_cache_;
  ExpandCounters counters_;
};

}  // namespace pgqp

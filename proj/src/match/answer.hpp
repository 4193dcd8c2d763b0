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

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planner/planner.hpp"
#include "query/query.hpp"

namespace pgqp {

struct Binding {
  VertexId vid = 0;
  PartitionId pid = kUnpartitioned;
  std::string label;

  friend bool operator==(const Binding&, const Binding&) = default;
};

/// A partially matched plan. Bindings are indexed by qnode index; `bound`
/// and `matched` are bitsets over qnode and qedge indices. A qedge is
/// matched once its tree expansion or its check has succeeded.
struct PartialAnswer {
  std::uint32_t disjunct = 0;
  std::vector<Binding> bindings;
  std::uint64_t bound = 0;
  std::uint64_t matched = 0;

  bool is_bound(std::uint32_t node) const { return (bound >> node) & 1u; }
  bool is_matched(std::uint32_t qedge) const { return (matched >> qedge) & 1u; }
  void bind(std::uint32_t node, Binding b) {
    bindings[node] = b;
    bound |= std::uint64_t{1} << node;
  }
  std::uint32_t matched_count() const { return static_cast<std::uint32_t>(std::popcount(matched)); }

  friend bool operator==(const PartialAnswer&, const PartialAnswer&) = default;
};

PartialAnswer empty_partial(const QueryGraph& qg, std::uint32_t disjunct);

/// Complete answer with bindings sorted by qnode id.
struct Answer {
  std::uint32_t disjunct = 0;
  std::vector<std::pair<QNodeId, Binding>> bindings;

  /// `qnode=vid` pairs joined by spaces; identifies the answer.
  std::string key() const;
  /// `qnode=vid@pid` pairs joined by spaces; one FAA line.
  std::string line() const;
};

Answer make_answer(const PartialAnswer& p, const QueryGraph& qg);

/// Where a partial answer goes next: the first tree edge (plan order) whose
/// parent is bound but which is not matched yet, else the first unmatched
/// check. Empty when the partial is complete.
struct NextStep {
  std::uint32_t node = 0;  // qnode index whose vertex must be local
  PartitionId pid = 0;
};
std::optional<NextStep> next_step(const PartialAnswer& p, const QueryPlan& plan, const QueryGraph& qg);

/// A partial answer handed to another partition. `entry` is the bound
/// vertex that has to be local there.
struct Continuation {
  PartialAnswer partial;
  PartitionId target = 0;
  std::uint32_t entry_node = 0;
  VertexId entry = 0;
  std::string entry_label;
};

/// One IMA line. Field order: ref, disjunct, target, entry_qnode, entry,
/// entry_label, bindings [[qnode, vid, pid, label], ...] in qnode index
/// order, matched [qedge index, ...] ascending.
std::string ima_record(ImaRef ref, const Continuation& c, const QueryGraph& qg);
struct ImaRecord {
  ImaRef ref = 0;
  Continuation cont;
};
/// `disjuncts` resolves qnode ids; records name their disjunct.
ImaRecord parse_ima_record(std::string_view line, const std::vector<QueryGraph>& disjuncts);

}  // namespace pgqp

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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "common/types.hpp"

namespace pgqp {

enum class CompareOp : std::uint8_t { lt, le, gt, ge, ne, eq };

/// Label test attached to a query node or edge.
///
/// Compare is numeric when the constant parses as a number and lexicographic
/// otherwise. In numeric mode a label that is not a number fails every
/// operator except `!=`.
struct Predicate {
  enum class Kind : std::uint8_t { exact, compare, wildcard, any_of };

  Kind kind = Kind::wildcard;
  std::string label;                   // exact; compare constant text
  CompareOp op = CompareOp::eq;        // compare
  std::optional<double> number;        // compare constant when numeric
  std::vector<std::string> any_of;     // any_of

  static Predicate exact(std::string label);
  static Predicate wildcard();
  static Predicate compare(CompareOp op, std::string constant);
  static Predicate one_of(std::vector<std::string> labels);

  bool matches(std::string_view label) const;
  /// Token form accepted by the query parser.
  std::string to_string() const;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

bool eval_predicate(const Predicate& p, std::string_view label);

struct QueryNode {
  QNodeId id = 0;
  Predicate pred;

  friend bool operator==(const QueryNode&, const QueryNode&) = default;
};

struct QueryEdge {
  std::uint32_t src = 0;  // node index
  std::uint32_t dst = 0;  // node index
  EdgeDir dir = EdgeDir::undirected;
  Predicate pred;

  friend bool operator==(const QueryEdge&, const QueryEdge&) = default;
};

/// Connected conjunctive pattern. Nodes and edges are addressed by their
/// position (index); `id` is the user-facing qnode id.
class QueryGraph {
 public:
  static constexpr std::size_t kMaxNodes = 64;
  static constexpr std::size_t kMaxEdges = 64;

  std::uint32_t add_node(QNodeId id, Predicate pred);
  std::uint32_t add_edge(QNodeId src, QNodeId dst, EdgeDir dir, Predicate pred);

  const std::vector<QueryNode>& nodes() const noexcept { return nodes_; }
  const std::vector<QueryEdge>& edges() const noexcept { return edges_; }
  std::optional<std::uint32_t> index_of(QNodeId id) const;
  bool connected() const;

 private:
  std::vector<QueryNode> nodes_;
  std::vector<QueryEdge> edges_;
  std::unordered_map<QNodeId, std::uint32_t> index_;
};

/// Union of conjunctive disjuncts with an optional answer limit.
struct Query {
  std::vector<QueryGraph> disjuncts;
  std::optional<std::uint64_t> limit;
};

/// Line-oriented query syntax:
///   qv <id> <predicate>
///   qe <src> <dst> <u|d> <predicate>
///   or
///   limit <k>
/// Predicates: "quoted label", bare label, `?`, `<op>:<value>`, `anyof:a|b`.
Query parse_query(std::string_view text);
Query load_query(const std::string& path);
std::string render_query(const Query& q);

}  // namespace pgqp

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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graph/graph.hpp"

namespace pgqp {

struct TripleStats {
  std::uint64_t connection_count = 0;
  /// connection_count / instance_count(first label).
  double avg_connection = 0.0;
};

/// Summary statistics collected in one pass over a graph: per vertex label
/// the instance count, per (label, edge label, neighbor label) triple the
/// connection count, and the numeric range of number-valued labels.
/// Connections are counted per incidence with direction ignored, so an
/// undirected A-e-B edge contributes to both (A,e,B) and (B,e,A).
class Catalog {
 public:
  std::uint64_t vertex_count() const noexcept { return vertex_count_; }
  std::uint64_t edge_count() const noexcept { return edge_count_; }

  std::uint64_t instances(std::string_view label) const;
  std::optional<TripleStats> triple(std::string_view a, std::string_view e, std::string_view b) const;
  std::optional<double> avg_connection(std::string_view a, std::string_view e, std::string_view b) const;

  /// Every label seen (vertex or edge). Ids index instance counts.
  const LabelTable& labels() const noexcept { return labels_; }
  std::uint64_t instances(LabelId id) const { return id < instance_count_.size() ? instance_count_[id] : 0; }
  std::size_t triple_count() const noexcept { return triples_.size(); }

  template <class F>
  void for_each_triple(F&& f) const {
    for (const auto& [key, n] : triples_) f(unpack_a(key), unpack_e(key), unpack_b(key), n);
  }

  std::optional<double> min_value() const noexcept { return min_value_; }
  std::optional<double> max_value() const noexcept { return max_value_; }
  /// Vertex labels that parse fully as numbers.
  std::size_t numeric_label_count() const noexcept { return numeric_labels_; }

  friend Catalog build_catalog(const Graph& g);
  friend Catalog parse_catalog(std::string_view text);

/// Copy holding only the kept vertex labels and the triples whose three labels
/// are all kept. Totals and the numeric range are carried over unchanged.
Catalog restrict_catalog(const Catalog& c, const std::function<bool(const std::string&)>& keep_vertex,
                         const std::function<bool(const std::string&)>& keep_edge);
  friend std::string serialize_catalog(const Catalog& c);
  friend Catalog restrict_catalog(const Catalog& c, const std::function<bool(const std::string&)>& keep_vertex,
                                  const std::function<bool(const std::string&)>& keep_edge);

 private:
  static std::uint64_t pack(LabelId a, LabelId e, LabelId b) {
    return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(e) << 21) | b;
  }
  static LabelId unpack_a(std::uint64_t k) { return static_cast<LabelId>(k >> 42); }
  static LabelId unpack_e(std::uint64_t k) { return static_cast<LabelId>((k >> 21) & 0x1FFFFF); }
  static LabelId unpack_b(std::uint64_t k) { return static_cast<LabelId>(k & 0x1FFFFF); }
  void note_vertex_label(LabelId id, std::uint64_t count);

  std::uint64_t vertex_count_ = 0;
  std::uint64_t edge_count_ = 0;
  LabelTable labels_;
  std::vector<std::uint64_t> instance_count_;
  std::unordered_map<std::uint64_t, std::uint64_t> triples_;
  std::optional<double> min_value_;
  std::optional<double> max_value_;
  std::size_t numeric_labels_ = 0;
};

Catalog build_catalog(const Graph& g);

/// TSV with `vertex`, `triple` and `numeric` records sorted for stable diffs.
std::string serialize_catalog(const Catalog& c);
Catalog parse_catalog(std::string_view text);

/// Copy holding only the kept vertex labels and the triples whose three labels
/// are all kept. Totals and the numeric range are carried over unchanged.
Catalog restrict_catalog(const Catalog& c, const std::function<bool(const std::string&)>& keep_vertex,
                         const std::function<bool(const std::string&)>& keep_edge);

}  // namespace pgqp

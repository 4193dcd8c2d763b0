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
#include <vector>

#include "engine/bookkeeping.hpp"
#include "graph/catalog.hpp"
#include "partition/store.hpp"
#include "planner/planner.hpp"

namespace pgqp {

struct RunOptions {
  ExecMode mode = ExecMode::opat;
  Heuristic heuristic = Heuristic::max_sn;
  /// p for TraditionalMP, m for MapReduceMP. 0 means every eligible
  /// partition. Ignored by OPAT.
  std::uint32_t workers = 1;
  std::uint64_t seed = 1;
  /// Overrides the query's own limit when set.
  std::optional<std::uint64_t> limit;
  /// Bookkeeping directory. Required unless in_memory.
  std::string run_dir;
  bool in_memory = true;
};

struct RunResult {
  std::vector<Answer> answers;
  RunLog log;
  std::vector<QueryPlan> plans;
};

std::vector<QueryPlan> plan_query(const Query& q, const Catalog& cat);

/// One start entry per (pid, disjunct) whose start predicate matches at
/// least one local vertex, counted from partition summaries.
SniTable init_sni(const PartitionStore& store, const Query& q, const std::vector<QueryPlan>& plans);

/// Lower bound on loads: partitions holding a local start-node match of
/// some disjunct. Each of them must be loaded at least once.
std::uint32_t compute_l_ideal(const PartitionStore& store, const Query& q, const std::vector<QueryPlan>& plans);

/// Partitions holding a local vertex that matches any node of any disjunct.
std::uint32_t plan_label_partitions(const PartitionStore& store, const Query& q);

RunResult run_opat(const PartitionStore& store, const Query& q, const Catalog& cat, RunOptions opts);
RunResult run_traditional_mp(const PartitionStore& store, const Query& q, const Catalog& cat, RunOptions opts);
RunResult run_mapreduce_mp(const PartitionStore& store, const Query& q, const Catalog& cat, RunOptions opts);
/// Dispatches on opts.mode.
RunResult run_query(const PartitionStore& store, const Query& q, const Catalog& cat, const RunOptions& opts);

struct RatioRow {
  std::string query;
  std::string scheme;
  std::uint32_t l_ideal = 0;
  std::uint64_t al = 0;
};

struct LoadRatioMeasures {
  /// Mean over schemes of L_ideal/AL, per query.
  std::map<std::string, double> per_query;
  /// Mean over queries of L_ideal/AL, per scheme.
  std::map<std::string, double> per_scheme;
};

/// Throws InvariantError for AL == 0 or a ratio above 1.
LoadRatioMeasures load_ratio_measures(const std::vector<RatioRow>& rows);

}  // namespace pgqp

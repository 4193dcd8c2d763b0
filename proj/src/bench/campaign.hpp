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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "engine/engine.hpp"
#include "partition/partition.hpp"

namespace pgqp {

struct CampaignScheme {
  std::string name;
  const PartitionStore* store = nullptr;
};

struct CampaignQuery {
  std::string name;
  Query query;
};

struct CampaignSpec {
  std::vector<CampaignScheme> schemes;
  std::vector<CampaignQuery> queries;
  std::vector<Heuristic> heuristics{Heuristic::max_sn, Heuristic::min_sn, Heuristic::random_sn};
  /// Seeds averaged for RANDOM-SN; other heuristics run once with `seed`.
  std::uint32_t random_seeds = 10;
  std::uint64_t seed = 1;
  ExecMode mode = ExecMode::opat;
  std::uint32_t workers = 1;
  std::optional<std::uint64_t> limit;
  /// Worker threads for OPAT campaigns.
  std::uint32_t threads = 1;
};

/// One executed run.
struct CampaignRun {
  std::string query, scheme;
  Heuristic heuristic = Heuristic::max_sn;
  std::uint64_t seed = 0;
  std::uint64_t al = 0;
  std::uint32_t l_ideal = 0;
  std::optional<double> ratio;
  std::uint64_t iterations = 0;
  std::uint64_t answers = 0;
};

/// One report row per (query, scheme, heuristic): means over its runs.
struct CampaignRow {
  std::string query, scheme;
  Heuristic heuristic = Heuristic::max_sn;
  std::uint32_t runs = 0;
  double al = 0.0;
  std::uint32_t l_ideal = 0;
  /// Mean of the defined run ratios; empty when none is defined.
  std::optional<double> ratio;
  double iterations = 0.0;
  std::uint64_t answers = 0;
};

struct HeuristicMeasures {
  std::map<std::string, double> per_query;
  std::map<std::string, double> per_scheme;
  double overall = 0.0;
};

struct CampaignReport {
  std::vector<CampaignRun> runs;
  std::vector<CampaignRow> rows;
  std::map<Heuristic, HeuristicMeasures> measures;
  std::map<std::string, std::uint64_t> scheme_cc;
  std::uint32_t random_seeds = 0;
  /// Set when a run failed; rows hold what finished before it.
  std::optional<std::string> error;

  std::string rows_tsv() const;
  std::string summary() const;
};

/// Means of row ratios per query and per scheme for every heuristic, skipping
/// rows without a ratio. `overall` averages the per-query means.
std::map<Heuristic, HeuristicMeasures> aggregate_rows(const std::vector<CampaignRow>& rows);

/// Campaign read from a JSON config. Paths resolve against the config's
/// directory:
///   {"graph": "g.graph",
///    "schemes": [{"name": "a", "assignment": "a.parts", "k": 4},
///                {"name": "b", "builtin": {"k": 4, "seed": 2}},
///                {"name": "c", "dir": "parts_c"}],
///    "queries": [{"name": "q1", "path": "q1.query"}],
///    "heuristics": ["max-sn", "min-sn", "random-sn"],
///    "random_seeds": 10, "seed": 1, "mode": "opat", "workers": 1,
///    "limit": 5, "threads": 1}
/// Holds the stores the campaign points to.
struct LoadedCampaign {
  std::vector<std::unique_ptr<PartitionStore>> stores;
  std::unique_ptr<Catalog> catalog;
  CampaignSpec spec;
};

LoadedCampaign load_campaign(const std::string& config_path);

/// Runs the full matrix, planning every query against `catalog`.
CampaignReport run_campaign(const CampaignSpec& spec, const Catalog& catalog);

}  // namespace pgqp

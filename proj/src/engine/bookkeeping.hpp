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
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "match/answer.hpp"
#include "match/expander.hpp"

namespace pgqp {

/// Starting Node Information entry. A start entry (no vid) stands for
/// `count` local vertices matching the start predicate of `disjunct`'s plan.
/// A continuation entry names one vertex and the IMA record to resume.
struct SniEntry {
  PartitionId pid = 0;
  std::uint32_t disjunct = 0;
  QNodeId qnode = 0;
  std::string label;
  std::optional<VertexId> vid;
  std::optional<ImaRef> ref;
  std::uint64_t count = 1;
  /// Iteration that created the entry (0 for initial entries).
  std::uint32_t iteration = 0;

  bool is_start() const { return !vid.has_value(); }
  /// Contribution to the partition's start-node count.
  std::uint64_t weight() const { return is_start() ? count : 1; }
};

class SniTable {
 public:
  void add(SniEntry e);
  /// Removes and returns every entry for `pid` in insertion order.
  std::vector<SniEntry> take(PartitionId pid);
  bool empty() const noexcept { return by_pid_.empty(); }
  std::size_t size() const noexcept { return size_; }
  /// (pid, summed weight) for every eligible pid, ascending pid.
  std::vector<std::pair<PartitionId, std::uint64_t>> weights() const;
  void clear();

  /// Header plus one row per entry: pid, qnode as `disjunct.qnode`, label,
  /// vid or NULL, ima_ref or NULL, count.
  std::string to_tsv(std::optional<std::uint32_t> iteration = std::nullopt) const;
  static std::string tsv_header(bool with_iteration);

 private:
  std::map<PartitionId, std::vector<SniEntry>> by_pid_;
  std::size_t size_ = 0;
};

/// Intermediate answers awaiting expansion, per target partition.
class ImaStore {
 public:
  virtual ~ImaStore() = default;
  ImaRef append(const Continuation& c, const QueryGraph& qg);
  /// Removes and returns the records for `refs`, in the order given.
  virtual std::vector<Continuation> take(PartitionId pid, const std::vector<ImaRef>& refs) = 0;
  std::uint64_t appended() const noexcept { return next_ref_ - 1; }

 protected:
  virtual void store(ImaRef ref, const Continuation& c, const QueryGraph& qg) = 0;

 private:
  ImaRef next_ref_ = 1;
};

class MemoryImaStore final : public ImaStore {
 public:
  std::vector<Continuation> take(PartitionId pid, const std::vector<ImaRef>& refs) override;

 protected:
  void store(ImaRef ref, const Continuation& c, const QueryGraph& qg) override;

 private:
  std::unordered_map<ImaRef, Continuation> records_;
};

/// Appends one JSON line per record to `<dir>/ima_<pid>.jsonl`.
class FileImaStore final : public ImaStore {
 public:
  FileImaStore(std::string dir, const std::vector<QueryGraph>& disjuncts);
  std::vector<Continuation> take(PartitionId pid, const std::vector<ImaRef>& refs) override;

 protected:
  void store(ImaRef ref, const Continuation& c, const QueryGraph& qg) override;

 private:
  std::string path(PartitionId pid) const;
  std::string dir_;
  const std::vector<QueryGraph>& disjuncts_;
  std::map<PartitionId, std::ofstream> files_;
};

/// Final answers: append-only, deduplicated by Answer::key().
class FaaStore {
 public:
  explicit FaaStore(std::optional<std::string> path = std::nullopt);
  /// False when the key was already present.
  bool add(Answer a);
  const std::vector<Answer>& answers() const noexcept { return answers_; }
  std::size_t size() const noexcept { return answers_.size(); }
  bool contains(const std::string& key) const { return keys_.count(key) > 0; }
  void flush();

 private:
  std::vector<Answer> answers_;
  std::unordered_set<std::string> keys_;
  std::optional<std::ofstream> file_;
};

struct IterationStats {
  std::uint32_t index = 0;
  std::uint32_t required = 0;
  std::vector<PartitionId> chosen;
  double wall_ms = 0.0;
  /// Seeds expanded per chosen partition.
  std::vector<std::uint64_t> seeds;
  /// Resident bytes per chosen partition.
  std::vector<std::uint64_t> partition_bytes;
};

struct RunLog {
  ExecMode mode = ExecMode::opat;
  Heuristic heuristic = Heuristic::max_sn;
  std::uint32_t workers = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> limit;

  std::vector<PartitionId> load_sequence;
  std::uint32_t l_ideal = 0;
  /// Partitions holding a local vertex that matches any query node.
  std::uint32_t required_partitions = 0;
  std::uint64_t answers = 0;
  /// SNI drained. False when the limit stopped the run.
  bool complete = false;
  std::vector<IterationStats> iterations;
  std::vector<double> load_ms;
  ExpandCounters counters;
  std::uint64_t peak_partition_bytes = 0;
  std::uint64_t peak_bookkeeping_bytes = 0;

  std::uint64_t al() const { return load_sequence.size(); }
  /// L_ideal / AL. Empty for runs without loads or cut short by a limit.
  std::optional<double> ratio() const;
  /// Deterministic key/value TSV (no timings).
  std::string to_tsv() const;
  /// i, required_i, chosen pids, wall ms.
  std::string iterations_tsv() const;
};

/// Uniform shuffle, then a stable sort by weight (descending for MAX-SN,
/// ascending for MIN-SN, none for RANDOM-SN); returns the first `count`.
std::vector<PartitionId> choose_top(const std::vector<std::pair<PartitionId, std::uint64_t>>& weights, Heuristic h,
                                    std::size_t count, std::mt19937_64& rng);
PartitionId choose_next(const SniTable& sni, Heuristic h, std::mt19937_64& rng);

}  // namespace pgqp

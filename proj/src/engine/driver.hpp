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

#include <chrono>
#include <exception>
#include <functional>
#include <random>
#include <thread>

#include "engine/engine.hpp"

namespace pgqp {

/// Work handed to one partition in one iteration: the SNI entries removed
/// for it plus the IMA records they reference (aligned; empty for starts).
struct Task {
  PartitionId pid = 0;
  std::vector<SniEntry> entries;
  std::vector<std::optional<Continuation>> records;
};

struct TaskOutput {
  PartitionId pid = 0;
  ExpandOutput out;
  ExpandCounters counters;
  std::uint64_t partition_bytes = 0;
  double wall_ms = 0.0;
};

/// Loads the task's partition and expands every entry, depth-complete or
/// one step at a time. Touches only its arguments.
TaskOutput run_task(const PartitionStore& store, const Query& q, const std::vector<QueryPlan>& plans, Task task,
                    bool one_step);

/// Runs fn(i) for i in [0, n) on separate threads and joins them all
/// before returning. Rethrows the first failure.
void run_parallel(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Throws InvariantError unless every entry was created before `iteration`.
void check_barrier(const std::vector<SniEntry>& entries, std::uint32_t iteration);

/// Owns the mutable run state (SNI, IMA, FAA, log, files). Single-threaded.
class RunDriver {
 public:
  RunDriver(const PartitionStore& store, const Query& q, const Catalog& cat, const RunOptions& opts);

  bool finished() const;
  std::uint32_t iteration() const noexcept { return iteration_; }
  const std::vector<QueryPlan>& plans() const noexcept { return plans_; }
  const Query& query() const noexcept { return q_; }
  const PartitionStore& store() const noexcept { return store_; }
  const SniTable& sni() const noexcept { return sni_; }

  /// Chooses up to `count` eligible partitions (0 = all) and removes their
  /// SNI entries. Starts a new iteration.
  std::vector<Task> begin_iteration(std::size_t count);
  /// Appends answers in order until the limit is hit.
  void merge_answers(std::vector<Answer>& answers);
  /// Stores a continuation in IMA and adds its SNI entry.
  void merge_continuation(const Continuation& c);
  void record_task(const TaskOutput& t);
  void end_iteration(double wall_ms);
  RunResult finish();

 private:
  void write_sni();

  const PartitionStore& store_;
  const Query& q_;
  RunOptions opts_;
  std::optional<std::uint64_t> limit_;
  std::vector<QueryPlan> plans_;
  SniTable sni_;
  std::unique_ptr<ImaStore> ima_;
  FaaStore faa_;
  RunLog log_;
  std::mt19937_64 rng_;
  std::uint32_t iteration_ = 0;
  bool limit_hit_ = false;
  bool truncated_ = false;
  IterationStats current_;
  std::string sni_history_;
  bool files_ = false;
};

/// Shared loop of OPAT and TraditionalMP: up to `per_iteration` partitions
/// (0 = all eligible) are expanded depth-complete per iteration, outputs are
/// merged in chosen order after the barrier.
RunResult run_depth_complete(const PartitionStore& store, const Query& q, const Catalog& cat, const RunOptions& opts,
                             std::size_t per_iteration);

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace pgqp

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

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "partition/partition.hpp"

namespace pgqp {

/// What a driver may know about a partition without loading it.
struct PartitionSummary {
  PartitionId pid = 0;
  std::uint64_t local_vertices = 0;
  std::uint64_t boundary_vertices = 0;
  std::uint64_t local_edges = 0;
  std::uint64_t cut_edges = 0;
  std::uint64_t components = 0;
  /// Label histogram over local vertices only.
  std::map<std::string, std::uint64_t> labels;
};

PartitionSummary summarize(const ExtendedPartition& p);

/// Source of extended partitions for the engines. load() may be called from
/// several threads at once.
class PartitionStore {
 public:
  virtual ~PartitionStore() = default;

  virtual const std::string& scheme_name() const = 0;
  virtual const std::vector<PartitionSummary>& summaries() const = 0;
  virtual std::shared_ptr<const ExtendedPartition> load(PartitionId pid) const = 0;

  std::uint32_t k() const { return static_cast<std::uint32_t>(summaries().size()); }
  const PartitionSummary& summary(PartitionId pid) const;
  std::uint64_t load_count() const noexcept { return loads_.load(); }

 protected:
  void count_load() const { ++loads_; }
  void check_pid(PartitionId pid) const;

 private:
  mutable std::atomic<std::uint64_t> loads_{0};
};

class MemoryPartitionStore final : public PartitionStore {
 public:
  MemoryPartitionStore(std::vector<ExtendedPartition> parts, std::string scheme_name);

  const std::string& scheme_name() const override { return scheme_; }
  const std::vector<PartitionSummary>& summaries() const override { return summaries_; }
  std::shared_ptr<const ExtendedPartition> load(PartitionId pid) const override;

 private:
  std::string scheme_;
  std::vector<std::shared_ptr<const ExtendedPartition>> parts_;
  std::vector<PartitionSummary> summaries_;
};

/// Reads `manifest.json` eagerly and partition files on demand. Nothing is
/// cached, so a partition is resident only while a caller holds it.
class DirectoryPartitionStore final : public PartitionStore {
 public:
  explicit DirectoryPartitionStore(std::string dir);

  const std::string& scheme_name() const override { return scheme_; }
  const std::vector<PartitionSummary>& summaries() const override { return summaries_; }
  std::shared_ptr<const ExtendedPartition> load(PartitionId pid) const override;

 private:
  std::string dir_;
  std::string scheme_;
  std::vector<std::string> files_;
  std::vector<PartitionSummary> summaries_;
};

/// Writes part_<pid>.txt for every partition plus manifest.json. Creates the
/// directory when missing.
void write_partition_dir(const std::string& dir, std::span<const ExtendedPartition> parts,
                         const std::string& scheme_name);

std::string manifest_json(std::span<const PartitionSummary> summaries, const std::string& scheme_name);

}  // namespace pgqp

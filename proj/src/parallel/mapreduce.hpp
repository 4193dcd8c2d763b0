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
#include <string>
#include <vector>

#include "engine/driver.hpp"

namespace pgqp {

/// Shuffle key of finished answers. Partition ids start at 1.
inline constexpr std::uint64_t kCompleteKey = 0;

/// Mapper output. `value` is one JSON object with a fixed field order:
///   answer:  {"disjunct", "bindings": [[qnode, vid, pid, label], ...]}
///   partial: the IMA record layout with ref 0.
struct MapRecord {
  std::uint64_t key = kCompleteKey;
  std::string value;

  friend bool operator==(const MapRecord&, const MapRecord&) = default;
};

std::string answer_value(const Answer& a);
Answer parse_answer_value(std::string_view value);

/// Advances every entry of the task by one plan edge.
std::vector<MapRecord> map_task(const PartitionStore& store, const Query& q, const std::vector<QueryPlan>& plans,
                                Task task, TaskOutput* stats = nullptr);

/// Groups by key; values inside a group are sorted.
std::map<std::uint64_t, std::vector<std::string>> shuffle_group(const std::vector<MapRecord>& records);

/// `sni` and `ima` are aligned; SNI refs are filled in when the driver
/// appends the IMA record.
struct ReduceDelta {
  std::vector<SniEntry> sni;
  std::vector<Continuation> ima;
  std::vector<Answer> faa;
};

ReduceDelta reduce_task(std::uint64_t key, const std::vector<std::string>& values, const Query& q);

}  // namespace pgqp

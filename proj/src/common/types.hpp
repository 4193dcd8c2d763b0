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

namespace pgqp {

/// External vertex identifier as it appears in graph files.
using VertexId = std::uint64_t;
/// Dense position of a vertex inside one Graph instance.
using VertexIndex = std::uint32_t;
/// Dense position of an edge inside one Graph instance.
using EdgeIndex = std::uint32_t;
/// Interned label. Only meaningful together with the owning LabelTable.
using LabelId = std::uint32_t;
/// Partition number. 0 is reserved for "unpartitioned".
using PartitionId = std::uint32_t;
/// Query node id as written in the query file.
using QNodeId = std::uint32_t;
/// Identifier of one record in the intermediate-answer store.
using ImaRef = std::uint64_t;

inline constexpr PartitionId kUnpartitioned = 0;

enum class EdgeDir : std::uint8_t { undirected, directed };

enum class Heuristic : std::uint8_t { max_sn, min_sn, random_sn };
enum class SchemeChoice : std::uint8_t { min_cc, max_cc, random_cc };
enum class ExecMode : std::uint8_t { opat, traditional, mapreduce };

}  // namespace pgqp

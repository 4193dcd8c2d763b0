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

#include <map>
#include <string>

#include "graph/graph.hpp"
#include "match/answer.hpp"
#include "query/query.hpp"

namespace pgqp {

/// Whole-graph backtracking matcher that ignores partitions and plans.
/// Keyed by Answer::key(); the union over all disjuncts.
std::map<std::string, Answer> oracle_match(const Graph& g, const Query& q);

}  // namespace pgqp

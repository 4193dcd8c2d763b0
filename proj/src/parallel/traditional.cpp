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


#include "common/error.hpp"
#include "engine/driver.hpp"

namespace pgqp {

RunResult run_traditional_mp(const PartitionStore& store, const Query& q, const Catalog& cat, RunOptions opts) {
  opts.mode = ExecMode::traditional;
  return run_depth_complete(store, q, cat, opts, opts.workers);
}

}  // namespace pgqp

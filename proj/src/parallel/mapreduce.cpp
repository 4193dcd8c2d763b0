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


#include "parallel/mapreduce.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "json.hpp"

namespace pgqp {

using json = nlohmann::ordered_json;

std::string answer_value(const Answer& a) {
  json j;
  j["disjunct"] = a.disjunct;
  json b = json::array();
  for (const auto& [q, x] : a.bindings) b.push_back(json::array({q, x.vid, x.pid, x.label}));
  j["bindings"] = std::move(b);
  return j.dump();
}

Answer parse_answer_value(std::string_view value) {
  try {
    auto j = json::parse(value);
    Answer a;
    a.disjunct = j.at("disjunct").get<std::uint32_t>();
    for (const auto& b : j.at("bindings"))
      a.bindings.emplace_back(b.at(0).get<QNodeId>(),
                              Binding{b.at(1).get<VertexId>(), b.at(2).get<PartitionId>(), b.at(3).get<std::string>()});
    return a;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad answer record: ") + e.what(), 0);
  }
}

std::vector<MapRecord> map_task(const PartitionStore& store, const Query& q, const std::vector<QueryPlan>& plans,
                                Task task, TaskOutput* stats) {
  auto o = run_task(store, q, plans, std::move(task), true);
  std::vector<MapRecord> records;
  records.reserve(o.out.answers.size() + o.out.continuations.size());
  for (const auto& a : o.out.answers) records.push_back({kCompleteKey, answer_value(a)});
  for (const auto& c : o.out.continuations)
    records.push_back({c.target, ima_record(0, c, q.disjuncts[c.partial.disjunct])});
  if (stats) {
    o.out = {};
    *stats = std::move(o);
  }
  return records;
}

std::map<std::uint64_t, std::vector<std::string>> shuffle_group(const std::vector<MapRecord>& records) {
  std::map<std::uint64_t, std::vector<std::string>> groups;
  for (const auto& r : records) groups[r.key].push_back(r.value);
  for (auto& [key, values] : groups) std::sort(values.begin(), values.end());
  return groups;
}

ReduceDelta reduce_task(std::uint64_t key, const std::vector<std::string>& values, const Query& q) {
  ReduceDelta d;
  const std::string* previous = nullptr;
  for (const auto& v : values) {
    if (previous && *previous == v) continue;
    previous = &v;
    if (key == kCompleteKey) {
      d.faa.push_back(parse_answer_value(v));
      continue;
    }
    auto rec = parse_ima_record(v, q.disjuncts);
    auto& c = rec.cont;
    if (c.target != key) throw InvariantError("map record keyed " + std::to_string(key) + " targets partition " +
                                              std::to_string(c.target));
    SniEntry e;
    e.pid = c.target;
    e.disjunct = c.partial.disjunct;
    e.qnode = q.disjuncts[e.disjunct].nodes()[c.entry_node].id;
    e.label = c.entry_label;
    e.vid = c.entry;
    d.sni.push_back(std::move(e));
    d.ima.push_back(std::move(c));
  }
  return d;
}

RunResult run_mapreduce_mp(const PartitionStore& store, const Query& q, const Catalog& cat, RunOptions opts) {
  opts.mode = ExecMode::mapreduce;
  RunDriver d(store, q, cat, opts);
  while (!d.finished()) {
    auto t0 = std::chrono::steady_clock::now();
    auto tasks = d.begin_iteration(opts.workers);
    std::vector<std::vector<MapRecord>> mapped(tasks.size());
    std::vector<TaskOutput> stats(tasks.size());
    run_parallel(tasks.size(), [&](std::size_t i) {
      mapped[i] = map_task(d.store(), d.query(), d.plans(), std::move(tasks[i]), &stats[i]);
    });
    std::vector<MapRecord> all;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
      d.record_task(stats[i]);
      for (auto& r : mapped[i]) all.push_back(std::move(r));
    }
    auto groups = shuffle_group(all);
    std::vector<std::pair<std::uint64_t, const std::vector<std::string>*>> keyed;
    for (const auto& [key, values] : groups) keyed.emplace_back(key, &values);
    std::vector<ReduceDelta> deltas(keyed.size());
    for (std::size_t i = 0; i < keyed.size(); ++i) deltas[i] = reduce_task(keyed[i].first, *keyed[i].second, q);
    for (auto& delta : deltas) {
      d.merge_answers(delta.faa);
      for (const auto& c : delta.ima) d.merge_continuation(c);
    }
    d.end_iteration(elapsed_ms(t0));
  }
  return d.finish();
}

}  // namespace pgqp

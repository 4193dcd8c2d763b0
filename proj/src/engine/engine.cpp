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


#include "engine/engine.hpp"

#include <filesystem>
#include <set>

#include "common/error.hpp"
#include "common/text.hpp"
#include "engine/driver.hpp"

namespace pgqp {

namespace fs = std::filesystem;

std::vector<QueryPlan> plan_query(const Query& q, const Catalog& cat) {
  if (q.disjuncts.empty()) throw ValidationError("query has no disjuncts");
  std::vector<QueryPlan> plans;
  for (std::uint32_t d = 0; d < q.disjuncts.size(); ++d) plans.push_back(generate_plan(q.disjuncts[d], cat, d));
  return plans;
}

namespace {

std::uint64_t matching_local(const PartitionSummary& s, const Predicate& p) {
  if (p.kind == Predicate::Kind::exact) {
    auto it = s.labels.find(p.label);
    return it == s.labels.end() ? 0 : it->second;
  }
  std::uint64_t n = 0;
  for (const auto& [label, count] : s.labels)
    if (p.matches(label)) n += count;
  return n;
}

std::string start_label(const Predicate& p) { return p.kind == Predicate::Kind::exact ? p.label : p.to_string(); }

}  // namespace

SniTable init_sni(const PartitionStore& store, const Query& q, const std::vector<QueryPlan>& plans) {
  SniTable sni;
  for (const auto& plan : plans) {
    const auto& node = q.disjuncts[plan.disjunct].nodes()[plan.start];
    for (const auto& s : store.summaries()) {
      auto n = matching_local(s, node.pred);
      if (n == 0) continue;
      SniEntry e;
      e.pid = s.pid;
      e.disjunct = plan.disjunct;
      e.qnode = node.id;
      e.label = start_label(node.pred);
      e.count = n;
      sni.add(std::move(e));
    }
  }
  return sni;
}

std::uint32_t compute_l_ideal(const PartitionStore& store, const Query& q, const std::vector<QueryPlan>& plans) {
  std::set<PartitionId> pids;
  for (const auto& plan : plans) {
    const auto& pred = q.disjuncts[plan.disjunct].nodes()[plan.start].pred;
    for (const auto& s : store.summaries())
      if (matching_local(s, pred) > 0) pids.insert(s.pid);
  }
  return static_cast<std::uint32_t>(pids.size());
}

std::uint32_t plan_label_partitions(const PartitionStore& store, const Query& q) {
  std::uint32_t n = 0;
  for (const auto& s : store.summaries()) {
    bool hit = false;
    for (const auto& qg : q.disjuncts)
      for (const auto& node : qg.nodes()) hit = hit || matching_local(s, node.pred) > 0;
    n += hit;
  }
  return n;
}

void run_parallel(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 1) {
    fn(0);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> threads;
  threads.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    threads.emplace_back([&, i] {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

TaskOutput run_task(const PartitionStore& store, const Query& q, const std::vector<QueryPlan>& plans, Task task,
                    bool one_step) {
  auto t0 = std::chrono::steady_clock::now();
  TaskOutput o;
  o.pid = task.pid;
  auto part = store.load(task.pid);
  o.partition_bytes = part->graph().resident_bytes();
  std::vector<std::unique_ptr<Expander>> expanders(plans.size());
  auto expander = [&](std::uint32_t d) -> Expander& {
    if (!expanders[d]) expanders[d] = std::make_unique<Expander>(*part, q.disjuncts[d], plans[d]);
    return *expanders[d];
  };
  for (std::size_t i = 0; i < task.entries.size(); ++i) {
    const auto& entry = task.entries[i];
    auto& ex = expander(entry.disjunct);
    if (entry.is_start()) {
      auto starts = ex.start_vertices();
      if (starts.size() != entry.count)
        throw InvariantError("partition " + std::to_string(task.pid) + " has " + std::to_string(starts.size()) +
                             " start vertices, SNI expected " + std::to_string(entry.count));
      for (auto v : starts) {
        if (one_step)
          ex.step(ex.start_at(v), o.out);
        else
          ex.expand(ex.start_at(v), o.out);
      }
    } else {
      const auto& c = *task.records[i];
      ex.check_entry(c);
      if (one_step)
        ex.step(c.partial, o.out);
      else
        ex.expand(c.partial, o.out);
    }
  }
  for (const auto& ex : expanders)
    if (ex) o.counters += ex->counters();
  o.wall_ms = elapsed_ms(t0);
  return o;
}

namespace {

std::string prepare_run_dir(const std::string& dir) {
  if (dir.empty()) throw ArgumentError("file-backed run needs a run directory");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create run directory " + dir + ": " + ec.message());
  return dir;
}

}  // namespace

void check_barrier(const std::vector<SniEntry>& entries, std::uint32_t iteration) {
  for (const auto& e : entries)
    if (e.iteration >= iteration)
      throw InvariantError("SNI entry stamped " + std::to_string(e.iteration) + " is visible in iteration " +
                           std::to_string(iteration));
}

RunDriver::RunDriver(const PartitionStore& store, const Query& q, const Catalog& cat, const RunOptions& opts)
    : store_(store),
      q_(q),
      opts_(opts),
      limit_(opts.limit ? opts.limit : q.limit),
      plans_(plan_query(q, cat)),
      faa_(opts.in_memory ? std::nullopt : std::optional<std::string>(prepare_run_dir(opts.run_dir) + "/faa.txt")),
      rng_(opts.seed) {
  files_ = !opts.in_memory;
  if (files_) {
    ima_ = std::make_unique<FileImaStore>(opts.run_dir, q_.disjuncts);
  } else {
    ima_ = std::make_unique<MemoryImaStore>();
  }
  if (limit_ && *limit_ == 0) throw ArgumentError("limit must be positive");
  log_.mode = opts.mode;
  log_.heuristic = opts.heuristic;
  log_.workers = opts.mode == ExecMode::opat ? 1 : opts.workers;
  log_.seed = opts.seed;
  log_.limit = limit_;
  log_.l_ideal = compute_l_ideal(store, q, plans_);
  log_.required_partitions = plan_label_partitions(store, q);
  sni_ = init_sni(store, q, plans_);
  if (files_) {
    std::string dump;
    for (const auto& p : plans_) dump += dump_plan(p, q.disjuncts[p.disjunct]);
    text::write_file((fs::path(opts.run_dir) / "plan.txt").string(), dump);
    write_sni();
  }
}

bool RunDriver::finished() const { return limit_hit_ || sni_.empty(); }

std::vector<Task> RunDriver::begin_iteration(std::size_t count) {
  ++iteration_;
  auto weights = sni_.weights();
  current_ = IterationStats{};
  current_.index = iteration_;
  current_.required = static_cast<std::uint32_t>(weights.size());
  if (files_) sni_history_ += sni_.to_tsv(iteration_);
  current_.chosen = choose_top(weights, opts_.heuristic, count == 0 ? weights.size() : count, rng_);
  std::vector<Task> tasks;
  for (auto pid : current_.chosen) {
    Task t;
    t.pid = pid;
    t.entries = sni_.take(pid);
    check_barrier(t.entries, iteration_);
    std::vector<ImaRef> refs;
    for (const auto& e : t.entries)
      if (e.ref) refs.push_back(*e.ref);
    auto records = ima_->take(pid, refs);
    std::size_t r = 0;
    for (const auto& e : t.entries) {
      if (e.ref)
        t.records.emplace_back(std::move(records[r++]));
      else
        t.records.emplace_back(std::nullopt);
    }
    log_.load_sequence.push_back(pid);
    tasks.push_back(std::move(t));
  }
  return tasks;
}

void RunDriver::merge_answers(std::vector<Answer>& answers) {
  for (auto& a : answers) {
    if (limit_ && faa_.size() >= *limit_) {
      limit_hit_ = true;
      truncated_ = true;
      return;
    }
    faa_.add(std::move(a));
  }
  if (limit_ && faa_.size() >= *limit_) limit_hit_ = true;
}

void RunDriver::merge_continuation(const Continuation& c) {
  if (limit_hit_) {
    truncated_ = true;
    return;
  }
  const auto& qg = q_.disjuncts[c.partial.disjunct];
  SniEntry e;
  e.pid = c.target;
  e.disjunct = c.partial.disjunct;
  e.qnode = qg.nodes()[c.entry_node].id;
  e.label = c.entry_label;
  e.vid = c.entry;
  e.ref = ima_->append(c, qg);
  e.iteration = iteration_;
  sni_.add(std::move(e));
}

void RunDriver::record_task(const TaskOutput& t) {
  log_.counters += t.counters;
  current_.seeds.push_back(t.counters.seeds);
  current_.partition_bytes.push_back(t.partition_bytes);
  log_.load_ms.push_back(t.wall_ms);
}

void RunDriver::end_iteration(double wall_ms) {
  current_.wall_ms = wall_ms;
  std::uint64_t resident = 0;
  for (auto b : current_.partition_bytes) resident += b;
  log_.peak_partition_bytes = std::max(log_.peak_partition_bytes, resident);
  std::uint64_t books = sni_.size() * (sizeof(SniEntry) + 16) + faa_.size() * 96;
  if (!files_) books += ima_->appended() * 128;
  log_.peak_bookkeeping_bytes = std::max(log_.peak_bookkeeping_bytes, books);
  log_.iterations.push_back(std::move(current_));
  if (files_) write_sni();
}

void RunDriver::write_sni() {
  text::write_file((fs::path(opts_.run_dir) / "sni.tsv").string(), SniTable::tsv_header(false) + sni_.to_tsv());
}

RunResult RunDriver::finish() {
  log_.answers = faa_.size();
  log_.complete = sni_.empty() && !truncated_;
  if (files_) {
    faa_.flush();
    ima_.reset();
    auto dir = fs::path(opts_.run_dir);
    text::write_file((dir / "runlog.tsv").string(), log_.to_tsv());
    text::write_file((dir / "iterations.tsv").string(), log_.iterations_tsv());
    text::write_file((dir / "sni_history.tsv").string(), SniTable::tsv_header(true) + sni_history_);
  }
  RunResult r;
  r.answers = faa_.answers();
  r.log = std::move(log_);
  r.plans = plans_;
  return r;
}

RunResult run_depth_complete(const PartitionStore& store, const Query& q, const Catalog& cat, const RunOptions& opts,
                             std::size_t per_iteration) {
  RunDriver d(store, q, cat, opts);
  while (!d.finished()) {
    auto t0 = std::chrono::steady_clock::now();
    auto tasks = d.begin_iteration(per_iteration);
    std::vector<TaskOutput> outputs(tasks.size());
    run_parallel(tasks.size(), [&](std::size_t i) {
      outputs[i] = run_task(d.store(), d.query(), d.plans(), std::move(tasks[i]), false);
    });
    for (auto& o : outputs) {
      d.record_task(o);
      d.merge_answers(o.out.answers);
      for (const auto& c : o.out.continuations) d.merge_continuation(c);
    }
    d.end_iteration(elapsed_ms(t0));
  }
  return d.finish();
}

RunResult run_opat(const PartitionStore& store, const Query& q, const Catalog& cat, RunOptions opts) {
  opts.mode = ExecMode::opat;
  return run_depth_complete(store, q, cat, opts, 1);
}

RunResult run_query(const PartitionStore& store, const Query& q, const Catalog& cat, const RunOptions& opts) {
  switch (opts.mode) {
    case ExecMode::opat: return run_opat(store, q, cat, opts);
    case ExecMode::traditional: return run_traditional_mp(store, q, cat, opts);
    case ExecMode::mapreduce: return run_mapreduce_mp(store, q, cat, opts);
  }
  throw ArgumentError("unknown execution mode");
}

LoadRatioMeasures load_ratio_measures(const std::vector<RatioRow>& rows) {
  std::map<std::string, std::pair<double, std::size_t>> by_query, by_scheme;
  for (const auto& r : rows) {
    if (r.al == 0) throw InvariantError("load ratio with no loads for " + r.query + " on " + r.scheme);
    double ratio = static_cast<double>(r.l_ideal) / static_cast<double>(r.al);
    if (ratio > 1.0)
      throw InvariantError("load ratio " + text::format_number(ratio) + " above 1 for " + r.query + " on " + r.scheme);
    by_query[r.query].first += ratio;
    ++by_query[r.query].second;
    by_scheme[r.scheme].first += ratio;
    ++by_scheme[r.scheme].second;
  }
  LoadRatioMeasures m;
  for (const auto& [k, v] : by_query) m.per_query[k] = v.first / static_cast<double>(v.second);
  for (const auto& [k, v] : by_scheme) m.per_scheme[k] = v.first / static_cast<double>(v.second);
  return m;
}

}  // namespace pgqp

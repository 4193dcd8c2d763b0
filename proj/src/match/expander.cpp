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


#include "match/expander.hpp"

#include "common/error.hpp"

namespace pgqp {

ExpandCounters& ExpandCounters::operator+=(const ExpandCounters& o) {
  seeds += o.seeds;
  processed += o.processed;
  children += o.children;
  splits += o.splits;
  answers += o.answers;
  continuations += o.continuations;
  failures += o.failures;
  return *this;
}

Expander::Expander(const ExtendedPartition& part, const QueryGraph& qg, const QueryPlan& plan)
    : part_(part),
      g_(part.graph()),
      qg_(qg),
      plan_(plan),
      node_cache_(qg.nodes().size(), std::vector<std::int8_t>(part.graph().labels().size(), -1)),
      edge_cache_(qg.edges().size(), std::vector<std::int8_t>(part.graph().labels().size(), -1)) {}

bool Expander::node_accepts(std::uint32_t node, VertexIndex v) {
  auto label = g_.vertex(v).label;
  auto& c = node_cache_[node][label];
  if (c < 0) c = qg_.nodes()[node].pred.matches(g_.labels().name(label)) ? 1 : 0;
  return c == 1;
}

bool Expander::edge_accepts(std::uint32_t qedge, EdgeIndex e) {
  auto label = g_.edge(e).label;
  auto& c = edge_cache_[qedge][label];
  if (c < 0) c = qg_.edges()[qedge].pred.matches(g_.labels().name(label)) ? 1 : 0;
  return c == 1;
}

bool Expander::direction_ok(std::uint32_t qedge, std::uint32_t from_node, const Incidence& inc) const {
  const auto& qe = qg_.edges()[qedge];
  if (qe.dir == EdgeDir::undirected) return true;
  if (g_.edge(inc.edge).dir != EdgeDir::directed) return false;
  return inc.outgoing == (from_node == qe.src);
}

std::vector<VertexIndex> Expander::start_vertices() {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < g_.vertex_count(); ++v)
    if (part_.is_local(v) && node_accepts(plan_.start, v)) out.push_back(v);
  return out;
}

PartialAnswer Expander::start_at(VertexIndex v) const {
  auto p = empty_partial(qg_, plan_.disjunct);
  p.bind(plan_.start, Binding{g_.vid(v), g_.vertex(v).pid, g_.label_of(v)});
  return p;
}

void Expander::check_entry(const Continuation& c) const {
  auto v = g_.find(c.entry);
  if (!v || !part_.is_local(*v))
    throw InvariantError("continuation entry " + std::to_string(c.entry) + " is not local to partition " +
                         std::to_string(part_.pid()));
  if (!c.partial.is_bound(c.entry_node) || c.partial.bindings[c.entry_node].vid != c.entry)
    throw InvariantError("continuation entry does not match its bindings");
}

std::optional<VertexIndex> Expander::local_index(const PartialAnswer& p, std::uint32_t node) const {
  if (!p.is_bound(node) || p.bindings[node].pid != part_.pid()) return std::nullopt;
  auto v = g_.find(p.bindings[node].vid);
  if (!v || !part_.is_local(*v)) throw InvariantError("bound vertex claims a partition that lacks it");
  return v;
}

bool Expander::run_checks(PartialAnswer& p) {
  for (auto c : plan_.checks) {
    if (p.is_matched(c)) continue;
    const auto& qe = qg_.edges()[c];
    if (!p.is_bound(qe.src) || !p.is_bound(qe.dst)) continue;
    std::uint32_t from = qe.src, to = qe.dst;
    auto v = local_index(p, from);
    if (!v) {
      std::swap(from, to);
      v = local_index(p, from);
    }
    if (!v) continue;
    VertexId want = p.bindings[to].vid;
    bool ok = false;
    for (const auto& inc : g_.incident(*v)) {
      if (g_.vid(inc.neighbor) != want || !edge_accepts(c, inc.edge) || !direction_ok(c, from, inc)) continue;
      ok = true;
      break;
    }
    if (!ok) return false;
    p.matched |= std::uint64_t{1} << c;
  }
  return true;
}

std::optional<std::size_t> Expander::local_edge(const PartialAnswer& p) const {
  for (std::size_t i = 0; i < plan_.edges.size(); ++i) {
    const auto& e = plan_.edges[i];
    if (p.is_matched(e.qedge) || !p.is_bound(e.parent)) continue;
    if (p.bindings[e.parent].pid == part_.pid()) return i;
  }
  return std::nullopt;
}

void Expander::advance(const PartialAnswer& p, std::size_t plan_edge, std::vector<PartialAnswer>& children) {
  const auto& pe = plan_.edges[plan_edge];
  auto u = local_index(p, pe.parent);
  if (!u) throw InvariantError("advancing from a non-local vertex");
  for (const auto& inc : g_.incident(*u)) {
    if (!edge_accepts(pe.qedge, inc.edge) || !direction_ok(pe.qedge, pe.parent, inc)) continue;
    auto w = inc.neighbor;
    VertexId wid = g_.vid(w);
    bool taken = false;
    for (auto bits = p.bound; bits; bits &= bits - 1)
      if (p.bindings[std::countr_zero(bits)].vid == wid) {
        taken = true;
        break;
      }
    if (taken || !node_accepts(pe.child, w)) continue;
    PartialAnswer c = p;
    c.bind(pe.child, Binding{wid, g_.vertex(w).pid, g_.label_of(w)});
    c.matched |= std::uint64_t{1} << pe.qedge;
    children.push_back(std::move(c));
  }
}

void Expander::finish(const PartialAnswer& p, ExpandOutput& out) {
  auto next = next_step(p, plan_, qg_);
  if (!next) {
    if (p.matched_count() != qg_.edges().size()) throw InvariantError("complete answer with unmatched edges");
    ++counters_.answers;
    out.answers.push_back(make_answer(p, qg_));
    return;
  }
  ++counters_.continuations;
  Continuation c;
  c.partial = p;
  c.target = next->pid;
  c.entry_node = next->node;
  c.entry = p.bindings[next->node].vid;
  c.entry_label = p.bindings[next->node].label;
  out.continuations.push_back(std::move(c));
}

void Expander::expand(const PartialAnswer& seed, ExpandOutput& out) {
  ++counters_.seeds;
  std::vector<PartialAnswer> stack{seed};
  std::vector<PartialAnswer> children;
  while (!stack.empty()) {
    PartialAnswer p = std::move(stack.back());
    stack.pop_back();
    ++counters_.processed;
    if (!run_checks(p)) {
      ++counters_.failures;
      continue;
    }
    auto i = local_edge(p);
    if (!i) {
      finish(p, out);
      continue;
    }
    children.clear();
    advance(p, *i, children);
    if (children.empty()) {
      ++counters_.failures;
      continue;
    }
    ++counters_.splits;
    counters_.children += children.size();
    // Reverse so children are popped in adjacency order.
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
  }
}

void Expander::step(const PartialAnswer& seed, ExpandOutput& out) {
  ++counters_.seeds;
  ++counters_.processed;
  PartialAnswer p = seed;
  if (!run_checks(p)) {
    ++counters_.failures;
    return;
  }
  auto i = local_edge(p);
  if (!i) {
    finish(p, out);
    return;
  }
  std::vector<PartialAnswer> children;
  advance(p, *i, children);
  if (children.empty()) {
    ++counters_.failures;
    return;
  }
  ++counters_.splits;
  counters_.children += children.size();
  for (auto& c : children) {
    ++counters_.processed;
    if (!run_checks(c)) {
      ++counters_.failures;
      continue;
    }
    finish(c, out);
  }
}

}  // namespace pgqp

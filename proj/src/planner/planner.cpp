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


#include "planner/planner.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "common/error.hpp"
#include "common/text.hpp"

namespace pgqp {

double estimate_node(const Predicate& p, const Catalog& cat) {
  switch (p.kind) {
    case Predicate::Kind::wildcard: return static_cast<double>(cat.vertex_count());
    case Predicate::Kind::exact: return static_cast<double>(cat.instances(p.label));
    default: break;
  }
  std::uint64_t total = 0;
  const auto& labels = cat.labels();
  for (LabelId id = 0; id < labels.size(); ++id)
    if (cat.instances(id) && p.matches(labels.name(id))) total += cat.instances(id);
  return static_cast<double>(total);
}

double estimate_fanout(const Predicate& parent, const Predicate& edge, const Predicate& child, const Catalog& cat) {
  using K = Predicate::Kind;
  if (parent.kind == K::exact && edge.kind == K::exact && child.kind == K::exact) {
    auto avg = cat.avg_connection(parent.label, edge.label, child.label);
    return avg ? *avg : 1.0;
  }
  const auto& labels = cat.labels();
  std::vector<std::int8_t> pa(labels.size(), -1), ed(labels.size(), -1), ch(labels.size(), -1);
  auto test = [&](std::vector<std::int8_t>& cache, const Predicate& p, LabelId id) {
    if (cache[id] < 0) cache[id] = p.matches(labels.name(id)) ? 1 : 0;
    return cache[id] == 1;
  };
  std::uint64_t connections = 0;
  cat.for_each_triple([&](LabelId a, LabelId e, LabelId b, std::uint64_t n) {
    if (test(pa, parent, a) && test(ed, edge, e) && test(ch, child, b)) connections += n;
  });
  double parents = estimate_node(parent, cat);
  if (connections == 0 || parents <= 0) return 1.0;
  return static_cast<double>(connections) / parents;
}

std::vector<StartEstimate> estimate_start(const QueryGraph& qg, const Catalog& cat) {
  std::vector<StartEstimate> out;
  for (std::uint32_t i = 0; i < qg.nodes().size(); ++i) out.push_back({i, estimate_node(qg.nodes()[i].pred, cat)});
  auto wild = [&](const StartEstimate& s) { return qg.nodes()[s.node].pred.kind == Predicate::Kind::wildcard; };
  std::stable_sort(out.begin(), out.end(), [&](const StartEstimate& a, const StartEstimate& b) {
    return std::make_tuple(wild(a), a.estimate, qg.nodes()[a.node].id) <
           std::make_tuple(wild(b), b.estimate, qg.nodes()[b.node].id);
  });
  return out;
}

QueryPlan plan_from(const QueryGraph& qg, const Catalog& cat, std::uint32_t start, std::uint32_t disjunct) {
  const auto n = static_cast<std::uint32_t>(qg.nodes().size());
  if (start >= n) throw ArgumentError("plan start out of range");
  if (!qg.connected()) throw ValidationError("cannot plan a disconnected query graph");
  QueryPlan plan;
  plan.disjunct = disjunct;
  plan.start = start;
  plan.depth.assign(n, 0);

  std::vector<bool> in_tree(n, false), edge_used(qg.edges().size(), false);
  in_tree[start] = true;
  double card = estimate_node(qg.nodes()[start].pred, cat);
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, double> fanout_cache;
  std::vector<PlanEdge> picked;
  for (std::uint32_t added = 1; added < n; ++added) {
    double best = std::numeric_limits<double>::infinity();
    PlanEdge choice{};
    bool found = false;
    for (std::uint32_t e = 0; e < qg.edges().size(); ++e) {
      const auto& qe = qg.edges()[e];
      std::uint32_t parent, child;
      if (in_tree[qe.src] && !in_tree[qe.dst]) {
        parent = qe.src;
        child = qe.dst;
      } else if (in_tree[qe.dst] && !in_tree[qe.src]) {
        parent = qe.dst;
        child = qe.src;
      } else {
        continue;
      }
      auto key = std::make_tuple(parent, e, child);
      auto it = fanout_cache.find(key);
      if (it == fanout_cache.end())
        it = fanout_cache
                 .emplace(key, estimate_fanout(qg.nodes()[parent].pred, qe.pred, qg.nodes()[child].pred, cat))
                 .first;
      double cost = card * it->second;
      if (!found || cost < best) {
        best = cost;
        choice = PlanEdge{parent, child, e};
        found = true;
      }
    }
    if (!found) throw ValidationError("cannot plan a disconnected query graph");
    in_tree[choice.child] = true;
    edge_used[choice.qedge] = true;
    plan.depth[choice.child] = plan.depth[choice.parent] + 1;
    plan.max_path_length = std::max(plan.max_path_length, plan.depth[choice.child]);
    plan.est_cost += best;
    card = best;
    picked.push_back(choice);
  }
  std::stable_sort(picked.begin(), picked.end(),
                   [&](const PlanEdge& a, const PlanEdge& b) { return plan.depth[a.child] < plan.depth[b.child]; });
  plan.edges = std::move(picked);
  for (std::uint32_t e = 0; e < qg.edges().size(); ++e)
    if (!edge_used[e]) plan.checks.push_back(e);
  return plan;
}

QueryPlan generate_plan(const QueryGraph& qg, const Catalog& cat, std::uint32_t disjunct) {
  if (qg.nodes().empty()) throw ValidationError("cannot plan an empty query graph");
  return plan_from(qg, cat, estimate_start(qg, cat).front().node, disjunct);
}

std::string dump_plan(const QueryPlan& plan, const QueryGraph& qg) {
  const auto& nodes = qg.nodes();
  std::string out = "plan disjunct " + std::to_string(plan.disjunct) + "\n";
  out += "start " + std::to_string(nodes[plan.start].id) + " " + nodes[plan.start].pred.to_string() + "\n";
  for (const auto& e : plan.edges) {
    const auto& qe = qg.edges()[e.qedge];
    out += "edge " + std::to_string(nodes[e.parent].id) + " -> " + std::to_string(nodes[e.child].id) + " " +
           (qe.dir == EdgeDir::directed ? "d " : "u ") + qe.pred.to_string() + " " +
           nodes[e.child].pred.to_string() + " depth " + std::to_string(plan.depth[e.child]) + "\n";
  }
  for (auto c : plan.checks) {
    const auto& qe = qg.edges()[c];
    out += "check " + std::to_string(nodes[qe.src].id) + " " + std::to_string(nodes[qe.dst].id) + " " +
           (qe.dir == EdgeDir::directed ? "d " : "u ") + qe.pred.to_string() + "\n";
  }
  out += "cost " + text::format_number(plan.est_cost) + "\n";
  out += "max_path_length " + std::to_string(plan.max_path_length) + "\n";
  return out;
}

Catalog catalog_for_query(const Catalog& cat, const Query& q) {
  auto any = [&](auto&& preds_of) {
    return [&q, preds_of](const std::string& label) {
      for (const auto& d : q.disjuncts)
        for (const auto* p : preds_of(d))
          if (p->matches(label)) return true;
      return false;
    };
  };
  auto node_preds = [](const QueryGraph& d) {
    std::vector<const Predicate*> out;
    for (const auto& n : d.nodes()) out.push_back(&n.pred);
    return out;
  };
  auto edge_preds = [](const QueryGraph& d) {
    std::vector<const Predicate*> out;
    for (const auto& e : d.edges()) out.push_back(&e.pred);
    return out;
  };
  return restrict_catalog(cat, any(node_preds), any(edge_preds));
}

}  // namespace pgqp

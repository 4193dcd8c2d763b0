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


#include "match/oracle.hpp"

#include <algorithm>
#include <queue>

namespace pgqp {

namespace {

class Backtracker {
 public:
  Backtracker(const Graph& g, const QueryGraph& qg, std::uint32_t disjunct, std::map<std::string, Answer>& out)
      : g_(g), qg_(qg), disjunct_(disjunct), out_(out), vertex_of_(qg.nodes().size(), 0), used_(g.vertex_count()) {
    order_.push_back(0);
    std::vector<bool> seen(qg.nodes().size(), false);
    seen[0] = true;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      for (const auto& e : qg.edges()) {
        std::uint32_t other;
        if (e.src == order_[i]) {
          other = e.dst;
        } else if (e.dst == order_[i]) {
          other = e.src;
        } else {
          continue;
        }
        if (!seen[other]) {
          seen[other] = true;
          order_.push_back(other);
        }
      }
    }
    position_.assign(qg.nodes().size(), 0);
    for (std::uint32_t i = 0; i < order_.size(); ++i) position_[order_[i]] = i;
  }

  void run() { search(0); }

 private:
  bool edge_between(const QueryEdge& qe, VertexIndex s, VertexIndex d) const {
    for (const auto& inc : g_.incident(s)) {
      if (inc.neighbor != d || !qe.pred.matches(g_.edge_label(inc.edge))) continue;
      if (qe.dir == EdgeDir::undirected) return true;
      if (g_.edge(inc.edge).dir == EdgeDir::directed && inc.outgoing) return true;
    }
    return false;
  }

  bool consistent(std::uint32_t depth) const {
    auto node = order_[depth];
    for (const auto& qe : qg_.edges()) {
      if (qe.src != node && qe.dst != node) continue;
      if (position_[qe.src] > depth || position_[qe.dst] > depth) continue;
      if (!edge_between(qe, vertex_of_[qe.src], vertex_of_[qe.dst])) return false;
    }
    return true;
  }

  void search(std::uint32_t depth) {
    if (depth == order_.size()) {
      Answer a;
      a.disjunct = disjunct_;
      for (std::uint32_t i = 0; i < qg_.nodes().size(); ++i) {
        auto v = vertex_of_[i];
        a.bindings.emplace_back(qg_.nodes()[i].id, Binding{g_.vid(v), g_.vertex(v).pid, g_.label_of(v)});
      }
      std::sort(a.bindings.begin(), a.bindings.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      out_.emplace(a.key(), std::move(a));
      return;
    }
    auto node = order_[depth];
    auto try_vertex = [&](VertexIndex v) {
      if (used_[v] || !qg_.nodes()[node].pred.matches(g_.label_of(v))) return;
      vertex_of_[node] = v;
      if (!consistent(depth)) return;
      used_[v] = true;
      search(depth + 1);
      used_[v] = false;
    };
    std::optional<VertexIndex> anchor;
    for (const auto& qe : qg_.edges()) {
      std::uint32_t other;
      if (qe.src == node) {
        other = qe.dst;
      } else if (qe.dst == node) {
        other = qe.src;
      } else {
        continue;
      }
      if (other != node && position_[other] < depth) {
        anchor = vertex_of_[other];
        break;
      }
    }
    if (!anchor) {
      for (VertexIndex v = 0; v < g_.vertex_count(); ++v) try_vertex(v);
      return;
    }
    std::vector<VertexIndex> candidates;
    for (const auto& inc : g_.incident(*anchor)) candidates.push_back(inc.neighbor);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (auto v : candidates) try_vertex(v);
  }

  const Graph& g_;
  const QueryGraph& qg_;
  std::uint32_t disjunct_;
  std::map<std::string, Answer>& out_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> position_;
  std::vector<VertexIndex> vertex_of_;
  std::vector<bool> used_;
};

}  // namespace

std::map<std::string, Answer> oracle_match(const Graph& g, const Query& q) {
  std::map<std::string, Answer> out;
  for (std::uint32_t d = 0; d < q.disjuncts.size(); ++d) Backtracker(g, q.disjuncts[d], d, out).run();
  return out;
}

}  // namespace pgqp

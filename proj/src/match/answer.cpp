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


#include "match/answer.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "json.hpp"

namespace pgqp {

using json = nlohmann::ordered_json;

PartialAnswer empty_partial(const QueryGraph& qg, std::uint32_t disjunct) {
  PartialAnswer p;
  p.disjunct = disjunct;
  p.bindings.resize(qg.nodes().size());
  return p;
}

std::string Answer::key() const {
  std::string out;
  for (const auto& [q, b] : bindings) {
    if (!out.empty()) out += ' ';
    out += std::to_string(q) + '=' + std::to_string(b.vid);
  }
  return out;
}

std::string Answer::line() const {
  std::string out;
  for (const auto& [q, b] : bindings) {
    if (!out.empty()) out += ' ';
    out += std::to_string(q) + '=' + std::to_string(b.vid) + '@' + std::to_string(b.pid);
  }
  return out;
}

Answer make_answer(const PartialAnswer& p, const QueryGraph& qg) {
  Answer a;
  a.disjunct = p.disjunct;
  for (std::uint32_t i = 0; i < qg.nodes().size(); ++i) {
    if (!p.is_bound(i)) throw InvariantError("answer with unbound qnode " + std::to_string(qg.nodes()[i].id));
    a.bindings.emplace_back(qg.nodes()[i].id, p.bindings[i]);
  }
  std::sort(a.bindings.begin(), a.bindings.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return a;
}

std::optional<NextStep> next_step(const PartialAnswer& p, const QueryPlan& plan, const QueryGraph& qg) {
  for (const auto& e : plan.edges)
    if (!p.is_matched(e.qedge) && p.is_bound(e.parent)) return NextStep{e.parent, p.bindings[e.parent].pid};
  for (auto c : plan.checks) {
    if (p.is_matched(c)) continue;
    auto s = qg.edges()[c].src;
    if (!p.is_bound(s)) throw InvariantError("check pending on an unbound qnode");
    return NextStep{s, p.bindings[s].pid};
  }
  return std::nullopt;
}

std::string ima_record(ImaRef ref, const Continuation& c, const QueryGraph& qg) {
  json j;
  j["ref"] = ref;
  j["disjunct"] = c.partial.disjunct;
  j["target"] = c.target;
  j["entry_qnode"] = qg.nodes()[c.entry_node].id;
  j["entry"] = c.entry;
  j["entry_label"] = c.entry_label;
  json b = json::array();
  for (std::uint32_t i = 0; i < qg.nodes().size(); ++i)
    if (c.partial.is_bound(i))
      {
      const auto& x = c.partial.bindings[i];
      b.push_back(json::array({qg.nodes()[i].id, x.vid, x.pid, x.label}));
    }
  j["bindings"] = std::move(b);
  json m = json::array();
  for (std::uint32_t e = 0; e < qg.edges().size(); ++e)
    if (c.partial.is_matched(e)) m.push_back(e);
  j["matched"] = std::move(m);
  return j.dump();
}

ImaRecord parse_ima_record(std::string_view line, const std::vector<QueryGraph>& disjuncts) {
  try {
    auto j = json::parse(line);
    ImaRecord r;
    r.ref = j.at("ref").get<ImaRef>();
    auto d = j.at("disjunct").get<std::uint32_t>();
    if (d >= disjuncts.size()) throw ReferenceError("IMA record names unknown disjunct " + std::to_string(d));
    const auto& qg = disjuncts[d];
    auto& c = r.cont;
    c.partial = empty_partial(qg, d);
    c.target = j.at("target").get<PartitionId>();
    auto resolve = [&](QNodeId id) {
      auto idx = qg.index_of(id);
      if (!idx) throw ReferenceError("IMA record names unknown qnode " + std::to_string(id));
      return *idx;
    };
    c.entry_node = resolve(j.at("entry_qnode").get<QNodeId>());
    c.entry = j.at("entry").get<VertexId>();
    c.entry_label = j.at("entry_label").get<std::string>();
    for (const auto& b : j.at("bindings"))
      c.partial.bind(resolve(b.at(0).get<QNodeId>()),
                     Binding{b.at(1).get<VertexId>(), b.at(2).get<PartitionId>(), b.at(3).get<std::string>()});
    for (const auto& m : j.at("matched")) {
      auto e = m.get<std::uint32_t>();
      if (e >= qg.edges().size()) throw ReferenceError("IMA record names unknown qedge " + std::to_string(e));
      c.partial.matched |= std::uint64_t{1} << e;
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad IMA record: ") + e.what(), 0);
  }
}

}  // namespace pgqp

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


#include "partition/partition.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <tuple>
#include <unordered_map>

#include "common/error.hpp"
#include "common/text.hpp"

namespace pgqp {

namespace {

std::vector<VertexIndex> vid_order(const Graph& g) {
  std::vector<VertexIndex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), VertexIndex{0});
  std::sort(order.begin(), order.end(), [&](VertexIndex a, VertexIndex b) { return g.vid(a) < g.vid(b); });
  return order;
}

void append_edge(std::string& out, const Graph& g, const Edge& e) {
  out += e.dir == EdgeDir::undirected ? "u " : "d ";
  out += std::to_string(g.vid(e.src));
  out += ' ';
  out += std::to_string(g.vid(e.dst));
  out += ' ';
  out += text::quote(g.labels().name(e.label));
  out += '\n';
}

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t root(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = root(a);
    b = root(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

PartitionAssignment import_assignment(const Graph& g, std::string_view lines, std::uint32_t k,
                                      std::string scheme_name) {
  if (k == 0) throw ArgumentError("k must be at least 1");
  auto order = vid_order(g);
  PartitionAssignment a;
  a.k = k;
  a.scheme_name = std::move(scheme_name);
  a.pid_of.assign(g.vertex_count(), kUnpartitioned);
  text::LineReader reader(lines);
  std::string_view line;
  std::size_t n = 0;
  while (reader.next(line)) {
    auto tokens = text::tokenize(line);
    if (tokens.empty() || tokens[0].value.starts_with('%')) continue;
    if (tokens.size() != 1) throw ParseError("expected one part number", reader.line_number());
    auto part = text::parse_uint(tokens[0].value);
    if (!part) throw ParseError("bad part number '" + tokens[0].value + "'", reader.line_number());
    if (*part >= k)
      throw ValidationError("line " + std::to_string(reader.line_number()) + ": part " + std::to_string(*part) +
                            " out of range for k=" + std::to_string(k));
    if (n >= order.size())
      throw ValidationError("assignment has more lines than the graph has vertices (" +
                            std::to_string(order.size()) + ")");
    a.pid_of[order[n++]] = static_cast<PartitionId>(*part + 1);
  }
  if (n != order.size())
    throw ValidationError("assignment has " + std::to_string(n) + " lines, graph has " +
                          std::to_string(order.size()) + " vertices");
  return a;
}

std::string serialize_assignment(const Graph& g, const PartitionAssignment& a) {
  std::string out;
  for (auto i : vid_order(g)) out += std::to_string(a.pid_of[i] - 1) + "\n";
  return out;
}

PartitionAssignment partition_builtin(const Graph& g, std::uint32_t k, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (k == 0 || k > std::max<std::size_t>(n, 1)) throw ArgumentError("k out of range: " + std::to_string(k));
  PartitionAssignment a;
  a.k = k;
  a.scheme_name = "builtin-greedy";
  a.pid_of.assign(n, kUnpartitioned);
  if (n == 0) return a;

  std::mt19937_64 rng(seed);
  auto order = vid_order(g);
  std::vector<VertexIndex> rank(n);
  for (VertexIndex r = 0; r < n; ++r) rank[order[r]] = r;
  std::vector<std::uint32_t> inside(n, 0);
  std::vector<std::uint32_t> degree(n, 0);
  for (VertexIndex v = 0; v < n; ++v) degree[v] = static_cast<std::uint32_t>(g.incident(v).size());

  // Farthest unassigned vertex from a random unassigned start, by BFS.
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  auto peripheral = [&](std::size_t remaining) {
    std::uniform_int_distribution<std::size_t> pick(0, remaining - 1);
    std::size_t skip = pick(rng);
    VertexIndex start = 0;
    for (auto v : order) {
      if (a.pid_of[v] != kUnpartitioned) continue;
      if (skip-- == 0) {
        start = v;
        break;
      }
    }
    ++stamp;
    std::queue<VertexIndex> q;
    q.push(start);
    seen[start] = stamp;
    VertexIndex last = start;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      last = v;
      for (const auto& inc : g.incident(v)) {
        auto w = inc.neighbor;
        if (seen[w] == stamp || a.pid_of[w] != kUnpartitioned) continue;
        seen[w] = stamp;
        q.push(w);
      }
    }
    return last;
  };

  // Max-heap on (cut reduction, -vid rank).
  using Entry = std::tuple<std::int64_t, std::int64_t, VertexIndex>;
  std::size_t remaining = n;
  for (PartitionId pid = 1; pid <= k; ++pid) {
    const std::size_t cap = (remaining + (k - pid)) / (k - pid + 1);
    std::priority_queue<Entry> heap;
    auto gain = [&](VertexIndex v) { return 2 * std::int64_t{inside[v]} - std::int64_t{degree[v]}; };
    std::size_t size = 0;
    std::vector<VertexIndex> touched;
    while (size < cap) {
      VertexIndex next;
      bool found = false;
      while (!heap.empty()) {
        auto [gv, r, v] = heap.top();
        heap.pop();
        if (a.pid_of[v] != kUnpartitioned || gv != gain(v)) continue;
        next = v;
        found = true;
        break;
      }
      if (!found) next = peripheral(remaining);
      a.pid_of[next] = pid;
      ++size;
      --remaining;
      for (const auto& inc : g.incident(next)) {
        auto w = inc.neighbor;
        if (a.pid_of[w] != kUnpartitioned) continue;
        if (inside[w] == 0) touched.push_back(w);
        ++inside[w];
        heap.emplace(gain(w), -std::int64_t{rank[w]}, w);
      }
    }
    for (auto w : touched) inside[w] = 0;
  }
  return a;
}

ExtendedPartition::ExtendedPartition(PartitionId pid, Graph graph, std::size_t local_edge_count)
    : pid_(pid), graph_(std::move(graph)), local_edges_(local_edge_count) {
  if (local_edges_ > graph_.edge_count()) throw InvariantError("local edge count exceeds edge count");
  graph_.finalize();
  for (const auto& v : graph_.vertices()) local_vertices_ += v.pid == pid_;
  for (std::size_t i = 0; i < graph_.edge_count(); ++i) {
    const auto& e = graph_.edge(static_cast<EdgeIndex>(i));
    int local = is_local(e.src) + is_local(e.dst);
    if (i < local_edges_ ? local != 2 : local != 1)
      throw ValidationError("partition " + std::to_string(pid_) + ": edge " + std::to_string(graph_.vid(e.src)) +
                            "-" + std::to_string(graph_.vid(e.dst)) + " is misplaced relative to the cut set");
  }
}

std::vector<ExtendedPartition> extend_with_cutset(const Graph& g, const PartitionAssignment& a) {
  if (a.pid_of.size() != g.vertex_count()) throw ArgumentError("assignment does not cover the graph");
  for (auto pid : a.pid_of)
    if (pid == kUnpartitioned || pid > a.k) throw ArgumentError("assignment pid out of range");
  const std::uint32_t k = a.k;
  std::vector<std::vector<VertexIndex>> members(k + 1);
  std::vector<std::vector<EdgeIndex>> local(k + 1), cut(k + 1);
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(i);
    auto ps = a.pid_of[e.src], pd = a.pid_of[e.dst];
    if (ps == pd) {
      local[ps].push_back(i);
    } else {
      cut[ps].push_back(i);
      cut[pd].push_back(i);
      members[ps].push_back(e.dst);
      members[pd].push_back(e.src);
    }
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) members[a.pid_of[v]].push_back(v);

  std::vector<ExtendedPartition> out;
  out.reserve(k);
  for (PartitionId pid = 1; pid <= k; ++pid) {
    auto& vs = members[pid];
    std::sort(vs.begin(), vs.end(), [&](VertexIndex x, VertexIndex y) { return g.vid(x) < g.vid(y); });
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    Graph pg;
    std::unordered_map<VertexIndex, VertexIndex> remap;
    remap.reserve(vs.size());
    for (auto v : vs) remap.emplace(v, pg.add_vertex(g.vid(v), g.label_of(v), a.pid_of[v]));
    auto copy = [&](EdgeIndex i) {
      const auto& e = g.edge(i);
      pg.add_edge_by_index(e.dir, remap.at(e.src), remap.at(e.dst), pg.labels().intern(g.edge_label(i)));
    };
    for (auto i : local[pid]) copy(i);
    for (auto i : cut[pid]) copy(i);
    std::vector<VertexIndex>().swap(vs);
    out.emplace_back(pid, std::move(pg), local[pid].size());
  }
  return out;
}

Graph reconstruct_graph(std::span<const ExtendedPartition> parts) {
  Graph g;
  for (const auto& p : parts) {
    const auto& pg = p.graph();
    for (VertexIndex i = 0; i < pg.vertex_count(); ++i)
      if (p.is_local(i)) g.add_vertex(pg.vid(i), pg.label_of(i), p.pid());
  }
  for (const auto& p : parts) {
    const auto& pg = p.graph();
    for (EdgeIndex i = 0; i < pg.edge_count(); ++i) {
      const auto& e = pg.edge(i);
      if (i >= p.local_edge_count() && !p.is_local(e.src)) continue;
      g.add_edge(e.dir, pg.vid(e.src), pg.vid(e.dst), pg.edge_label(i));
    }
  }
  g.finalize();
  return g;
}

std::string serialize_partition(const ExtendedPartition& p) {
  const auto& g = p.graph();
  std::string out = "# partition " + std::to_string(p.pid()) + "\n";
  for (auto i : vid_order(g)) {
    const auto& v = g.vertex(i);
    out += "v " + std::to_string(v.vid) + ' ' + text::quote(g.labels().name(v.label)) + ' ' +
           std::to_string(v.pid) + '\n';
  }
  for (const auto& e : p.local_edges()) append_edge(out, g, e);
  out += "# cutset\n";
  for (const auto& e : p.cut_edges()) append_edge(out, g, e);
  return out;
}

ExtendedPartition parse_partition(std::string_view input) {
  text::LineReader reader(input);
  std::string_view line;
  std::optional<PartitionId> pid;
  std::size_t local_edges = 0;
  bool in_cutset = false;
  while (reader.next(line)) {
    if (!pid) {
      if (line.empty()) continue;
      auto toks = text::tokenize(line);
      if (toks.size() != 3 || toks[0].value != "#" || toks[1].value != "partition")
        throw ParseError("expected '# partition <pid>' header", reader.line_number());
      auto v = text::parse_uint(toks[2].value);
      if (!v || *v == 0 || *v > UINT32_MAX) throw ParseError("bad partition id", reader.line_number());
      pid = static_cast<PartitionId>(*v);
      continue;
    }
    if (line == "# cutset") {
      if (in_cutset) throw ParseError("duplicate cutset marker", reader.line_number());
      in_cutset = true;
    } else if (!in_cutset && (line.starts_with("u ") || line.starts_with("d "))) {
      ++local_edges;
    }
  }
  if (!pid) throw ParseError("missing partition header", 0);
  return ExtendedPartition(*pid, parse_graph(input), local_edges);
}

std::size_t local_component_count(const ExtendedPartition& p) {
  const auto& g = p.graph();
  Dsu dsu(g.vertex_count());
  std::size_t count = p.local_vertex_count();
  for (const auto& e : p.local_edges()) count -= dsu.unite(e.src, e.dst);
  return count;
}

SchemeMetrics scheme_metrics(std::span<const ExtendedPartition> parts, std::string scheme_name) {
  SchemeMetrics m;
  m.scheme_name = std::move(scheme_name);
  for (const auto& p : parts) {
    m.pids.push_back(p.pid());
    m.cc_count.push_back(local_component_count(p));
    m.local_vertices.push_back(p.local_vertex_count());
    m.boundary_vertices.push_back(p.boundary_vertex_count());
    m.local_edges.push_back(p.local_edge_count());
    m.cut_edges.push_back(p.cut_edge_count());
    m.total_cc += m.cc_count.back();
  }
  return m;
}

std::size_t choose_scheme(std::span<const SchemeMetrics> schemes, SchemeChoice mode, std::uint64_t seed) {
  if (schemes.empty()) throw ArgumentError("no partitioning schemes to choose from");
  if (mode == SchemeChoice::random_cc) {
    std::mt19937_64 rng(seed);
    return std::uniform_int_distribution<std::size_t>(0, schemes.size() - 1)(rng);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < schemes.size(); ++i) {
    const auto& a = schemes[i];
    const auto& b = schemes[best];
    bool better = mode == SchemeChoice::min_cc ? a.total_cc < b.total_cc : a.total_cc > b.total_cc;
    if (better || (a.total_cc == b.total_cc && a.scheme_name < b.scheme_name)) best = i;
  }
  return best;
}

}  // namespace pgqp

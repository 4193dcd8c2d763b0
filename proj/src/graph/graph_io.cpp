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

#include <algorithm>
#include <string>

#include "common/error.hpp"
#include "common/text.hpp"
#include "graph/graph.hpp"

namespace pgqp {

namespace {

struct PendingEdge {
  EdgeDir dir;
  VertexId src;
  VertexId dst;
  std::string label;
  std::size_t line;
};

VertexId parse_vid(const text::Token& tok, std::size_t line) {
  auto v = text::parse_uint(tok.value);
  if (tok.quoted || !v || *v == 0) throw ParseError("bad vertex id '" + tok.value + "'", line);
  return *v;
}

}  // namespace

Graph parse_graph(std::string_view input) {
  Graph g;
  std::vector<PendingEdge> edges;
  text::LineReader lines(input);
  std::string_view line;
  while (lines.next(line)) {
    const auto ln = lines.line_number();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    std::vector<text::Token> toks;
    try {
      toks = text::tokenize(line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), ln);
    }
    const auto& kind = toks[0].value;
    if (kind == "v") {
      if (toks.size() != 3 && toks.size() != 4)
        throw ParseError("vertex record needs 'v <vid> <label> [pid]'", ln);
      if (toks[2].value.empty()) throw ParseError("empty vertex label", ln);
      PartitionId pid = kUnpartitioned;
      if (toks.size() == 4) {
        auto p = text::parse_uint(toks[3].value);
        if (!p || toks[3].quoted) throw ParseError("bad partition id '" + toks[3].value + "'", ln);
        pid = static_cast<PartitionId>(*p);
      }
      try {
        g.add_vertex(parse_vid(toks[1], ln), toks[2].value, pid);
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), ln);
      }
    } else if (kind == "u" || kind == "d") {
      if (toks.size() != 4) throw ParseError("edge record needs '" + kind + " <src> <dst> <label>'", ln);
      edges.push_back(PendingEdge{kind == "u" ? EdgeDir::undirected : EdgeDir::directed,
                                  parse_vid(toks[1], ln), parse_vid(toks[2], ln), toks[3].value, ln});
    } else {
      throw ParseError("unknown record type '" + kind + "'", ln);
    }
  }
  for (const auto& e : edges) {
    try {
      g.add_edge(e.dir, e.src, e.dst, e.label);
    } catch (const ReferenceError& err) {
      throw ReferenceError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
  g.finalize();
  return g;
}

Graph load_graph(const std::string& path) { return parse_graph(text::read_file(path)); }

std::string serialize_graph(const Graph& g, bool with_pids) {
  std::string out;
  out.reserve(g.vertex_count() * 16 + g.edge_count() * 24);
  std::vector<VertexIndex> order(g.vertex_count());
  for (VertexIndex i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](VertexIndex a, VertexIndex b) { return g.vid(a) < g.vid(b); });
  for (auto i : order) {
    const auto& v = g.vertex(i);
    out += "v ";
    out += std::to_string(v.vid);
    out += ' ';
    out += text::quote(g.labels().name(v.label));
    if (with_pids) {
      out += ' ';
      out += std::to_string(v.pid);
    }
    out += '\n';
  }
  for (const auto& e : g.edges()) {
    out += e.dir == EdgeDir::undirected ? "u " : "d ";
    out += std::to_string(g.vid(e.src));
    out += ' ';
    out += std::to_string(g.vid(e.dst));
    out += ' ';
    out += text::quote(g.labels().name(e.label));
    out += '\n';
  }
  return out;
}

}  // namespace pgqp

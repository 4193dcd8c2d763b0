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

#include "graph/catalog.hpp"

#include <algorithm>
#include <tuple>

#include "common/error.hpp"
#include "common/text.hpp"

namespace pgqp {

namespace {
constexpr std::size_t kMaxCatalogLabels = std::size_t{1} << 21;
}

std::uint64_t Catalog::instances(std::string_view label) const {
  auto id = labels_.find(label);
  return id ? instances(*id) : 0;
}

std::optional<TripleStats> Catalog::triple(std::string_view a, std::string_view e, std::string_view b) const {
  auto ia = labels_.find(a), ie = labels_.find(e), ib = labels_.find(b);
  if (!ia || !ie || !ib) return std::nullopt;
  auto it = triples_.find(pack(*ia, *ie, *ib));
  if (it == triples_.end()) return std::nullopt;
  TripleStats s;
  s.connection_count = it->second;
  s.avg_connection = static_cast<double>(it->second) / static_cast<double>(instances(*ia));
  return s;
}

std::optional<double> Catalog::avg_connection(std::string_view a, std::string_view e, std::string_view b) const {
  auto s = triple(a, e, b);
  if (!s) return std::nullopt;
  return s->avg_connection;
}

void Catalog::note_vertex_label(LabelId id, std::uint64_t count) {
  if (instance_count_.size() <= id) instance_count_.resize(id + 1, 0);
  instance_count_[id] = count;
  if (auto num = text::parse_number(labels_.name(id))) {
    ++numeric_labels_;
    min_value_ = min_value_ ? std::min(*min_value_, *num) : *num;
    max_value_ = max_value_ ? std::max(*max_value_, *num) : *num;
  }
}

Catalog build_catalog(const Graph& g) {
  if (g.labels().size() >= kMaxCatalogLabels) throw ArgumentError("too many distinct labels for catalog");
  Catalog c;
  c.vertex_count_ = g.vertex_count();
  c.edge_count_ = g.edge_count();
  // Same ids as the graph's own table.
  for (LabelId id = 0; id < g.labels().size(); ++id) c.labels_.intern(g.labels().name(id));
  std::vector<std::uint64_t> per_label(g.labels().size(), 0);
  for (const auto& v : g.vertices()) ++per_label[v.label];
  for (LabelId id = 0; id < per_label.size(); ++id)
    if (per_label[id] > 0) c.note_vertex_label(id, per_label[id]);
  for (const auto& e : g.edges()) {
    LabelId ls = g.vertex(e.src).label, ld = g.vertex(e.dst).label;
    ++c.triples_[Catalog::pack(ls, e.label, ld)];
    if (e.src != e.dst) ++c.triples_[Catalog::pack(ld, e.label, ls)];
  }
  return c;
}

std::string serialize_catalog(const Catalog& c) {
  std::string out = "# catalog\tvertices\t" + std::to_string(c.vertex_count_) + "\tedges\t" +
                    std::to_string(c.edge_count_) + "\n";
  const auto& names = c.labels_;
  std::vector<LabelId> vlabels;
  for (LabelId id = 0; id < c.instance_count_.size(); ++id)
    if (c.instance_count_[id] > 0) vlabels.push_back(id);
  std::sort(vlabels.begin(), vlabels.end(), [&](LabelId a, LabelId b) { return names.name(a) < names.name(b); });
  for (auto id : vlabels)
    out += "vertex\t" + text::tsv_escape(names.name(id)) + "\t" + std::to_string(c.instance_count_[id]) + "\n";

  using Row = std::tuple<const std::string*, const std::string*, const std::string*, std::uint64_t>;
  std::vector<Row> rows;
  rows.reserve(c.triples_.size());
  c.for_each_triple([&](LabelId a, LabelId e, LabelId b, std::uint64_t n) {
    rows.emplace_back(&names.name(a), &names.name(e), &names.name(b), n);
  });
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(*std::get<0>(x), *std::get<1>(x), *std::get<2>(x)) <
           std::tie(*std::get<0>(y), *std::get<1>(y), *std::get<2>(y));
  });
  for (const auto& [a, e, b, n] : rows)
    out += "triple\t" + text::tsv_escape(*a) + "\t" + text::tsv_escape(*e) + "\t" + text::tsv_escape(*b) + "\t" +
           std::to_string(n) + "\n";
  if (c.min_value_ && c.max_value_)
    out += "numeric\t" + text::format_number(*c.min_value_) + "\t" + text::format_number(*c.max_value_) + "\n";
  return out;
}

Catalog restrict_catalog(const Catalog& c, const std::function<bool(const std::string&)>& keep_vertex,
                         const std::function<bool(const std::string&)>& keep_edge) {
  Catalog out;
  out.vertex_count_ = c.vertex_count_;
  out.edge_count_ = c.edge_count_;
  out.min_value_ = c.min_value_;
  out.max_value_ = c.max_value_;
  out.numeric_labels_ = c.numeric_labels_;
  const auto& names = c.labels_;
  std::vector<std::int8_t> vkeep(names.size(), -1), ekeep(names.size(), -1);
  auto kept = [&](std::vector<std::int8_t>& cache, const auto& f, LabelId id) {
    if (cache[id] < 0) cache[id] = f(names.name(id)) ? 1 : 0;
    return cache[id] == 1;
  };
  auto remap = [&](LabelId id) { return out.labels_.intern(names.name(id)); };
  for (LabelId id = 0; id < c.instance_count_.size(); ++id) {
    if (c.instance_count_[id] == 0 || !kept(vkeep, keep_vertex, id)) continue;
    auto nid = remap(id);
    if (out.instance_count_.size() <= nid) out.instance_count_.resize(nid + 1, 0);
    out.instance_count_[nid] = c.instance_count_[id];
  }
  c.for_each_triple([&](LabelId a, LabelId e, LabelId b, std::uint64_t n) {
    if (kept(vkeep, keep_vertex, a) && kept(ekeep, keep_edge, e) && kept(vkeep, keep_vertex, b))
      out.triples_[Catalog::pack(remap(a), remap(e), remap(b))] = n;
  });
  return out;
}

Catalog parse_catalog(std::string_view input) {
  Catalog c;
  text::LineReader lines(input);
  std::string_view line;
  auto need_uint = [&](std::string_view s) {
    auto v = text::parse_uint(s);
    if (!v) throw ParseError("bad count '" + std::string(s) + "'", lines.line_number());
    return *v;
  };
  while (lines.next(line)) {
    if (line.empty()) continue;
    auto cells = text::split(line, '\t');
    if (cells[0] == "# catalog") {
      if (cells.size() != 5) throw ParseError("bad catalog header", lines.line_number());
      c.vertex_count_ = need_uint(cells[2]);
      c.edge_count_ = need_uint(cells[4]);
    } else if (cells[0] == "vertex" && cells.size() == 3) {
      auto id = c.labels_.intern(text::tsv_unescape(cells[1]));
      c.note_vertex_label(id, need_uint(cells[2]));
    } else if (cells[0] == "triple" && cells.size() == 5) {
      auto a = c.labels_.intern(text::tsv_unescape(cells[1]));
      auto e = c.labels_.intern(text::tsv_unescape(cells[2]));
      auto b = c.labels_.intern(text::tsv_unescape(cells[3]));
      if (c.labels_.size() >= kMaxCatalogLabels) throw ParseError("too many labels", lines.line_number());
      c.triples_[Catalog::pack(a, e, b)] = need_uint(cells[4]);
    } else if (cells[0] == "numeric" && cells.size() == 3) {
      // Recomputed from vertex records; kept in the file for readers.
    } else {
      throw ParseError("unknown catalog record", lines.line_number());
    }
  }
  bool ok = true;
  c.for_each_triple([&](LabelId a, LabelId, LabelId, std::uint64_t) { ok = ok && c.instances(a) > 0; });
  if (!ok) throw ParseError("triple refers to a label with no instances", 0);
  return c;
}

}  // namespace pgqp

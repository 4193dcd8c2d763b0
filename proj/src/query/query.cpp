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

#include "query/query.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "common/text.hpp"

namespace pgqp {

Predicate Predicate::exact(std::string label) {
  Predicate p;
  p.kind = Kind::exact;
  p.label = std::move(label);
  return p;
}

Predicate Predicate::wildcard() { return Predicate{}; }

Predicate Predicate::compare(CompareOp op, std::string constant) {
  Predicate p;
  p.kind = Kind::compare;
  p.op = op;
  p.number = text::parse_number(constant);
  p.label = std::move(constant);
  return p;
}

Predicate Predicate::one_of(std::vector<std::string> labels) {
  Predicate p;
  p.kind = Kind::any_of;
  p.any_of = std::move(labels);
  return p;
}

namespace {

template <class T>
bool apply(CompareOp op, const T& a, const T& b) {
  switch (op) {
    case CompareOp::lt: return a < b;
    case CompareOp::le: return a <= b;
    case CompareOp::gt: return a > b;
    case CompareOp::ge: return a >= b;
    case CompareOp::ne: return a != b;
    case CompareOp::eq: return a == b;
  }
  return false;
}

std::string_view op_text(CompareOp op) {
  switch (op) {
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
    case CompareOp::ne: return "!=";
    case CompareOp::eq: return "=";
  }
  return "?";
}

std::optional<CompareOp> parse_op(std::string_view s) {
  if (s == "<") return CompareOp::lt;
  if (s == "<=") return CompareOp::le;
  if (s == ">") return CompareOp::gt;
  if (s == ">=") return CompareOp::ge;
  if (s == "!=") return CompareOp::ne;
  if (s == "=") return CompareOp::eq;
  return std::nullopt;
}

bool is_op_char(char c) { return c == '<' || c == '>' || c == '=' || c == '!'; }

/// Quotes when the value would not survive as a bare predicate item.
std::string quote_item(std::string_view s) {
  bool bare = !s.empty() && s.front() != '"';
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '|' || c == '\\' || c == '"') bare = false;
  if (bare) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

/// Cursor over one line, used for the positional fields before a predicate.
class Cursor {
 public:
  Cursor(std::string_view line, std::size_t line_no) : s_(line), line_(line_no) {}

  std::string_view word() {
    skip_space();
    auto start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t') ++pos_;
    return s_.substr(start, pos_ - start);
  }
  std::string_view rest() {
    skip_space();
    auto r = s_.substr(pos_);
    while (!r.empty() && (r.back() == ' ' || r.back() == '\t')) r.remove_suffix(1);
    pos_ = s_.size();
    return r;
  }
  QNodeId qnode_id() {
    auto w = word();
    auto v = text::parse_uint(w);
    if (!v || *v > UINT32_MAX) throw ParseError("bad qnode id '" + std::string(w) + "'", line_);
    return static_cast<QNodeId>(*v);
  }
  std::size_t line() const { return line_; }

 private:
  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

/// Reads one quoted-or-bare item starting at s[i]; stops at `stop` when bare.
std::string read_item(std::string_view s, std::size_t& i, char stop, std::size_t line) {
  std::string out;
  if (i < s.size() && s[i] == '"') {
    ++i;
    while (i < s.size()) {
      char c = s[i++];
      if (c == '\\' && i < s.size()) {
        out.push_back(s[i++]);
      } else if (c == '"') {
        return out;
      } else {
        out.push_back(c);
      }
    }
    throw ParseError("unterminated quoted string", line);
  }
  while (i < s.size() && s[i] != stop) {
    if (s[i] == ' ' || s[i] == '\t') throw ParseError("unquoted value contains whitespace", line);
    out.push_back(s[i++]);
  }
  return out;
}

Predicate parse_predicate(std::string_view s, std::size_t line) {
  if (s.empty()) throw ParseError("missing predicate", line);
  if (s.front() == '"') {
    std::size_t i = 0;
    auto label = read_item(s, i, '\0', line);
    if (i != s.size()) throw ParseError("junk after quoted label", line);
    return Predicate::exact(std::move(label));
  }
  if (s == "?") return Predicate::wildcard();
  if (s.starts_with("anyof:")) {
    std::vector<std::string> items;
    std::size_t i = 6;
    while (true) {
      items.push_back(read_item(s, i, '|', line));
      if (i >= s.size()) break;
      if (s[i] != '|') throw ParseError("expected '|' in anyof list", line);
      ++i;
    }
    return Predicate::one_of(std::move(items));
  }
  std::size_t n = 0;
  while (n < s.size() && is_op_char(s[n])) ++n;
  if (n > 0 && n < s.size() && s[n] == ':') {
    auto op = parse_op(s.substr(0, n));
    if (!op) throw ParseError("unknown operator '" + std::string(s.substr(0, n)) + "'", line);
    std::size_t i = n + 1;
    auto value = read_item(s, i, '\0', line);
    if (i != s.size()) throw ParseError("junk after comparison value", line);
    return Predicate::compare(*op, std::move(value));
  }
  if (s.find_first_of(" \t") != std::string_view::npos)
    throw ParseError("labels with spaces must be quoted", line);
  return Predicate::exact(std::string(s));
}

}  // namespace

bool Predicate::matches(std::string_view l) const { return eval_predicate(*this, l); }

std::string Predicate::to_string() const {
  switch (kind) {
    case Kind::wildcard: return "?";
    case Kind::exact: {
      std::string out = "\"";
      for (char c : label) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
      }
      return out + "\"";
    }
    case Kind::compare: return std::string(op_text(op)) + ":" + quote_item(label);
    case Kind::any_of: {
      std::string out = "anyof:";
      for (std::size_t i = 0; i < any_of.size(); ++i) {
        if (i) out += '|';
        out += quote_item(any_of[i]);
      }
      return out;
    }
  }
  return "?";
}

bool eval_predicate(const Predicate& p, std::string_view label) {
  switch (p.kind) {
    case Predicate::Kind::wildcard: return true;
    case Predicate::Kind::exact: return label == p.label;
    case Predicate::Kind::any_of:
      return std::any_of(p.any_of.begin(), p.any_of.end(), [&](const std::string& a) { return a == label; });
    case Predicate::Kind::compare:
      if (p.number) {
        auto v = text::parse_number(label);
        if (!v) return p.op == CompareOp::ne;
        return apply(p.op, *v, *p.number);
      }
      return apply(p.op, label, std::string_view(p.label));
  }
  return false;
}

std::uint32_t QueryGraph::add_node(QNodeId id, Predicate pred) {
  if (nodes_.size() >= kMaxNodes) throw ValidationError("query has more than 64 nodes");
  auto idx = static_cast<std::uint32_t>(nodes_.size());
  if (!index_.emplace(id, idx).second) throw ValidationError("duplicate qnode id " + std::to_string(id));
  nodes_.push_back(QueryNode{id, std::move(pred)});
  return idx;
}

std::uint32_t QueryGraph::add_edge(QNodeId src, QNodeId dst, EdgeDir dir, Predicate pred) {
  if (edges_.size() >= kMaxEdges) throw ValidationError("query has more than 64 edges");
  auto s = index_of(src), d = index_of(dst);
  if (!s) throw ReferenceError("query edge references unknown qnode " + std::to_string(src));
  if (!d) throw ReferenceError("query edge references unknown qnode " + std::to_string(dst));
  edges_.push_back(QueryEdge{*s, *d, dir, std::move(pred)});
  return static_cast<std::uint32_t>(edges_.size() - 1);
}

std::optional<std::uint32_t> QueryGraph::index_of(QNodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool QueryGraph::connected() const {
  if (nodes_.empty()) return false;
  std::vector<std::uint32_t> comp(nodes_.size());
  for (std::uint32_t i = 0; i < comp.size(); ++i) comp[i] = i;
  auto root = [&](std::uint32_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto& e : edges_) comp[root(e.src)] = root(e.dst);
  auto r = root(0);
  for (std::uint32_t i = 1; i < comp.size(); ++i)
    if (root(i) != r) return false;
  return true;
}

Query parse_query(std::string_view input) {
  Query q;
  q.disjuncts.emplace_back();
  // Edges may name nodes declared later in the same disjunct.
  struct PendingEdge {
    QNodeId src, dst;
    EdgeDir dir;
    Predicate pred;
    std::size_t line;
  };
  std::vector<std::vector<PendingEdge>> pending(1);
  text::LineReader lines(input);
  std::string_view line;
  while (lines.next(line)) {
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    Cursor cur(line, lines.line_number());
    auto kind = cur.word();
    if (kind == "qv") {
      auto id = cur.qnode_id();
      auto pred = parse_predicate(cur.rest(), cur.line());
      try {
        q.disjuncts.back().add_node(id, std::move(pred));
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), cur.line());
      }
    } else if (kind == "qe") {
      auto s = cur.qnode_id();
      auto d = cur.qnode_id();
      auto dir_word = cur.word();
      EdgeDir dir;
      if (dir_word == "u") {
        dir = EdgeDir::undirected;
      } else if (dir_word == "d") {
        dir = EdgeDir::directed;
      } else {
        throw ParseError("edge direction must be 'u' or 'd'", cur.line());
      }
      auto pred = parse_predicate(cur.rest(), cur.line());
      pending.back().push_back(PendingEdge{s, d, dir, std::move(pred), cur.line()});
    } else if (kind == "or") {
      if (!cur.rest().empty()) throw ParseError("'or' takes no arguments", cur.line());
      q.disjuncts.emplace_back();
      pending.emplace_back();
    } else if (kind == "limit") {
      auto w = cur.word();
      auto v = text::parse_uint(w);
      if (!v || *v == 0) throw ParseError("limit must be a positive integer", cur.line());
      if (!cur.rest().empty()) throw ParseError("junk after limit", cur.line());
      q.limit = *v;
    } else {
      throw ParseError("unknown query record '" + std::string(kind) + "'", cur.line());
    }
  }
  for (std::size_t d = 0; d < q.disjuncts.size(); ++d) {
    auto& g = q.disjuncts[d];
    for (auto& e : pending[d]) {
      try {
        g.add_edge(e.src, e.dst, e.dir, std::move(e.pred));
      } catch (const ReferenceError& err) {
        throw ParseError(err.what(), e.line);
      } catch (const ValidationError& err) {
        throw ParseError(err.what(), e.line);
      }
    }
    if (g.nodes().empty()) throw ValidationError("query disjunct " + std::to_string(d) + " has no nodes");
    if (!g.connected()) throw ValidationError("query disjunct " + std::to_string(d) + " is not connected");
  }
  return q;
}

Query load_query(const std::string& path) { return parse_query(text::read_file(path)); }

std::string render_query(const Query& q) {
  std::string out;
  if (q.limit) out += "limit " + std::to_string(*q.limit) + "\n";
  for (std::size_t d = 0; d < q.disjuncts.size(); ++d) {
    if (d) out += "or\n";
    const auto& g = q.disjuncts[d];
    for (const auto& n : g.nodes()) out += "qv " + std::to_string(n.id) + " " + n.pred.to_string() + "\n";
    for (const auto& e : g.edges())
      out += "qe " + std::to_string(g.nodes()[e.src].id) + " " + std::to_string(g.nodes()[e.dst].id) +
             (e.dir == EdgeDir::undirected ? " u " : " d ") + e.pred.to_string() + "\n";
  }
  return out;
}

}  // namespace pgqp

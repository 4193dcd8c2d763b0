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

#include "common/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace pgqp::text {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    Token tok;
    if (line[i] == '"') {
      tok.quoted = true;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char c = line[i++];
        if (c == '\\' && i < line.size()) {
          tok.value.push_back(line[i++]);
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          tok.value.push_back(c);
        }
      }
      if (!closed) throw ParseError("unterminated quoted string", 0);
      if (i < line.size() && !is_space(line[i]))
        throw ParseError("junk after closing quote", 0);
    } else {
      while (i < line.size() && !is_space(line[i])) tok.value.push_back(line[i++]);
    }
    out.push_back(std::move(tok));
  }
  return out;
}

std::string quote(std::string_view value) {
  bool bare = !value.empty() && value.front() != '"' && value.front() != '#';
  for (char c : value) {
    if (is_space(c) || c == '\n' || c == '\\') {
      bare = false;
      break;
    }
  }
  if (bare) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  // from_chars accepts "inf"/"nan" spellings; labels like that stay strings.
  char first = s.front() == '-' ? (s.size() > 1 ? s[1] : '\0') : s.front();
  if (!(first >= '0' && first <= '9') && first != '.') return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf.data(), ptr);
}

std::string tsv_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\\': out += "\\\\"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string tsv_unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      char n = s[++i];
      out.push_back(n == 't' ? '\t' : n == 'n' ? '\n' : n);
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    if (p == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 1;
  }
}

bool LineReader::next(std::string_view& line) {
  if (pos_ >= text_.size()) return false;
  std::size_t end = text_.find('\n', pos_);
  if (end == std::string_view::npos) end = text_.size();
  line = text_.substr(pos_, end - pos_);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  pos_ = end + 1;
  ++line_no_;
  return true;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("short write to " + path);
}

std::string_view heuristic_name(Heuristic h) {
  switch (h) {
    case Heuristic::max_sn: return "max-sn";
    case Heuristic::min_sn: return "min-sn";
    case Heuristic::random_sn: return "random-sn";
  }
  return "?";
}

Heuristic parse_heuristic(std::string_view s) {
  if (s == "max-sn") return Heuristic::max_sn;
  if (s == "min-sn") return Heuristic::min_sn;
  if (s == "random-sn") return Heuristic::random_sn;
  throw ArgumentError("unknown heuristic '" + std::string(s) + "'");
}

std::string_view scheme_choice_name(SchemeChoice c) {
  switch (c) {
    case SchemeChoice::min_cc: return "min-cc";
    case SchemeChoice::max_cc: return "max-cc";
    case SchemeChoice::random_cc: return "random-cc";
  }
  return "?";
}

SchemeChoice parse_scheme_choice(std::string_view s) {
  if (s == "min-cc") return SchemeChoice::min_cc;
  if (s == "max-cc") return SchemeChoice::max_cc;
  if (s == "random-cc") return SchemeChoice::random_cc;
  throw ArgumentError("unknown scheme choice '" + std::string(s) + "'");
}

std::string_view mode_name(ExecMode m) {
  switch (m) {
    case ExecMode::opat: return "opat";
    case ExecMode::traditional: return "trad";
    case ExecMode::mapreduce: return "mr";
  }
  return "?";
}

ExecMode parse_mode(std::string_view s) {
  if (s == "opat") return ExecMode::opat;
  if (s == "trad") return ExecMode::traditional;
  if (s == "mr") return ExecMode::mapreduce;
  throw ArgumentError("unknown mode '" + std::string(s) + "'");
}

}  // namespace pgqp::text

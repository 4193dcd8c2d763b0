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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/types.hpp"

namespace pgqp::text {

/// One whitespace-separated token of a record line. `quoted` is set when the
/// token was written as "..." so callers can tell `"?"` from `?`.
struct Token {
  std::string value;
  bool quoted = false;
};

/// Splits a record line into tokens. Double-quoted tokens may contain spaces
/// and the escapes \" and \\. Throws ParseError (without line number; callers
/// rethrow with one) on an unterminated quote.
std::vector<Token> tokenize(std::string_view line);

/// Inverse of tokenize for a single value: bare when that round-trips,
/// quoted otherwise.
std::string quote(std::string_view value);

/// Full-string decimal number. Rejects inf/nan and trailing junk.
std::optional<double> parse_number(std::string_view s);
std::optional<std::uint64_t> parse_uint(std::string_view s);

/// Shortest round-tripping text for a double ("2011", "0.5").
std::string format_number(double v);

/// TSV cell escaping (tab, newline, backslash) and its inverse.
std::string tsv_escape(std::string_view s);
std::string tsv_unescape(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

/// Iterates lines of a text buffer; handles \n and \r\n.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}
  bool next(std::string_view& line);
  std::size_t line_number() const noexcept { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::string_view heuristic_name(Heuristic h);
Heuristic parse_heuristic(std::string_view s);
std::string_view scheme_choice_name(SchemeChoice c);
SchemeChoice parse_scheme_choice(std::string_view s);
std::string_view mode_name(ExecMode m);
ExecMode parse_mode(std::string_view s);

}  // namespace pgqp::text

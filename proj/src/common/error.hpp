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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgqp {

/// Base of every error raised by the core library. The C API maps each
/// subclass onto one status code, so new subclasses need a mapping there.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An identifier that does not resolve (edge endpoint, qnode, partition id).
class ReferenceError : public Error {
 public:
  using Error::Error;
};

/// Input that parses but violates a structural rule (disconnected query, bad k).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Caller passed an argument outside the documented range.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Internal bookkeeping went inconsistent. Always signals a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pgqp

// Copyright 2026 The multifix Authors
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

namespace multifix {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point does not belong to the carrier it is used with.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Arity mismatch, non-positive radius, zero tail and similar caller mistakes.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input violates a structural precondition (e.g. a relation that is not a
/// partial order, a table that breaks the distance axioms).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is only defined for finite carriers.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// |X|^m exceeds the materialization cap.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t cap)
      : Error(what), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// An operator could not be evaluated (e.g. a finite table has no entry for
/// the requested argument tuple).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Problem-file syntax or consistency error, carrying a 1-based line number
/// (0 when the error is not tied to a line).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? "parse error: " + message
                        : "parse error at line " + std::to_string(line) +
                              ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace multifix

// Copyright 2026 The widthapx Authors
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

#ifndef WIDTHAPX_ERRORS_HPP_
#define WIDTHAPX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace widthapx {

// Negative inputs, zero sums where a logarithm is needed, bad parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input text. `line` is 1-based, 0 when not attributable.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Structurally well-formed input that violates a semantic invariant
// (decomposition axioms, join-niceness, certificate/graph mismatch).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs outside the supported envelope (oracle size guards, weight bounds).
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace widthapx

#endif  // WIDTHAPX_ERRORS_HPP_

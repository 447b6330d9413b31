// Copyright 2026 The forgetlens Authors.
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

#include <stdexcept>
#include <string>

namespace forgetlens {

// Malformed or unreadable input: I/O failures, bad UTF-8, unparseable
// lines. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input that violates a semantic precondition: length
// mismatches, zero denominators, out-of-range indices. The CLI maps
// this to exit code 3.
class ConstraintError : public std::runtime_error {
 public:
  explicit ConstraintError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace forgetlens

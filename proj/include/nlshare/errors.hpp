// Copyright 2026 The nlshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLSHARE_ERRORS_HPP
#define NLSHARE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlshare {

/// A parameter lies outside the range an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed configuration: unknown axis, empty range, bad option value.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a dimension guard (dense simulations are capped).
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Tabular input does not have the expected shape.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlshare

#endif  // NLSHARE_ERRORS_HPP

// Copyright 2026 The bwauction Authors
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

#ifndef BWAUCTION_ERRORS_HPP
#define BWAUCTION_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bwauction {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function was evaluated outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration is incomplete or inconsistent. `fields()` names the
/// offending keys.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::vector<std::string> fields = {})
      : Error(what), fields_(std::move(fields)) {}

  const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  std::vector<std::string> fields_;
};

/// The equilibrium linear system is singular or too ill-conditioned to solve.
class NoEquilibrium : public Error {
 public:
  using Error::Error;
};

/// A player's payoff is not strictly concave in its own intercept, or its
/// maximizer could not be bracketed.
class NoBestResponse : public Error {
 public:
  using Error::Error;
};

/// Random placement could not satisfy the cell/cluster constraints.
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace bwauction

#endif  // BWAUCTION_ERRORS_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The upbound authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace upb {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch: non-square input, differing dimensions.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Input rejected by a constructor or loader. `index` names the offending
/// constellation member when there is one.
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string& what, std::optional<std::size_t> index = std::nullopt)
        : Error(what), index_(index) {}
    std::optional<std::size_t> index() const noexcept { return index_; }

  private:
    std::optional<std::size_t> index_;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class UnsupportedStrategy : public ConfigError {
  public:
    using ConfigError::ConfigError;
};

class RangeError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

/// Iterative method failed to converge. Root solvers attach their last bracket.
class NumericalFailure : public Error {
  public:
    explicit NumericalFailure(const std::string& what) : Error(what) {}
    NumericalFailure(const std::string& what, double lo, double hi)
        : Error(what), bracket_{{lo, hi}} {}

    struct Bracket {
        double lo;
        double hi;
    };
    std::optional<Bracket> bracket() const noexcept { return bracket_; }

  private:
    std::optional<Bracket> bracket_;
};

} // namespace upb

// Copyright 2026 The eb92 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace eb92 {

/// Raised when an operation is called outside its domain (bad probabilities,
/// mismatched dimensions, inconsistent epsilons, ...).
class InvalidArgument : public std::invalid_argument {
   public:
    explicit InvalidArgument(const std::string &what) : std::invalid_argument(what) {
    }
};

/// Raised when a well-formed computation cannot produce a meaningful value
/// (no physical channel in a confidence region, non-physical bound arrays,
/// singular estimation identities).
class ComputationError : public std::runtime_error {
   public:
    explicit ComputationError(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace eb92

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

#include <string>

#include "eb92/attack.h"

namespace eb92 {

/// JSON form: {"e0": [[re, im], ...], "e1": ..., "e2": ..., "e3": ...}.
std::string attack_to_json(const AttackVectors &attack);

/// Inverse of attack_to_json; throws InvalidArgument on malformed input or
/// vectors that violate unitarity.
AttackVectors attack_from_json(const std::string &text);

}  // namespace eb92

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

#include "eb92/attack_io.h"

#include <array>
#include <vector>

#include "eb92/error.h"
#include "json.hpp"

namespace eb92 {

namespace {

nlohmann::json vector_json(const ComplexVector &v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &z : v.entries()) {
        arr.push_back({z.real(), z.imag()});
    }
    return arr;
}

ComplexVector vector_from(const nlohmann::json &j, const char *name) {
    if (!j.is_array() || j.empty()) {
        throw InvalidArgument(std::string("attack field ") + name + " must be a non-empty array");
    }
    std::vector<Complex> entries;
    for (const auto &z : j) {
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
            throw InvalidArgument(std::string("attack field ") + name +
                                  " entries must be [re, im] pairs");
        }
        entries.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return ComplexVector(std::move(entries));
}

}  // namespace

std::string attack_to_json(const AttackVectors &attack) {
    nlohmann::json j;
    j["e0"] = vector_json(attack.e0());
    j["e1"] = vector_json(attack.e1());
    j["e2"] = vector_json(attack.e2());
    j["e3"] = vector_json(attack.e3());
    return j.dump();
}

AttackVectors attack_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw InvalidArgument(std::string("attack JSON: ") + e.what());
    }
    constexpr std::array<const char *, 4> kNames = {"e0", "e1", "e2", "e3"};
    for (const char *name : kNames) {
        if (!j.contains(name)) {
            throw InvalidArgument(std::string("attack JSON is missing ") + name);
        }
    }
    return AttackVectors(vector_from(j["e0"], "e0"), vector_from(j["e1"], "e1"),
                         vector_from(j["e2"], "e2"), vector_from(j["e3"], "e3"));
}

}  // namespace eb92

// Copyright 2026 The cdrisk Authors.
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

#ifndef CDRISK_JSON_UTIL_H_
#define CDRISK_JSON_UTIL_H_

#include <string>

#include "json.hpp"

namespace cdrisk {

// Serializes `doc` with every floating-point number written in fixed notation
// with `decimals` places. Integers and strings are written as nlohmann would.
// Non-finite floats become null.
std::string dump_fixed(const nlohmann::ordered_json& doc, int decimals = 6,
                       int indent = 2);

}  // namespace cdrisk

#endif  // CDRISK_JSON_UTIL_H_

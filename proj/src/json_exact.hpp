// SPDX-License-Identifier: Apache-2.0
//
// pointdata: point-data format tools for radio propagation measurements
// Copyright (C) 2026 The pointdata authors
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

#ifndef POINTDATA_JSON_EXACT_HPP
#define POINTDATA_JSON_EXACT_HPP

#include "pointdata/decimal.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace pointdata::detail
{

// Parses JSON keeping every non-integer number as its source text (a JSON string),
// so decimals survive without passing through binary floating point.
// Throws Error{ValueParse} on malformed input.
nlohmann::json parse_json_exact(std::string_view text);

// Decimal from a number-or-string node produced by parse_json_exact.
std::optional<Decimal> json_decimal(const nlohmann::json &node);

} // namespace pointdata::detail

#endif

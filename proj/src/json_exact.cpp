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

#include "json_exact.hpp"

#include "pointdata/error.hpp"

namespace pointdata::detail
{

namespace
{

class ExactSax : public nlohmann::detail::json_sax_dom_parser<nlohmann::json>
{
    using base = nlohmann::detail::json_sax_dom_parser<nlohmann::json>;

public:
    using base::base;

    bool number_float(double, const std::string &source)
    {
        std::string copy = source;
        return base::string(copy);
    }
};

} // namespace

nlohmann::json parse_json_exact(std::string_view text)
{
    nlohmann::json out;
    ExactSax sax(out, false);
    bool ok = false;
    try
    {
        ok = nlohmann::json::sax_parse(text.begin(), text.end(), &sax);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw Error(Errc::ValueParse, std::string("malformed JSON: ") + e.what());
    }
    if (!ok || out.is_discarded())
        throw Error(Errc::ValueParse, "malformed JSON document");
    return out;
}

std::optional<Decimal> json_decimal(const nlohmann::json &node)
{
    if (node.is_number_integer())
    {
        if (node.is_number_unsigned())
        {
            auto v = node.get<std::uint64_t>();
            if (v > static_cast<std::uint64_t>(INT64_MAX))
                return std::nullopt;
            return Decimal(static_cast<std::int64_t>(v), 0);
        }
        return Decimal(node.get<std::int64_t>(), 0);
    }
    if (node.is_string())
        return Decimal::parse(node.get<std::string>());
    return std::nullopt;
}

} // namespace pointdata::detail

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

#include "pointdata/derivation.hpp"

#include <json.hpp>

namespace pointdata::derivation
{

namespace
{

using nlohmann::json;

json parse(std::string_view text)
{
    try
    {
        return json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error &e)
    {
        throw Error(Errc::ValueParse, e.what());
    }
}

const json &member(const json &obj, const char *key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw Error(Errc::ValueParse, std::string("missing key '") + key + "'", {0, key, ""});
    return *it;
}

double number(const json &node, const char *key)
{
    if (!node.is_number())
        throw Error(Errc::ValueParse, std::string("'") + key + "' must be a number", {0, key, ""});
    return node.get<double>();
}

std::vector<double> numbers(const json &node, const char *key)
{
    if (!node.is_array())
        throw Error(Errc::ValueParse, std::string("'") + key + "' must be an array", {0, key, ""});
    std::vector<double> out;
    out.reserve(node.size());
    for (const auto &v : node)
        out.push_back(number(v, key));
    return out;
}

std::optional<double> optional_number(const json &obj, const char *key)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return std::nullopt;
    return number(*it, key);
}

std::string text(const json &node, const char *key)
{
    if (!node.is_string())
        throw Error(Errc::ValueParse, std::string("'") + key + "' must be a string", {0, key, ""});
    return node.get<std::string>();
}

std::vector<std::vector<std::size_t>> lobes(const json &obj, const char *key)
{
    std::vector<std::vector<std::size_t>> out;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return out;
    if (!it->is_array())
        throw Error(Errc::ValueParse, std::string("'") + key + "' must be an array of index arrays", {0, key, ""});
    for (const auto &lobe : *it)
    {
        if (!lobe.is_array())
            throw Error(Errc::ValueParse, std::string("'") + key + "' must be an array of index arrays", {0, key, ""});
        std::vector<std::size_t> members;
        for (const auto &i : lobe)
        {
            if (!i.is_number_unsigned())
                throw Error(Errc::ValueParse, std::string("'") + key + "' indices must be non-negative integers",
                            {0, key, ""});
            members.push_back(i.get<std::size_t>());
        }
        out.push_back(std::move(members));
    }
    return out;
}

} // namespace

std::vector<DirectionalMeasurement> parse_profiles(std::string_view bytes)
{
    json doc = parse(bytes);
    const json *list = &doc;
    if (doc.is_object())
        list = &member(doc, "directions");
    if (!list->is_array())
        throw Error(Errc::ValueParse, "profile document must be an array of directions");

    std::vector<DirectionalMeasurement> out;
    for (std::size_t k = 0; k < list->size(); ++k)
    {
        const json &d = (*list)[k];
        if (!d.is_object())
            throw Error(Errc::ValueParse, "direction " + std::to_string(k) + " is not an object");
        auto dbm = numbers(member(d, "powers_dbm"), "powers_dbm");
        std::vector<double> mw;
        mw.reserve(dbm.size());
        for (double x : dbm)
            mw.push_back(dbm_to_mw(x));
        out.push_back(DirectionalMeasurement{
            PowerDelayProfile(numbers(member(d, "delays_ns"), "delays_ns"), std::move(mw),
                              number(member(d, "noise_floor_dbm"), "noise_floor_dbm")),
            number(member(d, "azimuth_deg"), "azimuth_deg"), number(member(d, "zenith_deg"), "zenith_deg"),
            optional_number(d, "tx_azimuth_deg"), optional_number(d, "tx_zenith_deg")});
    }
    return out;
}

std::vector<SceneEntry> parse_geometry(std::string_view bytes)
{
    json doc = parse(bytes);
    if (!doc.is_array())
        throw Error(Errc::ValueParse, "geometry document must be an array of locations");

    std::vector<SceneEntry> out;
    for (std::size_t k = 0; k < doc.size(); ++k)
    {
        const json &g = doc[k];
        if (!g.is_object())
            throw Error(Errc::ValueParse, "location " + std::to_string(k) + " is not an object");
        SceneEntry e;
        e.geometry.tx_id = text(member(g, "tx"), "tx");
        e.geometry.rx_id = text(member(g, "rx"), "rx");
        const auto loc_text = text(member(g, "loc"), "loc");
        const auto loc = parse_loc_condition(loc_text);
        if (!loc)
            throw Error(Errc::ValueParse, "loc must be LOS or NLOS", {k + 1, "loc", loc_text});
        e.geometry.loc = *loc;

        // Accept the separation as a number or as decimal text.
        const json &sep = member(g, "tr_sep_m");
        std::optional<Decimal> d;
        if (sep.is_string())
            d = Decimal::parse(sep.get<std::string>());
        else if (sep.is_number_integer())
            d = Decimal(sep.get<std::int64_t>(), 0);
        else if (sep.is_number())
            d = Decimal::from_double(sep.get<double>());
        if (!d)
            throw Error(Errc::ValueParse, "tr_sep_m is not a decimal", {k + 1, "tr_sep_m", sep.dump()});
        e.geometry.tr_sep_m = *d;

        e.geometry.arrival_lobes = lobes(g, "arrival_lobes");
        e.geometry.departure_lobes = lobes(g, "departure_lobes");
        e.profiles = text(member(g, "profiles"), "profiles");
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace pointdata::derivation

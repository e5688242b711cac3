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

#include "pointdata/io_format.hpp"

#include "csv.hpp"
#include "json_exact.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace pointdata::io
{

namespace
{

using detail::CsvRow;

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string normalize_unit(std::string_view raw)
{
    std::string s(raw);
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '[' || c == ']' || c == ' '; }), s.end());
    if (s == "\xC2\xB0" || lower(s) == "degrees" || lower(s) == "degree")
        return "deg";
    return lower(s);
}

struct TableLayout
{
    std::array<std::size_t, column_count> position{}; // canonical column -> cell index
    std::optional<std::size_t> provenance;            // campaign_id cell index
    std::size_t width = 0;
};

TableLayout resolve_header(const CsvRow &header, const FormatDialect &dialect, bool pooled)
{
    const auto &cat = column_catalogue();
    const std::size_t expected = column_count + (pooled ? 1 : 0);
    TableLayout layout;
    layout.width = header.cells.size();

    auto mismatch = [&](const std::string &msg, const std::string &column, const std::string &token) {
        throw Error(Errc::HeaderMismatch, msg, ErrorLocation{header.line, column, token});
    };

    if (dialect.strict)
    {
        for (std::size_t i = 0; i < std::max(expected, header.cells.size()); ++i)
        {
            std::string want = i < column_count ? std::string(cat[i].name)
                               : i == column_count && pooled ? std::string(provenance_column)
                                                             : std::string();
            std::string got = i < header.cells.size() ? header.cells[i] : std::string();
            if (want != got)
            {
                if (want.empty())
                    mismatch("unexpected extra column '" + got + "' at position " + std::to_string(i + 1), got, got);
                if (got.empty())
                    mismatch("missing column '" + want + "' at position " + std::to_string(i + 1), want, got);
                mismatch("column " + std::to_string(i + 1) + ": expected '" + want + "', got '" + got + "'", want, got);
            }
        }
        for (std::size_t i = 0; i < column_count; ++i)
            layout.position[i] = i;
        if (pooled)
            layout.provenance = column_count;
        return layout;
    }

    // Lenient: canonical names or display labels, any order, case-insensitive.
    std::array<bool, column_count> seen{};
    for (std::size_t i = 0; i < header.cells.size(); ++i)
    {
        const std::string got = lower(header.cells[i]);
        if (pooled && got == provenance_column)
        {
            if (layout.provenance)
                mismatch("duplicate column 'campaign_id'", header.cells[i], header.cells[i]);
            layout.provenance = i;
            continue;
        }
        auto it = std::find_if(cat.begin(), cat.end(),
                               [&](const ColumnInfo &c) { return lower(c.name) == got || lower(c.label) == got; });
        if (it == cat.end())
            mismatch("unknown column '" + header.cells[i] + "'", header.cells[i], header.cells[i]);
        auto idx = static_cast<std::size_t>(it - cat.begin());
        if (seen[idx])
            mismatch("duplicate column '" + header.cells[i] + "'", std::string(it->name), header.cells[i]);
        seen[idx] = true;
        layout.position[idx] = i;
    }
    for (std::size_t i = 0; i < column_count; ++i)
        if (!seen[i])
            mismatch("missing column '" + std::string(cat[i].name) + "'", std::string(cat[i].name), "");
    if (pooled && !layout.provenance)
        mismatch("missing column 'campaign_id'", std::string(provenance_column), "");
    return layout;
}

bool is_units_row(const CsvRow &row, const TableLayout &layout)
{
    const auto pos = layout.position[static_cast<std::size_t>(Column::FreqGhz)];
    return pos < row.cells.size() && !Decimal::parse(row.cells[pos]);
}

void check_units(const CsvRow &row, const TableLayout &layout)
{
    const auto &cat = column_catalogue();
    if (row.cells.size() != layout.width)
        throw Error(Errc::UnitsMismatch,
                    "units row has " + std::to_string(row.cells.size()) + " cells, expected " +
                        std::to_string(layout.width),
                    ErrorLocation{row.line, {}, {}});
    for (std::size_t i = 0; i < column_count; ++i)
    {
        const std::string &token = row.cells[layout.position[i]];
        if (normalize_unit(token) != normalize_unit(cat[i].unit))
            throw Error(Errc::UnitsMismatch,
                        "column '" + std::string(cat[i].name) + "': expected unit '" + std::string(cat[i].unit) +
                            "', got '" + token + "'",
                        ErrorLocation{row.line, std::string(cat[i].name), token});
    }
    if (layout.provenance && !row.cells[*layout.provenance].empty())
        throw Error(Errc::UnitsMismatch, "campaign_id column carries no unit",
                    ErrorLocation{row.line, std::string(provenance_column), row.cells[*layout.provenance]});
}

// Builds a record from one cell per canonical column.
PointRecord build_point(const std::array<std::string, column_count> &cells, std::size_t line,
                        const FormatDialect &dialect)
{
    const auto &cat = column_catalogue();
    auto value_error = [&](std::size_t col, const std::string &msg) -> Error {
        return Error(Errc::ValueParse, "row " + std::to_string(line) + ", column '" + std::string(cat[col].name) +
                                           "': " + msg,
                     ErrorLocation{line, std::string(cat[col].name), cells[col]});
    };

    std::array<Decimal, column_count> numbers{};
    for (std::size_t i = 0; i < column_count; ++i)
    {
        if (cells[i].empty() || cells[i] == dialect.missing_token)
            throw value_error(i, "missing value (point rows must be complete)");
        if (!cat[i].numeric)
            continue;
        auto d = Decimal::parse(cells[i]);
        if (!d)
            throw value_error(i, "not a decimal number: '" + cells[i] + "'");
        numbers[i] = *d;
    }
    auto loc = parse_loc_condition(cells[static_cast<std::size_t>(Column::Loc)], dialect.strict);
    if (!loc)
        throw value_error(static_cast<std::size_t>(Column::Loc), "expected LOS or NLOS, got '" +
                                                                     cells[static_cast<std::size_t>(Column::Loc)] + "'");

    auto n = [&](Column c) { return numbers[static_cast<std::size_t>(c)]; };
    PointFields f;
    f.freq_ghz = n(Column::FreqGhz);
    f.tx_id = cells[static_cast<std::size_t>(Column::Tx)];
    f.rx_id = cells[static_cast<std::size_t>(Column::Rx)];
    f.loc = *loc;
    f.tr_sep_m = n(Column::TrSepM);
    f.pl_db = n(Column::PlDb);
    f.mean_dir_ds_ns = n(Column::MeanDirDsNs);
    f.omni_ds_ns = n(Column::OmniDsNs);
    f.mean_lobe_asa_deg = n(Column::MeanLobeAsaDeg);
    f.omni_asa_deg = n(Column::OmniAsaDeg);
    f.mean_lobe_asd_deg = n(Column::MeanLobeAsdDeg);
    f.omni_asd_deg = n(Column::OmniAsdDeg);
    f.mean_lobe_zsa_deg = n(Column::MeanLobeZsaDeg);
    f.omni_zsa_deg = n(Column::OmniZsaDeg);
    f.mean_lobe_zsd_deg = n(Column::MeanLobeZsdDeg);
    f.omni_zsd_deg = n(Column::OmniZsdDeg);
    try
    {
        return PointRecord(std::move(f));
    }
    catch (const Error &e)
    {
        auto col = e.where().column;
        std::string token;
        if (auto c = column_by_name(col))
            token = cells[static_cast<std::size_t>(*c)];
        throw Error(e.code(), "row " + std::to_string(line) + ": " + e.what(), ErrorLocation{line, col, token});
    }
}

std::vector<std::pair<PointRecord, std::string>> parse_csv_table(std::string_view bytes, const FormatDialect &dialect,
                                                                 bool pooled)
{
    auto rows = detail::read_csv(bytes);
    if (rows.empty())
        throw Error(Errc::HeaderMismatch, "document has no header row", ErrorLocation{1, {}, {}});
    const TableLayout layout = resolve_header(rows.front(), dialect, pooled);

    std::size_t first = 1;
    if (rows.size() > 1 && is_units_row(rows[1], layout))
    {
        check_units(rows[1], layout);
        first = 2;
    }

    std::vector<std::pair<PointRecord, std::string>> out;
    out.reserve(rows.size() - first);
    for (std::size_t r = first; r < rows.size(); ++r)
    {
        const auto &row = rows[r];
        if (row.cells.size() != layout.width)
            throw Error(Errc::ValueParse,
                        "row " + std::to_string(row.line) + " has " + std::to_string(row.cells.size()) +
                            " fields, expected " + std::to_string(layout.width),
                        ErrorLocation{row.line, {}, std::to_string(row.cells.size())});
        std::array<std::string, column_count> cells;
        for (std::size_t i = 0; i < column_count; ++i)
            cells[i] = row.cells[layout.position[i]];
        std::string campaign;
        if (layout.provenance)
        {
            campaign = row.cells[*layout.provenance];
            if (campaign.empty())
                throw Error(Errc::ValueParse, "row " + std::to_string(row.line) + ": empty campaign_id",
                            ErrorLocation{row.line, std::string(provenance_column), campaign});
        }
        out.emplace_back(build_point(cells, row.line, dialect), std::move(campaign));
    }
    return out;
}

std::vector<std::pair<PointRecord, std::string>> parse_json_table(std::string_view bytes, const FormatDialect &dialect,
                                                                  bool pooled)
{
    const auto doc = detail::parse_json_exact(bytes);
    const nlohmann::json *points = nullptr;
    if (doc.is_array())
        points = &doc;
    else if (doc.is_object() && doc.contains("points") && doc["points"].is_array())
        points = &doc["points"];
    else
        throw Error(Errc::HeaderMismatch, "expected an array of points or an object with a 'points' array");

    const auto &cat = column_catalogue();
    std::vector<std::pair<PointRecord, std::string>> out;
    std::size_t index = 0;
    for (const auto &obj : *points)
    {
        ++index;
        if (!obj.is_object())
            throw Error(Errc::ValueParse, "point " + std::to_string(index) + " is not an object",
                        ErrorLocation{index, {}, {}});
        std::array<std::string, column_count> cells;
        for (std::size_t i = 0; i < column_count; ++i)
        {
            const std::string key(cat[i].name);
            if (!obj.contains(key))
                throw Error(Errc::HeaderMismatch, "point " + std::to_string(index) + " lacks '" + key + "'",
                            ErrorLocation{index, key, {}});
            const auto &v = obj[key];
            if (v.is_string())
                cells[i] = v.get<std::string>();
            else if (v.is_number_integer())
                cells[i] = v.dump();
            else
                throw Error(Errc::ValueParse, "point " + std::to_string(index) + ", '" + key + "' has invalid type",
                            ErrorLocation{index, key, v.dump()});
        }
        std::string campaign;
        for (const auto &[key, value] : obj.items())
        {
            if (pooled && key == provenance_column)
            {
                if (!value.is_string() || value.get<std::string>().empty())
                    throw Error(Errc::ValueParse, "point " + std::to_string(index) + ": invalid campaign_id",
                                ErrorLocation{index, key, value.dump()});
                campaign = value.get<std::string>();
            }
            else if (dialect.strict && !column_by_name(key))
                throw Error(Errc::HeaderMismatch, "point " + std::to_string(index) + ": unknown key '" + key + "'",
                            ErrorLocation{index, key, key});
        }
        if (pooled && campaign.empty())
            throw Error(Errc::HeaderMismatch, "point " + std::to_string(index) + " lacks 'campaign_id'",
                        ErrorLocation{index, std::string(provenance_column), {}});
        out.emplace_back(build_point(cells, index, dialect), std::move(campaign));
    }
    return out;
}

std::vector<std::pair<PointRecord, std::string>> parse_table(std::string_view bytes, const FormatDialect &dialect,
                                                             bool pooled)
{
    dialect.check();
    if (dialect.kind == FormatKind::CanonicalJSON)
        return parse_json_table(bytes, dialect, pooled);
    return parse_csv_table(bytes, dialect, pooled);
}

std::vector<std::string> point_cells(const PointRecord &p)
{
    const auto &f = p.fields();
    return {f.freq_ghz.to_string(),          f.tx_id,
            f.rx_id,                         std::string(to_string(f.loc)),
            f.tr_sep_m.to_string(),          f.pl_db.to_string(),
            f.mean_dir_ds_ns.to_string(),    f.omni_ds_ns.to_string(),
            f.mean_lobe_asa_deg.to_string(), f.omni_asa_deg.to_string(),
            f.mean_lobe_asd_deg.to_string(), f.omni_asd_deg.to_string(),
            f.mean_lobe_zsa_deg.to_string(), f.omni_zsa_deg.to_string(),
            f.mean_lobe_zsd_deg.to_string(), f.omni_zsd_deg.to_string()};
}

std::string json_point(const PointRecord &p, const std::string *campaign)
{
    const auto &cat = column_catalogue();
    const auto cells = point_cells(p);
    std::string out = "{";
    for (std::size_t i = 0; i < column_count; ++i)
    {
        out += (i ? ", " : "") + nlohmann::json(std::string(cat[i].name)).dump() + ": ";
        out += cat[i].numeric ? cells[i] : nlohmann::json(cells[i]).dump();
    }
    if (campaign)
        out += ", " + nlohmann::json(std::string(provenance_column)).dump() + ": " + nlohmann::json(*campaign).dump();
    return out + "}";
}

std::string write_table(const std::vector<const PointRecord *> &points, const std::vector<const std::string *> &ids,
                        const FormatDialect &dialect)
{
    dialect.check();
    const bool pooled = !ids.empty();
    if (dialect.kind == FormatKind::CanonicalJSON)
    {
        std::string out = "{\n  \"format\": \"pointdata\",\n  \"version\": " + nlohmann::json(dialect.version).dump() +
                          ",\n  \"points\": [";
        for (std::size_t i = 0; i < points.size(); ++i)
            out += std::string(i ? "," : "") + "\n    " + json_point(*points[i], pooled ? ids[i] : nullptr);
        out += points.empty() ? "]\n}\n" : "\n  ]\n}\n";
        return out;
    }

    std::string out(canonical_header());
    if (pooled)
        out += "," + std::string(provenance_column);
    out += "\n";
    out += canonical_units_row();
    if (pooled)
        out += ",";
    out += "\n";
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        auto cells = point_cells(*points[i]);
        if (pooled)
            cells.push_back(*ids[i]);
        out += detail::csv_line(cells);
    }
    return out;
}

} // namespace

void FormatDialect::check() const
{
    if (missing_token.empty())
        throw Error(Errc::InvalidDialect, "missing_token must not be empty");
    if (missing_token.find_first_of(",\"\r\n") != std::string::npos)
        throw Error(Errc::InvalidDialect, "missing_token must not contain delimiter characters");
    if (version != "1.0")
        throw Error(Errc::InvalidDialect, "unsupported format version '" + version + "'");
}

std::string_view canonical_header()
{
    static const std::string header = [] {
        std::string h;
        for (const auto &c : column_catalogue())
            h += (h.empty() ? "" : ",") + std::string(c.name);
        return h;
    }();
    return header;
}

std::string_view canonical_units_row()
{
    static const std::string units = [] {
        std::string u;
        bool first = true;
        for (const auto &c : column_catalogue())
        {
            u += (first ? "" : ",") + std::string(c.unit);
            first = false;
        }
        return u;
    }();
    return units;
}

std::vector<PointRecord> parse_point_table(std::string_view bytes, const FormatDialect &dialect)
{
    auto rows = parse_table(bytes, dialect, false);
    std::vector<PointRecord> out;
    out.reserve(rows.size());
    for (auto &r : rows)
        out.push_back(std::move(r.first));
    return out;
}

std::string write_point_table(const std::vector<PointRecord> &points, const FormatDialect &dialect)
{
    std::vector<const PointRecord *> ptrs;
    for (const auto &p : points)
        ptrs.push_back(&p);
    return write_table(ptrs, {}, dialect);
}

std::string write_pooled_table(const PooledDataset &pool, const FormatDialect &dialect)
{
    std::vector<const PointRecord *> ptrs;
    std::vector<const std::string *> ids;
    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        ptrs.push_back(&pool.point(i));
        ids.push_back(&pool.provenance[i].campaign_id);
    }
    if (ptrs.empty())
    {
        // Header-only pooled file still carries the provenance column.
        static const std::string none;
        std::string out = write_table({}, {&none}, dialect);
        return out;
    }
    return write_table(ptrs, ids, dialect);
}

std::vector<PooledRow> parse_pooled_table(std::string_view bytes, const FormatDialect &dialect)
{
    auto rows = parse_table(bytes, dialect, true);
    std::vector<PooledRow> out;
    out.reserve(rows.size());
    for (auto &r : rows)
        out.push_back(PooledRow{std::move(r.first), std::move(r.second)});
    return out;
}

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path &path, std::string_view bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

FormatDialect dialect_for(const std::filesystem::path &path, FormatDialect base)
{
    base.kind = lower(path.extension().string()) == ".json" ? FormatKind::CanonicalJSON : FormatKind::CanonicalCSV;
    return base;
}

} // namespace pointdata::io

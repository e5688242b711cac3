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

#ifndef POINTDATA_IO_FORMAT_HPP
#define POINTDATA_IO_FORMAT_HPP

#include "pointdata/types.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pointdata::io
{

enum class FormatKind
{
    CanonicalCSV,
    CanonicalJSON
};

struct FormatDialect
{
    FormatKind kind = FormatKind::CanonicalCSV;
    std::string version = "1.0";
    std::string missing_token = "--";
    bool strict = true; // strict: exact canonical header, no unknown keys

    // Throws Error{InvalidDialect} for an empty token or one containing delimiter characters.
    void check() const;
};

inline const FormatDialect csv_dialect{};
inline const FormatDialect json_dialect{FormatKind::CanonicalJSON};

// Exact canonical header of a point-data CSV file.
std::string_view canonical_header();
// Units row written after the header.
std::string_view canonical_units_row();

inline constexpr std::string_view provenance_column = "campaign_id";

// ---------- point-data tables ----------

std::vector<PointRecord> parse_point_table(std::string_view bytes, const FormatDialect &dialect = csv_dialect);
std::string write_point_table(const std::vector<PointRecord> &points, const FormatDialect &dialect = csv_dialect);

// Pooled tables carry a trailing campaign_id column.
struct PooledRow
{
    PointRecord point;
    std::string campaign_id;
};

std::string write_pooled_table(const PooledDataset &pool, const FormatDialect &dialect = csv_dialect);
std::vector<PooledRow> parse_pooled_table(std::string_view bytes, const FormatDialect &dialect = csv_dialect);

// ---------- metadata documents ----------

// Lenient-mode notes (unknown keys, defaulted values) are appended to `notes` when given.
MetadataRecord parse_metadata(std::string_view bytes, const FormatDialect &dialect = csv_dialect,
                              std::vector<CompatFinding> *notes = nullptr);

enum class MetadataLayout
{
    Full,   // every catalogue key, absent ones as the missing token
    Compact // present keys only
};

std::string write_metadata(const MetadataRecord &meta, const FormatDialect &dialect = csv_dialect,
                           MetadataLayout layout = MetadataLayout::Full);

// Canonical metadata keys in document order.
const std::vector<std::string_view> &metadata_keys();

// ---------- files ----------

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view bytes);

// Dialect implied by an extension (.pointdata.csv / .pointdata.json / .meta.csv / .meta.json).
FormatDialect dialect_for(const std::filesystem::path &path, FormatDialect base = csv_dialect);

// Loads a campaign from its metadata and point-data files. Identity falls back to the
// file stem (institution = campaign_id = stem) when the metadata does not name it.
Campaign load_campaign(const std::filesystem::path &meta_path, const std::filesystem::path &points_path,
                       const FormatDialect &dialect = csv_dialect, std::vector<CompatFinding> *notes = nullptr);

} // namespace pointdata::io

#endif

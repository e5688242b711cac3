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

#include "csv.hpp"

#include "pointdata/error.hpp"

namespace pointdata::detail
{

namespace
{

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<CsvRow> read_csv(std::string_view bytes)
{
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF")
        bytes.remove_prefix(3);

    std::vector<CsvRow> rows;
    CsvRow row;
    std::string cell;
    bool quoted = false, in_quotes = false, row_has_content = false;
    std::size_t line = 1;
    row.line = 1;

    auto end_cell = [&] {
        row.cells.push_back(quoted ? cell : trim(cell));
        if (quoted || !row.cells.back().empty())
            row_has_content = true;
        cell.clear();
        quoted = false;
    };
    auto end_row = [&] {
        end_cell();
        if (row_has_content)
            rows.push_back(std::move(row));
        row = CsvRow{};
        row_has_content = false;
    };

    for (std::size_t i = 0; i < bytes.size(); ++i)
    {
        char c = bytes[i];
        if (in_quotes)
        {
            if (c == '"')
            {
                if (i + 1 < bytes.size() && bytes[i + 1] == '"')
                {
                    cell += '"';
                    ++i;
                }
                else
                    in_quotes = false;
            }
            else
            {
                if (c == '\n')
                    ++line;
                cell += c;
            }
            continue;
        }
        switch (c)
        {
        case '"':
            if (trim(cell).empty())
            {
                cell.clear();
                quoted = in_quotes = true;
            }
            else
                cell += c;
            break;
        case ',':
            end_cell();
            break;
        case '\r':
            break;
        case '\n':
            end_row();
            ++line;
            row.line = line;
            break;
        default:
            if (quoted)
            {
                // Only whitespace may follow a closing quote.
                if (c != ' ' && c != '\t')
                    throw Error(Errc::ValueParse, "unexpected character after closing quote",
                                ErrorLocation{line, {}, std::string(1, c)});
            }
            else
                cell += c;
        }
    }
    if (in_quotes)
        throw Error(Errc::ValueParse, "unterminated quoted field", ErrorLocation{row.line, {}, {}});
    if (!cell.empty() || quoted || !row.cells.empty())
        end_row();
    return rows;
}

std::string csv_cell(std::string_view value)
{
    bool needs = value.find_first_of(",\"\r\n") != std::string_view::npos ||
                 (!value.empty() && (value.front() == ' ' || value.back() == ' ' || value.front() == '\t' ||
                                     value.back() == '\t'));
    if (!needs)
        return std::string(value);
    std::string out = "\"";
    for (char c : value)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_line(const std::vector<std::string> &cells)
{
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (i)
            out += ',';
        out += csv_cell(cells[i]);
    }
    return out + "\n";
}

} // namespace pointdata::detail

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

#ifndef POINTDATA_CSV_HPP
#define POINTDATA_CSV_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pointdata::detail
{

struct CsvRow
{
    std::size_t line = 0; // 1-based line where the record starts
    std::vector<std::string> cells;
};

// RFC 4180 records. Unquoted cells are trimmed; blank lines are skipped; a UTF-8 BOM is dropped.
// Throws Error{ValueParse} on an unterminated quote.
std::vector<CsvRow> read_csv(std::string_view bytes);

// Quotes a cell when it holds a delimiter, quote, line break or edge whitespace.
std::string csv_cell(std::string_view value);

std::string csv_line(const std::vector<std::string> &cells);

} // namespace pointdata::detail

#endif

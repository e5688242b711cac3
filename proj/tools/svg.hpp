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

#ifndef POINTDATA_TOOLS_SVG_HPP
#define POINTDATA_TOOLS_SVG_HPP

#include "pointdata/analysis.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pointdata::cli
{

// CI line PL(d) = fspl_ref_db + 10 n log10(d).
struct FitLine
{
    std::string label;
    double ple;
    double fspl_ref_db;
};

// Path loss against log-distance; one marker shape per campaign, LOS filled, NLOS hollow.
std::string scatter_svg(const std::vector<analysis::ScatterRow> &rows, const std::vector<FitLine> &lines);

struct CdfSeries
{
    std::string label;
    analysis::EmpiricalCDF cdf;
};

std::string cdf_svg(const std::vector<CdfSeries> &series, std::string_view x_label);

} // namespace pointdata::cli

#endif

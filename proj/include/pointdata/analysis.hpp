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

#ifndef POINTDATA_ANALYSIS_HPP
#define POINTDATA_ANALYSIS_HPP

#include "pointdata/types.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pointdata::analysis
{

inline constexpr double speed_of_light = 299792458.0; // m/s

// Free-space path loss at 1 m in dB. Throws Error{NonPositiveFrequency}.
double fspl_1m(double freq_ghz);

struct PathLossSample
{
    double tr_sep_m;
    double pl_db;
    double freq_ghz;
};

enum class FsplMode
{
    PerPoint, // FSPL at each sample's own frequency
    Common    // FSPL at the mean frequency of the sample set
};

// Sufficient statistics of the CI estimator; sums of two sets add.
struct CIMoments
{
    double sum_ab = 0.0; // sum (PL - FSPL) * 10 log10 d
    double sum_bb = 0.0; // sum (10 log10 d)^2
    std::size_t n = 0;

    CIMoments &operator+=(const CIMoments &o) noexcept;
    double ple() const; // Throws Error{EmptyInput}
};

struct CIFit
{
    double ple = 0.0;
    double sigma_db = 0.0; // population RMS of residuals
    double fspl_ref_db = 0.0;
    std::size_t n_points = 0;
    double freq_ghz_ref = 0.0;
};

// Throw Error{EmptyInput} or Error{DistanceBelowReference}.
CIMoments ci_moments(const std::vector<PathLossSample> &samples, FsplMode mode = FsplMode::PerPoint);
CIFit fit_ci(const std::vector<PathLossSample> &samples, FsplMode mode = FsplMode::PerPoint);
// Single-frequency form: (tr_sep_m, pl_db) pairs at freq_ghz.
CIFit fit_ci(const std::vector<std::pair<double, double>> &points, double freq_ghz);

// PL = 10 alpha log10(d / 1 m) + beta + 10 gamma log10(f / 1 GHz)
struct ABGFit
{
    double alpha = 0.0;
    double beta_db = 0.0;
    double gamma = 0.0;
    double sigma_db = 0.0;
    std::size_t n_points = 0;
};

// Throws Error{EmptyInput} (fewer than 3 samples) or Error{RankDeficient}.
ABGFit fit_abg(const std::vector<PathLossSample> &samples);

struct LognormalStats
{
    double mu_ln = 0.0;
    double sigma_ln = 0.0; // population
    double mean_linear = 0.0;
    std::size_t n_points = 0;
};

// Throws Error{EmptyInput} or Error{NonPositiveSample}.
LognormalStats lognormal_stats(const std::vector<double> &samples);

struct EmpiricalCDF
{
    std::vector<double> sorted_values;
    std::vector<double> probabilities; // i / N
};

// Throws Error{EmptyInput}.
EmpiricalCDF empirical_cdf(std::vector<double> samples);

// ---------- pooled selections ----------

enum class Split
{
    LOS,
    NLOS,
    Both
};

std::string_view to_string(Split s) noexcept;
std::optional<Split> parse_split(std::string_view text) noexcept; // los / nlos / both, any case

struct ScatterRow
{
    double tr_sep_m;
    double pl_db;
    double freq_ghz;
    std::string campaign_id;
    LocCondition loc;
};

// Throws Error{EmptyInput} for an empty pool.
std::vector<ScatterRow> scatter_data(const PooledDataset &pool, Split split);

std::vector<PathLossSample> path_loss_samples(const PooledDataset &pool, Split split);
std::vector<double> column_values(const PooledDataset &pool, Column column, Split split);

// ---------- serialization ----------

nlohmann::ordered_json to_json(const CIFit &fit, Split split);
nlohmann::ordered_json to_json(const ABGFit &fit, Split split);
nlohmann::ordered_json to_json(const LognormalStats &stats);

} // namespace pointdata::analysis

#endif

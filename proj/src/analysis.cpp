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

#include "pointdata/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>

namespace pointdata::analysis
{

double fspl_1m(double freq_ghz)
{
    if (!(freq_ghz > 0.0))
        throw Error(Errc::NonPositiveFrequency, "frequency must be positive");
    return 20.0 * std::log10(4.0 * std::numbers::pi * freq_ghz * 1e9 / speed_of_light);
}

// ---------- CI ----------

CIMoments &CIMoments::operator+=(const CIMoments &o) noexcept
{
    sum_ab += o.sum_ab;
    sum_bb += o.sum_bb;
    n += o.n;
    return *this;
}

double CIMoments::ple() const
{
    if (n == 0 || !(sum_bb > 0.0))
        throw Error(Errc::EmptyInput, "no samples for the CI fit");
    return sum_ab / sum_bb;
}

namespace
{

double mean_frequency(const std::vector<PathLossSample> &s)
{
    double f = 0.0;
    for (const auto &x : s)
        f += x.freq_ghz;
    return f / static_cast<double>(s.size());
}

void check_ci_input(const std::vector<PathLossSample> &samples)
{
    if (samples.empty())
        throw Error(Errc::EmptyInput, "no samples for the CI fit");
    for (const auto &s : samples)
        if (!(s.tr_sep_m > 1.0))
            throw Error(Errc::DistanceBelowReference,
                        "separation " + std::to_string(s.tr_sep_m) + " m is not beyond the 1 m reference");
}

double reference_fspl(const PathLossSample &s, FsplMode mode, double common)
{
    return mode == FsplMode::PerPoint ? fspl_1m(s.freq_ghz) : common;
}

} // namespace

CIMoments ci_moments(const std::vector<PathLossSample> &samples, FsplMode mode)
{
    check_ci_input(samples);
    const double common = fspl_1m(mean_frequency(samples));
    CIMoments m;
    for (const auto &s : samples)
    {
        const double a = s.pl_db - reference_fspl(s, mode, common);
        const double b = 10.0 * std::log10(s.tr_sep_m);
        m.sum_ab += a * b;
        m.sum_bb += b * b;
        ++m.n;
    }
    return m;
}

CIFit fit_ci(const std::vector<PathLossSample> &samples, FsplMode mode)
{
    const CIMoments m = ci_moments(samples, mode);
    CIFit fit;
    fit.ple = m.ple();
    fit.n_points = m.n;
    fit.freq_ghz_ref = mean_frequency(samples);
    fit.fspl_ref_db = fspl_1m(fit.freq_ghz_ref);

    double ss = 0.0;
    for (const auto &s : samples)
    {
        const double r = s.pl_db - reference_fspl(s, mode, fit.fspl_ref_db) - fit.ple * 10.0 * std::log10(s.tr_sep_m);
        ss += r * r;
    }
    fit.sigma_db = std::sqrt(ss / static_cast<double>(m.n));
    return fit;
}

CIFit fit_ci(const std::vector<std::pair<double, double>> &points, double freq_ghz)
{
    std::vector<PathLossSample> s;
    s.reserve(points.size());
    for (const auto &[d, pl] : points)
        s.push_back({d, pl, freq_ghz});
    return fit_ci(s, FsplMode::PerPoint);
}

// ---------- ABG ----------

ABGFit fit_abg(const std::vector<PathLossSample> &samples)
{
    if (samples.size() < 3)
        throw Error(Errc::EmptyInput, "the ABG fit needs at least 3 samples");
    std::set<double> distances, freqs;
    for (const auto &s : samples)
    {
        if (!(s.tr_sep_m > 0.0) || !(s.freq_ghz > 0.0))
            throw Error(Errc::EmptyInput, "ABG samples need positive distance and frequency");
        distances.insert(s.tr_sep_m);
        freqs.insert(s.freq_ghz);
    }
    if (distances.size() < 2 || freqs.size() < 2)
        throw Error(Errc::RankDeficient, "the ABG fit needs at least two distances and two frequencies");

    // Centering removes beta from the normal equations and leaves a 2x2 system.
    const double n = static_cast<double>(samples.size());
    double mx = 0.0, mz = 0.0, my = 0.0;
    for (const auto &s : samples)
    {
        mx += 10.0 * std::log10(s.tr_sep_m);
        mz += 10.0 * std::log10(s.freq_ghz);
        my += s.pl_db;
    }
    mx /= n;
    mz /= n;
    my /= n;

    double sxx = 0.0, szz = 0.0, sxz = 0.0, sxy = 0.0, szy = 0.0;
    for (const auto &s : samples)
    {
        const double x = 10.0 * std::log10(s.tr_sep_m) - mx;
        const double z = 10.0 * std::log10(s.freq_ghz) - mz;
        const double y = s.pl_db - my;
        sxx += x * x;
        szz += z * z;
        sxz += x * z;
        sxy += x * y;
        szy += z * y;
    }
    const double det = sxx * szz - sxz * sxz;
    if (!(det > 1e-12 * sxx * szz))
        throw Error(Errc::RankDeficient, "distance and frequency are collinear in the sample set");

    ABGFit fit;
    fit.alpha = (sxy * szz - szy * sxz) / det;
    fit.gamma = (szy * sxx - sxy * sxz) / det;
    fit.beta_db = my - fit.alpha * mx - fit.gamma * mz;
    fit.n_points = samples.size();

    double ss = 0.0;
    for (const auto &s : samples)
    {
        const double r = s.pl_db - (fit.alpha * 10.0 * std::log10(s.tr_sep_m) + fit.beta_db +
                                    fit.gamma * 10.0 * std::log10(s.freq_ghz));
        ss += r * r;
    }
    fit.sigma_db = std::sqrt(ss / n);
    return fit;
}

// ---------- distributions ----------

LognormalStats lognormal_stats(const std::vector<double> &samples)
{
    if (samples.empty())
        throw Error(Errc::EmptyInput, "no samples for lognormal statistics");
    for (double x : samples)
        if (!(x > 0.0))
            throw Error(Errc::NonPositiveSample, "sample " + std::to_string(x) + " is not positive");

    const double n = static_cast<double>(samples.size());
    double mu = 0.0;
    for (double x : samples)
        mu += std::log(x);
    mu /= n;
    double var = 0.0;
    for (double x : samples)
        var += (std::log(x) - mu) * (std::log(x) - mu);
    var /= n;

    LognormalStats st;
    st.mu_ln = mu;
    st.sigma_ln = std::sqrt(var);
    st.mean_linear = std::exp(mu + var / 2.0);
    st.n_points = samples.size();
    return st;
}

EmpiricalCDF empirical_cdf(std::vector<double> samples)
{
    if (samples.empty())
        throw Error(Errc::EmptyInput, "no samples for the CDF");
    std::sort(samples.begin(), samples.end());
    EmpiricalCDF cdf;
    const std::size_t n = samples.size();
    cdf.probabilities.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        cdf.probabilities.push_back(static_cast<double>(i) / static_cast<double>(n));
    cdf.sorted_values = std::move(samples);
    return cdf;
}

// ---------- selections ----------

std::string_view to_string(Split s) noexcept
{
    switch (s)
    {
    case Split::LOS:
        return "LOS";
    case Split::NLOS:
        return "NLOS";
    case Split::Both:
        return "Both";
    }
    return "";
}

std::optional<Split> parse_split(std::string_view text) noexcept
{
    std::string t;
    for (char c : text)
        t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "los")
        return Split::LOS;
    if (t == "nlos")
        return Split::NLOS;
    if (t == "both")
        return Split::Both;
    return std::nullopt;
}

namespace
{

bool selected(LocCondition loc, Split split)
{
    return split == Split::Both || (split == Split::LOS) == (loc == LocCondition::LOS);
}

} // namespace

std::vector<ScatterRow> scatter_data(const PooledDataset &pool, Split split)
{
    if (pool.size() == 0)
        throw Error(Errc::EmptyInput, "pool is empty");
    std::vector<ScatterRow> out;
    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        const auto &p = pool.point(i);
        if (selected(p.loc(), split))
            out.push_back({p.tr_sep_m(), p.pl_db(), p.freq_ghz(), pool.provenance[i].campaign_id, p.loc()});
    }
    return out;
}

std::vector<PathLossSample> path_loss_samples(const PooledDataset &pool, Split split)
{
    std::vector<PathLossSample> out;
    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        const auto &p = pool.point(i);
        if (selected(p.loc(), split))
            out.push_back({p.tr_sep_m(), p.pl_db(), p.freq_ghz()});
    }
    return out;
}

std::vector<double> column_values(const PooledDataset &pool, Column column, Split split)
{
    std::vector<double> out;
    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        const auto &p = pool.point(i);
        if (selected(p.loc(), split))
            out.push_back(numeric_value(p, column).to_double());
    }
    return out;
}

// ---------- serialization ----------

nlohmann::ordered_json to_json(const CIFit &fit, Split split)
{
    nlohmann::ordered_json j;
    j["model"] = "CI";
    j["ple"] = fit.ple;
    j["sigma_db"] = fit.sigma_db;
    j["fspl_ref_db"] = fit.fspl_ref_db;
    j["n_points"] = fit.n_points;
    j["freq_ghz_ref"] = fit.freq_ghz_ref;
    j["split"] = std::string(to_string(split));
    return j;
}

nlohmann::ordered_json to_json(const ABGFit &fit, Split split)
{
    nlohmann::ordered_json j;
    j["model"] = "ABG";
    j["alpha"] = fit.alpha;
    j["beta_db"] = fit.beta_db;
    j["gamma"] = fit.gamma;
    j["sigma_db"] = fit.sigma_db;
    j["n_points"] = fit.n_points;
    j["split"] = std::string(to_string(split));
    return j;
}

nlohmann::ordered_json to_json(const LognormalStats &st)
{
    nlohmann::ordered_json j;
    j["mu_ln"] = st.mu_ln;
    j["sigma_ln"] = st.sigma_ln;
    j["mean_linear"] = st.mean_linear;
    j["n_points"] = st.n_points;
    return j;
}

} // namespace pointdata::analysis

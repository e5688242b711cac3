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

#ifndef POINTDATA_TESTS_SUPPORT_HPP
#define POINTDATA_TESTS_SUPPORT_HPP

#include "pointdata/derivation.hpp"
#include "pointdata/io_format.hpp"
#include "pointdata/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testing
{

using namespace pointdata;

inline std::filesystem::path fixture(const std::string &name)
{
    return std::filesystem::path(FIXTURE_DIR) / name;
}

inline Campaign load_fixture(const std::string &stem)
{
    return io::load_campaign(fixture(stem + ".meta.csv"), fixture(stem + ".pointdata.csv"));
}

inline Decimal dec(const char *text)
{
    return *Decimal::parse(text);
}

inline bool close_rel(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// ---------- generators ----------

using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng &rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Decimal in [lo, hi] with `scale` fractional digits.
inline Decimal random_decimal(Rng &rng, std::int64_t lo, std::int64_t hi, int scale)
{
    std::int64_t f = 1;
    for (int i = 0; i < scale; ++i)
        f *= 10;
    return Decimal(std::uniform_int_distribution<std::int64_t>(lo * f, hi * f)(rng), scale);
}

inline std::string random_id(Rng &rng, const char *prefix)
{
    return prefix + std::to_string(uniform_int(rng, 1, 999));
}

inline PointFields random_point_fields(Rng &rng)
{
    PointFields f;
    f.freq_ghz = random_decimal(rng, 1, 300, uniform_int(rng, 0, 2));
    f.tx_id = random_id(rng, "TX");
    f.rx_id = random_id(rng, "RX");
    f.loc = uniform_int(rng, 0, 1) ? LocCondition::LOS : LocCondition::NLOS;
    f.tr_sep_m = random_decimal(rng, 2, 500, uniform_int(rng, 0, 3));
    f.pl_db = random_decimal(rng, 40, 180, uniform_int(rng, 0, 2));
    f.mean_dir_ds_ns = random_decimal(rng, 0, 300, 1);
    f.omni_ds_ns = random_decimal(rng, 0, 300, 1);
    for (Decimal *d : {&f.mean_lobe_asa_deg, &f.omni_asa_deg, &f.mean_lobe_asd_deg, &f.omni_asd_deg})
        *d = random_decimal(rng, 0, 179, 1);
    for (Decimal *d : {&f.mean_lobe_zsa_deg, &f.omni_zsa_deg, &f.mean_lobe_zsd_deg, &f.omni_zsd_deg})
        *d = random_decimal(rng, 0, 89, 1);
    return f;
}

// PDP with 1..12 taps on a strictly increasing grid, some bins empty.
inline derivation::PowerDelayProfile random_pdp(Rng &rng)
{
    const int n = uniform_int(rng, 1, 12);
    std::vector<double> tau, p;
    double t = uniform(rng, 0.0, 100.0);
    for (int i = 0; i < n; ++i)
    {
        tau.push_back(t);
        t += uniform(rng, 0.5, 80.0);
        p.push_back(uniform_int(rng, 0, 5) == 0 ? 0.0 : derivation::dbm_to_mw(uniform(rng, -110.0, -50.0)));
    }
    if (std::all_of(p.begin(), p.end(), [](double x) { return x == 0.0; }))
        p[0] = derivation::dbm_to_mw(-60.0);
    return derivation::PowerDelayProfile(std::move(tau), std::move(p), uniform(rng, -120.0, -95.0));
}

// Azimuth spectrum with 1..24 distinct directions over the full circle.
inline derivation::PowerAngularSpectrum random_pas(Rng &rng)
{
    const int n = uniform_int(rng, 1, 24);
    std::vector<double> a, p;
    for (int i = 0; i < n; ++i)
    {
        a.push_back(uniform(rng, 0.0, 359.999));
        p.push_back(derivation::dbm_to_mw(uniform(rng, -100.0, -50.0)));
    }
    return derivation::PowerAngularSpectrum(std::move(a), std::move(p));
}

// Spectrum concentrated within a few degrees of a random centre.
inline derivation::PowerAngularSpectrum concentrated_pas(Rng &rng)
{
    const int n = uniform_int(rng, 2, 12);
    const double centre = uniform(rng, 0.0, 360.0);
    const double width = uniform(rng, 0.5, 12.0);
    std::vector<double> a, p;
    for (int i = 0; i < n; ++i)
    {
        double v = std::fmod(centre + uniform(rng, -width, width) + 360.0, 360.0);
        a.push_back(v);
        p.push_back(uniform(rng, 0.05, 1.0));
    }
    return derivation::PowerAngularSpectrum(std::move(a), std::move(p));
}

} // namespace testing

#endif

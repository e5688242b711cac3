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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

namespace pointdata::derivation
{

namespace
{

constexpr double rad_to_deg = 180.0 / std::numbers::pi;
constexpr double deg_to_rad = std::numbers::pi / 180.0;

// Below this resultant length the 3GPP logarithm is treated as divergent.
constexpr double degenerate_resultant = 1e-12;

[[noreturn]] void invalid(const std::string &what)
{
    throw Error(Errc::InvalidProfile, what);
}

bool all_finite(const std::vector<double> &v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Weighted circular moments relative to the strongest direction.
// Returns D = sum w |e^{j phi} - mu|^2 and |mu|.
struct CircularMoments
{
    double dispersion;
    double resultant;
};

CircularMoments circular_moments(const PowerAngularSpectrum &pas)
{
    const auto &a = pas.angles_deg();
    const auto &p = pas.powers_mw();
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    if (!(total > 0.0))
        throw Error(Errc::NoPower, "angular spectrum carries no power");

    const auto peak = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    const double ref = a[peak];

    std::complex<double> mu{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i)
        if (p[i] > 0.0)
            mu += (p[i] / total) * std::polar(1.0, (a[i] - ref) * deg_to_rad);

    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (p[i] > 0.0)
            d += (p[i] / total) * std::norm(std::polar(1.0, (a[i] - ref) * deg_to_rad) - mu);
    return {std::clamp(d, 0.0, 1.0), std::abs(mu)};
}

} // namespace

double dbm_to_mw(double dbm)
{
    return std::pow(10.0, dbm / 10.0);
}

double mw_to_dbm(double mw)
{
    return mw > 0.0 ? 10.0 * std::log10(mw) : -std::numeric_limits<double>::infinity();
}

// ---------- profiles ----------

PowerDelayProfile::PowerDelayProfile(std::vector<double> delays_ns, std::vector<double> powers_mw,
                                     double noise_floor_dbm)
    : delays_(std::move(delays_ns)), powers_(std::move(powers_mw)), noise_floor_dbm_(noise_floor_dbm)
{
    if (delays_.size() != powers_.size())
        invalid("delays and powers differ in length");
    if (delays_.empty())
        invalid("profile has no samples");
    if (!all_finite(delays_) || !all_finite(powers_))
        invalid("profile contains a non-finite value");
    if (std::isnan(noise_floor_dbm_))
        invalid("noise floor is NaN");
    for (std::size_t i = 1; i < delays_.size(); ++i)
        if (!(delays_[i] > delays_[i - 1]))
            invalid("delays must be strictly increasing");
    for (double p : powers_)
        if (p < 0.0)
            invalid("negative power in profile");
}

double PowerDelayProfile::total_power_mw() const noexcept
{
    return std::accumulate(powers_.begin(), powers_.end(), 0.0);
}

double PowerDelayProfile::peak_power_mw() const noexcept
{
    return *std::max_element(powers_.begin(), powers_.end());
}

PowerAngularSpectrum::PowerAngularSpectrum(std::vector<double> angles_deg, std::vector<double> powers_mw,
                                           AngleDomain domain)
    : angles_(std::move(angles_deg)), powers_(std::move(powers_mw)), domain_(domain)
{
    if (angles_.size() != powers_.size())
        invalid("angles and powers differ in length");
    if (angles_.empty())
        invalid("spectrum has no directions");
    if (!all_finite(angles_) || !all_finite(powers_))
        invalid("spectrum contains a non-finite value");
    for (double a : angles_)
    {
        const bool ok = domain_ == AngleDomain::Azimuth ? (a >= 0.0 && a < 360.0) : (a >= 0.0 && a <= 180.0);
        if (!ok)
            invalid("angle " + std::to_string(a) + " outside its domain");
    }
    for (double p : powers_)
        if (p < 0.0)
            invalid("negative power in spectrum");
}

// ---------- thresholds ----------

void ThresholdRule::check() const
{
    if (!rel_peak_db && !above_noise_db && !gate_ns)
        throw Error(Errc::EmptyThresholdRule, "threshold rule has no criterion");
}

ThresholdRule ThresholdRule::from_spec(const ThresholdSpec &spec)
{
    ThresholdRule r;
    if (spec.rel_peak_db)
        r.rel_peak_db = spec.rel_peak_db->to_double();
    if (spec.above_noise_db)
        r.above_noise_db = spec.above_noise_db->to_double();
    if (spec.gate_ns)
        r.gate_ns = spec.gate_ns->to_double();
    r.combine = spec.combine;
    r.check();
    return r;
}

double ThresholdRule::floor_dbm(double peak_dbm, double noise_floor_dbm) const
{
    // MaxOf and AllOf coincide: a sample passes only if it clears every floor.
    double floor = -std::numeric_limits<double>::infinity();
    if (rel_peak_db)
        floor = std::max(floor, peak_dbm - *rel_peak_db);
    if (above_noise_db)
        floor = std::max(floor, noise_floor_dbm + *above_noise_db);
    return floor;
}

PowerDelayProfile apply_threshold_pdp(const PowerDelayProfile &pdp, const ThresholdRule &rule)
{
    rule.check();
    const double peak = pdp.peak_power_mw();
    if (!(peak > 0.0))
        throw Error(Errc::EmptyAfterThreshold, "profile carries no power");

    const double floor = rule.floor_dbm(mw_to_dbm(peak), pdp.noise_floor_dbm());
    std::vector<double> out = pdp.powers_mw();
    const auto &tau = pdp.delays_ns();
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        if (out[i] > 0.0 && mw_to_dbm(out[i]) < floor)
            out[i] = 0.0;
        if (rule.gate_ns && tau[i] > *rule.gate_ns)
            out[i] = 0.0;
    }
    if (std::none_of(out.begin(), out.end(), [](double p) { return p > 0.0; }))
        throw Error(Errc::EmptyAfterThreshold, "no sample survives the threshold");
    return PowerDelayProfile(tau, std::move(out), pdp.noise_floor_dbm());
}

// ---------- spreads ----------

double rms_delay_spread(const PowerDelayProfile &pdp)
{
    const double total = pdp.total_power_mw();
    if (!(total > 0.0))
        throw Error(Errc::NoPower, "delay profile carries no power");
    const auto &tau = pdp.delays_ns();
    const auto &p = pdp.powers_mw();

    double mean = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        mean += (p[i] / total) * tau[i];
    double var = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        var += (p[i] / total) * (tau[i] - mean) * (tau[i] - mean);
    return std::sqrt(std::max(var, 0.0));
}

double angular_spread_fleury(const PowerAngularSpectrum &pas)
{
    return std::sqrt(circular_moments(pas).dispersion) * rad_to_deg;
}

double angular_spread_3gpp(const PowerAngularSpectrum &pas)
{
    const auto m = circular_moments(pas);
    if (m.resultant < degenerate_resultant)
        throw Error(Errc::DegenerateSpectrum, "mean direction vector vanishes");
    // -2 ln|mu| written via |mu|^2 = 1 - D to stay accurate for narrow spectra.
    return std::sqrt(std::max(-std::log1p(-m.dispersion), 0.0)) * rad_to_deg;
}

double angular_spread(const PowerAngularSpectrum &pas, AsDefinition def)
{
    return def == AsDefinition::Fleury ? angular_spread_fleury(pas) : angular_spread_3gpp(pas);
}

double path_loss_from_link_budget(double prx_dbm, const MetadataRecord &meta)
{
    const auto &m = meta.fields();
    if (!m.ptx_avg_dbm)
        throw Error(Errc::MissingMetadata, "ptx_avg_dbm is required for the link budget", {0, "ptx_avg_dbm", ""});
    if (!m.g_tx_dbi)
        throw Error(Errc::MissingMetadata, "g_tx_dbi is required for the link budget", {0, "g_tx_dbi", ""});
    if (!m.g_rx_dbi)
        throw Error(Errc::MissingMetadata, "g_rx_dbi is required for the link budget", {0, "g_rx_dbi", ""});
    return m.ptx_avg_dbm->to_double() + m.g_tx_dbi->to_double() + m.g_rx_dbi->to_double() - prx_dbm;
}

PowerDelayProfile synthesize_omni(const std::vector<PowerDelayProfile> &profiles)
{
    if (profiles.empty())
        throw Error(Errc::EmptyInput, "no profiles to combine");
    std::map<double, double> bins;
    double noise_mw = 0.0;
    for (const auto &pdp : profiles)
    {
        for (std::size_t i = 0; i < pdp.size(); ++i)
            bins[pdp.delays_ns()[i]] += pdp.powers_mw()[i];
        noise_mw += dbm_to_mw(pdp.noise_floor_dbm());
    }
    std::vector<double> tau, p;
    tau.reserve(bins.size());
    p.reserve(bins.size());
    for (const auto &[t, v] : bins)
    {
        tau.push_back(t);
        p.push_back(v);
    }
    return PowerDelayProfile(std::move(tau), std::move(p), mw_to_dbm(noise_mw));
}

// ---------- point derivation ----------

namespace
{

struct Survivor
{
    std::size_t index; // into the caller's direction list
    double power_mw;
};

double spread_of(const std::vector<Survivor> &members, const std::vector<DirectionalMeasurement> &dirs,
                 AsDefinition def, bool departure, AngleDomain domain)
{
    std::vector<double> angles, powers;
    for (const auto &s : members)
    {
        const auto &d = dirs[s.index];
        double a;
        if (departure)
            a = domain == AngleDomain::Azimuth ? *d.tx_azimuth_deg : *d.tx_zenith_deg;
        else
            a = domain == AngleDomain::Azimuth ? d.azimuth_deg : d.zenith_deg;
        if (domain == AngleDomain::Azimuth)
        {
            a = std::fmod(a, 360.0);
            if (a < 0.0)
                a += 360.0;
        }
        angles.push_back(a);
        powers.push_back(s.power_mw);
    }
    return angular_spread(PowerAngularSpectrum(std::move(angles), std::move(powers), domain), def);
}

double mean_lobe_spread(const std::vector<std::vector<std::size_t>> &lobes, const std::vector<Survivor> &pas,
                        const std::vector<DirectionalMeasurement> &dirs, AsDefinition def, bool departure,
                        AngleDomain domain)
{
    if (lobes.empty())
        return spread_of(pas, dirs, def, departure, domain);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto &lobe : lobes)
    {
        std::vector<Survivor> members;
        for (const auto &s : pas)
            if (std::find(lobe.begin(), lobe.end(), s.index) != lobe.end())
                members.push_back(s);
        if (members.empty())
            continue;
        sum += spread_of(members, dirs, def, departure, domain);
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

} // namespace

PointRecord derive_point(const std::vector<DirectionalMeasurement> &directions, const MetadataRecord &meta,
                         const Geometry &geometry)
{
    const auto &m = meta.fields();
    if (!m.t_pdp)
        throw Error(Errc::MissingRequired, "metadata does not state T_PDP", {0, "t_pdp", ""});
    if (!m.as_def)
        throw Error(Errc::MissingRequired, "metadata does not state the AS definition", {0, "as_def", ""});
    if (directions.empty())
        throw Error(Errc::EmptyInput, "no directional profiles");

    const auto rule = ThresholdRule::from_spec(*m.t_pdp);
    for (const auto &lobes : {&geometry.arrival_lobes, &geometry.departure_lobes})
        for (const auto &lobe : *lobes)
            for (std::size_t i : lobe)
                if (i >= directions.size())
                    throw Error(Errc::InvalidProfile, "lobe index " + std::to_string(i) + " out of range");

    std::vector<PowerDelayProfile> kept;
    std::vector<Survivor> survivors;
    for (std::size_t i = 0; i < directions.size(); ++i)
    {
        try
        {
            kept.push_back(apply_threshold_pdp(directions[i].pdp, rule));
            survivors.push_back({i, kept.back().total_power_mw()});
        }
        catch (const Error &e)
        {
            if (e.code() != Errc::EmptyAfterThreshold)
                throw;
        }
    }
    if (kept.empty())
        throw Error(Errc::EmptyAfterThreshold, "no direction survives T_PDP at " + geometry.tx_id + "-" + geometry.rx_id);

    double weighted = 0.0, total = 0.0;
    for (std::size_t k = 0; k < kept.size(); ++k)
    {
        weighted += survivors[k].power_mw * rms_delay_spread(kept[k]);
        total += survivors[k].power_mw;
    }
    const double mean_dir_ds = weighted / total;
    const double omni_ds = rms_delay_spread(synthesize_omni(kept));

    // Spatial threshold: direction powers against T_PAS, if stated.
    std::vector<Survivor> pas = survivors;
    if (m.t_pas && (m.t_pas->rel_peak_db || m.t_pas->above_noise_db))
    {
        ThresholdRule spatial = ThresholdRule::from_spec(*m.t_pas);
        spatial.gate_ns.reset();
        double peak = 0.0;
        for (const auto &s : survivors)
            peak = std::max(peak, s.power_mw);
        std::vector<Survivor> passed;
        for (const auto &s : survivors)
            if (mw_to_dbm(s.power_mw) >=
                spatial.floor_dbm(mw_to_dbm(peak), directions[s.index].pdp.noise_floor_dbm()))
                passed.push_back(s);
        pas = std::move(passed);
    }
    if (pas.empty())
        throw Error(Errc::EmptyAfterThreshold, "no direction survives T_PAS");

    const AsDefinition def = *m.as_def;
    const bool have_tx = std::all_of(pas.begin(), pas.end(), [&](const Survivor &s) {
        return directions[s.index].tx_azimuth_deg && directions[s.index].tx_zenith_deg;
    });

    PointFields f;
    f.freq_ghz = m.fc.ghz;
    f.tx_id = geometry.tx_id;
    f.rx_id = geometry.rx_id;
    f.loc = geometry.loc;
    f.tr_sep_m = geometry.tr_sep_m;
    f.pl_db = Decimal::from_double(path_loss_from_link_budget(mw_to_dbm(total), meta));
    f.mean_dir_ds_ns = Decimal::from_double(mean_dir_ds);
    f.omni_ds_ns = Decimal::from_double(omni_ds);

    const auto omni = [&](bool dep, AngleDomain dom) { return Decimal::from_double(spread_of(pas, directions, def, dep, dom)); };
    const auto lobe = [&](bool dep, AngleDomain dom) {
        return Decimal::from_double(
            mean_lobe_spread(dep ? geometry.departure_lobes : geometry.arrival_lobes, pas, directions, def, dep, dom));
    };
    f.omni_asa_deg = omni(false, AngleDomain::Azimuth);
    f.omni_zsa_deg = omni(false, AngleDomain::Zenith);
    f.mean_lobe_asa_deg = lobe(false, AngleDomain::Azimuth);
    f.mean_lobe_zsa_deg = lobe(false, AngleDomain::Zenith);
    if (have_tx)
    {
        f.omni_asd_deg = omni(true, AngleDomain::Azimuth);
        f.omni_zsd_deg = omni(true, AngleDomain::Zenith);
        f.mean_lobe_asd_deg = lobe(true, AngleDomain::Azimuth);
        f.mean_lobe_zsd_deg = lobe(true, AngleDomain::Zenith);
    }
    return PointRecord(std::move(f));
}

} // namespace pointdata::derivation

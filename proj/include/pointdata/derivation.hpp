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

#ifndef POINTDATA_DERIVATION_HPP
#define POINTDATA_DERIVATION_HPP

#include "pointdata/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pointdata::derivation
{

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw); // -inf for 0

// Sampled power delay profile. Delays strictly increasing, powers linear and >= 0.
// Throws Error{InvalidProfile}.
class PowerDelayProfile
{
public:
    PowerDelayProfile(std::vector<double> delays_ns, std::vector<double> powers_mw, double noise_floor_dbm);

    const std::vector<double> &delays_ns() const noexcept { return delays_; }
    const std::vector<double> &powers_mw() const noexcept { return powers_; }
    double noise_floor_dbm() const noexcept { return noise_floor_dbm_; }
    std::size_t size() const noexcept { return delays_.size(); }

    double total_power_mw() const noexcept;
    double peak_power_mw() const noexcept;

private:
    std::vector<double> delays_;
    std::vector<double> powers_;
    double noise_floor_dbm_;
};

enum class AngleDomain
{
    Azimuth, // [0, 360)
    Zenith   // [0, 180]
};

// Power per pointing direction. Throws Error{InvalidProfile}.
class PowerAngularSpectrum
{
public:
    PowerAngularSpectrum(std::vector<double> angles_deg, std::vector<double> powers_mw,
                         AngleDomain domain = AngleDomain::Azimuth);

    const std::vector<double> &angles_deg() const noexcept { return angles_; }
    const std::vector<double> &powers_mw() const noexcept { return powers_; }
    AngleDomain domain() const noexcept { return domain_; }

private:
    std::vector<double> angles_;
    std::vector<double> powers_;
    AngleDomain domain_;
};

struct ThresholdRule
{
    std::optional<double> rel_peak_db;
    std::optional<double> above_noise_db;
    std::optional<double> gate_ns;
    ThresholdCombine combine = ThresholdCombine::MaxOf;

    // Throws Error{EmptyThresholdRule} when no criterion is present.
    void check() const;

    static ThresholdRule from_spec(const ThresholdSpec &spec);

    // Level floor in dBm for a profile with the given peak and noise floor;
    // -inf when the rule has no level criterion.
    double floor_dbm(double peak_dbm, double noise_floor_dbm) const;
};

// Zeroes bins below the floor and, with a gate, bins later than the gate.
// Throws Error{EmptyAfterThreshold}.
PowerDelayProfile apply_threshold_pdp(const PowerDelayProfile &pdp, const ThresholdRule &rule);

// Second central moment of the delays. Throws Error{NoPower}.
double rms_delay_spread(const PowerDelayProfile &pdp);

// Throws Error{NoPower}.
double angular_spread_fleury(const PowerAngularSpectrum &pas);
// Throws Error{NoPower} or Error{DegenerateSpectrum}.
double angular_spread_3gpp(const PowerAngularSpectrum &pas);
double angular_spread(const PowerAngularSpectrum &pas, AsDefinition def);

// PL = P_TX + G_TX + G_RX - P_RX. Throws Error{MissingMetadata}.
double path_loss_from_link_budget(double prx_dbm, const MetadataRecord &meta);

// Omnidirectional PDP: linear powers summed per delay over all directions. Profiles on
// different grids are merged onto the union of their delays. The noise floor is the
// power sum of the directional floors.
PowerDelayProfile synthesize_omni(const std::vector<PowerDelayProfile> &profiles);

struct DirectionalMeasurement
{
    PowerDelayProfile pdp;
    double azimuth_deg = 0.0; // receiver pointing
    double zenith_deg = 90.0;
    std::optional<double> tx_azimuth_deg;
    std::optional<double> tx_zenith_deg;
};

struct Geometry
{
    std::string tx_id;
    std::string rx_id;
    LocCondition loc = LocCondition::LOS;
    Decimal tr_sep_m;
    // Lobe partitions as indices into the direction list. Empty means one lobe
    // holding every direction.
    std::vector<std::vector<std::size_t>> arrival_lobes;
    std::vector<std::vector<std::size_t>> departure_lobes;
};

// Requires meta.t_pdp and meta.as_def (Error{MissingRequired}) and the link budget
// fields. Directions whose PDP does not survive T_PDP are dropped; when none survive
// Error{EmptyAfterThreshold} is raised.
PointRecord derive_point(const std::vector<DirectionalMeasurement> &directions, const MetadataRecord &meta,
                         const Geometry &geometry);

// ---------- raw profile files ----------

// A JSON array of directions, each {delays_ns, powers_dbm, noise_floor_dbm,
// azimuth_deg, zenith_deg, [tx_azimuth_deg], [tx_zenith_deg]}, or an object with
// a "directions" array. Throws Error{ValueParse} or Error{InvalidProfile}.
std::vector<DirectionalMeasurement> parse_profiles(std::string_view json);

struct SceneEntry
{
    Geometry geometry;
    std::string profiles; // path of the profile file, relative to the geometry file
};

// A JSON array of {tx, rx, loc, tr_sep_m, profiles, [arrival_lobes], [departure_lobes]}.
std::vector<SceneEntry> parse_geometry(std::string_view json);

} // namespace pointdata::derivation

#endif

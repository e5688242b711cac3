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

#ifndef POINTDATA_TYPES_HPP
#define POINTDATA_TYPES_HPP

#include "pointdata/decimal.hpp"
#include "pointdata/error.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pointdata
{

// ---------- Point data ----------

enum class LocCondition
{
    LOS,
    NLOS
};

std::string_view to_string(LocCondition loc) noexcept;
std::optional<LocCondition> parse_loc_condition(std::string_view text, bool case_sensitive = true);

// Units: GHz, m, dB, ns, degrees.
struct PointFields
{
    Decimal freq_ghz;
    std::string tx_id;
    std::string rx_id;
    LocCondition loc = LocCondition::LOS;
    Decimal tr_sep_m;
    Decimal pl_db;
    Decimal mean_dir_ds_ns; // opaque upstream statistic, never recomputed here
    Decimal omni_ds_ns;
    Decimal mean_lobe_asa_deg;
    Decimal omni_asa_deg;
    Decimal mean_lobe_asd_deg;
    Decimal omni_asd_deg;
    Decimal mean_lobe_zsa_deg;
    Decimal omni_zsa_deg;
    Decimal mean_lobe_zsd_deg;
    Decimal omni_zsd_deg;

    bool operator==(const PointFields &) const = default;
};

// One TX-RX location row. Immutable; the constructor enforces the value ranges.
class PointRecord
{
public:
    explicit PointRecord(PointFields fields);

    const PointFields &fields() const noexcept { return fields_; }

    LocCondition loc() const noexcept { return fields_.loc; }
    double freq_ghz() const { return fields_.freq_ghz.to_double(); }
    double tr_sep_m() const { return fields_.tr_sep_m.to_double(); }
    double pl_db() const { return fields_.pl_db.to_double(); }

    bool operator==(const PointRecord &) const = default;

private:
    PointFields fields_;
};

// Columns of a point-data table, in canonical order.
enum class Column
{
    FreqGhz,
    Tx,
    Rx,
    Loc,
    TrSepM,
    PlDb,
    MeanDirDsNs,
    OmniDsNs,
    MeanLobeAsaDeg,
    OmniAsaDeg,
    MeanLobeAsdDeg,
    OmniAsdDeg,
    MeanLobeZsaDeg,
    OmniZsaDeg,
    MeanLobeZsdDeg,
    OmniZsdDeg
};

inline constexpr std::size_t column_count = 16;

struct ColumnInfo
{
    Column column;
    std::string_view name;    // canonical header token
    std::string_view label;   // human-readable display label
    std::string_view unit;    // canonical units-row token, empty for text columns
    bool numeric;
};

const std::array<ColumnInfo, column_count> &column_catalogue() noexcept;
std::optional<Column> column_by_name(std::string_view name) noexcept;
std::vector<std::string_view> numeric_column_names();

// Numeric value of a column; throws std::invalid_argument for TX / RX / Loc.
Decimal numeric_value(const PointRecord &p, Column c);

// ---------- Measurement summary metadata ----------

enum class Environment
{
    UMi,
    UMa,
    RMa,
    InH,
    InF
};

enum class FreqReference
{
    Start,
    Center
};

struct CarrierFrequency
{
    Decimal ghz;
    FreqReference ref = FreqReference::Center;
    bool operator==(const CarrierFrequency &) const = default;
};

enum class MobilityKind
{
    Static,
    Mobile
};

struct TrajectoryPoint
{
    Decimal x, y, t;
    bool operator==(const TrajectoryPoint &) const = default;
};

struct Mobility
{
    MobilityKind kind = MobilityKind::Static;
    std::optional<Decimal> speed_mps;
    std::vector<TrajectoryPoint> trajectory;
    bool operator==(const Mobility &) const = default;
};

enum class ThresholdCombine
{
    MaxOf, // "max(a, b)": a sample must clear the highest floor
    AllOf  // criteria listed side by side; every one applies
};

// Delay or spatial domain threshold. `text` is the rule as written by the campaign;
// the structured members are read from it.
struct ThresholdSpec
{
    std::string text;
    std::optional<Decimal> rel_peak_db;    // floor this many dB below the peak
    std::optional<Decimal> above_noise_db; // floor this many dB above the noise floor
    std::optional<Decimal> gate_ns;        // samples later than this are discarded
    ThresholdCombine combine = ThresholdCombine::AllOf;

    bool has_any() const noexcept { return rel_peak_db || above_noise_db || gate_ns; }

    // Both a delay gate and a noise margin, with no stated way of combining them.
    bool composition_ambiguous() const noexcept;

    // Throws Error{ValueParse} when the text names no recognizable criterion.
    static ThresholdSpec from_text(std::string text);

    // Structured construction; `text` is synthesized so that from_text(text) == *this.
    static ThresholdSpec make(std::optional<Decimal> rel_peak_db, std::optional<Decimal> above_noise_db,
                              std::optional<Decimal> gate_ns, ThresholdCombine combine);

    bool operator==(const ThresholdSpec &) const = default;
};

struct RepetitionRate
{
    Decimal value;
    std::string unit; // as written: ms, us, s, Hz, kHz ...
    bool operator==(const RepetitionRate &) const = default;
};

struct Waveform
{
    std::string text;
    std::optional<std::string> kind;
    std::optional<std::int64_t> pn_length_chips;
    std::optional<std::int64_t> n_avg;
    std::optional<Decimal> papr_db;
    std::optional<Decimal> spreading_factor;

    static Waveform from_text(std::string text);
    bool operator==(const Waveform &) const = default;
};

enum class SyncKind
{
    ReferenceClock,
    GPS,
    PTP,
    ExternalTrigger,
    VNAInternal
};

struct SyncSpec
{
    SyncKind kind = SyncKind::ReferenceClock;
    std::string text;

    static SyncSpec from_text(std::string text);
    bool operator==(const SyncSpec &) const = default;
};

struct SweepParams
{
    std::string text;
    std::optional<Decimal> ifbw_khz;
    std::optional<std::int64_t> n_pts;
    std::optional<std::string> averaging;

    static SweepParams from_text(std::string text);
    bool operator==(const SweepParams &) const = default;
};

enum class AsDefinition
{
    Fleury,
    TGPP
};

enum class AntennaKind
{
    Horn,
    Dipole,
    PatchArray
};

struct AntennaType
{
    AntennaKind kind = AntennaKind::Horn;
    std::string subtype; // e.g. "Pyramidal"

    static AntennaType from_text(const std::string &text);
    std::string to_text() const;
    bool operator==(const AntennaType &) const = default;
};

enum class Polarization
{
    Linear,
    Circular,
    Dual
};

enum class ArrayKind
{
    ULA,
    UPA,
    None
};

struct ArrayGeometry
{
    ArrayKind kind = ArrayKind::None;
    std::optional<Decimal> spacing_mm;
    bool operator==(const ArrayGeometry &) const = default;
};

std::string_view to_string(Environment v) noexcept;
std::string_view to_string(AsDefinition v) noexcept;
std::string_view to_string(SyncKind v) noexcept;
std::string_view to_string(Polarization v) noexcept;
std::string_view to_string(ArrayKind v) noexcept;
std::string_view to_string(AntennaKind v) noexcept;
std::optional<Environment> parse_environment(std::string_view text) noexcept;

struct MetadataFields
{
    Environment env = Environment::UMi;
    CarrierFrequency fc;

    std::optional<Decimal> az_res_deg;
    std::optional<Decimal> el_res_deg;
    std::optional<Mobility> mobility;
    std::optional<Decimal> bw_ghz; // null-to-null
    std::optional<Decimal> ptx_avg_dbm;
    std::optional<Decimal> dr_max_db;
    std::optional<Decimal> nf_db;
    std::optional<Decimal> rx_sens_dbm;
    std::optional<ThresholdSpec> t_pdp;
    std::optional<ThresholdSpec> t_pas;
    std::optional<Decimal> tau_max_ns;
    std::optional<RepetitionRate> f_rep;
    std::optional<Waveform> waveform;
    std::optional<Decimal> dt_s_ns;
    std::optional<Decimal> fs_msps;
    std::optional<SyncSpec> sync;
    std::optional<SweepParams> sweep_fd;
    std::optional<AsDefinition> as_def;
    std::optional<std::string> ant_model;
    std::optional<std::string> f_ant_op_band;
    std::optional<AntennaType> ant_type;
    std::optional<Decimal> bw_ant_ghz;
    std::optional<Decimal> g_tx_dbi;
    std::optional<Decimal> g_rx_dbi;
    std::optional<Decimal> hpbw_tx_deg;
    std::optional<Decimal> hpbw_rx_deg;
    std::optional<Decimal> sll_db; // relative to main lobe, <= 0
    std::optional<Decimal> fbr_db;
    std::optional<Decimal> xpd_db;
    std::optional<Polarization> pol;
    std::optional<ArrayGeometry> array_geometry;
    std::optional<std::int64_t> n_elements;

    // Whether the recorded path loss is omnidirectional, best-beam, ...
    std::string pl_kind = "unspecified";

    // Document identity; optional, the loader falls back to file names.
    std::optional<std::string> institution;
    std::optional<std::string> campaign_id;
    std::optional<std::string> map_ref;

    bool operator==(const MetadataFields &) const = default;
};

class MetadataRecord
{
public:
    explicit MetadataRecord(MetadataFields fields);

    const MetadataFields &fields() const noexcept { return fields_; }

    bool operator==(const MetadataRecord &) const = default;

private:
    MetadataFields fields_;
};

// ---------- Campaigns and pooling ----------

enum class Severity
{
    Info,
    Warn,
    Block
};

std::string_view to_string(Severity s) noexcept;

struct CompatFinding
{
    Severity severity = Severity::Info;
    std::string code;    // stable machine-readable code, e.g. "DUP_PAIR"
    std::string message; // human text
    std::string field;   // metadata field or point column concerned
    std::vector<std::string> campaigns;

    bool operator==(const CompatFinding &) const = default;
};

// Cross-record rules (unique TX-RX pairs, frequency consistency) are reported by
// validation::validate_campaign rather than enforced here, so that a faulty file can
// still be loaded and diagnosed.
struct Campaign
{
    std::string institution;
    std::string campaign_id;
    MetadataRecord metadata;
    std::vector<PointRecord> points;
    std::optional<std::string> map_ref;
};

struct Provenance
{
    std::size_t campaign_index = 0;
    std::string campaign_id;
    std::size_t row = 0; // 0-based index into the campaign's points
    bool operator==(const Provenance &) const = default;
};

struct PooledDataset
{
    std::vector<Campaign> campaigns;
    std::vector<Provenance> provenance; // one entry per pooled point, in pool order
    std::vector<CompatFinding> compat_report;

    std::size_t size() const noexcept { return provenance.size(); }
    const PointRecord &point(std::size_t i) const;
};

} // namespace pointdata

#endif

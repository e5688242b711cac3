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

#include "pointdata/types.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace pointdata
{

namespace
{

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(Errc code, const std::string &what, const std::string &field = {})
{
    throw Error(code, what, ErrorLocation{0, field, {}});
}

const Decimal zero{};
const Decimal deg90{90, 0};
const Decimal deg180{180, 0};
const Decimal deg360{360, 0};

std::optional<Decimal> regex_decimal(const std::string &text, const std::regex &re)
{
    std::smatch m;
    if (!std::regex_search(text, m, re))
        return std::nullopt;
    return Decimal::parse(m[1].str());
}

std::optional<std::int64_t> regex_int(const std::string &text, const std::regex &re)
{
    std::smatch m;
    if (!std::regex_search(text, m, re))
        return std::nullopt;
    try
    {
        return std::stoll(m[1].str());
    }
    catch (const std::exception &)
    {
        return std::nullopt;
    }
}

constexpr auto icase = std::regex::ECMAScript | std::regex::icase;
const char *num = R"(([0-9]+(?:\.[0-9]+)?))";

} // namespace

// ---------- enums ----------

std::string_view to_string(LocCondition loc) noexcept { return loc == LocCondition::LOS ? "LOS" : "NLOS"; }

std::optional<LocCondition> parse_loc_condition(std::string_view text, bool case_sensitive)
{
    std::string t = case_sensitive ? std::string(text) : lower(text);
    if (t == (case_sensitive ? "LOS" : "los"))
        return LocCondition::LOS;
    if (t == (case_sensitive ? "NLOS" : "nlos"))
        return LocCondition::NLOS;
    return std::nullopt;
}

std::string_view to_string(Environment v) noexcept
{
    switch (v)
    {
    case Environment::UMi: return "UMi";
    case Environment::UMa: return "UMa";
    case Environment::RMa: return "RMa";
    case Environment::InH: return "InH";
    case Environment::InF: return "InF";
    }
    return "";
}

std::optional<Environment> parse_environment(std::string_view text) noexcept
{
    const std::string t = lower(trim(text));
    for (auto e : {Environment::UMi, Environment::UMa, Environment::RMa, Environment::InH, Environment::InF})
        if (t == lower(to_string(e)))
            return e;
    return std::nullopt;
}

std::string_view to_string(AsDefinition v) noexcept { return v == AsDefinition::Fleury ? "Fleury" : "3GPP TR 38.901"; }

std::string_view to_string(SyncKind v) noexcept
{
    switch (v)
    {
    case SyncKind::ReferenceClock: return "ReferenceClock";
    case SyncKind::GPS: return "GPS";
    case SyncKind::PTP: return "PTP";
    case SyncKind::ExternalTrigger: return "ExternalTrigger";
    case SyncKind::VNAInternal: return "VNAInternal";
    }
    return "";
}

std::string_view to_string(Polarization v) noexcept
{
    switch (v)
    {
    case Polarization::Linear: return "Linear";
    case Polarization::Circular: return "Circular";
    case Polarization::Dual: return "Dual";
    }
    return "";
}

std::string_view to_string(ArrayKind v) noexcept
{
    switch (v)
    {
    case ArrayKind::ULA: return "ULA";
    case ArrayKind::UPA: return "UPA";
    case ArrayKind::None: return "None";
    }
    return "";
}

std::string_view to_string(AntennaKind v) noexcept
{
    switch (v)
    {
    case AntennaKind::Horn: return "horn";
    case AntennaKind::Dipole: return "dipole";
    case AntennaKind::PatchArray: return "patch array";
    }
    return "";
}

std::string_view to_string(Severity s) noexcept
{
    switch (s)
    {
    case Severity::Info: return "Info";
    case Severity::Warn: return "Warn";
    case Severity::Block: return "Block";
    }
    return "";
}

// ---------- point records ----------

const std::array<ColumnInfo, column_count> &column_catalogue() noexcept
{
    static const std::array<ColumnInfo, column_count> catalogue{{
        {Column::FreqGhz, "freq_ghz", "Freq.", "GHz", true},
        {Column::Tx, "tx", "TX", "", false},
        {Column::Rx, "rx", "RX", "", false},
        {Column::Loc, "loc", "Loc.", "", false},
        {Column::TrSepM, "tr_sep_m", "TR Sep.", "m", true},
        {Column::PlDb, "pl_db", "PL", "dB", true},
        {Column::MeanDirDsNs, "mean_dir_ds_ns", "Mean Dir. DS", "ns", true},
        {Column::OmniDsNs, "omni_ds_ns", "Omni DS", "ns", true},
        {Column::MeanLobeAsaDeg, "mean_lobe_asa_deg", "Mean Lobe ASA", "deg", true},
        {Column::OmniAsaDeg, "omni_asa_deg", "Omni ASA", "deg", true},
        {Column::MeanLobeAsdDeg, "mean_lobe_asd_deg", "Mean Lobe ASD", "deg", true},
        {Column::OmniAsdDeg, "omni_asd_deg", "Omni ASD", "deg", true},
        {Column::MeanLobeZsaDeg, "mean_lobe_zsa_deg", "Mean Lobe ZSA", "deg", true},
        {Column::OmniZsaDeg, "omni_zsa_deg", "Omni ZSA", "deg", true},
        {Column::MeanLobeZsdDeg, "mean_lobe_zsd_deg", "Mean Lobe ZSD", "deg", true},
        {Column::OmniZsdDeg, "omni_zsd_deg", "Omni ZSD", "deg", true},
    }};
    return catalogue;
}

std::optional<Column> column_by_name(std::string_view name) noexcept
{
    for (const auto &c : column_catalogue())
        if (c.name == name)
            return c.column;
    return std::nullopt;
}

std::vector<std::string_view> numeric_column_names()
{
    std::vector<std::string_view> out;
    for (const auto &c : column_catalogue())
        if (c.numeric)
            out.push_back(c.name);
    return out;
}

Decimal numeric_value(const PointRecord &p, Column c)
{
    const auto &f = p.fields();
    switch (c)
    {
    case Column::FreqGhz: return f.freq_ghz;
    case Column::TrSepM: return f.tr_sep_m;
    case Column::PlDb: return f.pl_db;
    case Column::MeanDirDsNs: return f.mean_dir_ds_ns;
    case Column::OmniDsNs: return f.omni_ds_ns;
    case Column::MeanLobeAsaDeg: return f.mean_lobe_asa_deg;
    case Column::OmniAsaDeg: return f.omni_asa_deg;
    case Column::MeanLobeAsdDeg: return f.mean_lobe_asd_deg;
    case Column::OmniAsdDeg: return f.omni_asd_deg;
    case Column::MeanLobeZsaDeg: return f.mean_lobe_zsa_deg;
    case Column::OmniZsaDeg: return f.omni_zsa_deg;
    case Column::MeanLobeZsdDeg: return f.mean_lobe_zsd_deg;
    case Column::OmniZsdDeg: return f.omni_zsd_deg;
    default: break;
    }
    throw std::invalid_argument("Column is not numeric.");
}

PointRecord::PointRecord(PointFields f) : fields_(std::move(f))
{
    const auto &v = fields_;
    if (v.freq_ghz <= zero)
        fail(Errc::NonPositiveFrequency, "freq_ghz must be > 0, got " + v.freq_ghz.to_string(), "freq_ghz");
    if (trim(v.tx_id).empty())
        fail(Errc::EmptyIdentifier, "TX label is empty", "tx");
    if (trim(v.rx_id).empty())
        fail(Errc::EmptyIdentifier, "RX label is empty", "rx");
    if (v.tr_sep_m <= zero)
        fail(Errc::NonPositiveSeparation, "tr_sep_m must be > 0, got " + v.tr_sep_m.to_string(), "tr_sep_m");
    if (v.pl_db <= zero)
        fail(Errc::NonPositivePathLoss, "pl_db must be > 0, got " + v.pl_db.to_string(), "pl_db");

    const std::pair<const Decimal *, const char *> delay[] = {{&v.mean_dir_ds_ns, "mean_dir_ds_ns"},
                                                              {&v.omni_ds_ns, "omni_ds_ns"}};
    for (const auto &[value, name] : delay)
        if (*value < zero)
            fail(Errc::NegativeDelaySpread, std::string(name) + " must be >= 0, got " + value->to_string(), name);

    const std::pair<const Decimal *, const char *> azimuth[] = {{&v.mean_lobe_asa_deg, "mean_lobe_asa_deg"},
                                                                {&v.omni_asa_deg, "omni_asa_deg"},
                                                                {&v.mean_lobe_asd_deg, "mean_lobe_asd_deg"},
                                                                {&v.omni_asd_deg, "omni_asd_deg"}};
    const std::pair<const Decimal *, const char *> zenith[] = {{&v.mean_lobe_zsa_deg, "mean_lobe_zsa_deg"},
                                                               {&v.omni_zsa_deg, "omni_zsa_deg"},
                                                               {&v.mean_lobe_zsd_deg, "mean_lobe_zsd_deg"},
                                                               {&v.omni_zsd_deg, "omni_zsd_deg"}};
    for (const auto &[value, name] : azimuth)
    {
        if (*value < zero)
            fail(Errc::NegativeAngularSpread, std::string(name) + " must be >= 0, got " + value->to_string(), name);
        if (*value > deg180)
            fail(Errc::AzimuthSpreadOutOfRange, std::string(name) + " must be <= 180, got " + value->to_string(), name);
    }
    for (const auto &[value, name] : zenith)
    {
        if (*value < zero)
            fail(Errc::NegativeAngularSpread, std::string(name) + " must be >= 0, got " + value->to_string(), name);
        if (*value > deg90)
            fail(Errc::ZenithSpreadOutOfRange, std::string(name) + " must be <= 90, got " + value->to_string(), name);
    }
}

// ---------- metadata text fields ----------

bool ThresholdSpec::composition_ambiguous() const noexcept
{
    return combine == ThresholdCombine::AllOf && gate_ns && (above_noise_db || rel_peak_db);
}

ThresholdSpec ThresholdSpec::from_text(std::string text)
{
    static const std::regex rel_re(std::string(num) + R"(\s*dB\s+below\s+(?:the\s+)?(?:max|peak))", icase);
    static const std::regex noise_re(std::string(num) + R"(\s*dB\s+above\s+(?:the\s+)?noise)", icase);
    static const std::regex noise_plus_re(std::string(R"(\+\s*)") + num + R"(\s*dB\s*\(\s*noise\s*\))", icase);
    static const std::regex gate_re(std::string(R"(gate\S*\s*=\s*)") + num + R"(\s*ns)", icase);

    ThresholdSpec spec;
    spec.text = std::move(text);
    spec.rel_peak_db = regex_decimal(spec.text, rel_re);
    spec.above_noise_db = regex_decimal(spec.text, noise_re);
    if (!spec.above_noise_db)
        spec.above_noise_db = regex_decimal(spec.text, noise_plus_re);
    spec.gate_ns = regex_decimal(spec.text, gate_re);
    spec.combine = lower(trim(spec.text)).rfind("max(", 0) == 0 ? ThresholdCombine::MaxOf : ThresholdCombine::AllOf;
    if (!spec.has_any())
        fail(Errc::ValueParse, "threshold rule names no recognizable criterion: '" + spec.text + "'");
    return spec;
}

ThresholdSpec ThresholdSpec::make(std::optional<Decimal> rel_peak_db, std::optional<Decimal> above_noise_db,
                                  std::optional<Decimal> gate_ns, ThresholdCombine combine)
{
    for (const auto *v : {&rel_peak_db, &above_noise_db, &gate_ns})
        if (*v && v->value() < zero)
            fail(Errc::ValueParse, "threshold components are magnitudes and must be >= 0");
    if (!rel_peak_db && !above_noise_db && !gate_ns)
        fail(Errc::EmptyThresholdRule, "threshold rule needs at least one criterion");

    std::vector<std::string> levels;
    if (rel_peak_db)
        levels.push_back(rel_peak_db->to_string() + " dB below peak");
    if (above_noise_db)
        levels.push_back(above_noise_db->to_string() + " dB above noise floor");
    std::string gate = gate_ns ? "gate = " + gate_ns->to_string() + " ns" : "";

    auto join = [](const std::vector<std::string> &parts, const char *sep) {
        std::string out;
        for (const auto &p : parts)
            out += (out.empty() ? "" : sep) + p;
        return out;
    };

    std::string text;
    if (combine == ThresholdCombine::MaxOf)
    {
        if (levels.empty())
            text = "max(" + gate + ")";
        else
            text = "max(" + join(levels, ", ") + ")" + (gate.empty() ? "" : "; " + gate);
    }
    else
    {
        if (!gate.empty())
            levels.push_back(gate);
        text = join(levels, "; ");
    }

    ThresholdSpec spec;
    spec.text = std::move(text);
    spec.rel_peak_db = rel_peak_db;
    spec.above_noise_db = above_noise_db;
    spec.gate_ns = gate_ns;
    spec.combine = combine;
    return spec;
}

Waveform Waveform::from_text(std::string text)
{
    static const std::regex pn_re(R"(([0-9]+)\s*-?\s*chips?)", icase);
    static const std::regex avg_re(R"(([0-9]+)\s*(?:x\s*)?(?:pdps?\s*)?(?:avg|averag))", icase);
    static const std::regex no_avg_re(R"(no\s+averaging)", icase);
    static const std::regex papr_re(std::string(R"(papr\s*[=:]?\s*)") + num + R"(\s*dB)", icase);
    static const std::regex sf_re(std::string(R"((?:spreading\s+factor|\bsf\b)\s*[=:]?\s*)") + num, icase);
    static const std::regex pn_kind_re(R"(\bpn\b)", icase);

    Waveform w;
    w.text = std::move(text);
    w.pn_length_chips = regex_int(w.text, pn_re);
    w.n_avg = regex_int(w.text, avg_re);
    if (!w.n_avg && std::regex_search(w.text, no_avg_re))
        w.n_avg = 1;
    w.papr_db = regex_decimal(w.text, papr_re);
    if (std::smatch m; std::regex_search(w.text, m, sf_re))
        w.spreading_factor = Decimal::parse(m[1].str());

    const std::string l = lower(w.text);
    if (std::regex_search(w.text, pn_kind_re))
        w.kind = "PN";
    else if (l.find("ofdm") != std::string::npos)
        w.kind = "OFDM";
    else if (l.find("chirp") != std::string::npos)
        w.kind = "Chirp";
    else if (l.find("multitone") != std::string::npos || l.find("multi-tone") != std::string::npos)
        w.kind = "Multitone";
    return w;
}

SyncSpec SyncSpec::from_text(std::string text)
{
    const std::string l = lower(text);
    SyncSpec s;
    if (l.find("vna") != std::string::npos)
        s.kind = SyncKind::VNAInternal;
    else if (l.find("gps") != std::string::npos)
        s.kind = SyncKind::GPS;
    else if (l.find("ptp") != std::string::npos)
        s.kind = SyncKind::PTP;
    else if (l.find("trigger") != std::string::npos)
        s.kind = SyncKind::ExternalTrigger;
    else if (l.find("rubidium") != std::string::npos || l.find("clock") != std::string::npos ||
             l.find("reference") != std::string::npos)
        s.kind = SyncKind::ReferenceClock;
    else
        fail(Errc::ValueParse, "unrecognized synchronization method: '" + text + "'", "sync");
    s.text = std::move(text);
    return s;
}

SweepParams SweepParams::from_text(std::string text)
{
    static const std::regex ifbw_re(std::string(R"(ifbw\s*[=:]?\s*)") + num + R"(\s*(khz|mhz|hz))", icase);
    static const std::regex npts_re(R"(n_?\{?pts\}?\s*[=:]\s*([0-9]+))", icase);
    static const std::regex avg_re(R"(([0-9]+\s*(?:x\s*)?averag\w*))", icase);
    static const std::regex no_avg_re(R"(no\s+averaging)", icase);

    SweepParams p;
    p.text = std::move(text);
    if (std::smatch m; std::regex_search(p.text, m, ifbw_re))
    {
        if (auto v = Decimal::parse(m[1].str()))
        {
            const std::string unit = lower(m[2].str());
            p.ifbw_khz = unit == "hz" ? v->shifted(-3) : unit == "mhz" ? v->shifted(3) : *v;
        }
    }
    p.n_pts = regex_int(p.text, npts_re);
    if (std::regex_search(p.text, no_avg_re))
        p.averaging = "none";
    else if (std::smatch m; std::regex_search(p.text, m, avg_re))
        p.averaging = m[1].str();
    return p;
}

AntennaType AntennaType::from_text(const std::string &text)
{
    static const std::regex horn_re(R"(\bhorn\b)", icase);
    static const std::regex dipole_re(R"(\bdipole\b)", icase);
    static const std::regex patch_re(R"(\bpatch(?:\s+array)?\b)", icase);

    AntennaType t;
    std::string rest;
    if (std::regex_search(text, horn_re))
    {
        t.kind = AntennaKind::Horn;
        rest = std::regex_replace(text, horn_re, "");
    }
    else if (std::regex_search(text, dipole_re))
    {
        t.kind = AntennaKind::Dipole;
        rest = std::regex_replace(text, dipole_re, "");
    }
    else if (std::regex_search(text, patch_re))
    {
        t.kind = AntennaKind::PatchArray;
        rest = std::regex_replace(text, patch_re, "");
    }
    else
        fail(Errc::ValueParse, "unrecognized antenna type: '" + text + "'", "ant_type");

    // Collapse inner whitespace left by the removal.
    std::string collapsed;
    for (char c : trim(rest))
        if (!(c == ' ' && !collapsed.empty() && collapsed.back() == ' '))
            collapsed += c;
    t.subtype = collapsed;
    return t;
}

std::string AntennaType::to_text() const
{
    return subtype.empty() ? std::string(to_string(kind)) : subtype + " " + std::string(to_string(kind));
}

MetadataRecord::MetadataRecord(MetadataFields f) : fields_(std::move(f))
{
    const auto &m = fields_;
    if (m.fc.ghz <= zero)
        fail(Errc::NonPositiveFrequency, "fc must be > 0, got " + m.fc.ghz.to_string(), "fc_ghz");
    if (m.bw_ghz && *m.bw_ghz <= zero)
        fail(Errc::NonPositiveBandwidth, "bandwidth must be > 0, got " + m.bw_ghz->to_string(), "bw_ghz");
    if (m.bw_ant_ghz && *m.bw_ant_ghz <= zero)
        fail(Errc::NonPositiveBandwidth, "antenna bandwidth must be > 0, got " + m.bw_ant_ghz->to_string(),
             "bw_ant_ghz");
    for (const auto &[hpbw, name] : {std::pair{&m.hpbw_tx_deg, "hpbw_tx_deg"}, std::pair{&m.hpbw_rx_deg, "hpbw_rx_deg"}})
        if (*hpbw && (**hpbw <= zero || **hpbw >= deg360))
            fail(Errc::BeamwidthOutOfRange, std::string(name) + " must lie in (0, 360), got " + (*hpbw)->to_string(),
                 name);
    if (m.n_elements && *m.n_elements < 1)
        fail(Errc::InvalidElementCount, "n_elements must be >= 1", "n_elements");
    if (m.mobility && m.mobility->kind == MobilityKind::Static &&
        (m.mobility->speed_mps || !m.mobility->trajectory.empty()))
        fail(Errc::StaticWithMotion, "static measurements carry no speed or trajectory", "mobility");
    if (m.t_pdp && !m.t_pdp->has_any())
        fail(Errc::EmptyThresholdRule, "t_pdp names no criterion", "t_pdp");
    if (m.t_pas && !m.t_pas->has_any())
        fail(Errc::EmptyThresholdRule, "t_pas names no criterion", "t_pas");
    if (m.sll_db && *m.sll_db > zero)
        fail(Errc::PositiveSidelobeLevel, "sidelobe level is relative to the main lobe and must be <= 0 dB", "sll_db");
}

const PointRecord &PooledDataset::point(std::size_t i) const
{
    const auto &p = provenance.at(i);
    return campaigns.at(p.campaign_index).points.at(p.row);
}

} // namespace pointdata

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

#include "pointdata/io_format.hpp"

#include "csv.hpp"
#include "json_exact.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

namespace pointdata::io
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

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;)
    {
        auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

// Key comparison ignores case, whitespace and typographic punctuation.
std::string normalize_key(std::string_view key)
{
    std::string out;
    for (unsigned char c : key)
    {
        if (std::isspace(c) || std::string_view("._\\${}(),;/-").find(static_cast<char>(c)) != std::string_view::npos)
            continue;
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

// A document key maps to one canonical key, or to a pair split on `separator`
// (e.g. "G_TX/G_RX" = "27 dBi" sets both gains).
struct KeyTarget
{
    std::string first;
    std::string second; // empty for single keys
    char separator = 0;
    bool single_value_fills_both = false;
};

const std::vector<std::string_view> canonical_keys = {
    "institution", "campaign_id",   "map_ref",  "env",         "az_res_deg",  "el_res_deg", "mobility",
    "fc_ghz",      "bw_ghz",        "ptx_avg_dbm", "dr_max_db", "nf_db",      "rx_sens_dbm", "t_pdp",
    "t_pas",       "tau_max_ns",    "f_rep",    "waveform",    "dt_s_ns",     "fs_msps",    "sync",
    "sweep_fd",    "as_def",        "ant_model", "f_ant_op_band", "ant_type", "bw_ant_ghz", "g_tx_dbi",
    "g_rx_dbi",    "hpbw_tx_deg",   "hpbw_rx_deg", "sll_db",   "fbr_db",      "xpd_db",     "pol",
    "array_geometry", "n_elements", "pl_kind"};

const std::map<std::string, KeyTarget> &key_aliases()
{
    static const std::map<std::string, KeyTarget> aliases = [] {
        std::map<std::string, KeyTarget> m;
        for (auto k : canonical_keys)
            m[normalize_key(k)] = KeyTarget{std::string(k), {}, 0, false};
        auto single = [&](std::string_view alias, std::string_view target) {
            m[normalize_key(alias)] = KeyTarget{std::string(target), {}, 0, false};
        };
        auto pair = [&](std::string_view alias, std::string_view a, std::string_view b, char sep, bool fill) {
            m[normalize_key(alias)] = KeyTarget{std::string(a), std::string(b), sep, fill};
        };
        single("Env.", "env");
        single("Environment", "env");
        single("Az Resolution", "az_res_deg");
        single("El Resolution", "el_res_deg");
        pair("\xCE\x94\xCF\x86/\xCE\x94\xCE\xB8", "az_res_deg", "el_res_deg", '/', true); // Δφ/Δθ
        pair("Az/El Resolution", "az_res_deg", "el_res_deg", '/', true);
        single("v", "mobility");
        single("Mobility Conditions", "mobility");
        single("fc", "fc_ghz");
        single("f_c", "fc_ghz");
        single("Frequency", "fc_ghz");
        single("BW", "bw_ghz");
        single("Bandwidth", "bw_ghz");
        single("P_TX,avg", "ptx_avg_dbm");
        single("Average TX Power", "ptx_avg_dbm");
        single("DR_max", "dr_max_db");
        single("Max. Dynamic Range", "dr_max_db");
        single("NF", "nf_db");
        single("Noise Figure", "nf_db");
        single("Receiver Sensitivity", "rx_sens_dbm");
        single("T_PDP", "t_pdp");
        single("T_PAS", "t_pas");
        single("\xCF\x84_max", "tau_max_ns"); // τ_max
        pair("\xCF\x84_max; f_rep", "tau_max_ns", "f_rep", ';', false);
        single("L_PN, N_avg", "waveform");
        single("Waveform", "waveform");
        single("\xCE\x94t_s", "dt_s_ns"); // Δt_s
        single("f_s", "fs_msps");
        single("Sampling rate", "fs_msps");
        single("Sync.", "sync");
        single("Sweep Params", "sweep_fd");
        single("Sweep Params (FD)", "sweep_fd");
        single("AS Def.", "as_def");
        single("AS Definition", "as_def");
        single("Ant. Model", "ant_model");
        single("f_Ant,op", "f_ant_op_band");
        pair("Ant. Model; f_Ant,op", "ant_model", "f_ant_op_band", ';', false);
        single("Ant. Type", "ant_type");
        single("BW_Ant.", "bw_ant_ghz");
        single("G_TX", "g_tx_dbi");
        single("G_RX", "g_rx_dbi");
        pair("G_TX/G_RX", "g_tx_dbi", "g_rx_dbi", '/', true);
        single("HPBW_TX", "hpbw_tx_deg");
        single("HPBW_RX", "hpbw_rx_deg");
        pair("\xCE\xB8_3dB,TX/\xCE\xB8_3dB,RX", "hpbw_tx_deg", "hpbw_rx_deg", '/', true); // θ_3dB,TX/θ_3dB,RX
        pair("HPBW_TX/HPBW_RX", "hpbw_tx_deg", "hpbw_rx_deg", '/', true);
        single("SLL", "sll_db");
        single("FBR", "fbr_db");
        single("XPD", "xpd_db");
        single("Pol.", "pol");
        single("Array Geometry", "array_geometry");
        single("Number of Elements", "n_elements");
        single("PL kind", "pl_kind");
        return m;
    }();
    return aliases;
}

struct RawEntry
{
    std::string value;
    std::size_t line;
    std::string key; // as written
};

[[noreturn]] void value_error(const RawEntry &e, const std::string &canonical, const std::string &msg)
{
    throw Error(Errc::ValueParse, canonical + ": " + msg + " ('" + e.value + "')",
                ErrorLocation{e.line, canonical, e.value});
}

struct UnitScale
{
    std::string_view unit; // lower case
    int shift;             // multiply by 10^shift to reach the canonical unit
};

Decimal parse_quantity(const RawEntry &e, const std::string &key, std::initializer_list<UnitScale> units,
                       const std::string &text)
{
    static const std::regex re(R"(^\s*([+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?)\s*(.*?)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        value_error(e, key, "expected a number");
    auto d = Decimal::parse(m[1].str());
    if (!d)
        value_error(e, key, "number out of range");
    std::string unit = lower(m[2].str());
    for (const auto &u : units)
        if (u.unit == unit)
            return d->shifted(u.shift);
    value_error(e, key, "unexpected unit '" + m[2].str() + "'");
}

const std::initializer_list<UnitScale> freq_units{{"", 0}, {"ghz", 0}, {"mhz", -3}, {"khz", -6}, {"thz", 3}};
const std::initializer_list<UnitScale> db_units{{"", 0}, {"db", 0}};
const std::initializer_list<UnitScale> dbm_units{{"", 0}, {"dbm", 0}};
const std::initializer_list<UnitScale> dbi_units{{"", 0}, {"dbi", 0}, {"db", 0}};
const std::initializer_list<UnitScale> deg_units{{"", 0}, {"\xc2\xb0", 0}, {"deg", 0}, {"degrees", 0}};
const std::initializer_list<UnitScale> time_units{
    {"", 0}, {"ns", 0}, {"us", 3}, {"\xce\xbcs", 3}, {"\xc2\xb5s", 3}, {"ms", 6}, {"s", 9}};
const std::initializer_list<UnitScale> rate_units{{"", 0}, {"msps", 0}, {"ms/s", 0}, {"ksps", -3}, {"gsps", 3}};
const std::initializer_list<UnitScale> mm_units{{"", 0}, {"mm", 0}, {"cm", 1}};

CarrierFrequency parse_fc(const RawEntry &e, const FormatDialect &dialect, std::vector<CompatFinding> *notes)
{
    static const std::regex ref_re(R"(\(\s*(center|centre|start)\s*\)\s*$)", std::regex::icase);
    std::smatch m;
    CarrierFrequency fc;
    std::string text = e.value;
    if (std::regex_search(text, m, ref_re))
    {
        fc.ref = lower(m[1].str()) == "start" ? FreqReference::Start : FreqReference::Center;
        text = text.substr(0, static_cast<std::size_t>(m.position(0)));
    }
    else if (dialect.strict)
        value_error(e, "fc_ghz", "frequency must state (center) or (start)");
    else if (notes)
        notes->push_back(CompatFinding{Severity::Info, "FC_REFERENCE_DEFAULTED",
                                       "no (center)/(start) flag on fc; assuming center", "fc_ghz", {}});
    fc.ghz = parse_quantity(e, "fc_ghz", freq_units, text);
    return fc;
}

Mobility parse_mobility(const RawEntry &e)
{
    static const std::regex speed_re(R"(([0-9]+(?:\.[0-9]+)?)\s*m/s)", std::regex::icase);
    static const std::regex point_re(
        R"(\(\s*([+-]?[0-9]+(?:\.[0-9]+)?)\s*,\s*([+-]?[0-9]+(?:\.[0-9]+)?)\s*,\s*([+-]?[0-9]+(?:\.[0-9]+)?)\s*\))");
    Mobility mob;
    const std::string l = lower(trim(e.value));
    if (l.rfind("static", 0) == 0)
        mob.kind = MobilityKind::Static;
    else if (l.rfind("mobile", 0) == 0)
        mob.kind = MobilityKind::Mobile;
    else
        value_error(e, "mobility", "expected Static or Mobile");
    std::smatch m;
    if (std::regex_search(e.value, m, speed_re))
        mob.speed_mps = Decimal::parse(m[1].str());
    for (auto it = std::sregex_iterator(e.value.begin(), e.value.end(), point_re); it != std::sregex_iterator(); ++it)
    {
        auto x = Decimal::parse((*it)[1].str()), y = Decimal::parse((*it)[2].str()), t = Decimal::parse((*it)[3].str());
        if (!x || !y || !t)
            value_error(e, "mobility", "bad trajectory point");
        mob.trajectory.push_back(TrajectoryPoint{*x, *y, *t});
    }
    return mob;
}

std::string render_mobility(const Mobility &m)
{
    std::string out = m.kind == MobilityKind::Static ? "Static" : "Mobile";
    if (m.speed_mps)
        out += "; " + m.speed_mps->to_string() + " m/s";
    if (!m.trajectory.empty())
    {
        out += ";";
        for (const auto &p : m.trajectory)
            out += " (" + p.x.to_string() + ", " + p.y.to_string() + ", " + p.t.to_string() + ")";
    }
    return out;
}

RepetitionRate parse_rep_rate(const RawEntry &e)
{
    static const std::regex re(R"(^\s*([0-9]+(?:\.[0-9]+)?)\s*(\S+)\s*$)");
    std::smatch m;
    if (!std::regex_match(e.value, m, re))
        value_error(e, "f_rep", "expected '<value> <unit>'");
    const std::string unit = m[2].str();
    const std::string l = lower(unit);
    for (auto ok : {"s", "ms", "us", "\xce\xbcs", "\xc2\xb5s", "ns", "hz", "khz", "mhz"})
        if (l == ok)
            return RepetitionRate{*Decimal::parse(m[1].str()), unit};
    value_error(e, "f_rep", "unexpected unit '" + unit + "'");
}

AsDefinition parse_as_def(const RawEntry &e)
{
    const std::string l = lower(e.value);
    if (l.find("fleury") != std::string::npos)
        return AsDefinition::Fleury;
    if (l.find("3gpp") != std::string::npos || l.find("38.901") != std::string::npos || l.find("tgpp") != std::string::npos)
        return AsDefinition::TGPP;
    value_error(e, "as_def", "expected Fleury or 3GPP");
}

Polarization parse_pol(const RawEntry &e)
{
    const std::string l = lower(trim(e.value));
    if (l == "linear")
        return Polarization::Linear;
    if (l == "circular")
        return Polarization::Circular;
    if (l == "dual")
        return Polarization::Dual;
    value_error(e, "pol", "expected Linear, Circular or Dual");
}

ArrayGeometry parse_array(const RawEntry &e)
{
    std::string v = e.value;
    std::replace(v.begin(), v.end(), ',', ';');
    auto parts = split(v, ';');
    ArrayGeometry g;
    const std::string kind = lower(parts[0]);
    if (kind == "ula")
        g.kind = ArrayKind::ULA;
    else if (kind == "upa")
        g.kind = ArrayKind::UPA;
    else if (kind == "none")
        g.kind = ArrayKind::None;
    else
        value_error(e, "array_geometry", "expected ULA, UPA or None");
    if (parts.size() > 2)
        value_error(e, "array_geometry", "expected '<kind>[; <spacing> mm]'");
    if (parts.size() == 2)
        g.spacing_mm = parse_quantity(e, "array_geometry", mm_units, parts[1]);
    return g;
}

std::int64_t parse_count(const RawEntry &e, const std::string &key)
{
    const std::string t = trim(e.value);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }) || t.size() > 18)
        value_error(e, key, "expected a non-negative integer");
    return std::stoll(t);
}

// Reads key/value pairs from either document kind.
std::vector<std::pair<std::string, RawEntry>> read_entries(std::string_view bytes, const FormatDialect &dialect)
{
    std::vector<std::pair<std::string, RawEntry>> entries;
    if (dialect.kind == FormatKind::CanonicalJSON)
    {
        const auto doc = detail::parse_json_exact(bytes);
        if (!doc.is_object())
            throw Error(Errc::ValueParse, "metadata JSON must be an object");
        std::size_t index = 0;
        for (const auto &[key, value] : doc.items())
        {
            ++index;
            if (key == "format" || key == "version")
                continue;
            std::string text;
            if (value.is_string())
                text = value.get<std::string>();
            else if (value.is_number_integer())
                text = value.dump();
            else if (value.is_null())
                text = dialect.missing_token;
            else
                throw Error(Errc::ValueParse, "metadata value for '" + key + "' must be a string or number",
                            ErrorLocation{index, key, value.dump()});
            entries.emplace_back(key, RawEntry{text, index, key});
        }
        return entries;
    }

    for (const auto &row : detail::read_csv(bytes))
    {
        if (row.cells.size() == 2 && lower(row.cells[0]) == "key" && lower(row.cells[1]) == "value" && entries.empty())
            continue;
        if (row.cells.size() != 2)
            throw Error(Errc::ValueParse,
                        "line " + std::to_string(row.line) + ": expected 'key,value', got " +
                            std::to_string(row.cells.size()) + " fields",
                        ErrorLocation{row.line, row.cells.empty() ? std::string() : row.cells[0], {}});
        entries.emplace_back(row.cells[0], RawEntry{row.cells[1], row.line, row.cells[0]});
    }
    return entries;
}

} // namespace

const std::vector<std::string_view> &metadata_keys() { return canonical_keys; }

MetadataRecord parse_metadata(std::string_view bytes, const FormatDialect &dialect, std::vector<CompatFinding> *notes)
{
    dialect.check();
    const auto &aliases = key_aliases();

    // canonical key -> value
    std::map<std::string, RawEntry> values;
    auto assign = [&](const std::string &key, RawEntry e) {
        if (values.count(key))
            throw Error(Errc::DuplicateKey, "key '" + key + "' given more than once", ErrorLocation{e.line, key, e.key});
        values.emplace(key, std::move(e));
    };

    for (auto &[key, entry] : read_entries(bytes, dialect))
    {
        auto it = aliases.find(normalize_key(key));
        if (it == aliases.end())
        {
            if (dialect.strict)
                throw Error(Errc::UnknownKey, "unknown metadata key '" + key + "'", ErrorLocation{entry.line, key, key});
            if (notes)
                notes->push_back(CompatFinding{Severity::Info, "UNKNOWN_KEY", "ignored unknown metadata key '" + key + "'",
                                               key, {}});
            continue;
        }
        const KeyTarget &target = it->second;
        if (target.second.empty())
        {
            assign(target.first, entry);
            continue;
        }
        auto parts = split(entry.value, target.separator);
        if (parts.size() == 1 && target.single_value_fills_both)
            parts.push_back(parts[0]);
        if (parts.size() != 2)
            throw Error(Errc::ValueParse,
                        "key '" + key + "' expects two values separated by '" + std::string(1, target.separator) + "'",
                        ErrorLocation{entry.line, target.first, entry.value});
        assign(target.first, RawEntry{parts[0], entry.line, entry.key});
        assign(target.second, RawEntry{parts[1], entry.line, entry.key});
    }

    // Missing-token entries are absent fields.
    for (auto it = values.begin(); it != values.end();)
    {
        const std::string v = trim(it->second.value);
        if (v.empty() || v == dialect.missing_token)
            it = values.erase(it);
        else
        {
            it->second.value = v;
            ++it;
        }
    }

    for (const char *required : {"env", "fc_ghz"})
        if (!values.count(required))
            throw Error(Errc::MissingRequired, std::string("required metadata field '") + required + "' is absent",
                        ErrorLocation{0, required, {}});

    MetadataFields f;
    auto get = [&](const char *key) -> const RawEntry * {
        auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    };
    auto quantity = [&](const char *key, std::initializer_list<UnitScale> units) -> std::optional<Decimal> {
        if (auto e = get(key))
            return parse_quantity(*e, key, units, e->value);
        return std::nullopt;
    };
    auto text = [&](const char *key) -> std::optional<std::string> {
        if (auto e = get(key))
            return e->value;
        return std::nullopt;
    };
    // Structured parsers raise ValueParse without a location; attach it here.
    auto located = [&](const char *key, auto &&parse) {
        const RawEntry *e = get(key);
        using R = decltype(parse(*e));
        if (!e)
            return std::optional<R>{};
        try
        {
            return std::optional<R>{parse(*e)};
        }
        catch (const Error &err)
        {
            if (err.where().row != 0)
                throw;
            throw Error(err.code(), std::string(err.what()), ErrorLocation{e->line, key, e->value});
        }
    };

    {
        const RawEntry &e = *get("env");
        auto env = parse_environment(e.value);
        if (!env)
            value_error(e, "env", "expected one of UMi, UMa, RMa, InH, InF");
        f.env = *env;
    }
    f.fc = parse_fc(*get("fc_ghz"), dialect, notes);
    f.az_res_deg = quantity("az_res_deg", deg_units);
    f.el_res_deg = quantity("el_res_deg", deg_units);
    f.mobility = located("mobility", [](const RawEntry &e) { return parse_mobility(e); });
    f.bw_ghz = quantity("bw_ghz", freq_units);
    f.ptx_avg_dbm = quantity("ptx_avg_dbm", dbm_units);
    f.dr_max_db = quantity("dr_max_db", db_units);
    f.nf_db = quantity("nf_db", db_units);
    f.rx_sens_dbm = quantity("rx_sens_dbm", dbm_units);
    f.t_pdp = located("t_pdp", [](const RawEntry &e) { return ThresholdSpec::from_text(e.value); });
    f.t_pas = located("t_pas", [](const RawEntry &e) { return ThresholdSpec::from_text(e.value); });
    f.tau_max_ns = quantity("tau_max_ns", time_units);
    f.f_rep = located("f_rep", [](const RawEntry &e) { return parse_rep_rate(e); });
    f.waveform = located("waveform", [](const RawEntry &e) { return Waveform::from_text(e.value); });
    f.dt_s_ns = quantity("dt_s_ns", time_units);
    f.fs_msps = quantity("fs_msps", rate_units);
    f.sync = located("sync", [](const RawEntry &e) { return SyncSpec::from_text(e.value); });
    f.sweep_fd = located("sweep_fd", [](const RawEntry &e) { return SweepParams::from_text(e.value); });
    f.as_def = located("as_def", [](const RawEntry &e) { return parse_as_def(e); });
    f.ant_model = text("ant_model");
    f.f_ant_op_band = text("f_ant_op_band");
    f.ant_type = located("ant_type", [](const RawEntry &e) { return AntennaType::from_text(e.value); });
    f.bw_ant_ghz = quantity("bw_ant_ghz", freq_units);
    f.g_tx_dbi = quantity("g_tx_dbi", dbi_units);
    f.g_rx_dbi = quantity("g_rx_dbi", dbi_units);
    f.hpbw_tx_deg = quantity("hpbw_tx_deg", deg_units);
    f.hpbw_rx_deg = quantity("hpbw_rx_deg", deg_units);
    f.sll_db = quantity("sll_db", db_units);
    f.fbr_db = quantity("fbr_db", db_units);
    f.xpd_db = quantity("xpd_db", db_units);
    f.pol = located("pol", [](const RawEntry &e) { return parse_pol(e); });
    f.array_geometry = located("array_geometry", [](const RawEntry &e) { return parse_array(e); });
    if (auto e = get("n_elements"))
        f.n_elements = parse_count(*e, "n_elements");
    if (auto v = text("pl_kind"))
        f.pl_kind = *v;
    f.institution = text("institution");
    f.campaign_id = text("campaign_id");
    f.map_ref = text("map_ref");

    try
    {
        return MetadataRecord(std::move(f));
    }
    catch (const Error &err)
    {
        const RawEntry *e = get(err.where().column.c_str());
        throw Error(err.code(), std::string(err.what()),
                    ErrorLocation{e ? e->line : 0, err.where().column, e ? e->value : std::string()});
    }
}

std::string write_metadata(const MetadataRecord &meta, const FormatDialect &dialect, MetadataLayout layout)
{
    dialect.check();
    const auto &f = meta.fields();

    std::map<std::string_view, std::optional<std::string>> v;
    auto q = [](const std::optional<Decimal> &d, const char *unit) -> std::optional<std::string> {
        if (!d)
            return std::nullopt;
        return d->to_string() + (*unit ? std::string(" ") + unit : std::string());
    };
    v["institution"] = f.institution;
    v["campaign_id"] = f.campaign_id;
    v["map_ref"] = f.map_ref;
    v["env"] = std::string(to_string(f.env));
    v["az_res_deg"] = q(f.az_res_deg, "deg");
    v["el_res_deg"] = q(f.el_res_deg, "deg");
    if (f.mobility)
        v["mobility"] = render_mobility(*f.mobility);
    v["fc_ghz"] = f.fc.ghz.to_string() + " GHz (" + (f.fc.ref == FreqReference::Center ? "center" : "start") + ")";
    v["bw_ghz"] = q(f.bw_ghz, "GHz");
    v["ptx_avg_dbm"] = q(f.ptx_avg_dbm, "dBm");
    v["dr_max_db"] = q(f.dr_max_db, "dB");
    v["nf_db"] = q(f.nf_db, "dB");
    v["rx_sens_dbm"] = q(f.rx_sens_dbm, "dBm");
    if (f.t_pdp)
        v["t_pdp"] = f.t_pdp->text;
    if (f.t_pas)
        v["t_pas"] = f.t_pas->text;
    v["tau_max_ns"] = q(f.tau_max_ns, "ns");
    if (f.f_rep)
        v["f_rep"] = f.f_rep->value.to_string() + " " + f.f_rep->unit;
    if (f.waveform)
        v["waveform"] = f.waveform->text;
    v["dt_s_ns"] = q(f.dt_s_ns, "ns");
    v["fs_msps"] = q(f.fs_msps, "Msps");
    if (f.sync)
        v["sync"] = f.sync->text;
    if (f.sweep_fd)
        v["sweep_fd"] = f.sweep_fd->text;
    if (f.as_def)
        v["as_def"] = std::string(to_string(*f.as_def));
    v["ant_model"] = f.ant_model;
    v["f_ant_op_band"] = f.f_ant_op_band;
    if (f.ant_type)
        v["ant_type"] = f.ant_type->to_text();
    v["bw_ant_ghz"] = q(f.bw_ant_ghz, "GHz");
    v["g_tx_dbi"] = q(f.g_tx_dbi, "dBi");
    v["g_rx_dbi"] = q(f.g_rx_dbi, "dBi");
    v["hpbw_tx_deg"] = q(f.hpbw_tx_deg, "deg");
    v["hpbw_rx_deg"] = q(f.hpbw_rx_deg, "deg");
    v["sll_db"] = q(f.sll_db, "dB");
    v["fbr_db"] = q(f.fbr_db, "dB");
    v["xpd_db"] = q(f.xpd_db, "dB");
    if (f.pol)
        v["pol"] = std::string(to_string(*f.pol));
    if (f.array_geometry)
        v["array_geometry"] = std::string(to_string(f.array_geometry->kind)) +
                              (f.array_geometry->spacing_mm ? "; " + f.array_geometry->spacing_mm->to_string() + " mm"
                                                            : std::string());
    if (f.n_elements)
        v["n_elements"] = std::to_string(*f.n_elements);
    if (layout == MetadataLayout::Full || f.pl_kind != "unspecified")
        v["pl_kind"] = f.pl_kind;

    std::vector<std::pair<std::string, std::string>> rows;
    for (auto key : canonical_keys)
    {
        auto it = v.find(key);
        const bool present = it != v.end() && it->second.has_value();
        if (present)
            rows.emplace_back(key, *it->second);
        else if (layout == MetadataLayout::Full)
            rows.emplace_back(key, dialect.missing_token);
    }

    if (dialect.kind == FormatKind::CanonicalJSON)
    {
        nlohmann::ordered_json doc;
        doc["format"] = "meta";
        doc["version"] = dialect.version;
        for (const auto &[key, value] : rows)
            doc[key] = value;
        return doc.dump(2) + "\n";
    }
    std::string out;
    for (const auto &[key, value] : rows)
        out += detail::csv_line({key, value});
    return out;
}

Campaign load_campaign(const std::filesystem::path &meta_path, const std::filesystem::path &points_path,
                       const FormatDialect &dialect, std::vector<CompatFinding> *notes)
{
    auto meta = parse_metadata(read_file(meta_path), dialect_for(meta_path, dialect), notes);
    auto points = parse_point_table(read_file(points_path), dialect_for(points_path, dialect));

    std::string stem = points_path.filename().string();
    if (auto pos = stem.find(".pointdata"); pos != std::string::npos)
        stem = stem.substr(0, pos);
    else
        stem = points_path.stem().string();

    Campaign c{meta.fields().institution.value_or(stem), meta.fields().campaign_id.value_or(stem), meta,
               std::move(points), meta.fields().map_ref};
    return c;
}

} // namespace pointdata::io

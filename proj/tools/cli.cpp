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

#include "cli.hpp"

#include "svg.hpp"

#include "pointdata/analysis.hpp"
#include "pointdata/derivation.hpp"
#include "pointdata/io_format.hpp"
#include "pointdata/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>

namespace pointdata::cli
{

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace
{

// Usage-level failure that is not a pointdata::Error (bad flag combination, missing file).
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    std::vector<std::string> inputs;
    std::string dialect = "csv";
    bool strict = true;
    double freq_rel_tol = validation::CompatPolicy{}.freq_rel_tol;
    bool require_same_env = true;
    bool block_on_missing_threshold = false;
    std::string out = ".";
    bool figures = false;
    bool force = false;
    std::string model = "ci";
    std::string split = "both";
    std::string column = "omni_ds_ns";
    std::string fspl = "per-point";
    std::string meta;
    std::string geometry;
    std::string profiles;
    std::string config;

    io::FormatDialect format() const
    {
        io::FormatDialect d = dialect == "json" ? io::json_dialect : io::csv_dialect;
        d.strict = strict;
        return d;
    }

    validation::CompatPolicy policy() const
    {
        validation::CompatPolicy p;
        p.freq_rel_tol = freq_rel_tol;
        p.require_same_env = require_same_env;
        p.block_on_missing_threshold = block_on_missing_threshold;
        return p;
    }

    std::string extension() const { return dialect == "json" ? ".json" : ".csv"; }
};

std::string fmt(double v)
{
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

int exit_code_for(Errc c)
{
    switch (c)
    {
    case Errc::EmptyAfterThreshold:
    case Errc::NoPower:
    case Errc::DegenerateSpectrum:
    case Errc::MissingMetadata:
    case Errc::EmptyInput:
    case Errc::DistanceBelowReference:
    case Errc::RankDeficient:
    case Errc::NonPositiveSample:
    case Errc::PoolBlocked:
        return exit_domain;
    default:
        return exit_usage;
    }
}

std::string describe(const Error &e)
{
    std::string s = e.what();
    const auto &w = e.where();
    if (!w.column.empty())
        s += " [column '" + w.column + "']";
    if (w.row)
        s += " [line " + std::to_string(w.row) + "]";
    return s;
}

// ---------- campaign inputs ----------

bool has_part(const std::string &name, const char *part)
{
    return name.find(part) != std::string::npos;
}

fs::path sibling(const fs::path &p, const char *from, const char *to)
{
    const std::string name = p.filename().string();
    const std::string stem = name.substr(0, name.find(from));
    for (const char *ext : {".csv", ".json"})
    {
        fs::path candidate = p.parent_path() / (stem + to + ext);
        if (fs::exists(candidate))
            return candidate;
    }
    throw UsageError("no " + std::string(to + 1) + " file next to '" + p.string() + "'");
}

std::vector<std::pair<fs::path, fs::path>> resolve_inputs(const std::vector<std::string> &inputs)
{
    std::vector<std::pair<fs::path, fs::path>> out;
    for (const auto &in : inputs)
    {
        const fs::path p(in);
        if (fs::is_directory(p))
        {
            std::vector<fs::path> metas;
            for (const auto &entry : fs::directory_iterator(p))
                if (entry.is_regular_file() && has_part(entry.path().filename().string(), ".meta."))
                    metas.push_back(entry.path());
            std::sort(metas.begin(), metas.end());
            if (metas.empty())
                throw UsageError("no campaign metadata in directory '" + in + "'");
            for (const auto &m : metas)
                out.emplace_back(m, sibling(m, ".meta.", ".pointdata"));
            continue;
        }
        if (!fs::exists(p))
            throw UsageError("no such file '" + in + "'");
        const std::string name = p.filename().string();
        if (has_part(name, ".meta."))
            out.emplace_back(p, sibling(p, ".meta.", ".pointdata"));
        else if (has_part(name, ".pointdata."))
            out.emplace_back(sibling(p, ".pointdata.", ".meta"), p);
        else
            throw UsageError("'" + in + "' is neither a .meta nor a .pointdata file");
    }
    return out;
}

std::vector<Campaign> load_campaigns(const RunConfig &cfg, std::vector<CompatFinding> *notes)
{
    std::vector<Campaign> out;
    for (const auto &[meta, points] : resolve_inputs(cfg.inputs))
    {
        std::vector<CompatFinding> local;
        out.push_back(io::load_campaign(meta, points, cfg.format(), &local));
        for (auto &n : local)
        {
            n.campaigns = {out.back().campaign_id};
            if (notes)
                notes->push_back(std::move(n));
        }
    }
    return out;
}

void ensure_out_dir(const RunConfig &cfg)
{
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (!fs::is_directory(cfg.out))
        throw UsageError("cannot create output directory '" + cfg.out + "'");
}

std::string findings_json(const std::vector<CompatFinding> &findings)
{
    ordered_json arr = ordered_json::array();
    for (const auto &f : findings)
    {
        ordered_json j;
        j["severity"] = std::string(to_string(f.severity));
        j["code"] = f.code;
        j["field"] = f.field;
        j["message"] = f.message;
        j["campaigns"] = f.campaigns;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

analysis::Split split_of(const RunConfig &cfg)
{
    auto s = analysis::parse_split(cfg.split);
    if (!s)
        throw UsageError("--split must be los, nlos or both");
    return *s;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// ---------- commands ----------

int cmd_validate(const RunConfig &cfg, std::ostream &out)
{
    std::vector<CompatFinding> findings;
    auto campaigns = load_campaigns(cfg, &findings);
    for (const auto &c : campaigns)
    {
        auto f = validation::validate_campaign(c);
        findings.insert(findings.end(), f.begin(), f.end());
    }
    const auto policy = cfg.policy();
    for (std::size_t i = 0; i < campaigns.size(); ++i)
        for (std::size_t j = i + 1; j < campaigns.size(); ++j)
        {
            auto f = validation::assess_pooling(campaigns[i], campaigns[j], policy);
            findings.insert(findings.end(), f.begin(), f.end());
        }
    out << validation::to_json_lines(findings);
    return validation::has_block(findings) ? exit_domain : exit_ok;
}

// Pools with every finding collected; returns nullopt after reporting when blocked.
std::optional<PooledDataset> pooled_or_report(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    auto pooled = validation::pool(load_campaigns(cfg, nullptr), cfg.policy(), true);
    if (validation::has_block(pooled.compat_report) && !cfg.force)
    {
        out << validation::to_json_lines(pooled.compat_report);
        err << "error: pooling blocked; rerun with --force to override\n";
        return std::nullopt;
    }
    return pooled;
}

int cmd_merge(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    if (resolve_inputs(cfg.inputs).size() < 2)
        throw UsageError("merge needs at least two campaigns");
    auto pooled = validation::pool(load_campaigns(cfg, nullptr), cfg.policy(), true);
    ensure_out_dir(cfg);
    io::write_file(fs::path(cfg.out) / "compat.json", findings_json(pooled.compat_report));
    out << validation::to_json_lines(pooled.compat_report);
    if (validation::has_block(pooled.compat_report) && !cfg.force)
    {
        err << "error: pooling blocked; see compat.json or rerun with --force\n";
        return exit_domain;
    }
    const fs::path target = fs::path(cfg.out) / ("pooled.pointdata" + cfg.extension());
    io::write_file(target, io::write_pooled_table(pooled, cfg.format()));
    err << "wrote " << target.string() << " (" << pooled.size() << " points)\n";
    return exit_ok;
}

int cmd_fit(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    const auto split = split_of(cfg);
    if (cfg.model != "ci" && cfg.model != "abg")
        throw UsageError("--model must be ci or abg");
    if (cfg.fspl != "per-point" && cfg.fspl != "common")
        throw UsageError("--fspl must be per-point or common");
    auto pooled = pooled_or_report(cfg, out, err);
    if (!pooled)
        return exit_domain;

    const std::vector<analysis::Split> splits =
        split == analysis::Split::Both ? std::vector{analysis::Split::LOS, analysis::Split::NLOS}
                                       : std::vector{split};
    const auto mode = cfg.fspl == "common" ? analysis::FsplMode::Common : analysis::FsplMode::PerPoint;

    ordered_json results = ordered_json::array();
    std::vector<FitLine> lines;
    bool failed = false;
    for (auto s : splits)
    {
        try
        {
            const auto samples = analysis::path_loss_samples(*pooled, s);
            if (cfg.model == "ci")
            {
                const auto fit = analysis::fit_ci(samples, mode);
                results.push_back(analysis::to_json(fit, s));
                lines.push_back({std::string(analysis::to_string(s)), fit.ple, fit.fspl_ref_db});
            }
            else
                results.push_back(analysis::to_json(analysis::fit_abg(samples), s));
        }
        catch (const Error &e)
        {
            failed = true;
            err << "error: " << analysis::to_string(s) << ": " << describe(e) << "\n";
            ordered_json j;
            j["model"] = cfg.model == "ci" ? "CI" : "ABG";
            j["split"] = std::string(analysis::to_string(s));
            j["error"] = std::string(to_string(e.code()));
            results.push_back(j);
        }
    }

    ensure_out_dir(cfg);
    const auto rows = analysis::scatter_data(*pooled, split);
    std::string csv = "tr_sep_m,pl_db,freq_ghz,campaign_id,loc\n";
    for (const auto &r : rows)
        csv += fmt(r.tr_sep_m) + "," + fmt(r.pl_db) + "," + fmt(r.freq_ghz) + "," + r.campaign_id + "," +
               std::string(to_string(r.loc)) + "\n";
    io::write_file(fs::path(cfg.out) / "scatter.csv", csv);
    io::write_file(fs::path(cfg.out) / "fit.json", results.dump(2) + "\n");
    if (cfg.figures)
        io::write_file(fs::path(cfg.out) / "fit.svg", scatter_svg(rows, lines));
    out << results.dump(2) << "\n";
    return failed ? exit_domain : exit_ok;
}

int cmd_stats(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    const auto split = split_of(cfg);
    const auto column = column_by_name(cfg.column);
    const auto numeric = numeric_column_names();
    if (!column || std::find(numeric.begin(), numeric.end(), cfg.column) == numeric.end())
    {
        std::string valid;
        for (auto n : numeric)
            valid += (valid.empty() ? "" : ", ") + std::string(n);
        throw UsageError("unknown numeric column '" + cfg.column + "'; valid columns: " + valid);
    }
    auto pooled = pooled_or_report(cfg, out, err);
    if (!pooled)
        return exit_domain;

    const auto values = analysis::column_values(*pooled, *column, split);
    const auto cdf = analysis::empirical_cdf(values);
    const std::string tag = cfg.column + "_" + lower(analysis::to_string(split));

    ordered_json j;
    j["column"] = cfg.column;
    j["split"] = std::string(analysis::to_string(split));
    j["n_points"] = values.size();
    try
    {
        j["lognormal"] = analysis::to_json(analysis::lognormal_stats(values));
    }
    catch (const Error &e)
    {
        if (e.code() != Errc::NonPositiveSample)
            throw;
        err << "warning: lognormal statistics omitted: " << describe(e) << "\n";
        j["lognormal"] = nullptr;
    }

    ensure_out_dir(cfg);
    std::string csv = "value,probability\n";
    for (std::size_t i = 0; i < cdf.sorted_values.size(); ++i)
        csv += fmt(cdf.sorted_values[i]) + "," + fmt(cdf.probabilities[i]) + "\n";
    io::write_file(fs::path(cfg.out) / ("cdf_" + tag + ".csv"), csv);
    io::write_file(fs::path(cfg.out) / ("stats_" + tag + ".json"), j.dump(2) + "\n");
    if (cfg.figures)
        io::write_file(fs::path(cfg.out) / ("cdf_" + tag + ".svg"),
                       cdf_svg({{std::string(analysis::to_string(split)), cdf}}, cfg.column));
    out << j.dump(2) << "\n";
    return exit_ok;
}

int cmd_derive(const RunConfig &cfg, std::ostream &err)
{
    if (cfg.meta.empty() || cfg.geometry.empty())
        throw UsageError("derive needs --meta and --geometry");
    const fs::path meta_path(cfg.meta), geometry_path(cfg.geometry);
    const auto meta = io::parse_metadata(io::read_file(meta_path), io::dialect_for(meta_path, cfg.format()));
    if (!meta.fields().t_pdp)
        throw Error(Errc::MissingRequired, "metadata does not state T_PDP", {0, "t_pdp", ""});
    if (!meta.fields().as_def)
        throw Error(Errc::MissingRequired, "metadata does not state the AS definition", {0, "as_def", ""});

    const fs::path profile_dir = cfg.profiles.empty() ? geometry_path.parent_path() : fs::path(cfg.profiles);
    const auto scene = derivation::parse_geometry(io::read_file(geometry_path));

    std::vector<PointRecord> rows;
    bool failed = false;
    for (const auto &entry : scene)
    {
        const auto &g = entry.geometry;
        const auto dirs = derivation::parse_profiles(io::read_file(profile_dir / entry.profiles));
        try
        {
            rows.push_back(derivation::derive_point(dirs, meta, g));
        }
        catch (const Error &e)
        {
            if (e.code() == Errc::EmptyAfterThreshold)
            {
                err << "warning: skipping " << g.tx_id << "/" << g.rx_id << ": " << describe(e) << "\n";
                continue;
            }
            if (!is_invariant_violation(e.code()) && exit_code_for(e.code()) != exit_domain)
                throw;
            err << "error: " << g.tx_id << "/" << g.rx_id << ": " << describe(e) << "\n";
            failed = true;
        }
    }

    ensure_out_dir(cfg);
    const fs::path target = fs::path(cfg.out) / ("derived.pointdata" + cfg.extension());
    io::write_file(target, io::write_point_table(rows, cfg.format()));
    err << "wrote " << target.string() << " (" << rows.size() << " points)\n";
    return failed || rows.empty() ? exit_domain : exit_ok;
}

// ---------- options ----------

struct Registered
{
    std::map<std::string, CLI::Option *> options;
    bool used(const std::string &key) const
    {
        auto it = options.find(key);
        return it != options.end() && it->second->count() > 0;
    }
};

void add_common(CLI::App *sub, RunConfig &cfg, bool takes_inputs)
{
    if (takes_inputs)
        sub->add_option("inputs", cfg.inputs, "Campaign files (.meta / .pointdata) or directories");
    sub->add_option("--dialect", cfg.dialect, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "Output directory");
    sub->add_flag("--strict,!--lenient", cfg.strict, "Exact canonical headers and keys");
    sub->add_flag("--figures", cfg.figures, "Write SVG figures");
    sub->add_option("--config", cfg.config, "JSON run configuration; flags override it");
}

template <class T> void take(const nlohmann::json &j, const char *key, T &dst, const Registered &reg)
{
    auto it = j.find(key);
    if (it == j.end() || reg.used(key))
        return;
    try
    {
        dst = it->get<T>();
    }
    catch (const nlohmann::json::exception &)
    {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
    }
}

void apply_config(RunConfig &cfg, const Registered &reg)
{
    if (cfg.config.empty())
        return;
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(io::read_file(cfg.config));
    }
    catch (const nlohmann::json::exception &e)
    {
        throw UsageError("config '" + cfg.config + "': " + e.what());
    }
    if (!j.is_object())
        throw UsageError("config '" + cfg.config + "' must be a JSON object");
    static const char *const known[] = {"inputs", "dialect", "strict", "freq_rel_tol", "require_same_env",
                                        "block_on_missing_threshold", "out", "figures", "force", "model",
                                        "split", "column", "fspl", "meta", "geometry", "profiles"};
    for (const auto &[key, value] : j.items())
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw UsageError("config '" + cfg.config + "': unknown key '" + key + "'");

    take(j, "inputs", cfg.inputs, reg);
    take(j, "dialect", cfg.dialect, reg);
    take(j, "strict", cfg.strict, reg);
    take(j, "freq_rel_tol", cfg.freq_rel_tol, reg);
    take(j, "require_same_env", cfg.require_same_env, reg);
    take(j, "block_on_missing_threshold", cfg.block_on_missing_threshold, reg);
    take(j, "out", cfg.out, reg);
    take(j, "figures", cfg.figures, reg);
    take(j, "force", cfg.force, reg);
    take(j, "model", cfg.model, reg);
    take(j, "split", cfg.split, reg);
    take(j, "column", cfg.column, reg);
    take(j, "fspl", cfg.fspl, reg);
    take(j, "meta", cfg.meta, reg);
    take(j, "geometry", cfg.geometry, reg);
    take(j, "profiles", cfg.profiles, reg);
    if (cfg.dialect != "csv" && cfg.dialect != "json")
        throw UsageError("dialect must be csv or json");
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    RunConfig cfg;
    CLI::App app{"Point-data tools for radio propagation measurement campaigns", "pointdata"};
    app.require_subcommand(1);

    auto *validate = app.add_subcommand("validate", "Check campaigns and print findings as JSON lines");
    add_common(validate, cfg, true);
    validate->add_option("--freq-tol", cfg.freq_rel_tol, "Relative carrier tolerance for pooling");

    auto *merge = app.add_subcommand("merge", "Pool campaigns into one table with provenance");
    add_common(merge, cfg, true);
    merge->add_option("--freq-tol", cfg.freq_rel_tol, "Relative carrier tolerance for pooling");
    merge->add_flag("--force", cfg.force, "Write the pool despite Block findings");

    auto *fit = app.add_subcommand("fit", "Fit CI or ABG path loss models");
    add_common(fit, cfg, true);
    fit->add_option("--model", cfg.model, "ci or abg");
    fit->add_option("--split", cfg.split, "los, nlos or both");
    fit->add_option("--fspl", cfg.fspl, "per-point or common FSPL reference");
    fit->add_option("--freq-tol", cfg.freq_rel_tol, "Relative carrier tolerance for pooling");
    fit->add_flag("--force", cfg.force, "Fit despite Block findings");

    auto *stats = app.add_subcommand("stats", "Lognormal statistics and empirical CDF of a column");
    add_common(stats, cfg, true);
    stats->add_option("--column", cfg.column, "Numeric point-data column");
    stats->add_option("--split", cfg.split, "los, nlos or both");
    stats->add_option("--freq-tol", cfg.freq_rel_tol, "Relative carrier tolerance for pooling");
    stats->add_flag("--force", cfg.force, "Compute despite Block findings");

    auto *derive = app.add_subcommand("derive", "Derive point data from raw directional profiles");
    add_common(derive, cfg, false);
    derive->add_option("--meta", cfg.meta, "Campaign metadata document");
    derive->add_option("--geometry", cfg.geometry, "Scene geometry JSON");
    derive->add_option("--profiles", cfg.profiles, "Directory holding the raw profile files");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    // Config values apply only where the active subcommand's flag was not given.
    CLI::App *active = app.get_subcommands().front();
    Registered reg;
    for (const char *name : {"--freq-tol", "--force", "--model", "--split", "--fspl", "--column", "--meta",
                             "--geometry", "--profiles"})
    {
        std::string key = std::string(name + 2);
        std::replace(key.begin(), key.end(), '-', '_');
        if (key == "freq_tol")
            key = "freq_rel_tol";
        try
        {
            reg.options[key] = active->get_option(name);
        }
        catch (const CLI::OptionNotFound &)
        {
        }
    }
    for (const char *name : {"inputs", "--dialect", "--out", "--strict", "--figures", "--config"})
    {
        std::string key = name[0] == '-' ? std::string(name + 2) : std::string(name);
        try
        {
            reg.options[key] = active->get_option(name);
        }
        catch (const CLI::OptionNotFound &)
        {
        }
    }

    try
    {
        apply_config(cfg, reg);
        if (active != derive && cfg.inputs.empty())
            throw UsageError("no input campaigns given");
        cfg.policy().check();

        if (active == validate)
            return cmd_validate(cfg, out);
        if (active == merge)
            return cmd_merge(cfg, out, err);
        if (active == fit)
            return cmd_fit(cfg, out, err);
        if (active == stats)
            return cmd_stats(cfg, out, err);
        return cmd_derive(cfg, err);
    }
    catch (const validation::PoolBlockedError &e)
    {
        out << validation::to_json_lines(e.blocking());
        err << "error: " << e.what() << "\n";
        return exit_domain;
    }
    catch (const Error &e)
    {
        err << "error: " << describe(e) << "\n";
        return exit_code_for(e.code());
    }
    catch (const UsageError &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace pointdata::cli

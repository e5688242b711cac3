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

#include "pointdata/validation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace pointdata::validation
{

namespace
{

std::string percent(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * x);
    return buf;
}

CompatFinding finding(Severity s, const char *code, std::string field, std::string message,
                      std::vector<std::string> campaigns)
{
    return CompatFinding{s, code, std::move(message), std::move(field), std::move(campaigns)};
}

bool any_angular_populated(const std::vector<PointRecord> &points)
{
    for (const auto &p : points)
    {
        const auto &f = p.fields();
        for (const Decimal *d : {&f.mean_lobe_asa_deg, &f.omni_asa_deg, &f.mean_lobe_asd_deg, &f.omni_asd_deg,
                                 &f.mean_lobe_zsa_deg, &f.omni_zsa_deg, &f.mean_lobe_zsd_deg, &f.omni_zsd_deg})
            if (d->sign() != 0)
                return true;
    }
    return false;
}

bool same_rule(const ThresholdSpec &a, const ThresholdSpec &b)
{
    return a.rel_peak_db == b.rel_peak_db && a.above_noise_db == b.above_noise_db && a.gate_ns == b.gate_ns &&
           a.combine == b.combine;
}

} // namespace

void CompatPolicy::check() const
{
    if (!(freq_rel_tol >= 0.0 && freq_rel_tol <= 1.0))
        throw Error(Errc::InvalidPolicy, "freq_rel_tol must lie in [0, 1]");
    if (!(warn_on_hpbw_ratio_gt >= 1.0))
        throw Error(Errc::InvalidPolicy, "warn_on_hpbw_ratio_gt must be >= 1");
}

std::vector<CompatFinding> validate_campaign(const Campaign &c)
{
    std::vector<CompatFinding> out;
    const auto &meta = c.metadata.fields();
    const std::vector<std::string> ids{c.campaign_id};

    if (c.points.empty())
        out.push_back(finding(Severity::Info, code::empty_campaign, "", "campaign has no point rows", ids));

    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    for (std::size_t i = 0; i < c.points.size(); ++i)
    {
        const auto &f = c.points[i].fields();
        auto [it, inserted] = seen.emplace(std::pair{f.tx_id, f.rx_id}, i);
        if (!inserted)
            out.push_back(finding(Severity::Block, code::dup_pair, "tx,rx",
                                  "(" + f.tx_id + ", " + f.rx_id + ") appears in rows " + std::to_string(it->second + 1) +
                                      " and " + std::to_string(i + 1),
                                  ids));
    }

    const double fc = meta.fc.ghz.to_double();
    std::set<Decimal> off;
    std::size_t off_rows = 0;
    for (const auto &p : c.points)
    {
        if (std::abs(p.freq_ghz() - fc) / fc > campaign_freq_rel_tol)
        {
            off.insert(p.fields().freq_ghz);
            ++off_rows;
        }
    }
    if (off_rows)
    {
        std::string values;
        for (const auto &d : off)
            values += (values.empty() ? "" : ", ") + d.to_string();
        out.push_back(finding(Severity::Block, code::freq_mismatch, "freq_ghz",
                              std::to_string(off_rows) + " row(s) at " + values + " GHz differ from metadata fc " +
                                  meta.fc.ghz.to_string() + " GHz by more than " + percent(campaign_freq_rel_tol),
                              ids));
    }

    std::size_t close_rows = 0;
    for (const auto &p : c.points)
        if (p.tr_sep_m() <= 1.0)
            ++close_rows;
    if (close_rows)
        out.push_back(finding(Severity::Warn, code::below_reference_distance, "tr_sep_m",
                              std::to_string(close_rows) + " row(s) at or inside the 1 m reference distance", ids));

    if (!meta.as_def && any_angular_populated(c.points))
        out.push_back(finding(Severity::Block, code::missing_as_def, "as_def",
                              "angular spreads are populated but the AS definition is not stated", ids));

    for (const auto &[rule, name] : {std::pair{&meta.t_pdp, "t_pdp"}, std::pair{&meta.t_pas, "t_pas"}})
        if (*rule && (*rule)->composition_ambiguous())
            out.push_back(finding(Severity::Info, code::threshold_ambiguous, name,
                                  "rule '" + (*rule)->text +
                                      "' lists a delay gate and a level floor without saying how they combine; "
                                      "both are applied",
                                  ids));
    return out;
}

std::vector<CompatFinding> assess_pooling(const Campaign &a, const Campaign &b, const CompatPolicy &policy)
{
    policy.check();
    std::vector<CompatFinding> out;
    const auto &ma = a.metadata.fields();
    const auto &mb = b.metadata.fields();
    const std::vector<std::string> ids{a.campaign_id, b.campaign_id};

    if (ma.env != mb.env)
        out.push_back(finding(policy.require_same_env ? Severity::Block : Severity::Warn, code::env_mismatch, "env",
                              std::string(to_string(ma.env)) + " vs " + std::string(to_string(mb.env)), ids));

    const double fa = ma.fc.ghz.to_double(), fb = mb.fc.ghz.to_double();
    if (ma.fc.ghz != mb.fc.ghz)
    {
        const double rel = std::abs(fa - fb) / std::max(fa, fb);
        const bool near = rel <= policy.freq_rel_tol;
        out.push_back(finding(near ? Severity::Info : Severity::Warn, near ? code::freq_near : code::freq_far, "fc_ghz",
                              ma.fc.ghz.to_string() + " vs " + mb.fc.ghz.to_string() + " GHz differ by " + percent(rel) +
                                  (near ? " (within " : " (beyond ") + percent(policy.freq_rel_tol) + ")",
                              ids));
    }

    if (ma.as_def && mb.as_def && *ma.as_def != *mb.as_def)
        out.push_back(finding(policy.warn_on_as_def_mismatch ? Severity::Warn : Severity::Info, code::as_def_mismatch,
                              "as_def",
                              std::string(to_string(*ma.as_def)) + " vs " + std::string(to_string(*mb.as_def)) +
                                  "; angular spreads are not directly comparable",
                              ids));
    else if (ma.as_def.has_value() != mb.as_def.has_value())
        out.push_back(finding(Severity::Info, code::as_def_unknown, "as_def",
                              "only one campaign states its AS definition", ids));

    for (const auto &[ha, hb, name] : {std::tuple{&ma.hpbw_tx_deg, &mb.hpbw_tx_deg, "hpbw_tx_deg"},
                                       std::tuple{&ma.hpbw_rx_deg, &mb.hpbw_rx_deg, "hpbw_rx_deg"}})
    {
        if (!*ha || !*hb)
            continue;
        const double x = (*ha)->to_double(), y = (*hb)->to_double();
        const double ratio = std::max(x, y) / std::min(x, y);
        if (ratio > policy.warn_on_hpbw_ratio_gt)
            out.push_back(finding(Severity::Warn, code::hpbw_ratio, name,
                                  (*ha)->to_string() + " vs " + (*hb)->to_string() + " deg beamwidths", ids));
    }

    for (const auto &[ra, rb, name] :
         {std::tuple{&ma.t_pdp, &mb.t_pdp, "t_pdp"}, std::tuple{&ma.t_pas, &mb.t_pas, "t_pas"}})
    {
        if (*ra && *rb)
        {
            if (!same_rule(**ra, **rb))
                out.push_back(finding(Severity::Warn, code::threshold_rule_differs, name,
                                      "'" + (*ra)->text + "' vs '" + (*rb)->text + "'", ids));
        }
        else if (ra->has_value() != rb->has_value())
            out.push_back(finding(policy.block_on_missing_threshold ? Severity::Block : Severity::Warn,
                                  code::missing_threshold, name, "only one campaign states this threshold", ids));
        else if (policy.block_on_missing_threshold)
            out.push_back(finding(Severity::Block, code::missing_threshold, name, "neither campaign states this threshold",
                                  ids));
    }

    if (ma.bw_ghz && mb.bw_ghz && *ma.bw_ghz != *mb.bw_ghz)
        out.push_back(finding(Severity::Warn, code::bw_differs, "bw_ghz",
                              ma.bw_ghz->to_string() + " vs " + mb.bw_ghz->to_string() +
                                  " GHz; delay resolution differs",
                              ids));
    return out;
}

PoolBlockedError::PoolBlockedError(std::vector<CompatFinding> blocking)
    : Error(Errc::PoolBlocked, [&] {
          std::string codes;
          for (const auto &f : blocking)
              codes += (codes.empty() ? "" : ", ") + f.code;
          return std::to_string(blocking.size()) + " blocking finding(s): " + codes;
      }()),
      blocking_(std::move(blocking))
{
}

bool has_block(const std::vector<CompatFinding> &findings)
{
    return std::any_of(findings.begin(), findings.end(), [](const auto &f) { return f.severity == Severity::Block; });
}

PooledDataset pool(std::vector<Campaign> campaigns, const CompatPolicy &policy, bool force)
{
    policy.check();
    PooledDataset out;
    for (std::size_t i = 0; i < campaigns.size(); ++i)
        for (std::size_t j = i + 1; j < campaigns.size(); ++j)
        {
            auto f = assess_pooling(campaigns[i], campaigns[j], policy);
            out.compat_report.insert(out.compat_report.end(), f.begin(), f.end());
        }

    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < campaigns.size(); ++i)
    {
        auto [it, inserted] = ids.emplace(campaigns[i].campaign_id, i);
        if (!inserted)
            out.compat_report.push_back(finding(Severity::Block, code::dup_campaign, "campaign_id",
                                                "campaign id '" + campaigns[i].campaign_id + "' appears more than once",
                                                {campaigns[i].campaign_id}));
    }
    for (const auto &c : campaigns)
        for (auto &f : validate_campaign(c))
            if (f.severity == Severity::Block)
                out.compat_report.push_back(std::move(f));

    if (!force && has_block(out.compat_report))
    {
        std::vector<CompatFinding> blocking;
        std::copy_if(out.compat_report.begin(), out.compat_report.end(), std::back_inserter(blocking),
                     [](const auto &f) { return f.severity == Severity::Block; });
        throw PoolBlockedError(std::move(blocking));
    }

    for (std::size_t i = 0; i < campaigns.size(); ++i)
        for (std::size_t r = 0; r < campaigns[i].points.size(); ++r)
            out.provenance.push_back(Provenance{i, campaigns[i].campaign_id, r});
    out.campaigns = std::move(campaigns);
    return out;
}

std::string to_json_lines(const std::vector<CompatFinding> &findings)
{
    std::string out;
    for (const auto &f : findings)
    {
        nlohmann::ordered_json j;
        j["severity"] = std::string(to_string(f.severity));
        j["code"] = f.code;
        j["field"] = f.field;
        j["message"] = f.message;
        j["campaigns"] = f.campaigns;
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace pointdata::validation

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

#ifndef POINTDATA_VALIDATION_HPP
#define POINTDATA_VALIDATION_HPP

#include "pointdata/types.hpp"

#include <string>
#include <vector>

namespace pointdata::validation
{

// Thresholds for deciding whether two campaigns may be pooled. The defaults are
// policy choices, not physical constants.
struct CompatPolicy
{
    double freq_rel_tol = 0.05;            // |fa - fb| / max(fa, fb)
    bool require_same_env = true;          // ENV_MISMATCH is Block (else Warn)
    bool warn_on_as_def_mismatch = true;   // AS_DEF_MISMATCH is Warn (else Info)
    double warn_on_hpbw_ratio_gt = 2.0;    // HPBW_RATIO when max/min exceeds this
    bool block_on_missing_threshold = false;

    // Throws Error{InvalidPolicy}.
    void check() const;
};

// Stable finding codes.
namespace code
{
inline constexpr const char *dup_pair = "DUP_PAIR";
inline constexpr const char *freq_mismatch = "FREQ_MISMATCH";
inline constexpr const char *missing_as_def = "MISSING_AS_DEF";
inline constexpr const char *threshold_ambiguous = "THRESHOLD_COMPOSITION_AMBIGUOUS";
inline constexpr const char *empty_campaign = "EMPTY_CAMPAIGN";
inline constexpr const char *env_mismatch = "ENV_MISMATCH";
inline constexpr const char *freq_near = "FREQ_NEAR";
inline constexpr const char *freq_far = "FREQ_FAR";
inline constexpr const char *as_def_mismatch = "AS_DEF_MISMATCH";
inline constexpr const char *as_def_unknown = "AS_DEF_UNKNOWN";
inline constexpr const char *hpbw_ratio = "HPBW_RATIO";
inline constexpr const char *threshold_rule_differs = "THRESHOLD_RULE_DIFFERS";
inline constexpr const char *missing_threshold = "MISSING_THRESHOLD";
inline constexpr const char *bw_differs = "BW_DIFFERS";
inline constexpr const char *dup_campaign = "DUP_CAMPAIGN";
inline constexpr const char *below_reference_distance = "BELOW_REFERENCE_DISTANCE";
} // namespace code

// Relative tolerance between point frequencies and the metadata carrier frequency.
inline constexpr double campaign_freq_rel_tol = 0.01;

std::vector<CompatFinding> validate_campaign(const Campaign &c);

std::vector<CompatFinding> assess_pooling(const Campaign &a, const Campaign &b,
                                          const CompatPolicy &policy = CompatPolicy{});

class PoolBlockedError : public Error
{
public:
    explicit PoolBlockedError(std::vector<CompatFinding> blocking);
    const std::vector<CompatFinding> &blocking() const noexcept { return blocking_; }

private:
    std::vector<CompatFinding> blocking_;
};

// Concatenates campaigns in order, recording provenance. compat_report holds every
// pairwise finding, then duplicate-id findings, then any Block findings from
// validate_campaign. Throws PoolBlockedError when a Block finding exists and
// `force` is false.
PooledDataset pool(std::vector<Campaign> campaigns, const CompatPolicy &policy = CompatPolicy{}, bool force = false);

bool has_block(const std::vector<CompatFinding> &findings);

// One JSON object per line: {severity, code, field, message, campaigns}.
std::string to_json_lines(const std::vector<CompatFinding> &findings);

} // namespace pointdata::validation

#endif

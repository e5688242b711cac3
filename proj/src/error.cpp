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

#include "pointdata/error.hpp"

namespace pointdata
{

std::string_view to_string(Errc code) noexcept
{
    switch (code)
    {
    case Errc::NonPositiveFrequency: return "NonPositiveFrequency";
    case Errc::NonPositiveSeparation: return "NonPositiveSeparation";
    case Errc::NonPositivePathLoss: return "NonPositivePathLoss";
    case Errc::NegativeDelaySpread: return "NegativeDelaySpread";
    case Errc::NegativeAngularSpread: return "NegativeAngularSpread";
    case Errc::AzimuthSpreadOutOfRange: return "AzimuthSpreadOutOfRange";
    case Errc::ZenithSpreadOutOfRange: return "ZenithSpreadOutOfRange";
    case Errc::EmptyIdentifier: return "EmptyIdentifier";
    case Errc::NonPositiveBandwidth: return "NonPositiveBandwidth";
    case Errc::BeamwidthOutOfRange: return "BeamwidthOutOfRange";
    case Errc::InvalidElementCount: return "InvalidElementCount";
    case Errc::StaticWithMotion: return "StaticWithMotion";
    case Errc::EmptyThresholdRule: return "EmptyThresholdRule";
    case Errc::PositiveSidelobeLevel: return "PositiveSidelobeLevel";
    case Errc::InvalidPolicy: return "InvalidPolicy";
    case Errc::InvalidDialect: return "InvalidDialect";
    case Errc::HeaderMismatch: return "HeaderMismatch";
    case Errc::UnitsMismatch: return "UnitsMismatch";
    case Errc::ValueParse: return "ValueParse";
    case Errc::UnknownKey: return "UnknownKey";
    case Errc::DuplicateKey: return "DuplicateKey";
    case Errc::MissingRequired: return "MissingRequired";
    case Errc::InvalidProfile: return "InvalidProfile";
    case Errc::EmptyAfterThreshold: return "EmptyAfterThreshold";
    case Errc::NoPower: return "NoPower";
    case Errc::DegenerateSpectrum: return "DegenerateSpectrum";
    case Errc::MissingMetadata: return "MissingMetadata";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DistanceBelowReference: return "DistanceBelowReference";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NonPositiveSample: return "NonPositiveSample";
    case Errc::PoolBlocked: return "PoolBlocked";
    }
    return "Unknown";
}

bool is_invariant_violation(Errc code) noexcept
{
    return code <= Errc::InvalidDialect;
}

Error::Error(Errc code, const std::string &message, ErrorLocation where)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), where_(std::move(where))
{
}

} // namespace pointdata

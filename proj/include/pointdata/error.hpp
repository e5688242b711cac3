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

#ifndef POINTDATA_ERROR_HPP
#define POINTDATA_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pointdata
{

// Every failure raised by the library carries one of these codes.
enum class Errc
{
    // Record invariants
    NonPositiveFrequency,
    NonPositiveSeparation,
    NonPositivePathLoss,
    NegativeDelaySpread,
    NegativeAngularSpread,
    AzimuthSpreadOutOfRange,
    ZenithSpreadOutOfRange,
    EmptyIdentifier,
    NonPositiveBandwidth,
    BeamwidthOutOfRange,
    InvalidElementCount,
    StaticWithMotion,
    EmptyThresholdRule,
    PositiveSidelobeLevel,
    InvalidPolicy,
    InvalidDialect,

    // Reading and writing
    HeaderMismatch,
    UnitsMismatch,
    ValueParse,
    UnknownKey,
    DuplicateKey,
    MissingRequired,

    // Profile derivation
    InvalidProfile,
    EmptyAfterThreshold,
    NoPower,
    DegenerateSpectrum,
    MissingMetadata,

    // Statistics
    EmptyInput,
    DistanceBelowReference,
    RankDeficient,
    NonPositiveSample,

    // Pooling
    PoolBlocked,
};

std::string_view to_string(Errc code) noexcept;

// True for the codes raised by record constructors.
bool is_invariant_violation(Errc code) noexcept;

// Where in an input document a failure was found. Unset members are empty / zero.
struct ErrorLocation
{
    std::size_t row = 0; // 1-based line number
    std::string column;
    std::string token;
};

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string &message, ErrorLocation where = {});

    Errc code() const noexcept { return code_; }
    const ErrorLocation &where() const noexcept { return where_; }

private:
    Errc code_;
    ErrorLocation where_;
};

} // namespace pointdata

#endif

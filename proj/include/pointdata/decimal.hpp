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

#ifndef POINTDATA_DECIMAL_HPP
#define POINTDATA_DECIMAL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pointdata
{

// Exact base-10 number: value = mantissa * 10^-scale, 0 <= scale <= max_scale.
// Keeps the scale it was parsed with, so "130.0" is written back as "130.0".
// Equality and ordering compare numeric value only ("130.0" == "130").
class Decimal
{
public:
    static constexpr int max_scale = 18;

    constexpr Decimal() = default;
    Decimal(std::int64_t mantissa, int scale);

    // Locale independent. Accepts [+-]digits[.digits][e[+-]digits]; no thousands separators.
    static std::optional<Decimal> parse(std::string_view text);

    // Shortest decimal that reads back to the same double, rounded to max_scale places.
    static Decimal from_double(double value);

    std::int64_t mantissa() const noexcept { return mantissa_; }
    int scale() const noexcept { return scale_; }

    double to_double() const;
    std::string to_string() const;

    // Multiply by 10^k exactly; throws std::overflow_error if unrepresentable.
    Decimal shifted(int k) const;

    Decimal normalized() const;
    int sign() const noexcept { return (mantissa_ > 0) - (mantissa_ < 0); }

    friend bool operator==(const Decimal &a, const Decimal &b) noexcept;
    friend std::strong_ordering operator<=>(const Decimal &a, const Decimal &b) noexcept;

private:
    std::int64_t mantissa_ = 0;
    int scale_ = 0;
};

} // namespace pointdata

#endif

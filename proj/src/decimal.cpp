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

#include "pointdata/decimal.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <system_error>

namespace pointdata
{

namespace
{

__extension__ typedef __int128 wide_int;

wide_int pow10_i128(int k)
{
    wide_int r = 1;
    for (int i = 0; i < k; ++i)
        r *= 10;
    return r;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

} // namespace

Decimal::Decimal(std::int64_t mantissa, int scale) : mantissa_(mantissa), scale_(scale)
{
    if (scale < 0 || scale > max_scale)
        throw std::out_of_range("Decimal scale must be in [0, 18].");
}

std::optional<Decimal> Decimal::parse(std::string_view s)
{
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
    {
        negative = s[i] == '-';
        ++i;
    }

    wide_int mant = 0;
    int digits = 0, frac_digits = 0;
    int int_digits = 0;
    bool seen_point = false;
    for (; i < s.size(); ++i)
    {
        char c = s[i];
        if (is_digit(c))
        {
            if (!seen_point)
                ++int_digits;
            if (mant != 0 || c != '0')
                ++digits;
            if (digits > 18)
                return std::nullopt;
            mant = mant * 10 + (c - '0');
            if (seen_point)
                ++frac_digits;
        }
        else if (c == '.' && !seen_point)
            seen_point = true;
        else
            break;
    }
    // digits on both sides of a point: "1." and ".5" are rejected
    if (int_digits == 0 || (seen_point && frac_digits == 0))
        return std::nullopt;

    int exponent = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E'))
    {
        ++i;
        bool exp_neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
        {
            exp_neg = s[i] == '-';
            ++i;
        }
        if (i == s.size())
            return std::nullopt;
        for (; i < s.size(); ++i)
        {
            if (!is_digit(s[i]))
                return std::nullopt;
            exponent = exponent * 10 + (s[i] - '0');
            if (exponent > 100)
                return std::nullopt;
        }
        if (exp_neg)
            exponent = -exponent;
    }
    if (i != s.size())
        return std::nullopt;

    int scale = frac_digits - exponent;
    while (scale < 0)
    {
        mant *= 10;
        ++scale;
        if (mant > std::numeric_limits<std::int64_t>::max())
            return std::nullopt;
    }
    while (scale > max_scale && mant % 10 == 0)
    {
        mant /= 10;
        --scale;
    }
    if (scale > max_scale || mant > std::numeric_limits<std::int64_t>::max())
        return std::nullopt;

    auto m = static_cast<std::int64_t>(mant);
    return Decimal(negative ? -m : m, scale);
}

Decimal Decimal::from_double(double value)
{
    if (!std::isfinite(value))
        throw std::domain_error("Cannot represent a non-finite value as Decimal.");

    char buf[128];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
    std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
    auto point = text.find('.');
    if (res.ec != std::errc{} || (point != std::string_view::npos && text.size() - point - 1 > max_scale))
    {
        res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, max_scale);
        text = std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    auto parsed = parse(text);
    if (!parsed)
    {
        // Too many significant digits for an int64 mantissa; trade low-order digits for range.
        for (int places = max_scale - 1; places >= 0 && !parsed; --places)
        {
            res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, places);
            parsed = parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
        }
        if (!parsed)
            throw std::overflow_error("Value out of Decimal range.");
    }
    return parsed->normalized();
}

double Decimal::to_double() const
{
    auto text = to_string();
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

std::string Decimal::to_string() const
{
    bool negative = mantissa_ < 0;
    // Magnitude through unsigned to cover INT64_MIN.
    std::uint64_t mag = negative ? 0 - static_cast<std::uint64_t>(mantissa_) : static_cast<std::uint64_t>(mantissa_);
    std::string digits = std::to_string(mag);
    if (scale_ > 0)
    {
        if (static_cast<int>(digits.size()) <= scale_)
            digits.insert(0, static_cast<std::size_t>(scale_ - static_cast<int>(digits.size()) + 1), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
    }
    return negative ? "-" + digits : digits;
}

Decimal Decimal::shifted(int k) const
{
    int scale = scale_ - k;
    wide_int mant = mantissa_;
    while (scale < 0)
    {
        mant *= 10;
        ++scale;
    }
    while (scale > max_scale && mant % 10 == 0)
    {
        mant /= 10;
        --scale;
    }
    if (scale > max_scale || mant > std::numeric_limits<std::int64_t>::max() ||
        mant < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("Decimal shift out of range.");
    return Decimal(static_cast<std::int64_t>(mant), scale);
}

Decimal Decimal::normalized() const
{
    std::int64_t m = mantissa_;
    int s = scale_;
    while (s > 0 && m % 10 == 0)
    {
        m /= 10;
        --s;
    }
    return Decimal(m, s);
}

std::strong_ordering operator<=>(const Decimal &a, const Decimal &b) noexcept
{
    int common = a.scale_ > b.scale_ ? a.scale_ : b.scale_;
    wide_int x = static_cast<wide_int>(a.mantissa_) * pow10_i128(common - a.scale_);
    wide_int y = static_cast<wide_int>(b.mantissa_) * pow10_i128(common - b.scale_);
    return x <=> y;
}

bool operator==(const Decimal &a, const Decimal &b) noexcept
{
    return (a <=> b) == std::strong_ordering::equal;
}

} // namespace pointdata

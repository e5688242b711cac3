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

#include "support.hpp"

#include <doctest.h>

using namespace pointdata;
using testing::dec;

TEST_SUITE("decimal")
{
    TEST_CASE("parse keeps the written scale")
    {
        auto d = dec("130.0");
        CHECK(d.mantissa() == 1300);
        CHECK(d.scale() == 1);
        CHECK(d.to_string() == "130.0");
        CHECK(dec("-0.25").to_string() == "-0.25");
        CHECK(dec("24.43").to_string() == "24.43");
        CHECK(dec("7").to_string() == "7");
    }

    TEST_CASE("exponents are folded into the scale")
    {
        CHECK(dec("1.5e2") == dec("150"));
        CHECK(dec("25e-3") == dec("0.025"));
        CHECK(dec("+3.10") == dec("3.1"));
    }

    TEST_CASE("malformed text is rejected")
    {
        for (const char *bad : {"", "-", ".", "1.", ".5", "1e", "abc", "1.2.3", "1 2", "0x10", "1234567890123456789"})
            CHECK_MESSAGE(!Decimal::parse(bad), bad);
    }

    TEST_CASE("equality and order compare value only")
    {
        CHECK(dec("130.0") == dec("130"));
        CHECK(dec("2.50") == dec("2.5"));
        CHECK(dec("2.5") < dec("2.51"));
        CHECK(dec("-1") < dec("0.0"));
        CHECK(dec("0.1") > dec("0.09"));
    }

    TEST_CASE("from_double produces the shortest fixed text")
    {
        CHECK(Decimal::from_double(102.6).to_string() == "102.6");
        CHECK(Decimal::from_double(0.0).to_string() == "0");
        CHECK(Decimal::from_double(-48.6).to_string() == "-48.6");
        CHECK(Decimal::from_double(1e-7).to_double() == doctest::Approx(1e-7));
    }

    TEST_CASE("shifted multiplies by powers of ten exactly")
    {
        CHECK(dec("1.5").shifted(3) == dec("1500"));
        CHECK(dec("1500").shifted(-3) == dec("1.5"));
        CHECK(dec("2.50").normalized().to_string() == "2.5");
    }

    TEST_CASE("property: text round-trip is exact")
    {
        testing::Rng rng(11);
        for (int i = 0; i < 2000; ++i)
        {
            const int scale = testing::uniform_int(rng, 0, 6);
            const Decimal d = testing::random_decimal(rng, -100000, 100000, scale);
            const auto back = Decimal::parse(d.to_string());
            REQUIRE(back);
            CHECK(back->mantissa() == d.mantissa());
            CHECK(back->scale() == d.scale());
        }
    }

    TEST_CASE("property: to_double matches the decimal text")
    {
        testing::Rng rng(12);
        for (int i = 0; i < 2000; ++i)
        {
            const Decimal d = testing::random_decimal(rng, -10000, 10000, testing::uniform_int(rng, 0, 4));
            CHECK(d.to_double() == std::stod(d.to_string()));
        }
    }
}

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

namespace
{

PointFields table2_row1()
{
    PointFields f;
    f.freq_ghz = dec("142");
    f.tx_id = "TX1";
    f.rx_id = "RX1";
    f.loc = LocCondition::LOS;
    f.tr_sep_m = dec("24.43");
    f.pl_db = dec("102.6");
    f.mean_dir_ds_ns = dec("50.8");
    f.omni_ds_ns = dec("15.7");
    f.mean_lobe_asa_deg = dec("2.3");
    f.omni_asa_deg = dec("21.2");
    f.mean_lobe_asd_deg = dec("2.8");
    f.omni_asd_deg = dec("20.1");
    f.mean_lobe_zsa_deg = dec("3.1");
    f.omni_zsa_deg = dec("5.4");
    f.mean_lobe_zsd_deg = dec("3.2");
    f.omni_zsd_deg = dec("3.3");
    return f;
}

Errc violation(PointFields f)
{
    try
    {
        PointRecord p(std::move(f));
    }
    catch (const Error &e)
    {
        return e.code();
    }
    FAIL("record was accepted");
    return Errc::EmptyInput;
}

Errc meta_violation(MetadataFields f)
{
    try
    {
        MetadataRecord m(std::move(f));
    }
    catch (const Error &e)
    {
        return e.code();
    }
    FAIL("metadata was accepted");
    return Errc::EmptyInput;
}

MetadataFields minimal_meta()
{
    MetadataFields m;
    m.env = Environment::UMi;
    m.fc = {dec("142"), FreqReference::Center};
    return m;
}

} // namespace

TEST_SUITE("core-model")
{
    TEST_CASE("a fixture row is a valid record")
    {
        PointRecord p(table2_row1());
        CHECK(p.freq_ghz() == 142.0);
        CHECK(p.loc() == LocCondition::LOS);
        CHECK(p.fields().pl_db.to_string() == "102.6");
    }

    TEST_CASE("each point invariant has its own code")
    {
        auto f = table2_row1();
        f.freq_ghz = dec("0");
        CHECK(violation(f) == Errc::NonPositiveFrequency);

        f = table2_row1();
        f.tx_id = "  ";
        CHECK(violation(f) == Errc::EmptyIdentifier);

        f = table2_row1();
        f.tr_sep_m = dec("-1");
        CHECK(violation(f) == Errc::NonPositiveSeparation);

        f = table2_row1();
        f.pl_db = dec("0.0");
        CHECK(violation(f) == Errc::NonPositivePathLoss);

        f = table2_row1();
        f.omni_ds_ns = dec("-0.1");
        CHECK(violation(f) == Errc::NegativeDelaySpread);

        f = table2_row1();
        f.omni_asd_deg = dec("180.1");
        CHECK(violation(f) == Errc::AzimuthSpreadOutOfRange);

        f = table2_row1();
        f.mean_lobe_zsa_deg = dec("90.5");
        CHECK(violation(f) == Errc::ZenithSpreadOutOfRange);

        f = table2_row1();
        f.omni_zsd_deg = dec("-2");
        CHECK(violation(f) == Errc::NegativeAngularSpread);
    }

    TEST_CASE("range bounds are inclusive")
    {
        auto f = table2_row1();
        f.omni_asa_deg = dec("180");
        f.omni_zsa_deg = dec("90");
        f.omni_ds_ns = dec("0");
        CHECK_NOTHROW(PointRecord{f});
    }

    TEST_CASE("errors name the offending column")
    {
        auto f = table2_row1();
        f.omni_zsa_deg = dec("91");
        try
        {
            PointRecord p(f);
            FAIL("accepted");
        }
        catch (const Error &e)
        {
            CHECK(e.where().column == "omni_zsa_deg");
            CHECK(is_invariant_violation(e.code()));
        }
    }

    TEST_CASE("column catalogue is in canonical order")
    {
        const auto &cat = column_catalogue();
        CHECK(cat.front().name == "freq_ghz");
        CHECK(cat.back().name == "omni_zsd_deg");
        CHECK(numeric_column_names().size() == 13);
        CHECK(column_by_name("pl_db") == Column::PlDb);
        CHECK_FALSE(column_by_name("PL"));
        PointRecord p(table2_row1());
        CHECK(numeric_value(p, Column::OmniDsNs) == dec("15.7"));
        CHECK_THROWS_AS(numeric_value(p, Column::Tx), std::invalid_argument);
    }

    TEST_CASE("loc condition parsing")
    {
        CHECK(parse_loc_condition("LOS") == LocCondition::LOS);
        CHECK(parse_loc_condition("NLOS") == LocCondition::NLOS);
        CHECK_FALSE(parse_loc_condition("los"));
        CHECK(parse_loc_condition("nlos", false) == LocCondition::NLOS);
        CHECK_FALSE(parse_loc_condition("OLOS", false));
    }

    TEST_CASE("metadata invariants")
    {
        auto m = minimal_meta();
        CHECK_NOTHROW(MetadataRecord{m});

        m.fc.ghz = dec("0");
        CHECK(meta_violation(m) == Errc::NonPositiveFrequency);

        m = minimal_meta();
        m.bw_ghz = dec("0");
        CHECK(meta_violation(m) == Errc::NonPositiveBandwidth);

        m = minimal_meta();
        m.hpbw_rx_deg = dec("360");
        CHECK(meta_violation(m) == Errc::BeamwidthOutOfRange);

        m = minimal_meta();
        m.n_elements = 0;
        CHECK(meta_violation(m) == Errc::InvalidElementCount);

        m = minimal_meta();
        m.mobility = Mobility{MobilityKind::Static, dec("1.5"), {}};
        CHECK(meta_violation(m) == Errc::StaticWithMotion);

        m = minimal_meta();
        m.t_pdp = ThresholdSpec{"whatever", {}, {}, {}, ThresholdCombine::AllOf};
        CHECK(meta_violation(m) == Errc::EmptyThresholdRule);

        m = minimal_meta();
        m.sll_db = dec("3");
        CHECK(meta_violation(m) == Errc::PositiveSidelobeLevel);
    }

    TEST_CASE("threshold rules read from free text")
    {
        auto nyu = ThresholdSpec::from_text("max(25 dB below peak, 5 dB above noise floor)");
        CHECK(nyu.rel_peak_db == dec("25"));
        CHECK(nyu.above_noise_db == dec("5"));
        CHECK_FALSE(nyu.gate_ns);
        CHECK(nyu.combine == ThresholdCombine::MaxOf);
        CHECK_FALSE(nyu.composition_ambiguous());

        auto pas = ThresholdSpec::from_text("10 dB below max. PAS power");
        CHECK(pas.rel_peak_db == dec("10"));

        auto usc = ThresholdSpec::from_text("\xCF\x84_gate = 966.67 ns; +12 dB (noise)");
        CHECK(usc.gate_ns == dec("966.67"));
        CHECK(usc.above_noise_db == dec("12"));
        CHECK(usc.combine == ThresholdCombine::AllOf);
        CHECK(usc.composition_ambiguous());

        CHECK_THROWS_AS(ThresholdSpec::from_text("adaptive"), Error);
    }

    TEST_CASE("property: synthesized threshold text parses back to the same rule")
    {
        testing::Rng rng(21);
        for (int i = 0; i < 500; ++i)
        {
            std::optional<Decimal> rel, noise, gate;
            if (testing::uniform_int(rng, 0, 1))
                rel = testing::random_decimal(rng, 0, 60, testing::uniform_int(rng, 0, 2));
            if (testing::uniform_int(rng, 0, 1))
                noise = testing::random_decimal(rng, 0, 30, testing::uniform_int(rng, 0, 2));
            if (testing::uniform_int(rng, 0, 1) || (!rel && !noise))
                gate = testing::random_decimal(rng, 1, 5000, testing::uniform_int(rng, 0, 2));
            const auto combine = testing::uniform_int(rng, 0, 1) ? ThresholdCombine::MaxOf : ThresholdCombine::AllOf;
            const auto spec = ThresholdSpec::make(rel, noise, gate, combine);
            CHECK(ThresholdSpec::from_text(spec.text) == spec);
        }
    }

    TEST_CASE("pooled dataset resolves provenance")
    {
        auto nyu = testing::load_fixture("nyu");
        PooledDataset pool;
        pool.campaigns.push_back(nyu);
        for (std::size_t r = 0; r < nyu.points.size(); ++r)
            pool.provenance.push_back({0, nyu.campaign_id, r});
        CHECK(pool.size() == 6);
        CHECK(pool.point(2).fields().rx_id == "RX9");
        pool.provenance.push_back({0, "nyu", 99});
        CHECK_THROWS_AS(pool.point(6), std::out_of_range);
    }
}

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
using testing::fixture;

namespace
{

const char *const nyu_rows = "142,TX1,RX1,LOS,24.43,102.6,50.8,15.7,2.3,21.2,2.8,20.1,3.1,5.4,3.2,3.3\n"
                             "142,TX1,RX5,LOS,27.22,102.1,0.1,6.1,2.5,2.5,2.5,4.4,3.3,6.6,3.3,3.4\n";

std::string header_units()
{
    return std::string(io::canonical_header()) + "\n" + std::string(io::canonical_units_row()) + "\n";
}

Errc parse_error(std::string_view bytes, const io::FormatDialect &d = io::csv_dialect)
{
    try
    {
        io::parse_point_table(bytes, d);
    }
    catch (const Error &e)
    {
        return e.code();
    }
    FAIL("table was accepted");
    return Errc::EmptyInput;
}

Errc meta_error(std::string_view bytes, const io::FormatDialect &d = io::csv_dialect)
{
    try
    {
        io::parse_metadata(bytes, d);
    }
    catch (const Error &e)
    {
        return e.code();
    }
    FAIL("metadata was accepted");
    return Errc::EmptyInput;
}

} // namespace

TEST_SUITE("io-format")
{
    TEST_CASE("canonical header and units row")
    {
        CHECK(io::canonical_header().substr(0, 28) == "freq_ghz,tx,rx,loc,tr_sep_m,");
        CHECK(io::canonical_units_row() == "GHz,,,,m,dB,ns,ns,deg,deg,deg,deg,deg,deg,deg,deg");
    }

    TEST_CASE("fixture tables round-trip exactly")
    {
        for (const char *name : {"nyu.pointdata.csv", "usc.pointdata.csv"})
        {
            const std::string bytes = io::read_file(fixture(name));
            const auto first = io::parse_point_table(bytes);
            REQUIRE(first.size() == 6);
            const std::string written = io::write_point_table(first);
            CHECK(written == bytes);
            CHECK(io::parse_point_table(written) == first);
        }
    }

    TEST_CASE("written decimals keep their original text")
    {
        const auto usc = io::parse_point_table(io::read_file(fixture("usc.pointdata.csv")));
        CHECK(usc[3].fields().pl_db.to_string() == "130.0");
        CHECK(usc[3].fields().tr_sep_m.to_string() == "83");
        CHECK(io::write_point_table(usc).find(",83,130.0,") != std::string::npos);
    }

    TEST_CASE("the units row is optional")
    {
        const std::string bytes = std::string(io::canonical_header()) + "\n" + nyu_rows;
        CHECK(io::parse_point_table(bytes).size() == 2);
    }

    TEST_CASE("a corrupted header names the column")
    {
        std::string bytes = header_units() + nyu_rows;
        bytes.replace(bytes.find("pl_db"), 5, "pl");
        try
        {
            io::parse_point_table(bytes);
            FAIL("accepted");
        }
        catch (const Error &e)
        {
            CHECK(e.code() == Errc::HeaderMismatch);
            CHECK(e.where().column == "pl_db");
            CHECK(std::string(e.what()).find("pl_db") != std::string::npos);
        }
    }

    TEST_CASE("wrong units are rejected")
    {
        std::string bytes = header_units() + nyu_rows;
        bytes.replace(bytes.find("GHz"), 3, "MHz");
        CHECK(parse_error(bytes) == Errc::UnitsMismatch);
    }

    TEST_CASE("row level errors")
    {
        CHECK(parse_error(header_units() + "142,TX1,RX1,LOS,24.43,102.6,50.8,15.7,2.3,21.2,2.8,20.1,3.1,5.4,3.2\n") ==
              Errc::ValueParse);
        CHECK(parse_error(header_units() + "142,TX1,RX1,LOS,24.43,--,50.8,15.7,2.3,21.2,2.8,20.1,3.1,5.4,3.2,3.3\n") ==
              Errc::ValueParse);
        CHECK(parse_error(header_units() + "142,TX1,RX1,los,24.43,102.6,50.8,15.7,2.3,21.2,2.8,20.1,3.1,5.4,3.2,3.3\n") ==
              Errc::ValueParse);
        CHECK(parse_error(header_units() + "142,TX1,RX1,LOS,24.43,102.6,50.8,15.7,2.3,221.2,2.8,20.1,3.1,5.4,3.2,3.3\n") ==
              Errc::AzimuthSpreadOutOfRange);
        CHECK(parse_error("") == Errc::HeaderMismatch);
    }

    TEST_CASE("lenient mode accepts display labels in any order")
    {
        const std::string bytes = "Omni ZSD,Mean Lobe ZSD,Omni ZSA,Mean Lobe ZSA,Omni ASD,Mean Lobe ASD,Omni ASA,"
                                  "Mean Lobe ASA,Omni DS,Mean Dir. DS,PL,TR Sep.,Loc.,RX,TX,Freq.\n"
                                  "3.3,3.2,5.4,3.1,20.1,2.8,21.2,2.3,15.7,50.8,102.6,24.43,los,RX1,TX1,142\n";
        io::FormatDialect lenient;
        lenient.strict = false;
        const auto rows = io::parse_point_table(bytes, lenient);
        REQUIRE(rows.size() == 1);
        const auto strict = io::parse_point_table(io::read_file(fixture("nyu.pointdata.csv")));
        CHECK(rows[0] == strict[0]);
        CHECK(parse_error(bytes) == Errc::HeaderMismatch);
    }

    TEST_CASE("JSON dialect round-trips the fixture rows")
    {
        const auto rows = io::parse_point_table(io::read_file(fixture("nyu.pointdata.csv")));
        const std::string json = io::write_point_table(rows, io::json_dialect);
        CHECK(json.find("\"pl_db\": 102.6,") != std::string::npos);
        CHECK(io::parse_point_table(json, io::json_dialect) == rows);
        CHECK(io::write_point_table(io::parse_point_table(json, io::json_dialect), io::json_dialect) == json);
    }

    TEST_CASE("quoted identifiers survive")
    {
        PointFields f = io::parse_point_table(io::read_file(fixture("nyu.pointdata.csv")))[0].fields();
        f.rx_id = "RX \"north\", roof";
        std::vector<PointRecord> rows{PointRecord(f)};
        CHECK(io::parse_point_table(io::write_point_table(rows)) == rows);
        CHECK(io::parse_point_table(io::write_point_table(rows, io::json_dialect), io::json_dialect) == rows);
    }

    TEST_CASE("dialect checks")
    {
        io::FormatDialect d;
        d.missing_token = "";
        CHECK_THROWS_AS(d.check(), Error);
        d.missing_token = "a,b";
        CHECK_THROWS_AS(d.check(), Error);
        CHECK(io::dialect_for("x.pointdata.json").kind == io::FormatKind::CanonicalJSON);
        CHECK(io::dialect_for("x.meta.csv").kind == io::FormatKind::CanonicalCSV);
    }

    TEST_CASE("property: random records round-trip in both dialects")
    {
        testing::Rng rng(31);
        for (int i = 0; i < 300; ++i)
        {
            std::vector<PointRecord> rows;
            const int n = testing::uniform_int(rng, 1, 8);
            for (int k = 0; k < n; ++k)
                rows.emplace_back(testing::random_point_fields(rng));
            const std::string csv = io::write_point_table(rows);
            CHECK(io::parse_point_table(csv) == rows);
            CHECK(io::write_point_table(io::parse_point_table(csv)) == csv);
            const std::string json = io::write_point_table(rows, io::json_dialect);
            CHECK(io::parse_point_table(json, io::json_dialect) == rows);
        }
    }

    TEST_CASE("metadata is read from display labels")
    {
        const auto nyu = io::parse_metadata(io::read_file(fixture("nyu.meta.csv")));
        const auto &m = nyu.fields();
        CHECK(m.env == Environment::UMi);
        CHECK(m.az_res_deg == dec("8"));
        CHECK(m.el_res_deg == dec("8"));
        CHECK(m.mobility->kind == MobilityKind::Static);
        CHECK(m.fc.ghz == dec("142"));
        CHECK(m.fc.ref == FreqReference::Center);
        CHECK(m.bw_ghz == dec("1"));
        CHECK(m.ptx_avg_dbm == dec("0"));
        CHECK(m.t_pdp->rel_peak_db == dec("25"));
        CHECK(m.t_pas->rel_peak_db == dec("10"));
        CHECK(m.tau_max_ns == dec("4094"));
        CHECK(m.f_rep->value == dec("32.752"));
        CHECK(m.waveform->pn_length_chips == 2047);
        CHECK(m.waveform->n_avg == 20);
        CHECK(m.fs_msps == dec("2.5"));
        CHECK_FALSE(m.sweep_fd);
        CHECK(m.as_def == AsDefinition::TGPP);
        CHECK(m.ant_model == "Mi-Wave 261D-27");
        CHECK(m.f_ant_op_band == "D-band");
        CHECK(m.ant_type->kind == AntennaKind::Horn);
        CHECK(m.g_tx_dbi == dec("27"));
        CHECK(m.g_rx_dbi == dec("27"));
        CHECK(m.hpbw_tx_deg == dec("8"));
        CHECK(m.hpbw_rx_deg == dec("8"));
        CHECK(m.sll_db == dec("-11"));
        CHECK(m.xpd_db == dec("29.2"));
        CHECK(m.pol == Polarization::Linear);

        const auto usc = io::parse_metadata(io::read_file(fixture("usc.meta.csv")));
        const auto &u = usc.fields();
        CHECK(u.fc.ghz == dec("145.5"));
        CHECK(u.el_res_deg == dec("13"));
        CHECK(u.ptx_avg_dbm == dec("-1"));
        CHECK(u.tau_max_ns == dec("1000"));
        CHECK_FALSE(u.f_rep);
        CHECK_FALSE(u.fs_msps);
        CHECK(u.t_pdp->gate_ns == dec("966.67"));
        CHECK(u.t_pdp->above_noise_db == dec("12"));
        CHECK(u.sync->kind == SyncKind::VNAInternal);
        CHECK(u.sweep_fd->ifbw_khz == dec("10"));
        CHECK(u.sweep_fd->n_pts == 1001);
        CHECK(u.as_def == AsDefinition::Fleury);
        CHECK(u.g_rx_dbi == dec("21"));
        CHECK_FALSE(u.xpd_db);
    }

    TEST_CASE("metadata round-trips through every layout and dialect")
    {
        for (const char *name : {"nyu.meta.csv", "usc.meta.csv"})
        {
            const auto meta = io::parse_metadata(io::read_file(fixture(name)));
            for (auto layout : {io::MetadataLayout::Full, io::MetadataLayout::Compact})
            {
                const std::string csv = io::write_metadata(meta, io::csv_dialect, layout);
                CHECK(io::parse_metadata(csv) == meta);
                CHECK(io::write_metadata(io::parse_metadata(csv), io::csv_dialect, layout) == csv);
                const std::string json = io::write_metadata(meta, io::json_dialect, layout);
                CHECK(io::parse_metadata(json, io::json_dialect) == meta);
            }
        }
    }

    TEST_CASE("full layout writes every key, compact only present ones")
    {
        MetadataFields f;
        f.env = Environment::InH;
        f.fc = {dec("28"), FreqReference::Start};
        const MetadataRecord minimal(f);
        const std::string compact = io::write_metadata(minimal, io::csv_dialect, io::MetadataLayout::Compact);
        CHECK(compact == "env,InH\nfc_ghz,28 GHz (start)\n");
        const std::string full = io::write_metadata(minimal);
        CHECK(std::count(full.begin(), full.end(), '\n') == static_cast<long>(io::metadata_keys().size()));
        CHECK(full.find("bw_ghz,--\n") != std::string::npos);
        CHECK(io::parse_metadata(full) == minimal);
    }

    TEST_CASE("units are converted to the canonical ones")
    {
        const auto m = io::parse_metadata("env,UMa\nfc_ghz,28000 MHz (center)\nbw_ghz,800 MHz\ntau_max_ns,2 us\n"
                                          "fs_msps,500 ksps\n");
        CHECK(m.fields().fc.ghz == dec("28"));
        CHECK(m.fields().bw_ghz == dec("0.8"));
        CHECK(m.fields().tau_max_ns == dec("2000"));
        CHECK(m.fields().fs_msps == dec("0.5"));
    }

    TEST_CASE("metadata errors")
    {
        CHECK(meta_error("env,UMi\n") == Errc::MissingRequired);
        CHECK(meta_error("fc_ghz,28 GHz (center)\n") == Errc::MissingRequired);
        CHECK(meta_error("env,UMi\nfc_ghz,28 GHz (center)\nfc_ghz,29 GHz (center)\n") == Errc::DuplicateKey);
        CHECK(meta_error("env,UMi\nfc_ghz,28 GHz (center)\ncolour,blue\n") == Errc::UnknownKey);
        CHECK(meta_error("env,UMi\nfc_ghz,28 GHz\n") == Errc::ValueParse);
        CHECK(meta_error("env,Space\nfc_ghz,28 GHz (center)\n") == Errc::ValueParse);
        CHECK(meta_error("env,UMi\nfc_ghz,28 furlongs (center)\n") == Errc::ValueParse);
        CHECK(meta_error("env,UMi\nfc_ghz,-28 GHz (center)\n") == Errc::NonPositiveFrequency);
        CHECK(meta_error("{\"env\": \"UMi\"", io::json_dialect) == Errc::ValueParse);
    }

    TEST_CASE("lenient metadata records what it tolerated")
    {
        io::FormatDialect lenient;
        lenient.strict = false;
        std::vector<CompatFinding> notes;
        const auto m = io::parse_metadata("env,UMi\nfc_ghz,28 GHz\ncolour,blue\n", lenient, &notes);
        CHECK(m.fields().fc.ref == FreqReference::Center);
        REQUIRE(notes.size() == 2);
        std::vector<std::string> codes{notes[0].code, notes[1].code};
        std::sort(codes.begin(), codes.end());
        CHECK(codes == std::vector<std::string>{"FC_REFERENCE_DEFAULTED", "UNKNOWN_KEY"});
        for (const auto &n : notes)
            CHECK(n.severity == Severity::Info);
    }

    TEST_CASE("pooled tables carry campaign ids")
    {
        PooledDataset pool;
        pool.campaigns = {testing::load_fixture("nyu"), testing::load_fixture("usc")};
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t r = 0; r < 6; ++r)
                pool.provenance.push_back({c, pool.campaigns[c].campaign_id, r});
        for (const auto &d : {io::csv_dialect, io::json_dialect})
        {
            const std::string bytes = io::write_pooled_table(pool, d);
            const auto rows = io::parse_pooled_table(bytes, d);
            REQUIRE(rows.size() == 12);
            for (std::size_t i = 0; i < 12; ++i)
            {
                CHECK(rows[i].point == pool.point(i));
                CHECK(rows[i].campaign_id == pool.provenance[i].campaign_id);
            }
            CHECK_THROWS_AS(io::parse_point_table(bytes, d), Error);
        }
    }

    TEST_CASE("campaign identity falls back to the file stem")
    {
        const auto c = testing::load_fixture("usc");
        CHECK(c.campaign_id == "usc");
        CHECK(c.institution == "usc");
        CHECK(c.points.size() == 6);
        CHECK_THROWS(io::read_file(fixture("missing.meta.csv")));
    }
}

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

#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <unistd.h>
#include <sstream>

namespace fs = std::filesystem;
using pointdata::cli::run_cli;

namespace
{

// Scratch directory removed on scope exit.
struct TempDir
{
    fs::path path;

    TempDir()
    {
        static int counter = 0;
        path = fs::temp_directory_path() / ("pointdata_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string &name = {}) const { return (name.empty() ? path : path / name).string(); }
};

struct Run
{
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string &name)
{
    return testing::fixture(name).string();
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void put(const fs::path &p, const std::string &text)
{
    std::ofstream(p, std::ios::binary) << text;
}

// Copies one fixture campaign into dir, optionally rewriting the point table.
void stage(const TempDir &dir, const std::string &stem, const std::string &as, const std::string &points = {})
{
    fs::copy_file(testing::fixture(stem + ".meta.csv"), dir.path / (as + ".meta.csv"));
    put(dir.path / (as + ".pointdata.csv"), points.empty() ? slurp(testing::fixture(stem + ".pointdata.csv")) : points);
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("validate: clean, blocked and malformed inputs")
    {
        CHECK(run({"validate", fx("nyu.meta.csv")}).code == 0);

        TempDir dir;
        std::string table = slurp(testing::fixture("nyu.pointdata.csv"));
        const auto first = table.find('\n', table.find('\n') + 1) + 1;
        const auto row = table.substr(first, table.find('\n', first) + 1 - first);
        stage(dir, "nyu", "dup", table + row);
        const auto blocked = run({"validate", dir.str("dup.meta.csv")});
        CHECK(blocked.code == 1);
        CHECK(blocked.out.find("DUP_PAIR") != std::string::npos);

        TempDir bad;
        std::string broken = table;
        broken.replace(0, 8, "freq_ghx");
        stage(bad, "nyu", "bad", broken);
        const auto malformed = run({"validate", bad.str("bad.pointdata.csv")});
        CHECK(malformed.code == 2);
        CHECK(malformed.err.find("freq_ghx") != std::string::npos);
    }

    TEST_CASE("usage errors exit 2")
    {
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"validate", "/nonexistent/x.meta.csv"}).code == 2);
        CHECK(run({"fit", fx("nyu.meta.csv"), "--model", "quadratic"}).code == 2);
        CHECK(run({"validate", fx("nyu.meta.csv"), "--dialect", "xml"}).code == 2);
        CHECK(run({"--help"}).code == 0);
    }

    TEST_CASE("merge writes the pool and the report")
    {
        TempDir out;
        const auto r = run({"merge", fx("nyu.meta.csv"), fx("usc.meta.csv"), "--out", out.str()});
        REQUIRE(r.code == 0);
        CHECK(fs::exists(out.path / "compat.json"));
        const auto pooled = pointdata::io::parse_pooled_table(slurp(out.path / "pooled.pointdata.csv"));
        REQUIRE(pooled.size() == 12);
        CHECK(pooled.front().campaign_id == "nyu");
        CHECK(pooled.back().campaign_id == "usc");
        CHECK(r.out.find("AS_DEF_MISMATCH") != std::string::npos);

        const auto report = nlohmann::json::parse(slurp(out.path / "compat.json"));
        CHECK(report.is_array());
    }

    TEST_CASE("merge refuses blocked pools unless forced")
    {
        TempDir out;
        CHECK(run({"merge", fx("nyu.meta.csv"), fx("nyu.meta.csv"), "--out", out.str()}).code == 1);
        CHECK(fs::exists(out.path / "compat.json"));
        CHECK_FALSE(fs::exists(out.path / "pooled.pointdata.csv"));
        CHECK(run({"merge", fx("nyu.meta.csv"), fx("nyu.meta.csv"), "--out", out.str(), "--force"}).code == 0);
        CHECK(fs::exists(out.path / "pooled.pointdata.csv"));
        CHECK(run({"merge", fx("nyu.meta.csv")}).code == 2);
    }

    TEST_CASE("fit writes scatter and model summaries")
    {
        TempDir out;
        const auto r = run({"fit", fx("nyu.meta.csv"), fx("usc.meta.csv"), "--out", out.str(), "--figures"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(slurp(out.path / "fit.json"));
        REQUIRE(j.size() == 2);
        CHECK(j[0]["split"] == "LOS");
        CHECK(j[1]["split"] == "NLOS");
        CHECK(j[0]["n_points"] == 6);
        const auto scatter = slurp(out.path / "scatter.csv");
        CHECK(scatter.rfind("tr_sep_m,pl_db,freq_ghz,campaign_id,loc\n", 0) == 0);
        CHECK(std::count(scatter.begin(), scatter.end(), '\n') == 13);
        CHECK(slurp(out.path / "fit.svg").find("<svg") != std::string::npos);

        const auto abg = run({"fit", fx("nyu.meta.csv"), fx("usc.meta.csv"), "--out", out.str(), "--model", "abg", "--split", "los"});
        CHECK(abg.code == 0);
        CHECK(nlohmann::json::parse(slurp(out.path / "fit.json"))[0]["model"] == "ABG");

        // A single carrier leaves gamma unidentifiable.
        CHECK(run({"fit", fx("nyu.meta.csv"), "--out", out.str(), "--model", "abg"}).code == 1);
    }

    TEST_CASE("stats writes the CDF and summary")
    {
        TempDir out;
        const auto r = run({"stats", fx("nyu.meta.csv"), fx("usc.meta.csv"), "--column", "omni_ds_ns", "--split", "nlos",
                            "--out", out.str()});
        REQUIRE(r.code == 0);
        const auto cdf = slurp(out.path / "cdf_omni_ds_ns_nlos.csv");
        CHECK(cdf.rfind("value,probability\n", 0) == 0);
        CHECK(std::count(cdf.begin(), cdf.end(), '\n') == 7);
        const auto j = nlohmann::json::parse(slurp(out.path / "stats_omni_ds_ns_nlos.json"));
        CHECK(j["lognormal"]["n_points"] == 6);

        const auto unknown = run({"stats", fx("nyu.meta.csv"), "--column", "rms_ds", "--out", out.str()});
        CHECK(unknown.code == 2);
        CHECK(unknown.err.find("omni_ds_ns") != std::string::npos);
        CHECK(run({"stats", fx("nyu.meta.csv"), "--column", "tx", "--out", out.str()}).code == 2);
    }

    TEST_CASE("derive writes rows for each scene entry")
    {
        TempDir out;
        const auto r = run({"derive", "--meta", fx("scene/scene.meta.csv"), "--geometry", fx("scene/geometry.json"),
                            "--out", out.str()});
        REQUIRE(r.code == 0);
        const auto t = pointdata::io::parse_point_table(slurp(out.path / "derived.pointdata.csv"));
        REQUIRE(t.size() == 2);
        CHECK(t[1].fields().pl_db == testing::dec("102.6"));

        const auto missing = run({"derive", "--meta", fx("scene/no_as_def.meta.csv"), "--geometry",
                                  fx("scene/geometry.json"), "--out", out.str()});
        CHECK(missing.code == 2);
        CHECK(run({"derive", "--geometry", fx("scene/geometry.json")}).code == 2);
    }

    TEST_CASE("config supplies defaults that flags override")
    {
        TempDir out;
        put(out.path / "run.json", "{\"model\": \"abg\", \"split\": \"los\", \"dialect\": \"json\"}");
        const auto r = run({"fit", fx("nyu.meta.csv"), fx("usc.meta.csv"), "--out", out.str(), "--config",
                            out.str("run.json"), "--model", "ci"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(slurp(out.path / "fit.json"));
        REQUIRE(j.size() == 1);
        CHECK(j[0]["model"] == "CI");
        CHECK(j[0]["split"] == "LOS");

        put(out.path / "typo.json", "{\"modle\": \"abg\"}");
        CHECK(run({"fit", fx("nyu.meta.csv"), "--config", out.str("typo.json")}).code == 2);
    }

    TEST_CASE("outputs are deterministic")
    {
        TempDir a, b;
        for (const auto *d : {&a, &b})
        {
            REQUIRE(run({"merge", fx("nyu.meta.csv"), fx("usc.meta.csv"), "--out", d->str(), "--dialect", "json"}).code == 0);
            REQUIRE(run({"fit", fx("nyu.meta.csv"), fx("usc.meta.csv"), "--out", d->str()}).code == 0);
        }
        for (const char *name : {"compat.json", "pooled.pointdata.json", "fit.json", "scatter.csv"})
            CHECK(slurp(a.path / name) == slurp(b.path / name));
    }
}

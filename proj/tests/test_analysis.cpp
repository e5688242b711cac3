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

#include "oracles.hpp"
#include "support.hpp"

#include "pointdata/analysis.hpp"
#include "pointdata/validation.hpp"

#include <doctest.h>

#include <set>

using namespace pointdata;
using namespace pointdata::analysis;

namespace
{

PooledDataset fixture_pool()
{
    return validation::pool({testing::load_fixture("nyu"), testing::load_fixture("usc")});
}

Errc error_of(const std::function<void()> &fn)
{
    try
    {
        fn();
    }
    catch (const Error &e)
    {
        return e.code();
    }
    FAIL("no error");
    return Errc::EmptyInput;
}

std::vector<PathLossSample> ci_campaign(double n, std::initializer_list<double> dists, double f = 142.0)
{
    std::vector<PathLossSample> out;
    for (double d : dists)
        out.push_back({d, fspl_1m(f) + 10 * n * std::log10(d), f});
    return out;
}

} // namespace

TEST_SUITE("analysis")
{
    TEST_CASE("free-space loss at 1 m")
    {
        CHECK(std::abs(fspl_1m(142.0) - 75.49) <= 0.01);
        CHECK(std::abs(fspl_1m(145.5) - 75.70) <= 0.01);
        CHECK(fspl_1m(142.0) == doctest::Approx(static_cast<double>(oracle::fspl(142.0))).epsilon(1e-12));
        CHECK(fspl_1m(284.0) - fspl_1m(142.0) == doctest::Approx(20 * std::log10(2.0)).epsilon(1e-12));
        CHECK(error_of([] { fspl_1m(0.0); }) == Errc::NonPositiveFrequency);
    }

    TEST_CASE("CI fit matches an exhaustive search on the fixture")
    {
        const auto pool = fixture_pool();
        for (auto split : {Split::LOS, Split::NLOS})
        {
            const auto s = path_loss_samples(pool, split);
            REQUIRE(s.size() == 6);
            const auto fit = fit_ci(s);
            const auto grid = oracle::ci_grid(s);
            CHECK(std::abs(fit.ple - grid.n) <= 1e-3);
            CHECK(std::abs(fit.sigma_db - grid.sigma) <= 1e-3);
            CHECK(fit.n_points == 6);
        }
        CHECK(fit_ci(path_loss_samples(pool, Split::LOS)).ple >= 1.5);
        CHECK(fit_ci(path_loss_samples(pool, Split::LOS)).ple <= 2.5);
        CHECK(fit_ci(path_loss_samples(pool, Split::NLOS)).ple >= 2.0);
        CHECK(fit_ci(path_loss_samples(pool, Split::NLOS)).ple <= 3.5);
    }

    TEST_CASE("CI fit on noiseless data")
    {
        const auto fit = fit_ci(ci_campaign(2.3, {2, 7, 40, 90}));
        CHECK(fit.ple == doctest::Approx(2.3).epsilon(1e-12));
        CHECK(fit.sigma_db < 1e-9);
        CHECK(fit.freq_ghz_ref == 142.0);
        const auto pairs = fit_ci(std::vector<std::pair<double, double>>{{10, fspl_1m(28) + 20}, {100, fspl_1m(28) + 40}}, 28);
        CHECK(pairs.ple == doctest::Approx(2.0));
    }

    TEST_CASE("CI fit preconditions")
    {
        CHECK(error_of([] { fit_ci(std::vector<PathLossSample>{}); }) == Errc::EmptyInput);
        CHECK(error_of([] { fit_ci(std::vector<PathLossSample>{{1.0, 60, 28}}); }) == Errc::DistanceBelowReference);
        CHECK(error_of([] { fit_ci(std::vector<PathLossSample>{{10.0, 60, 0}}); }) == Errc::NonPositiveFrequency);
    }

    TEST_CASE("common reference frequency")
    {
        std::vector<PathLossSample> s{{10, 100, 140}, {20, 108, 150}, {40, 114, 145}};
        const auto common = fit_ci(s, FsplMode::Common);
        CHECK(common.freq_ghz_ref == doctest::Approx(145.0));
        CHECK(common.fspl_ref_db == doctest::Approx(fspl_1m(145.0)));
        CHECK(common.ple != doctest::Approx(fit_ci(s).ple));
    }

    TEST_CASE("averaging two fits is not fitting the union")
    {
        const auto a = ci_campaign(2.0, {2, 5, 10});
        auto b = ci_campaign(3.5, {50, 100, 200});
        b[0].pl_db += 1.5;
        b[2].pl_db -= 0.7;
        std::vector<PathLossSample> both = a;
        both.insert(both.end(), b.begin(), b.end());

        const double pa = fit_ci(a).ple, pb = fit_ci(b).ple, pooled = fit_ci(both).ple;
        CHECK(std::abs((pa + pb) / 2 - pooled) > 0.05);

        auto m = ci_moments(a);
        m += ci_moments(b);
        CHECK(std::abs(pooled - m.sum_ab / m.sum_bb) <= 1e-12 * pooled);
        CHECK(m.ple() == pooled);
        CHECK(m.n == 6);
    }

    TEST_CASE("property: CI fit ignores order")
    {
        testing::Rng rng(61);
        for (int i = 0; i < 200; ++i)
        {
            std::vector<PathLossSample> s;
            const int n = testing::uniform_int(rng, 2, 40);
            for (int k = 0; k < n; ++k)
            {
                const double d = testing::uniform(rng, 1.5, 500);
                const double f = testing::uniform(rng, 20, 160);
                s.push_back({d, fspl_1m(f) + 10 * testing::uniform(rng, 1.6, 4) * std::log10(d) + testing::uniform(rng, -8, 8), f});
            }
            const auto base = fit_ci(s);
            std::shuffle(s.begin(), s.end(), rng);
            const auto again = fit_ci(s);
            CHECK(testing::close_rel(base.ple, again.ple, 1e-12));
            CHECK(testing::close_rel(base.sigma_db, again.sigma_db, 1e-12));
            CHECK(base.sigma_db == doctest::Approx(static_cast<double>(oracle::ci_rms(s, base.ple))).epsilon(1e-9));
        }
    }

    TEST_CASE("ABG matches the normal-equations oracle on the fixture")
    {
        const auto s = path_loss_samples(fixture_pool(), Split::Both);
        const auto fit = fit_abg(s);
        const auto o = oracle::abg_cramer(s);
        CHECK(fit.alpha == doctest::Approx(static_cast<double>(o.alpha)).epsilon(1e-6));
        CHECK(fit.beta_db == doctest::Approx(static_cast<double>(o.beta)).epsilon(1e-6));
        CHECK(fit.gamma == doctest::Approx(static_cast<double>(o.gamma)).epsilon(1e-6));
        CHECK(fit.sigma_db == doctest::Approx(static_cast<double>(o.sigma)).epsilon(1e-6));
        CHECK(fit.sigma_db <= fit_ci(s).sigma_db);
        CHECK(fit.n_points == 12);
    }

    TEST_CASE("ABG recovers noiseless parameters")
    {
        std::vector<PathLossSample> s;
        for (double f : {28.0, 142.0})
            for (double d : {3.0, 12.0, 60.0})
                s.push_back({d, 25 * std::log10(d) + 30 + 20 * std::log10(f), f});
        const auto fit = fit_abg(s);
        CHECK(std::abs(fit.alpha - 2.5) <= 1e-9);
        CHECK(std::abs(fit.beta_db - 30) <= 1e-9);
        CHECK(std::abs(fit.gamma - 2.0) <= 1e-9);
        CHECK(fit.sigma_db <= 1e-9);
    }

    TEST_CASE("ABG identifiability")
    {
        const auto one_freq = ci_campaign(2.0, {2, 5, 10});
        CHECK(error_of([&] { fit_abg(one_freq); }) == Errc::RankDeficient);
        std::vector<PathLossSample> one_dist{{10, 90, 28}, {10, 100, 73}, {10, 110, 142}};
        CHECK(error_of([&] { fit_abg(one_dist); }) == Errc::RankDeficient);
        CHECK(error_of([] { fit_abg({{10, 90, 28}, {20, 100, 73}}); }) == Errc::EmptyInput);
    }

    TEST_CASE("property: ABG never fits worse than CI")
    {
        testing::Rng rng(62);
        for (int i = 0; i < 300; ++i)
        {
            std::vector<PathLossSample> s;
            const int n = testing::uniform_int(rng, 4, 30);
            for (int k = 0; k < n; ++k)
            {
                const double d = testing::uniform(rng, 1.5, 300);
                const double f = k % 2 ? 28.0 : testing::uniform(rng, 60, 160);
                s.push_back({d, fspl_1m(f) + 10 * testing::uniform(rng, 1.8, 3.5) * std::log10(d) + testing::uniform(rng, -6, 6), f});
            }
            CHECK(fit_abg(s).sigma_db <= fit_ci(s).sigma_db + 1e-9);
        }
    }

    TEST_CASE("lognormal statistics")
    {
        const auto flat = lognormal_stats({10, 10, 10});
        CHECK(flat.mu_ln == doctest::Approx(std::log(10.0)));
        CHECK(flat.sigma_ln == doctest::Approx(0.0));
        CHECK(flat.mean_linear == doctest::Approx(10.0));

        const auto nlos = column_values(fixture_pool(), Column::OmniDsNs, Split::NLOS);
        CHECK(oracle::sorted(nlos) == oracle::sorted({19.1, 23.9, 29.8, 121.6, 97.7, 67.7}));
        const auto s = lognormal_stats(nlos);
        const auto o = oracle::log_moments(nlos);
        CHECK(testing::close_rel(s.mu_ln, static_cast<double>(o.mu), 1e-9));
        CHECK(testing::close_rel(s.sigma_ln, static_cast<double>(o.sigma), 1e-9));
        CHECK(testing::close_rel(s.mean_linear, static_cast<double>(o.mean), 1e-9));
        CHECK(s.n_points == 6);

        CHECK(error_of([] { lognormal_stats({}); }) == Errc::EmptyInput);
        CHECK(error_of([] { lognormal_stats({3, 0}); }) == Errc::NonPositiveSample);
    }

    TEST_CASE("empirical CDF")
    {
        const auto one = empirical_cdf({5});
        CHECK(one.sorted_values == std::vector<double>{5});
        CHECK(one.probabilities == std::vector<double>{1.0});
        const auto three = empirical_cdf({3, 1, 2});
        CHECK(three.sorted_values == std::vector<double>{1, 2, 3});
        CHECK(three.probabilities[0] == doctest::Approx(1.0 / 3));
        CHECK(three.probabilities[1] == doctest::Approx(2.0 / 3));
        CHECK(three.probabilities[2] == 1.0);
        const auto ties = empirical_cdf({2, 2});
        CHECK(ties.probabilities == std::vector<double>{0.5, 1.0});

        const auto all = column_values(fixture_pool(), Column::OmniDsNs, Split::Both);
        CHECK(empirical_cdf(all).sorted_values == oracle::sorted(all));
        CHECK(error_of([] { empirical_cdf({}); }) == Errc::EmptyInput);
    }

    TEST_CASE("scatter rows follow provenance")
    {
        const auto pool = fixture_pool();
        CHECK(scatter_data(pool, Split::LOS).size() == 6);
        CHECK(scatter_data(pool, Split::NLOS).size() == 6);
        const auto rows = scatter_data(pool, Split::Both);
        REQUIRE(rows.size() == pool.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            CHECK(rows[i].campaign_id == pool.provenance[i].campaign_id);
            CHECK(rows[i].pl_db == pool.point(i).fields().pl_db.to_double());
        }
        CHECK(error_of([] { scatter_data(PooledDataset{}, Split::Both); }) == Errc::EmptyInput);
    }

    TEST_CASE("split names")
    {
        CHECK(parse_split("los") == Split::LOS);
        CHECK(parse_split("Both") == Split::Both);
        CHECK_FALSE(parse_split("olos"));
        CHECK(to_string(Split::NLOS) == "NLOS");
    }

    TEST_CASE("JSON summaries")
    {
        const auto j = to_json(fit_ci(path_loss_samples(fixture_pool(), Split::LOS)), Split::LOS);
        CHECK(j["model"] == "CI");
        CHECK(j["split"] == "LOS");
        CHECK(j["n_points"] == 6);
        CHECK(to_json(lognormal_stats({1, 2})).contains("mean_linear"));
    }
}

#include <random>

#include "doctest.h"
#include "ncpc/errors.hpp"
#include "ncpc/regime.hpp"
#include "oracles.hpp"

using namespace ncpc;
using oracle::make_dense_series;
using oracle::make_series;

TEST_CASE("recession dummy from GDP levels") {
    auto r = recession_dummy(make_dense_series({100.0, 99.0, 99.0, 101.0}));
    REQUIRE(r.size() == 4);
    CHECK(*r.flags[0] == false);  // first quarter convention
    CHECK(*r.flags[1] == true);   // negative growth
    CHECK(*r.flags[2] == true);   // zero growth counts with <= 0
    CHECK(*r.flags[3] == false);
}

TEST_CASE("strictly increasing GDP is all tranquil") {
    auto r = recession_dummy(make_dense_series({10.0, 11.0, 12.5, 13.0, 14.0}));
    for (const auto& f : r.flags) {
        CHECK(*f == false);
    }
}

TEST_CASE("strict mode excludes exact zero growth") {
    auto gdp = make_dense_series({100.0, 100.0, 99.0});
    auto soft = recession_dummy(gdp);
    auto strict = recession_dummy(gdp, RegimeOptions{.strict_negative = true});
    CHECK(*soft.flags[1] == true);
    CHECK(*strict.flags[1] == false);
    CHECK(*soft.flags[2] == true);
    CHECK(*strict.flags[2] == true);
}

TEST_CASE("missing GDP propagates to flags and restarts the run") {
    auto r = recession_dummy(make_series({100.0, std::nullopt, 90.0, 80.0}));
    CHECK(*r.flags[0] == false);
    CHECK_FALSE(r.flags[1].has_value());
    CHECK(*r.flags[2] == false);  // growth undefined after a gap
    CHECK(*r.flags[3] == true);
}

TEST_CASE("recession dummy rejects bad input") {
    CHECK_THROWS_AS(recession_dummy(make_dense_series({100.0})), SeriesTooShort);
    CHECK_THROWS_AS(recession_dummy(make_dense_series({100.0, -5.0})), NonPositiveGdp);
    CHECK_THROWS_AS(recession_dummy(make_dense_series({100.0, 0.0})), NonPositiveGdp);
}

TEST_CASE("dummy is invariant to GDP rescaling") {
    std::mt19937 rng(3);
    std::lognormal_distribution<double> step(0.0, 0.02);
    std::vector<double> gdp{100.0};
    for (int i = 0; i < 60; ++i) {
        gdp.push_back(gdp.back() * step(rng));
    }
    auto base = recession_dummy(make_dense_series(gdp));
    for (double k : {0.001, 7.3, 1e6}) {
        std::vector<double> scaled;
        for (double g : gdp) {
            scaled.push_back(k * g);
        }
        auto r = recession_dummy(make_dense_series(scaled));
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(*r.flags[i] == *base.flags[i]);
        }
    }
}

TEST_CASE("count_recessions windows") {
    RegimeSeries r;
    r.country = "AU";
    r.start = Quarter{1980, 1};
    r.flags.assign(16, false);
    r.flags[2] = true;                 // 1980Q3
    r.flags[6] = true;                 // 1981Q3
    r.flags[7] = true;                 // 1981Q4
    r.flags[12] = std::nullopt;        // missing contributes 0

    CHECK(count_recessions(r, Quarter{1980, 1}, Quarter{1983, 4}) == 3);
    CHECK(count_recessions(r, Quarter{1980, 1}, Quarter{1980, 4}) == 1);
    CHECK(count_recessions(r, Quarter{1981, 1}, Quarter{1983, 4}) == 2);
    CHECK(count_recessions(r, Quarter{1990, 1}, Quarter{1999, 4}) == 0);
    CHECK_THROWS_AS(count_recessions(r, Quarter{1981, 1}, Quarter{1980, 1}), Error);
}

TEST_CASE("counts over adjacent windows add up") {
    std::mt19937 rng(9);
    std::lognormal_distribution<double> step(0.001, 0.015);
    std::vector<double> gdp{50.0};
    for (int i = 0; i < 99; ++i) {
        gdp.push_back(gdp.back() * step(rng));
    }
    auto r = recession_dummy(make_dense_series(gdp, Quarter{1980, 1}));
    Quarter lo{1980, 1}, mid{1990, 1}, hi{2004, 4};
    int left = count_recessions(r, lo, mid.plus(-1));
    int right = count_recessions(r, mid, hi);
    CHECK(left + right == count_recessions(r, lo, hi));
}

TEST_CASE("all-false regime counts zero") {
    RegimeSeries r{"AU", Quarter{1980, 1}, std::vector<std::optional<bool>>(40, false)};
    CHECK(count_recessions(r, Quarter{1980, 1}, Quarter{1989, 4}) == 0);
}

TEST_CASE("has_flag_in_window distinguishes missing coverage") {
    RegimeSeries r{"CZ", Quarter{1993, 1}, std::vector<std::optional<bool>>(20, false)};
    CHECK_FALSE(has_flag_in_window(r, Quarter{1980, 1}, Quarter{1989, 4}));
    CHECK(has_flag_in_window(r, Quarter{1990, 1}, Quarter{1999, 4}));
}

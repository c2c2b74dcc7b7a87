#include <cmath>
#include <random>

#include "doctest.h"
#include "ncpc/errors.hpp"
#include "ncpc/hp_filter.hpp"
#include "oracles.hpp"

using namespace ncpc;
using oracle::make_dense_series;
using oracle::make_series;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

std::vector<double> random_series(std::mt19937& rng, std::size_t n) {
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> y(n);
    double level = 0.0;
    for (auto& v : y) {
        level += 0.1 + noise(rng);
        v = level;
    }
    return y;
}

double curvature(const QuarterlySeries& trend) {
    double s = 0.0;
    for (std::size_t i = 2; i < trend.size(); ++i) {
        double d2 = *trend.values[i] - 2.0 * *trend.values[i - 1] + *trend.values[i - 2];
        s += d2 * d2;
    }
    return s;
}

}  // namespace

TEST_CASE("ravn_uhlig_lambda frequency rule") {
    CHECK(ravn_uhlig_lambda(4, 2.0) == doctest::Approx(1600.0));
    CHECK(ravn_uhlig_lambda(4, 4.0) == doctest::Approx(1600.0));
    CHECK(ravn_uhlig_lambda(12, 4.0) == doctest::Approx(129600.0));
    CHECK_THROWS_AS(ravn_uhlig_lambda(0, 2.0), Error);
}

TEST_CASE("linear series is an HP fixed point") {
    std::vector<double> y(24);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = 3.5 - 0.25 * static_cast<double>(i);
    }
    for (double lambda : {0.0, 100.0, 1600.0, 1e6}) {
        auto dec = hp_filter(make_dense_series(y), lambda);
        for (std::size_t i = 0; i < y.size(); ++i) {
            CHECK(std::abs(*dec.cycle.values[i]) <= 1e-8);
            CHECK(*dec.trend.values[i] == doctest::Approx(y[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("lambda zero returns the input as trend") {
    std::mt19937 rng(5);
    auto y = random_series(rng, 17);
    auto dec = hp_filter(make_dense_series(y), 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(*dec.trend.values[i] == doctest::Approx(y[i]));
        CHECK(std::abs(*dec.cycle.values[i]) <= 1e-12);
    }
}

TEST_CASE("n=6 series matches the dense oracle at lambda 1600") {
    std::vector<double> y{2.0, -1.0, 0.5, 4.0, 3.0, 7.0};
    auto dec = hp_filter(make_dense_series(y), 1600.0);
    auto expected = oracle::hp_trend_dense(y, 1600.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(std::abs(*dec.trend.values[i] - expected[i]) <= 1e-8);
    }
}

TEST_CASE("reconstruction and optimality residual on random inputs") {
    std::mt19937 rng(42);
    for (int rep = 0; rep < 30; ++rep) {
        std::size_t n = 4 + rng() % 120;
        double lambda = std::vector<double>{10.0, 1600.0, 1e5}[rep % 3];
        auto y = random_series(rng, n);
        auto dec = hp_filter(make_dense_series(y), lambda);

        // trend + cycle reconstructs the input
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(*dec.trend.values[i] + *dec.cycle.values[i] - y[i]) <= 1e-8);
        }

        // (I + lambda D'D) tau = y residual
        auto a = oracle::hp_system_dense(n, lambda);
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                s += a[i][j] * *dec.trend.values[j];
            }
            resid = std::max(resid, std::abs(s - y[i]));
        }
        CHECK(resid <= 1e-8);
    }
}

TEST_CASE("dense-oracle agreement for n <= 50") {
    std::mt19937 rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 4 + rng() % 47;
        auto y = random_series(rng, n);
        auto dec = hp_filter(make_dense_series(y), 1600.0);
        auto expected = oracle::hp_trend_dense(y, 1600.0);
        std::vector<double> got(n);
        for (std::size_t i = 0; i < n; ++i) {
            got[i] = *dec.trend.values[i];
        }
        CHECK(max_abs_diff(got, expected) <= 1e-8);
    }
}

TEST_CASE("huge lambda approaches the straight-line fit") {
    std::mt19937 rng(123);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t n : {50UL, 200UL}) {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = 2.0 + 0.05 * static_cast<double>(i) + noise(rng);
        }
        auto dec = hp_filter(make_dense_series(y), 1e12);
        auto [a, b] = oracle::line_fit(y);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(*dec.trend.values[i] - (a + b * static_cast<double>(i))) <= 1e-4);
        }
    }
}

TEST_CASE("curvature of the trend is non-increasing in lambda") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 5; ++rep) {
        auto y = random_series(rng, 60);
        double prev = std::numeric_limits<double>::infinity();
        for (double lambda : {0.0, 100.0, 1600.0, 1e5}) {
            auto dec = hp_filter(make_dense_series(y), lambda);
            double c = curvature(dec.trend);
            CHECK(c <= prev * (1.0 + 1e-12) + 1e-12);
            prev = c;
        }
    }
}

TEST_CASE("cycle mean is zero by construction") {
    std::mt19937 rng(9);
    auto y = random_series(rng, 80);
    auto dec = hp_filter(make_dense_series(y), 1600.0);
    CHECK(std::abs(describe(dec.cycle).mean) <= 1e-6);
}

TEST_CASE("hp_filter error paths") {
    CHECK_THROWS_AS(hp_filter(make_dense_series({1.0, 2.0, 3.0}), 1600.0), SeriesTooShort);
    CHECK_THROWS_AS(
        hp_filter(make_series({1.0, 2.0, std::nullopt, 3.0, 4.0, 5.0}), 1600.0),
        NonContiguous);
    // leading/trailing missing is fine
    auto dec = hp_filter(make_series({std::nullopt, 1.0, 2.0, 3.0, 4.0, std::nullopt}), 10.0);
    CHECK(dec.trend.size() == 4);
    CHECK(dec.trend.start == Quarter{2000, 2});
}

TEST_CASE("nairu of a constant series is the constant") {
    auto u = make_dense_series(std::vector<double>(20, 0.07));
    auto star = nairu(u, 1600.0);
    for (const auto& v : star.values) {
        CHECK(*v == doctest::Approx(0.07).epsilon(1e-10));
    }
}

TEST_CASE("unemployment gap equals the cycle in levels mode") {
    std::mt19937 rng(15);
    std::normal_distribution<double> noise(0.0, 0.005);
    std::vector<double> u(60);
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = 0.06 + 0.0001 * static_cast<double>(i) + noise(rng);
    }
    auto s = make_dense_series(u);
    auto gap = unemployment_gap(s, GapMode::Levels, 1.0, 1600.0);
    auto dec = hp_filter(s, 1600.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(*gap.values[i] == doctest::Approx(*dec.cycle.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("constant unemployment gives a zero gap in both modes") {
    auto u = make_dense_series(std::vector<double>(16, 0.05));
    for (auto mode : {GapMode::Levels, GapMode::Logs}) {
        auto gap = unemployment_gap(u, mode, 1.0, 1600.0);
        for (const auto& v : gap.values) {
            CHECK(std::abs(*v) <= 1e-10);
        }
    }
}

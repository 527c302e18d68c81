#include <doctest.h>

#include <cmath>

#include "longmem/rng.hpp"
#include "test_util.hpp"

using namespace longmem;

// Monte-Carlo tail oracles at 1e7 draws; slower than the unit suite.

TEST_CASE("stable tail ratio P(X>2x)/P(X>x) approaches 2^-alpha") {
    RngStream rng(11, 0);
    const auto x = sample_stable({1.5, 0.8, 1.0, 0.0}, 10000000, rng);
    std::vector<double> sorted(x);
    std::sort(sorted.begin(), sorted.end());
    const double x999 = sorted[static_cast<std::size_t>(0.999 * sorted.size())];
    double above = 0.0, above2 = 0.0;
    for (double v : x) {
        above += v > x999;
        above2 += v > 2.0 * x999;
    }
    CHECK(above2 / above == doctest::Approx(std::pow(2.0, -1.5)).epsilon(0.05));
}

TEST_CASE("positive stable keeps the alpha=1.5 tail (Hill oracle)") {
    RngStream rng(12, 0);
    const auto res = sample_positive_stable({1.5, 0.8, 1.0, 0.0}, 10000000, rng);
    const double hill = testutil::hill_tail_index(res.values, res.values.size() / 1000);
    CHECK(hill == doctest::Approx(1.5).epsilon(0.05));
}

TEST_CASE("equilibrium pareto has tail index alpha-1 (Hill oracle)") {
    RngStream rng(13, 0);
    const auto x = sample_pareto(1.5, 1.0, 10000000, rng, true);
    const double hill = testutil::hill_tail_index(x, x.size() / 1000);
    CHECK(hill == doctest::Approx(0.5).epsilon(0.06));
}

TEST_CASE("log-log tail slope of stable draws is -alpha within 0.1") {
    for (double alpha : {1.2, 1.5, 1.8}) {
        RngStream rng(static_cast<std::uint64_t>(alpha * 100), 0);
        const auto x = sample_stable({alpha, 0.8, 1.0, 0.0}, 10000000, rng);
        const double slope = testutil::tail_loglog_slope(x, 0.001);
        CHECK(std::abs(slope - (-alpha)) < 0.1);
    }
}

#include <doctest.h>

#include <cmath>

#include "longmem/rng.hpp"
#include "test_util.hpp"

using namespace longmem;

TEST_CASE("identical seed and stream id reproduce the sequence exactly") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, 8);
    bool all_equal = true;
    RngStream a2(42, 7);
    for (int i = 0; i < 64; ++i) all_equal = all_equal && (a2.next_u64() == c.next_u64());
    CHECK_FALSE(all_equal);
}

TEST_CASE("substreams are reproducible and distinct") {
    RngStream base(9, 3);
    RngStream s1 = base.substream(1);
    RngStream s1_again = RngStream(9, 3).substream(1);
    RngStream s2 = base.substream(2);
    CHECK(s1.next_u64() == s1_again.next_u64());
    CHECK(s1.next_u64() != s2.next_u64());
}

TEST_CASE("alpha=2 stable reduces to a Gaussian with variance 2 scale^2") {
    RngStream rng(1, 0);
    const auto x = sample_stable({2.0, 0.0, 1.0, 0.0}, 1000000, rng);
    CHECK(variance(x) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("alpha=0.5 beta=1 gives the Levy law: CDF at 1 is 2(1-Phi(1))") {
    RngStream rng(2, 0);
    const auto x = sample_stable({0.5, 1.0, 1.0, 0.0}, 1000000, rng);
    double below = 0.0;
    for (double v : x) below += v <= 1.0;
    const double expected = 2.0 * (1.0 - testutil::normal_cdf(1.0));  // 0.3173
    CHECK(below / 1e6 == doctest::Approx(expected).epsilon(0.005));
}

TEST_CASE("stable parameter validation") {
    RngStream rng(3, 0);
    CHECK_THROWS_AS(sample_stable({2.5, 0.0, 1.0, 0.0}, 10, rng), parameter_error);
    CHECK_THROWS_AS(sample_stable({1.5, 1.5, 1.0, 0.0}, 10, rng), parameter_error);
    CHECK_THROWS_AS(sample_stable({1.5, 0.0, -1.0, 0.0}, 10, rng), parameter_error);
    CHECK_THROWS_AS(sample_stable({1.5, 0.0, 1.0, 0.0}, 0, rng), parameter_error);
}

TEST_CASE("positive stable draws are positive and scale linearly") {
    RngStream rng(4, 0);
    const auto res = sample_positive_stable({1.5, 0.8, 1.0, 0.0}, 20000, rng);
    for (double v : res.values) CHECK(v > 0.0);
    CHECK(res.acceptance_rate > 0.1);

    // Coupled seeds: scaling the accepted draws by c scales the mean by c.
    RngStream r1(5, 1), r2(5, 1);
    const auto a = sample_positive_stable({1.5, 0.8, 1.0, 0.0}, 5000, r1);
    const auto b = sample_positive_stable({1.5, 0.8, 1.0, 0.0}, 5000, r2);
    const double c = 1.21;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        ma += c * a.values[i];
        mb += b.values[i];
    }
    CHECK(ma / 5000.0 == doctest::Approx(c * mb / 5000.0).epsilon(1e-12));
}

TEST_CASE("heavily negative skew makes positive-stable rejection fail fast") {
    RngStream rng(6, 0);
    CHECK_THROWS_AS(sample_positive_stable({1.2, -1.0, 1.0, -10.0}, 1000, rng),
                    config_error);
}

TEST_CASE("weibull sampling: exponential reduction and gamma-function mean") {
    RngStream rng(7, 0);
    const auto exp_like = sample_weibull(1.0, 1.0, 400000, rng);
    CHECK(mean(exp_like) == doctest::Approx(1.0).epsilon(0.01));

    const double shape = 1.3376;  // table-2 innovation shape
    const auto w = sample_weibull(shape, 1.0, 400000, rng);
    CHECK(mean(w) == doctest::Approx(std::tgamma(1.0 + 1.0 / shape)).epsilon(0.01));

    const auto unit = sample_weibull(shape, weibull_unit_mean_scale(shape), 400000, rng);
    CHECK(mean(unit) == doctest::Approx(1.0).epsilon(0.01));

    CHECK_THROWS_AS(sample_weibull(-1.0, 1.0, 10, rng), parameter_error);
    CHECK_THROWS_AS(sample_weibull(1.0, 0.0, 10, rng), parameter_error);
}

TEST_CASE("pareto sampling: quantile, mean and equilibrium tail") {
    RngStream rng(8, 0);
    const auto x = sample_pareto(1.5, 1.0, 400000, rng);
    std::vector<double> sorted(x);
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted[sorted.size() / 2] ==
          doctest::Approx(std::pow(2.0, 1.0 / 1.5)).epsilon(0.01));
    CHECK(mean(x) == doctest::Approx(3.0).epsilon(0.05));

    CHECK_THROWS_AS(sample_pareto(0.9, 1.0, 10, rng, true), parameter_error);
}

TEST_CASE("KS distance against closed-form CDFs is below 2/sqrt(N)") {
    const std::size_t n = 1000000;
    const double bound = 2.0 / std::sqrt(static_cast<double>(n));

    RngStream rng(100, 0);
    std::vector<double> gauss(n);
    for (auto& v : gauss) v = rng.normal();
    CHECK(testutil::ks_distance(gauss, testutil::normal_cdf) < bound);

    const auto weib = sample_weibull(1.3376, 1.0, n, rng);
    CHECK(testutil::ks_distance(weib, [](double x) {
              return x <= 0.0 ? 0.0 : 1.0 - std::exp(-std::pow(x, 1.3376));
          }) < bound);

    const auto par = sample_pareto(1.5, 1.0, n, rng);
    CHECK(testutil::ks_distance(par, [](double x) {
              return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -1.5);
          }) < bound);

    const auto levy = sample_stable({0.5, 1.0, 1.0, 0.0}, n, rng);
    CHECK(testutil::ks_distance(levy, [](double x) {
              return x <= 0.0 ? 0.0 : std::erfc(1.0 / std::sqrt(2.0 * x));
          }) < bound);
}

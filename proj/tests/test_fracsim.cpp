#include <doctest.h>

#include <cmath>
#include <numeric>

#include "longmem/fracsim.hpp"
#include "test_util.hpp"

using namespace longmem;

namespace {

double lag_autocorr(const std::vector<double>& x, std::size_t k) {
    const double m = mean(x);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t + k < x.size(); ++t)
        num += (x[t] - m) * (x[t + k] - m);
    for (double v : x) den += (v - m) * (v - m);
    return num / den;
}

// Oracle: ARFIMA(1,d,0) autocovariance via a truncated MA(infinity)
// expansion, written out independently of the library weight helpers.
std::vector<double> arfima1d0_acvf_oracle(double d, double phi, std::size_t max_lag,
                                          std::size_t terms) {
    std::vector<double> psi_frac(terms);
    psi_frac[0] = 1.0;
    for (std::size_t j = 1; j < terms; ++j) {
        const double jj = static_cast<double>(j);
        psi_frac[j] = psi_frac[j - 1] * (jj - 1.0 + d) / jj;
    }
    std::vector<double> psi(terms);
    for (std::size_t j = 0; j < terms; ++j) {
        // conv of fractional weights with the AR(1) impulse response phi^i
        double s = 0.0, p = 1.0;
        for (std::size_t i = 0; i <= j; ++i) {
            s += psi_frac[j - i] * p;
            p *= phi;
        }
        psi[j] = s;
    }
    std::vector<double> acvf(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k)
        for (std::size_t j = 0; j + k < terms; ++j) acvf[k] += psi[j] * psi[j + k];
    return acvf;
}

}  // namespace

TEST_CASE("arfima0d0 acvf: white-noise case and recursion identity") {
    const auto t0 = arfima0d0_acvf(0.0, 8, 1.5);
    CHECK(t0.values[0] == doctest::Approx(2.25));
    for (std::size_t k = 1; k <= 8; ++k) CHECK(t0.values[k] == 0.0);

    const auto t = arfima0d0_acvf(0.3545, 64);
    for (std::size_t k = 1; k <= 64; ++k) {
        const double kk = static_cast<double>(k);
        CHECK(t.values[k] / t.values[k - 1] ==
              doctest::Approx((kk - 1.0 + 0.3545) / (kk - 0.3545)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(arfima0d0_acvf(0.5, 4), parameter_error);
}

TEST_CASE("arfima0d0 acvf decays like k^{2d-1}") {
    const double d = 0.25;
    const auto t = arfima0d0_acvf(d, 1000);
    std::vector<double> lx, ly;
    for (std::size_t k = 100; k <= 1000; ++k) {
        lx.push_back(std::log(static_cast<double>(k)));
        ly.push_back(std::log(t.values[k]));
    }
    CHECK(ols_slope(lx, ly) == doctest::Approx(2.0 * d - 1.0).epsilon(0.04));
}

TEST_CASE("fractional noise with d=0 is white") {
    RngStream rng(21, 0);
    const auto acvf = arfima0d0_acvf(0.0, 4095);
    const auto x = simulate_fractional_noise(acvf, 4096, rng);
    CHECK(std::abs(lag_autocorr(x.values, 1)) < 3.0 / std::sqrt(4096.0));
    CHECK_FALSE(x.embedding_clipped);
}

TEST_CASE("fractional noise reproduces the variance at d=0.3545") {
    const auto acvf = arfima0d0_acvf(0.3545, 8191);
    double acc = 0.0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        RngStream rng(22, static_cast<std::uint64_t>(r));
        const auto x = simulate_fractional_noise(acvf, 8192, rng);
        acc += variance_mle(x.values);
    }
    CHECK(acc / reps == doctest::Approx(acvf.values[0]).epsilon(0.02));
}

TEST_CASE("fractional noise sample covariance matches the table entrywise") {
    // Exactness at n=256 over 1e4 replications, within 5 MC standard errors.
    const std::size_t n = 256;
    const std::size_t reps = 10000;
    const auto acvf = arfima0d0_acvf(0.4, n - 1);
    std::vector<std::vector<double>> per_rep_acvf(16);
    for (auto& v : per_rep_acvf) v.assign(reps, 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
        RngStream rng(23, r);
        const auto x = simulate_fractional_noise(acvf, n, rng);
        for (std::size_t k = 0; k < per_rep_acvf.size(); ++k) {
            double s = 0.0;
            for (std::size_t t = 0; t + k < n; ++t) s += x.values[t] * x.values[t + k];
            per_rep_acvf[k][r] = s / static_cast<double>(n - k);
        }
    }
    for (std::size_t k = 0; k < per_rep_acvf.size(); ++k) {
        const double m = mean(per_rep_acvf[k]);
        const double se = testutil::se_of_mean(per_rep_acvf[k]);
        CHECK(std::abs(m - acvf.values[k]) < 5.0 * se);
    }
}

TEST_CASE("pooled fractional noise is marginally Gaussian") {
    std::vector<double> pooled;
    pooled.reserve(1 << 20);
    const auto acvf = arfima0d0_acvf(0.3, 8191);
    for (std::uint64_t r = 0; r < 128; ++r) {
        RngStream rng(24, r);
        const auto x = simulate_fractional_noise(acvf, 8192, rng);
        pooled.insert(pooled.end(), x.values.begin(), x.values.end());
    }
    // Normalize scale so the moment checks are unit-free.
    const double sd = std::sqrt(variance_mle(pooled));
    for (auto& v : pooled) v /= sd;
    CHECK(std::abs(skewness(pooled)) < 0.05);
    CHECK(std::abs(excess_kurtosis(pooled)) < 0.05);
}

TEST_CASE("empty ARMA filter reduces to plain fractional noise") {
    FracSpec spec;
    spec.d = 0.25;
    RngStream r1(25, 5), r2(25, 5);
    const auto a = simulate_arfima(spec, 2048, r1);
    const auto acvf = arfima0d0_acvf(0.25, 2047);
    const auto b = simulate_fractional_noise(acvf, 2048, r2);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i)
        CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
}

TEST_CASE("AR(1) reduction: d=0, ar=0.5 has ACF 0.5^k") {
    FracSpec spec;
    spec.d = 0.0;
    spec.ar = {0.5};
    std::vector<std::vector<double>> rho(6);
    const int reps = 100;
    for (int r = 0; r < reps; ++r) {
        RngStream rng(26, static_cast<std::uint64_t>(r));
        const auto x = simulate_arfima(spec, 8192, rng);
        for (std::size_t k = 1; k <= 5; ++k)
            rho[k].push_back(lag_autocorr(x.values, k));
    }
    for (std::size_t k = 1; k <= 5; ++k) {
        const double m = mean(rho[k]);
        CHECK(std::abs(m - std::pow(0.5, static_cast<double>(k))) <
              3.0 * testutil::se_of_mean(rho[k]) + 0.01);
    }
}

TEST_CASE("ARFIMA(1,d,0) lag-1 autocorrelation matches the truncated-MA oracle") {
    const double d = 0.3545, phi = -0.42;
    const auto oracle = arfima1d0_acvf_oracle(d, phi, 1, 1 << 20);
    const double rho1 = oracle[1] / oracle[0];

    FracSpec spec;
    spec.d = d;
    spec.ar = {phi};
    std::vector<double> rho_hat;
    const int reps = 100;
    for (int r = 0; r < reps; ++r) {
        RngStream rng(27, static_cast<std::uint64_t>(r));
        const auto x = simulate_arfima(spec, 8192, rng);
        rho_hat.push_back(lag_autocorr(x.values, 1));
    }
    // Allowance beyond MC error covers the O(n^{2d-1}) small-sample bias of
    // the sample autocorrelation of a long-memory series.
    CHECK(std::abs(mean(rho_hat) - rho1) <
          3.0 * testutil::se_of_mean(rho_hat) + 0.03);
}

TEST_CASE("nonstationary AR polynomial is rejected") {
    FracSpec spec;
    spec.d = 0.1;
    spec.ar = {1.05};
    RngStream rng(28, 0);
    CHECK_THROWS_AS(simulate_arfima(spec, 128, rng), parameter_error);

    CHECK(ar_polynomial_stationary({0.5}));
    CHECK(ar_polynomial_stationary({-0.42}));
    CHECK(ar_polynomial_stationary({0.3, 0.2}));
    CHECK_FALSE(ar_polynomial_stationary({0.7, 0.5}));
    CHECK_FALSE(ar_polynomial_stationary({1.0}));
}

TEST_CASE("fractional weights: MA and AR expansions") {
    const auto psi = fractional_ma_weights(0.3, 2000);
    CHECK(psi[0] == 1.0);
    CHECK(psi[1] == doctest::Approx(0.3));
    // psi_j ~ j^{d-1}/Gamma(d)
    CHECK(psi[1999] ==
          doctest::Approx(std::pow(1999.0, -0.7) / std::tgamma(0.3)).epsilon(0.01));

    const auto pi = fractional_ar_weights(0.3, 200000);
    CHECK(pi[1] == doctest::Approx(0.3));
    double s = 0.0;
    for (double v : pi) {
        CHECK(v >= 0.0);
        s += v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(0.01));
}

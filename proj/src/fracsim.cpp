#include "longmem/fracsim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "longmem/fft.hpp"

namespace longmem {

void FracSpec::validate() const {
    if (!(std::abs(d) < 0.5))
        throw parameter_error("arfima: memory parameter d must be in (-0.5, 0.5)");
    if (!(innovation_sd > 0.0))
        throw parameter_error("arfima: innovation_sd must be > 0");
    if (!ar_polynomial_stationary(ar))
        throw parameter_error("arfima: AR polynomial is not stationary");
}

AcvfTable arfima0d0_acvf(double d, std::size_t max_lag, double sigma) {
    if (!(std::abs(d) < 0.5))
        throw parameter_error("arfima0d0_acvf: d must be in (-0.5, 0.5)");
    AcvfTable t;
    t.d = d;
    t.values.resize(max_lag + 1);
    t.values[0] = sigma * sigma * std::tgamma(1.0 - 2.0 * d) /
                  std::pow(std::tgamma(1.0 - d), 2);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        const double kk = static_cast<double>(k);
        t.values[k] = t.values[k - 1] * (kk - 1.0 + d) / (kk - d);
    }
    return t;
}

void extend_acvf(AcvfTable& table, std::size_t new_max_lag) {
    if (table.values.empty())
        throw parameter_error("extend_acvf: empty table");
    for (std::size_t k = table.values.size(); k <= new_max_lag; ++k) {
        const double kk = static_cast<double>(k);
        table.values.push_back(table.values[k - 1] * (kk - 1.0 + table.d) /
                               (kk - table.d));
    }
}

TimeSeries simulate_fractional_noise(const AcvfTable& acvf, std::size_t n, RngStream& rng) {
    if (n < 2) throw parameter_error("simulate_fractional_noise: n must be >= 2");
    if (acvf.max_lag() + 1 < n)
        throw parameter_error("simulate_fractional_noise: acvf must cover lags 0..n-1");

    std::size_t m = 1;
    while (m < 2 * (n - 1)) m *= 2;

    AcvfTable table = acvf;
    if (table.max_lag() < m / 2) extend_acvf(table, m / 2);

    // First row of the symmetric circulant: gamma_0..gamma_{m/2}, then
    // gamma_{m/2-1}..gamma_1.
    std::vector<double> row(m);
    for (std::size_t k = 0; k <= m / 2; ++k) row[k] = table.values[k];
    for (std::size_t k = 1; k < m / 2; ++k) row[m - k] = table.values[k];

    const auto spec = fft::real_forward(row);
    std::vector<double> lambda(m / 2 + 1);
    double lam_max = 0.0, lam_min = 0.0;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        lambda[k] = spec[k].real();
        lam_max = std::max(lam_max, lambda[k]);
        lam_min = std::min(lam_min, lambda[k]);
    }

    bool clipped = false;
    if (lam_min < 0.0) {
        if (lam_min < -1e-8 * lam_max)
            throw numerical_error(
                "circulant embedding is not nonnegative definite (relative "
                "eigenvalue " + std::to_string(lam_min / lam_max) + ")");
        for (auto& l : lambda)
            if (l < 0.0) l = 0.0;
        clipped = true;
    }

    // Hermitian synthesis: independent N(0,1) weights, real endpoints.
    const double md = static_cast<double>(m);
    std::vector<std::complex<double>> w(m / 2 + 1);
    w[0] = std::sqrt(lambda[0] / md) * rng.normal();
    for (std::size_t k = 1; k < m / 2; ++k) {
        const double a = std::sqrt(lambda[k] / (2.0 * md));
        const double u = rng.normal();
        const double v = rng.normal();
        w[k] = std::complex<double>(a * u, a * v);
    }
    w[m / 2] = std::sqrt(lambda[m / 2] / md) * rng.normal();

    auto x = fft::halfcomplex_backward(w, m);
    TimeSeries out;
    out.values.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    out.embedding_clipped = clipped;
    return out;
}

TimeSeries simulate_arfima(const FracSpec& spec, std::size_t n, RngStream& rng) {
    spec.validate();
    if (n < 2) throw parameter_error("simulate_arfima: n must be >= 2");

    const std::size_t p = spec.ar.size(), q = spec.ma.size();
    const std::size_t burn = (p == 0 && q == 0) ? 0 : 10 * std::max(p, q) + 1000;
    const std::size_t total = n + burn;

    const auto acvf = arfima0d0_acvf(spec.d, total - 1, spec.innovation_sd);
    TimeSeries f = simulate_fractional_noise(acvf, total, rng);
    if (p == 0 && q == 0) return f;

    std::vector<double> x(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        double v = f.values[t];
        for (std::size_t j = 0; j < q && j < t; ++j)
            v += spec.ma[j] * f.values[t - 1 - j];
        for (std::size_t i = 0; i < p && i < t; ++i)
            v += spec.ar[i] * x[t - 1 - i];
        x[t] = v;
    }

    TimeSeries out;
    out.values.assign(x.begin() + static_cast<std::ptrdiff_t>(burn), x.end());
    out.embedding_clipped = f.embedding_clipped;
    return out;
}

std::vector<double> fractional_ma_weights(double d, std::size_t count) {
    std::vector<double> psi(count);
    if (count == 0) return psi;
    psi[0] = 1.0;
    for (std::size_t j = 1; j < count; ++j) {
        const double jj = static_cast<double>(j);
        psi[j] = psi[j - 1] * (jj - 1.0 + d) / jj;
    }
    return psi;
}

std::vector<double> fractional_ar_weights(double d, std::size_t count) {
    // Coefficients of (1-B)^d are c_j = c_{j-1} (j-1-d)/j with c_0 = 1;
    // the AR weights are pi_j = -c_j.
    std::vector<double> pi(count, 0.0);
    if (count <= 1) return pi;
    double c = 1.0;
    for (std::size_t j = 1; j < count; ++j) {
        const double jj = static_cast<double>(j);
        c *= (jj - 1.0 - d) / jj;
        pi[j] = -c;
    }
    return pi;
}

bool ar_polynomial_stationary(const std::vector<double>& ar) {
    // Inverse Levinson-Durbin: stationary iff every reflection coefficient
    // has modulus < 1.
    std::vector<double> phi(ar);
    for (std::size_t m = phi.size(); m >= 1; --m) {
        const double k = phi[m - 1];
        if (!(std::abs(k) < 1.0)) return false;
        if (m == 1) break;
        std::vector<double> prev(m - 1);
        for (std::size_t i = 0; i < m - 1; ++i)
            prev[i] = (phi[i] + k * phi[m - 2 - i]) / (1.0 - k * k);
        phi = std::move(prev);
    }
    return true;
}

std::vector<double> arma_impulse_response(const std::vector<double>& ar,
                                          const std::vector<double>& ma,
                                          std::size_t count) {
    std::vector<double> psi(count, 0.0);
    if (count == 0) return psi;
    psi[0] = 1.0;
    for (std::size_t t = 1; t < count; ++t) {
        double v = t <= ma.size() ? ma[t - 1] : 0.0;
        for (std::size_t i = 0; i < ar.size() && i < t; ++i)
            v += ar[i] * psi[t - 1 - i];
        psi[t] = v;
    }
    return psi;
}

double arfima_variance(const FracSpec& spec) {
    spec.validate();
    if (spec.ar.empty() && spec.ma.empty()) {
        return spec.innovation_sd * spec.innovation_sd *
               std::tgamma(1.0 - 2.0 * spec.d) /
               std::pow(std::tgamma(1.0 - spec.d), 2);
    }
    // var = sum_{a,b} psi_a psi_b gamma(|a-b|) with psi the ARMA impulse
    // response; truncate once the response has decayed.
    std::size_t k = 512;
    const auto decayed = [](const std::vector<double>& psi) {
        double tail = 0.0, total = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            total += psi[i] * psi[i];
            if (i >= psi.size() - psi.size() / 8) tail += psi[i] * psi[i];
        }
        return tail < 1e-10 * total;
    };
    std::vector<double> psi = arma_impulse_response(spec.ar, spec.ma, k);
    while (!decayed(psi) && k < 4096) {
        k *= 2;
        psi = arma_impulse_response(spec.ar, spec.ma, k);
    }
    const auto acvf = arfima0d0_acvf(spec.d, k - 1, spec.innovation_sd);
    double var = 0.0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            var += psi[a] * psi[b] *
                   acvf.values[a > b ? a - b : b - a];
    return var;
}

}  // namespace longmem

#include "longmem/volatility.hpp"

#include <algorithm>
#include <cmath>

namespace longmem {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

InnovationLaw InnovationLaw::gaussian() {
    InnovationLaw law;
    law.kind = Kind::gaussian;
    return law;
}

InnovationLaw InnovationLaw::weibull_unit_mean(double shape) {
    if (!(shape > 0.0)) throw parameter_error("weibull innovation: shape must be > 0");
    InnovationLaw law;
    law.kind = Kind::weibull_unit_mean;
    law.weibull_shape = shape;
    return law;
}

double InnovationLaw::sample(RngStream& rng) const {
    switch (kind) {
        case Kind::gaussian:
            return rng.normal();
        case Kind::weibull_unit_mean:
            return sample_weibull_one(weibull_shape, weibull_unit_mean_scale(weibull_shape),
                                      rng);
        case Kind::custom:
            return custom(rng);
    }
    return 0.0;
}

bool InnovationLaw::zero_mean() const {
    switch (kind) {
        case Kind::gaussian:
            return true;
        case Kind::weibull_unit_mean:
            return false;
        case Kind::custom:
            return custom_zero_mean;
    }
    return false;
}

bool InnovationLaw::positive_unit_mean() const {
    switch (kind) {
        case Kind::gaussian:
            return false;
        case Kind::weibull_unit_mean:
            return true;
        case Kind::custom:
            return custom_positive_unit_mean;
    }
    return false;
}

double InnovationLaw::abs_mean() const {
    switch (kind) {
        case Kind::gaussian:
            return std::sqrt(2.0 / kPi);
        case Kind::weibull_unit_mean:
            return 1.0;
        case Kind::custom:
            throw unsupported_error("abs_mean is not available for custom innovations");
    }
    return 0.0;
}

void LmsvSpec::validate() const {
    latent.validate();
    if (mode == LmsvMode::lmsv && !innovation.zero_mean())
        throw parameter_error("LMSV requires a zero-mean innovation law");
    if (mode == LmsvMode::lmsd && !innovation.positive_unit_mean())
        throw parameter_error("LMSD requires a positive unit-mean innovation law");
}

LmsvSample simulate_lmsv_lmsd(const LmsvSpec& spec, std::size_t n, RngStream& rng) {
    spec.validate();
    RngStream h_rng = rng.substream(1);
    RngStream v_rng = rng.substream(2);

    LmsvSample out;
    out.h = simulate_arfima(spec.latent, n, h_rng);
    out.x.values.resize(n);
    for (std::size_t t = 0; t < n; ++t)
        out.x.values[t] = std::exp(out.h.values[t] / 2.0) * spec.innovation.sample(v_rng);
    return out;
}

std::vector<double> fiegarch_arfima_coeffs(double d, double tol, std::size_t cap) {
    if (!(d > 0.0) || !(d < 0.5))
        throw parameter_error("fiegarch coefficients: d must be in (0, 0.5)");
    if (!(tol > 0.0)) throw parameter_error("fiegarch coefficients: tol must be > 0");
    // Total squared mass of the MA(infinity) weights, j >= 1:
    // Gamma(1-2d)/Gamma(1-d)^2 - 1.
    const double total =
        std::tgamma(1.0 - 2.0 * d) / std::pow(std::tgamma(1.0 - d), 2) - 1.0;
    const auto psi = fractional_ma_weights(d, cap + 1);
    double partial = 0.0;
    for (std::size_t j = 1; j <= cap; ++j) {
        partial += psi[j] * psi[j];
        if (total - partial < tol * total)
            return std::vector<double>(psi.begin() + 1,
                                       psi.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    }
    throw config_error(
        "fiegarch coefficients: truncation tolerance not met within the cap (" +
        std::to_string(cap) + " weights); loosen tol or raise the cap");
}

void FiegarchSpec::validate() const {
    if (coeffs.empty()) throw parameter_error("fiegarch: empty coefficient sequence");
    if (innovation.kind == InnovationLaw::Kind::weibull_unit_mean)
        throw parameter_error("fiegarch: innovation law must be symmetric zero-mean");
}

FiegarchSample simulate_fiegarch(const FiegarchSpec& spec, std::size_t n, RngStream& rng) {
    spec.validate();
    const std::size_t J = spec.coeffs.size();
    const double e_abs = spec.innovation.abs_mean();

    // J pre-sample innovations serve as the burn-in history.
    std::vector<double> v(J + n);
    for (auto& x : v) x = spec.innovation.sample(rng);
    std::vector<double> g(J + n);
    for (std::size_t i = 0; i < v.size(); ++i)
        g[i] = spec.theta * v[i] + spec.gamma_lev * (std::abs(v[i]) - e_abs);

    const auto sums = convolve_history(g, spec.coeffs, n);

    FiegarchSample out;
    out.log_sigma2.values.resize(n);
    out.x.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        out.log_sigma2.values[t] = spec.omega + sums[t];
        out.x.values[t] = std::exp(out.log_sigma2.values[t] / 2.0) * v[J + t];
    }
    return out;
}

std::vector<double> arch_arfima_coeffs(double d, double target_sum, double tol,
                                       std::size_t cap) {
    if (!(d > 0.0) || !(d < 0.5))
        throw parameter_error("arch coefficients: d must be in (0, 0.5)");
    if (!(target_sum > 0.0) || !(target_sum < 1.0))
        throw parameter_error("arch coefficients: target sum must be in (0, 1)");
    // AR(infinity) weights are positive and sum to 1; truncate on squared
    // tail mass as for FIEGARCH, then rescale to the target sum.
    const auto pi = fractional_ar_weights(d, cap + 1);
    double total = 0.0;
    for (std::size_t j = 1; j <= cap; ++j) total += pi[j] * pi[j];
    double partial = 0.0;
    std::size_t J = cap;
    for (std::size_t j = 1; j <= cap; ++j) {
        partial += pi[j] * pi[j];
        if (total - partial < tol * total) {
            J = j;
            break;
        }
    }
    std::vector<double> out(pi.begin() + 1, pi.begin() + static_cast<std::ptrdiff_t>(J) + 1);
    double s = 0.0;
    for (double a : out) s += a;
    for (double& a : out) a *= target_sum / s;
    return out;
}

void ArchInfSpec::validate() const {
    if (!(omega >= 0.0)) throw parameter_error("arch: omega must be >= 0");
    double s = 0.0;
    for (double a : coeffs) {
        if (!(a >= 0.0)) throw parameter_error("arch: coefficients must be >= 0");
        s += a;
    }
    if (!(s < 1.0))
        throw parameter_error("arch: sum of coefficients must be < 1 for a "
                              "stationary finite-variance solution");
}

ArchInfSample simulate_arch_inf(const ArchInfSpec& spec, std::size_t n, RngStream& rng) {
    spec.validate();
    const std::size_t J = spec.coeffs.size();
    const std::size_t burn = J + 1000;
    const std::size_t total = burn + n;

    // Pre-sample squared values are filled with the unconditional variance;
    // suffix[k] = sum_{j>k} a_j lets the fill enter in O(1).
    double coeff_sum = 0.0;
    for (double a : spec.coeffs) coeff_sum += a;
    const double uncond = spec.omega / (1.0 - coeff_sum);
    std::vector<double> suffix(J + 1, 0.0);
    for (std::size_t j = J; j >= 1; --j) suffix[j - 1] = suffix[j] + spec.coeffs[j - 1];

    std::vector<double> x(total), x2(total), sigma2(total);
    for (std::size_t t = 0; t < total; ++t) {
        const std::size_t in_sample = std::min(J, t);
        double v = spec.omega + uncond * suffix[in_sample];
        for (std::size_t j = 1; j <= in_sample; ++j)
            v += spec.coeffs[j - 1] * x2[t - j];
        sigma2[t] = v;
        x[t] = std::sqrt(v) * rng.normal();
        x2[t] = x[t] * x[t];
    }

    ArchInfSample out;
    out.x.values.assign(x.begin() + static_cast<std::ptrdiff_t>(burn), x.end());
    out.sigma2.values.assign(sigma2.begin() + static_cast<std::ptrdiff_t>(burn),
                             sigma2.end());
    return out;
}

TimeSeries log_square_transform(const TimeSeries& x) {
    TimeSeries out;
    out.dt = x.dt;
    out.values.resize(x.values.size());
    for (std::size_t i = 0; i < x.values.size(); ++i)
        out.values[i] = std::log(std::max(x.values[i] * x.values[i], 1e-300));
    return out;
}

std::vector<double> convolve_history(std::span<const double> history,
                                     std::span<const double> weights, std::size_t n) {
    const std::size_t J = weights.size();
    if (history.size() < J + n)
        throw parameter_error("convolve_history: history must cover J + n values");
    std::vector<double> out(n, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long t = 0; t < static_cast<long long>(n); ++t) {
        const std::size_t base = static_cast<std::size_t>(t) + J;
        double s = 0.0;
        for (std::size_t j = 1; j <= J; ++j) s += weights[j - 1] * history[base - j];
        out[static_cast<std::size_t>(t)] = s;
    }
    return out;
}

namespace ref {

std::vector<double> convolve_history(std::span<const double> history,
                                     std::span<const double> weights, std::size_t n) {
    const std::size_t J = weights.size();
    if (history.size() < J + n)
        throw parameter_error("convolve_history: history must cover J + n values");
    std::vector<double> out(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double s = 0.0;
        for (std::size_t j = 1; j <= J; ++j) s += weights[j - 1] * history[t + J - j];
        out[t] = s;
    }
    return out;
}

}  // namespace ref

}  // namespace longmem

#include "longmem/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace longmem {

namespace {

constexpr double kGolden = 0.6180339887498949;

// Golden-section minimization of f on [lo, hi]; f must be unimodal on the
// bracket (callers grid-scan first).
template <typename F>
double golden_min(F&& f, double lo, double hi, double tol) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// Coarse grid scan followed by golden refinement on the bracketing cell pair.
template <typename F>
double grid_then_golden(F&& f, double lo, double hi, std::size_t grid, double tol) {
    double best_x = lo, best_f = f(lo);
    for (std::size_t i = 1; i <= grid; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid);
        const double fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    const double step = (hi - lo) / static_cast<double>(grid);
    return golden_min(f, std::max(lo, best_x - step), std::min(hi, best_x + step), tol);
}

bool violates_bandwidth_condition(double d, std::size_t m, std::size_t n) {
    // Finite-sample rendering of the CLT bandwidth window: m has to grow
    // faster than n^{4d/(4d+1)} and m^5 log^2 m / n^4 has to stay small.
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    if (d > 0.0 && md < std::pow(nd, 4.0 * d / (4.0 * d + 1.0))) return true;
    const double lm = std::log(md);
    return std::pow(md, 5.0) * lm * lm > std::pow(nd, 4.0);
}

}  // namespace

void BandwidthSpec::validate(std::size_t n) const {
    if (m == 0 || trim + 1 > m || 2 * m >= n)
        throw parameter_error("bandwidth: need 1 <= trim+1 <= m < n/2");
}

EstimateReport gph(const PeriodogramSet& pgram, const BandwidthSpec& bw,
                   GphRegressor regressor) {
    bw.validate(pgram.n);
    if (bw.m > pgram.ordinates.size())
        throw parameter_error("gph: m exceeds available Fourier frequencies");

    std::vector<double> x, y;
    x.reserve(bw.count());
    y.reserve(bw.count());
    for (std::size_t j = bw.trim + 1; j <= bw.m; ++j) {
        const double ord = pgram.ordinates[j - 1];
        if (!(ord > 0.0))
            throw numerical_error("gph: zero periodogram ordinate at frequency index " +
                                  std::to_string(j));
        const double w = pgram.frequencies[j - 1];
        x.push_back(regressor == GphRegressor::neg_two_log_omega
                        ? -2.0 * std::log(w)
                        : -std::log(4.0 * std::pow(std::sin(w / 2.0), 2)));
        y.push_back(std::log(ord));
    }

    EstimateReport rep;
    rep.estimator = "gph";
    rep.d_hat = ols_slope(x, y);
    rep.m = bw.m;
    rep.trim = bw.trim;
    rep.n = pgram.n;
    rep.bandwidth_flag = violates_bandwidth_condition(rep.d_hat, bw.m, pgram.n);
    return rep;
}

EstimateReport local_whittle_gse(const PeriodogramSet& pgram, const BandwidthSpec& bw) {
    bw.validate(pgram.n);
    if (bw.m > pgram.ordinates.size())
        throw parameter_error("local_whittle: m exceeds available Fourier frequencies");

    const std::size_t count = bw.count();
    std::vector<double> logw(count), ord(count);
    for (std::size_t j = bw.trim + 1; j <= bw.m; ++j) {
        ord[j - bw.trim - 1] = pgram.ordinates[j - 1];
        logw[j - bw.trim - 1] = std::log(pgram.frequencies[j - 1]);
    }
    double mean_logw = 0.0;
    for (double v : logw) mean_logw += v;
    mean_logw /= static_cast<double>(count);

    const auto criterion = [&](double d) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            s += ord[i] * std::exp(2.0 * d * logw[i]);
        return std::log(s / static_cast<double>(count)) - 2.0 * d * mean_logw;
    };

    constexpr double lo = -0.49, hi = 0.99;
    const double d_hat = grid_then_golden(criterion, lo, hi, 64, 1e-7);

    EstimateReport rep;
    rep.estimator = "lw";
    rep.d_hat = d_hat;
    rep.m = bw.m;
    rep.trim = bw.trim;
    rep.n = pgram.n;
    rep.boundary = d_hat < lo + 1e-4 || d_hat > hi - 1e-4;
    rep.bandwidth_flag = violates_bandwidth_condition(d_hat, bw.m, pgram.n);
    return rep;
}

EstimateReport local_whittle_noise(const PeriodogramSet& pgram, const BandwidthSpec& bw) {
    bw.validate(pgram.n);
    if (bw.m > pgram.ordinates.size())
        throw parameter_error("local_whittle: m exceeds available Fourier frequencies");

    const std::size_t count = bw.count();
    std::vector<double> w(count), ord(count);
    for (std::size_t j = bw.trim + 1; j <= bw.m; ++j) {
        ord[j - bw.trim - 1] = pgram.ordinates[j - 1];
        w[j - bw.trim - 1] = pgram.frequencies[j - 1];
    }

    // Profiled criterion at (d, beta), model g_j = w_j^{-2d} + beta.
    const auto criterion = [&](double d, double beta) {
        double s = 0.0, lg = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double g = std::pow(w[i], -2.0 * d) + beta;
            s += ord[i] / g;
            lg += std::log(g);
        }
        const double cnt = static_cast<double>(count);
        return std::log(s / cnt) + lg / cnt;
    };

    // Inner minimization over beta >= 0: warm log-spaced grid, golden refine.
    const auto best_beta = [&](double d) {
        double bb = 0.0, fb = criterion(d, 0.0);
        for (int i = 0; i < 64; ++i) {
            const double beta = std::pow(10.0, -8.0 + 16.0 * i / 63.0);
            const double f = criterion(d, beta);
            if (f < fb) {
                fb = f;
                bb = beta;
            }
        }
        if (bb > 0.0) {
            const double lo = bb / std::pow(10.0, 16.0 / 63.0);
            const double hi = bb * std::pow(10.0, 16.0 / 63.0);
            const double lb = golden_min(
                [&](double lbeta) { return criterion(d, std::exp(lbeta)); },
                std::log(lo), std::log(hi), 1e-9);
            const double refined = std::exp(lb);
            if (criterion(d, refined) < fb) bb = refined;
        }
        return bb;
    };

    constexpr double lo = -0.49, hi = 0.99;
    const auto profiled = [&](double d) { return criterion(d, best_beta(d)); };
    const double d_hat = grid_then_golden(profiled, lo, hi, 32, 1e-6);
    const double beta_hat = best_beta(d_hat);

    EstimateReport rep;
    rep.estimator = "lw-noise";
    rep.d_hat = d_hat;
    rep.aux = beta_hat;  // noise-to-signal ratio; 0 flags a pure-signal fit
    rep.m = bw.m;
    rep.trim = bw.trim;
    rep.n = pgram.n;
    rep.boundary = d_hat < lo + 1e-4 || d_hat > hi - 1e-4;
    rep.bandwidth_flag = violates_bandwidth_condition(d_hat, bw.m, pgram.n);
    return rep;
}

double t_value(std::span<const double> estimates, double d0) {
    if (estimates.size() < 2)
        throw parameter_error("t_value: need at least 2 estimates");
    const double m = mean(estimates);
    const double s = std::sqrt(variance(estimates));
    if (!(s > 0.0)) throw parameter_error("t_value: zero standard deviation");
    return std::sqrt(static_cast<double>(estimates.size())) * (m - d0) / s;
}

ReplicationSummary summarize(std::span<const double> estimates, double d0) {
    if (estimates.empty()) throw parameter_error("summarize: no estimates");
    ReplicationSummary s;
    s.reps = estimates.size();
    s.mean = mean(estimates);
    if (estimates.size() >= 2) {
        s.sd = std::sqrt(variance(estimates));
        if (s.sd > 0.0)
            s.t = std::sqrt(static_cast<double>(estimates.size())) * (s.mean - d0) / s.sd;
    }
    return s;
}

WaveletCoefficients wavelet_coefficients(const ShotNoisePath& path, int j_min, int j_max) {
    if (j_min > j_max) throw parameter_error("wavelet_coefficients: j_min > j_max");
    const double T = path.end_time();
    WaveletCoefficients wc;
    for (int j = j_min; j <= j_max; ++j) {
        const double s = std::pow(2.0, j);
        const double norm = std::pow(2.0, -0.5 * j);
        const auto k_count = static_cast<std::size_t>(std::floor(T / s));
        std::vector<double> w;
        w.reserve(k_count);
        for (std::size_t k = 0; k < k_count; ++k) {
            const double a = static_cast<double>(k) * s;
            w.push_back(norm * (path.integrate(a, a + s / 2.0) -
                                path.integrate(a + s / 2.0, a + s)));
        }
        if (w.empty()) {
            ++wc.excluded;
            continue;
        }
        wc.scales.push_back(j);
        wc.coeffs.push_back(std::move(w));
    }
    if (wc.scales.empty())
        throw parameter_error("wavelet_coefficients: no admissible (j,k) in the window");
    return wc;
}

WaveletEstimate wavelet_estimator(const WaveletCoefficients& wc, double delta) {
    if (wc.scales.size() < 2)
        throw parameter_error(
            "wavelet_estimator: need coefficients at two or more scales");

    // Penalized contrast W(d') = log(sum 2^{-2 d' j} w^2) + delta d' log 2.
    const auto contrast = [&](double d) {
        double s = 0.0;
        for (std::size_t i = 0; i < wc.scales.size(); ++i) {
            const double scale = std::pow(2.0, -2.0 * d * wc.scales[i]);
            for (double v : wc.coeffs[i]) s += scale * v * v;
        }
        return std::log(s) + delta * d * std::log(2.0);
    };
    constexpr double lo = 1e-4, hi = 0.5 - 1e-4;
    const double d_contrast = grid_then_golden(contrast, lo, hi, 128, 1e-7);

    // Regression alternative: slope/2 of log2 within-scale mean w^2 on j.
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < wc.scales.size(); ++i) {
        double ms = 0.0;
        for (double v : wc.coeffs[i]) ms += v * v;
        ms /= static_cast<double>(wc.coeffs[i].size());
        if (!(ms > 0.0)) continue;
        xs.push_back(static_cast<double>(wc.scales[i]));
        ys.push_back(std::log2(ms));
    }
    if (xs.size() < 2)
        throw parameter_error("wavelet_estimator: insufficient scale diversity");

    WaveletEstimate est;
    est.d_contrast = d_contrast;
    est.d_regression = ols_slope(xs, ys) / 2.0;
    est.delta = delta;
    est.boundary = d_contrast < lo + 1e-3 || d_contrast > hi - 1e-3;
    return est;
}

}  // namespace longmem

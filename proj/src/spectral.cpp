#include "longmem/spectral.hpp"

#include <cmath>
#include <limits>

#include "longmem/fft.hpp"
#include "longmem/parallel.hpp"

namespace longmem {

namespace {
constexpr double kPi = 3.14159265358979323846;

PeriodogramSet from_moduli(std::span<const double> re, std::span<const double> im,
                           std::size_t n) {
    PeriodogramSet p;
    p.n = n;
    const std::size_t jmax = (n - 1) / 2;
    p.frequencies.resize(jmax);
    p.ordinates.resize(jmax);
    const double norm = 1.0 / (2.0 * kPi * static_cast<double>(n));
    for (std::size_t j = 1; j <= jmax; ++j) {
        p.frequencies[j - 1] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        p.ordinates[j - 1] = (re[j] * re[j] + im[j] * im[j]) * norm;
    }
    if (n % 2 == 0) {
        p.has_nyquist = true;
        p.nyquist_ordinate = (re[n / 2] * re[n / 2] + im[n / 2] * im[n / 2]) * norm;
    }
    return p;
}
}  // namespace

PeriodogramSet periodogram(std::span<const double> series, bool center) {
    const std::size_t n = series.size();
    if (n < 4) throw parameter_error("periodogram: n must be >= 4");
    std::vector<double> x(series.begin(), series.end());
    if (center) {
        const double m = mean(x);
        for (auto& v : x) v -= m;
    }
    const auto spec = fft::real_forward(x);
    std::vector<double> re(spec.size()), im(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        re[k] = spec[k].real();
        im[k] = spec[k].imag();
    }
    return from_moduli(re, im, n);
}

PeriodogramSet periodogram(const TimeSeries& series, bool center) {
    return periodogram(std::span<const double>(series.values), center);
}

namespace ref {

PeriodogramSet periodogram_direct(std::span<const double> series, bool center) {
    const std::size_t n = series.size();
    if (n < 4) throw parameter_error("periodogram: n must be >= 4");
    std::vector<double> x(series.begin(), series.end());
    if (center) {
        const double m = mean(x);
        for (auto& v : x) v -= m;
    }
    std::vector<double> re(n / 2 + 1, 0.0), im(n / 2 + 1, 0.0);
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const double w = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        double sr = 0.0, si = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            sr += x[t] * std::cos(w * static_cast<double>(t + 1));
            si += x[t] * std::sin(w * static_cast<double>(t + 1));
        }
        re[j] = sr;
        im[j] = si;
    }
    return from_moduli(re, im, n);
}

}  // namespace ref

std::complex<double> normalized_dft_statistic(std::span<const double> series,
                                              std::size_t j, double d) {
    const std::size_t n = series.size();
    if (j < 1 || 2 * j >= n)
        throw parameter_error("normalized_dft_statistic: need 1 <= j < n/2");
    const double w = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    double sr = 0.0, si = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        sr += series[t] * std::cos(w * static_cast<double>(t + 1));
        si += series[t] * std::sin(w * static_cast<double>(t + 1));
    }
    const double scale = std::pow(w, d) / std::sqrt(2.0 * kPi * static_cast<double>(n));
    return {scale * sr, scale * si};
}

AveragedLogPeriodogram averaged_loglog_periodogram(
    const std::function<std::vector<double>(std::size_t rep)>& make_series,
    std::size_t n, std::size_t reps, int threads) {
    if (reps < 2)
        throw parameter_error("averaged_loglog_periodogram: reps must be >= 2");

    const std::size_t jmax = n / 2;
    std::vector<std::vector<double>> logs(reps);
    parallel_for(reps, threads, [&](std::size_t r) {
        const auto series = make_series(r);
        if (series.size() != n)
            throw parameter_error("averaged_loglog_periodogram: replication " +
                                  std::to_string(r) + " has wrong length");
        const auto p = periodogram(std::span<const double>(series), true);
        std::vector<double> lg(jmax);
        for (std::size_t j = 1; j <= jmax; ++j) {
            double ord;
            if (j - 1 < p.ordinates.size())
                ord = p.ordinates[j - 1];
            else
                ord = p.nyquist_ordinate;  // j == n/2 for even n
            lg[j - 1] = ord > 0.0 ? std::log10(ord)
                                  : std::numeric_limits<double>::quiet_NaN();
        }
        logs[r] = std::move(lg);
    });

    AveragedLogPeriodogram out;
    out.log10_frequency.resize(jmax);
    out.mean_log10_ordinate.assign(jmax, 0.0);
    out.reps_used.assign(jmax, 0);
    for (std::size_t j = 0; j < jmax; ++j)
        out.log10_frequency[j] =
            std::log10(2.0 * kPi * static_cast<double>(j + 1) / static_cast<double>(n));
    // Merge in replication order: deterministic regardless of thread count.
    for (std::size_t r = 0; r < reps; ++r)
        for (std::size_t j = 0; j < jmax; ++j)
            if (!std::isnan(logs[r][j])) {
                out.mean_log10_ordinate[j] += logs[r][j];
                out.reps_used[j] += 1;
            }
    for (std::size_t j = 0; j < jmax; ++j)
        out.mean_log10_ordinate[j] /=
            static_cast<double>(out.reps_used[j] > 0 ? out.reps_used[j] : 1);
    return out;
}

}  // namespace longmem

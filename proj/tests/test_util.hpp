#ifndef LONGMEM_TEST_UTIL_HPP
#define LONGMEM_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

// Test-only oracles, independent of the library implementation paths they
// check.
namespace testutil {

// Kolmogorov-Smirnov distance between a sample and an exact CDF.
inline double ks_distance(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// Hill estimator of the tail index from the k largest order statistics.
inline double hill_tail_index(std::vector<double> sample, std::size_t k) {
    std::nth_element(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(k),
                     sample.end(), std::greater<double>());
    std::vector<double> top(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    std::sort(top.begin(), top.end(), std::greater<double>());
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += std::log(top[i] / top[k]);
    return static_cast<double>(k) / s;
}

// Least-squares slope of log empirical tail probability on log threshold,
// evaluated across the top fraction of the sample.
inline double tail_loglog_slope(std::vector<double> sample, double top_fraction) {
    std::sort(sample.begin(), sample.end());
    const std::size_t n = sample.size();
    const auto k = static_cast<std::size_t>(top_fraction * static_cast<double>(n));
    std::vector<double> lx, ly;
    for (std::size_t i = n - k; i < n - 1; ++i) {
        if (sample[i] <= 0.0) continue;
        lx.push_back(std::log(sample[i]));
        ly.push_back(std::log(static_cast<double>(n - 1 - i) / static_cast<double>(n)));
    }
    const double mx = [&] {
        double s = 0;
        for (double v : lx) s += v;
        return s / static_cast<double>(lx.size());
    }();
    const double my = [&] {
        double s = 0;
        for (double v : ly) s += v;
        return s / static_cast<double>(ly.size());
    }();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Standard error of the mean across replications.
inline double se_of_mean(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    s /= static_cast<double>(x.size() - 1);
    return std::sqrt(s / static_cast<double>(x.size()));
}

}  // namespace testutil

#endif

#ifndef LONGMEM_ESTIMATORS_HPP
#define LONGMEM_ESTIMATORS_HPP

#include <span>
#include <string>
#include <vector>

#include "longmem/common.hpp"
#include "longmem/shotnoise.hpp"
#include "longmem/spectral.hpp"

namespace longmem {

// Frequencies j = trim+1 .. m enter the estimate.
struct BandwidthSpec {
    std::size_t m = 0;
    std::size_t trim = 0;

    void validate(std::size_t n) const;
    std::size_t count() const { return m - trim; }
};

struct EstimateReport {
    std::string estimator;
    double d_hat = 0.0;
    std::size_t m = 0;
    std::size_t trim = 0;
    std::size_t n = 0;
    // lw-noise: estimated noise-to-signal ratio; NaN for other estimators.
    double aux = std::numeric_limits<double>::quiet_NaN();
    bool boundary = false;        // minimizer pinned at the search boundary
    bool bandwidth_flag = false;  // bandwidth condition violated at d_hat
};

enum class GphRegressor {
    neg_two_log_omega,  // -2 log w_j, matching the w^{-2d} local model
    log_four_sin_sq,    // -log(4 sin^2(w/2))
};

// Log-periodogram regression: d_hat is the least-squares slope of
// log I(w_j) on the chosen regressor over j = trim+1..m.
EstimateReport gph(const PeriodogramSet& pgram, const BandwidthSpec& bw,
                   GphRegressor regressor = GphRegressor::neg_two_log_omega);

// Local Whittle / GSE: d_hat minimizes
//   R(d) = log( mean_j w_j^{2d} I_j ) - 2d * mean_j log w_j
// over d in [-0.49, 0.99].
EstimateReport local_whittle_gse(const PeriodogramSet& pgram, const BandwidthSpec& bw);

// Noise-corrected local Whittle with spectral model g_j(d, beta) =
// w_j^{-2d} + beta, beta >= 0 the noise-to-signal ratio (reported in aux).
EstimateReport local_whittle_noise(const PeriodogramSet& pgram, const BandwidthSpec& bw);

// t = sqrt(R) (mean - d0) / sd over R replications.
double t_value(std::span<const double> estimates, double d0);

struct ReplicationSummary {
    double mean = 0.0;
    double sd = std::numeric_limits<double>::quiet_NaN();
    double t = std::numeric_limits<double>::quiet_NaN();
    std::size_t reps = 0;
};
// sd and t are NaN when only one replication is available.
ReplicationSummary summarize(std::span<const double> estimates, double d0);

// Haar coefficients of a piecewise-constant path, exact integrals:
// w_{j,k} = integral of 2^{-j/2} psi(2^{-j} s - k) X_s ds with psi the unit
// Haar difference. Admissible (j,k) have support inside [0, T]; others are
// excluded and counted.
struct WaveletCoefficients {
    std::vector<int> scales;
    std::vector<std::vector<double>> coeffs;  // coeffs[i][k] at scales[i]
    std::size_t excluded = 0;
};
WaveletCoefficients wavelet_coefficients(const ShotNoisePath& path, int j_min, int j_max);

struct WaveletEstimate {
    double d_contrast = 0.0;    // argmin of the penalized contrast on (0, 1/2)
    double d_regression = 0.0;  // slope/2 of log2 within-scale mean w^2 on j
    double delta = 1.0;
    bool boundary = false;
};
WaveletEstimate wavelet_estimator(const WaveletCoefficients& wc, double delta = 1.0);

}  // namespace longmem

#endif

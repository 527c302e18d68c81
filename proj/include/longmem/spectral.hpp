#ifndef LONGMEM_SPECTRAL_HPP
#define LONGMEM_SPECTRAL_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "longmem/common.hpp"

namespace longmem {

// Periodogram ordinates I(omega_j) = |J_{n,j}|^2 at the Fourier frequencies
// omega_j = 2 pi j / n, j = 1..floor((n-1)/2), with
// J_{n,j} = (2 pi n)^{-1/2} sum_t U_t exp(i t omega_j).
struct PeriodogramSet {
    std::vector<double> frequencies;
    std::vector<double> ordinates;
    std::size_t n = 0;
    // For even n, the ordinate at omega = pi (j = n/2); needed to account
    // for both half-lines in the Parseval identity.
    double nyquist_ordinate = 0.0;
    bool has_nyquist = false;
};

// Transform-based periodogram. Mean-centering is on by default; it leaves the
// ordinates at j >= 1 unchanged in exact arithmetic but suppresses leakage
// from a large mean.
PeriodogramSet periodogram(std::span<const double> series, bool center = true);
PeriodogramSet periodogram(const TimeSeries& series, bool center = true);

namespace ref {
// O(n^2) direct-sum evaluation of the defining formula.
PeriodogramSet periodogram_direct(std::span<const double> series, bool center = true);
}  // namespace ref

// omega_j^d * J_{n,j}, the normalized DFT of Theorems on low-frequency
// behaviour; d = 0 gives the plain DFT value. Uncentered, by definition.
std::complex<double> normalized_dft_statistic(std::span<const double> series,
                                              std::size_t j, double d);

struct AveragedLogPeriodogram {
    std::vector<double> log10_frequency;
    std::vector<double> mean_log10_ordinate;
    std::vector<std::size_t> reps_used;  // ordinates excluded as zero reduce this
};

// Per-frequency average of log10 I(omega_j) over independent replications,
// j = 1..floor(n/2). `make_series` must be a pure function of the replication
// index; it is invoked from parallel worker threads.
AveragedLogPeriodogram averaged_loglog_periodogram(
    const std::function<std::vector<double>(std::size_t rep)>& make_series,
    std::size_t n, std::size_t reps, int threads = 0);

}  // namespace longmem

#endif

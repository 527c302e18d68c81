#ifndef LONGMEM_FRACSIM_HPP
#define LONGMEM_FRACSIM_HPP

#include <cstddef>
#include <vector>

#include "longmem/common.hpp"
#include "longmem/rng.hpp"

namespace longmem {

// ARFIMA(p,d,q) specification for the latent Gaussian long-memory signal.
struct FracSpec {
    double d = 0.0;               // memory parameter, (-0.5, 0.5)
    std::vector<double> ar;       // autoregressive coefficients
    std::vector<double> ma;       // moving-average coefficients
    double innovation_sd = 1.0;

    void validate() const;
};

// Autocovariances gamma(0..K) of an ARFIMA(0,d,0) process. The table knows
// its d so it can be extended by the ratio recursion.
struct AcvfTable {
    std::vector<double> values;
    double d = 0.0;

    std::size_t max_lag() const { return values.size() - 1; }
};

// gamma(0) = sigma^2 Gamma(1-2d)/Gamma(1-d)^2,
// gamma(k) = gamma(k-1) (k-1+d)/(k-d).
AcvfTable arfima0d0_acvf(double d, std::size_t max_lag, double sigma = 1.0);

// Extend a table produced by arfima0d0_acvf to a larger max lag.
void extend_acvf(AcvfTable& table, std::size_t new_max_lag);

// Exact zero-mean Gaussian sample with the given autocovariance via circulant
// embedding (Davies-Harte). Embedding size is the smallest power of two
// >= 2(n-1). A negative embedding eigenvalue below -1e-8 relative to the
// largest is a numerical error; smaller negatives are clipped to zero and
// flagged in the output.
TimeSeries simulate_fractional_noise(const AcvfTable& acvf, std::size_t n, RngStream& rng);

// Fractional noise passed through the ARMA(ar, ma) recursion. Burn-in
// 10*max(p,q) + 1000 is discarded when the filter is nontrivial.
TimeSeries simulate_arfima(const FracSpec& spec, std::size_t n, RngStream& rng);

// MA(infinity) weights of (1-B)^{-d}: psi_0 = 1, psi_j = psi_{j-1}(j-1+d)/j.
std::vector<double> fractional_ma_weights(double d, std::size_t count);

// AR(infinity) weights pi_j with X_t = sum_{j>=1} pi_j X_{t-j} + eps_t for an
// ARFIMA(0,d,0); positive and summing to 1 for d in (0,1). pi[0] is unused
// and set to 0 so that pi[j] corresponds to lag j.
std::vector<double> fractional_ar_weights(double d, std::size_t count);

// Schur-Cohn test: do all roots of 1 - sum ar_i z^i lie outside the unit
// circle?
bool ar_polynomial_stationary(const std::vector<double>& ar);

// Impulse response psi of the ARMA filter (1 + sum ma_j B^j)/(1 - sum ar_i B^i),
// truncated to `count` terms.
std::vector<double> arma_impulse_response(const std::vector<double>& ar,
                                          const std::vector<double>& ma,
                                          std::size_t count);

// Stationary variance of the ARMA-filtered fractional noise described by the
// spec; used to plan duration-block sizes.
double arfima_variance(const FracSpec& spec);

}  // namespace longmem

#endif

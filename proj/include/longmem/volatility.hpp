#ifndef LONGMEM_VOLATILITY_HPP
#define LONGMEM_VOLATILITY_HPP

#include <functional>
#include <span>
#include <vector>

#include "longmem/common.hpp"
#include "longmem/fracsim.hpp"
#include "longmem/rng.hpp"

namespace longmem {

// Multiplicative innovation v_t of the conditionally heteroscedastic models.
struct InnovationLaw {
    enum class Kind { gaussian, weibull_unit_mean, custom };
    Kind kind = Kind::gaussian;
    double weibull_shape = 1.0;
    std::function<double(RngStream&)> custom;
    bool custom_zero_mean = false;
    bool custom_positive_unit_mean = false;

    static InnovationLaw gaussian();
    static InnovationLaw weibull_unit_mean(double shape);

    double sample(RngStream& rng) const;
    bool zero_mean() const;
    bool positive_unit_mean() const;
    // E|v|; needed to center g() in the FIEGARCH recursion.
    double abs_mean() const;
};

enum class LmsvMode { lmsv, lmsd };

// X_t = exp(h_t/2) v_t with h a Gaussian long-memory signal independent of v.
struct LmsvSpec {
    FracSpec latent;
    InnovationLaw innovation = InnovationLaw::gaussian();
    LmsvMode mode = LmsvMode::lmsv;

    void validate() const;
};

struct LmsvSample {
    TimeSeries x;  // observed series (returns or durations)
    TimeSeries h;  // latent log volatility
};

// The latent and innovation streams are derived independently from rng, so
// h and v are independent by construction.
LmsvSample simulate_lmsv_lmsd(const LmsvSpec& spec, std::size_t n, RngStream& rng);

// log sigma_t^2 = omega + sum_{j=1}^J a_j g(v_{t-j}),
// g(x) = theta x + gamma (|x| - E|v|).
struct FiegarchSpec {
    double omega = 0.0;
    double theta = 0.0;
    double gamma_lev = 0.0;
    std::vector<double> coeffs;  // a_j, j = 1..J
    InnovationLaw innovation = InnovationLaw::gaussian();

    void validate() const;
};

// Coefficients from the ARFIMA(0,d,0) expansion, truncated at the smallest J
// whose relative squared tail mass is below tol; config_error when the cap
// cannot honour tol.
std::vector<double> fiegarch_arfima_coeffs(double d, double tol = 1e-6,
                                           std::size_t cap = 1 << 16);

struct FiegarchSample {
    TimeSeries x;
    TimeSeries log_sigma2;
};

FiegarchSample simulate_fiegarch(const FiegarchSpec& spec, std::size_t n, RngStream& rng);

// sigma_t^2 = omega + sum_j a_j X_{t-j}^2 with zero-mean unit-variance
// innovations; existence requires sum a_j < 1.
struct ArchInfSpec {
    double omega = 1.0;
    std::vector<double> coeffs;

    void validate() const;
};

// Nonnegative ARFIMA AR(infinity) weights scaled to the target sum.
std::vector<double> arch_arfima_coeffs(double d, double target_sum, double tol = 1e-6,
                                       std::size_t cap = 1 << 16);

struct ArchInfSample {
    TimeSeries x;
    TimeSeries sigma2;
};

ArchInfSample simulate_arch_inf(const ArchInfSpec& spec, std::size_t n, RngStream& rng);

// log(X_t^2) with X^2 floored at 1e-300 so the transform is total.
TimeSeries log_square_transform(const TimeSeries& x);

// out[t] = sum_{j=1}^J a[j-1] * g[t + J - j]: the truncated infinite-history
// sum shared by the FIEGARCH and ARCH recursions. `history` holds J pre-sample
// values followed by the n in-sample ones. OpenMP-parallel over t.
std::vector<double> convolve_history(std::span<const double> history,
                                     std::span<const double> weights, std::size_t n);
namespace ref {
// Serial reference implementation of the same kernel.
std::vector<double> convolve_history(std::span<const double> history,
                                     std::span<const double> weights, std::size_t n);
}  // namespace ref

}  // namespace longmem

#endif

#ifndef LONGMEM_SHOTNOISE_HPP
#define LONGMEM_SHOTNOISE_HPP

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "longmem/common.hpp"
#include "longmem/rng.hpp"

namespace longmem {

// Duration laws with closed-form mean; finite mean is required by every
// stationary shot-noise construction here.
struct DurationLaw {
    enum class Kind { pareto, exponential, weibull, deterministic };
    Kind kind = Kind::exponential;
    double alpha = 1.5;   // pareto tail index
    double x_min = 1.0;   // pareto lower endpoint
    double mean_ = 1.0;   // exponential mean / deterministic value
    double shape = 1.0;   // weibull shape
    double scale = 1.0;   // weibull scale

    static DurationLaw pareto(double alpha, double x_min);
    static DurationLaw exponential(double mean);
    static DurationLaw weibull(double shape, double scale);
    static DurationLaw deterministic(double value);

    void validate() const;
    double mean() const;
    double sample(RngStream& rng) const;
    // Draw from the equilibrium (integrated-tail) law.
    double equilibrium_sample(RngStream& rng) const;
    double survival(double t) const;          // P(eta > t)
    double integrated_tail(double t) const;   // E[(eta - t)_+]
    double quantile(double u) const;
};

struct ShockLaw {
    enum class Kind { constant, gaussian };
    Kind kind = Kind::constant;
    double value = 1.0;  // constant value / gaussian mean
    double sd = 1.0;

    static ShockLaw constant(double value);
    static ShockLaw gaussian(double mean, double sd);

    double sample(RngStream& rng) const;
    double mean() const;
    double second_moment() const;
};

// Optional hook for contemporaneously dependent (shock, duration) pairs.
struct JointShockDuration {
    std::function<std::pair<double, double>(RngStream&)> sample;
};

struct MarkedEventStream {
    std::vector<double> births;     // strictly increasing
    std::vector<double> shocks;
    std::vector<double> durations;  // > 0

    std::size_t size() const { return births.size(); }
};

// Write rows (birth_time, shock, duration).
void write_event_stream_csv(std::ostream& os, const MarkedEventStream& events);

enum class ShotNoiseKind { renewal_reward, on_off, error_duration, poisson };

// Piecewise-constant path on [0, T] plus a uniform grid sampling of step
// delta. Integrals are computed exactly from the piecewise structure.
struct ShotNoisePath {
    ShotNoiseKind kind = ShotNoiseKind::renewal_reward;
    double delta = 1.0;
    std::vector<double> grid_values;   // X(i * delta)
    std::vector<double> knots;         // knots[0] = 0, knots.back() = T
    std::vector<double> piece_values;  // value on [knots[i], knots[i+1])
    std::vector<double> cum_integral;  // integral of X over [0, knots[i]]
    MarkedEventStream events;

    double end_time() const { return knots.empty() ? 0.0 : knots.back(); }
    double value_at(double t) const;
    double integrate(double a, double b) const;
};

// X_t = eps_{N(t)}: renewal process with the first interval drawn from the
// equilibrium law, one active shock at a time.
ShotNoisePath simulate_renewal_reward(const DurationLaw& duration_law,
                                      const ShockLaw& shock_law, double T,
                                      double delta, RngStream& rng);

// Alternating ON (1) / OFF (0) periods, stationary initialization.
ShotNoisePath simulate_on_off(const DurationLaw& on_law, const DurationLaw& off_law,
                              double T, double delta, RngStream& rng);

// Discrete-time error-duration process X_t = sum_{j<=t} eps_j 1{t < j+eta_j},
// t = 1..n, with births on a pre-sample window covering the duration tail.
TimeSeries simulate_error_duration(const ShockLaw& shock_law,
                                   const DurationLaw& duration_law, std::size_t n,
                                   RngStream& rng, double window_tail_prob = 1e-6);

// Infinite-source Poisson (M/G/infinity input): Poisson(lambda) births on
// [-W, T] with W = quantile(duration, 1 - window_tail_prob).
ShotNoisePath simulate_infinite_source_poisson(double lambda,
                                               const DurationLaw& duration_law,
                                               const ShockLaw& shock_law, double T,
                                               double delta, RngStream& rng,
                                               double window_tail_prob = 1e-6);
// Dependent (shock, duration) pairs; the stationarity window must be given
// explicitly since the duration tail is only known to the sampler.
ShotNoisePath simulate_infinite_source_poisson(double lambda,
                                               const JointShockDuration& joint,
                                               double window, double T, double delta,
                                               RngStream& rng);

struct TheoreticalAcvf {
    double value = 0.0;
    bool exact = true;  // false when only the asymptotic form applies
};

// lambda E[eps^2 (eta - t)_+], valid when the point process is Poisson or the
// shocks are centered and independent of durations.
TheoreticalAcvf theoretical_shotnoise_acvf(const DurationLaw& duration_law,
                                           const ShockLaw& shock_law, double lambda,
                                           double t);
// Asymptotic branch for regularly varying E[eps^2 1{eta > t}] = ell t^-alpha:
// lambda/(alpha-1) ell t^{1-alpha}.
TheoreticalAcvf theoretical_shotnoise_acvf_asymptotic(double alpha, double ell,
                                                      double lambda, double t);

struct SuperpositionConfig {
    ShotNoiseKind kind = ShotNoiseKind::renewal_reward;
    DurationLaw duration_law;
    DurationLaw off_law;  // on_off only
    ShockLaw shock_law;
    double lambda = 1.0;  // poisson only
    double window_tail_prob = 1e-6;
};

// Centered aggregated partial sums over M independent copies:
// A_{M,T}(t) = sum_i integral_0^{T t} (X^(i)_s - E[X]) ds at each grid point.
std::vector<double> superpose_partial_sums(const SuperpositionConfig& config,
                                           std::size_t copies, double T,
                                           std::span<const double> t_grid,
                                           RngStream& rng);

// Stationary mean of the configured process.
double shotnoise_mean(const SuperpositionConfig& config);

}  // namespace longmem

#endif

#ifndef LONGMEM_RNG_HPP
#define LONGMEM_RNG_HPP

#include <cstdint>
#include <vector>

#include "longmem/common.hpp"

namespace longmem {

// Reproducible random stream: xoshiro256++ with the state derived from
// (seed, stream_id) through splitmix64. Equal (seed, stream_id) gives a
// bit-identical sequence; distinct stream ids give independent streams,
// so replication r can be simulated on any thread in any order.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    // Uniform on (0,1): never returns 0 or 1.
    double uniform();
    double uniform(double lo, double hi);
    // Standard normal, Box-Muller; the second variate of a pair is cached.
    double normal();
    double exponential();  // mean 1

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Independent stream derived from this one's identity and a tag;
    // deterministic, so sub-simulations stay reproducible.
    RngStream substream(std::uint64_t tag) const;

private:
    std::uint64_t s_[4];
    std::uint64_t seed_ = 0, stream_id_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// Parameters of an alpha-stable law, S1 parameterization.
struct StableParams {
    double alpha = 1.5;  // tail index, (0,2]
    double beta = 0.0;   // skewness, [-1,1]
    double scale = 1.0;
    double shift = 0.0;

    void validate() const;
};

// One draw from the stable law via the Chambers-Mallows-Stuck construction.
double sample_stable_one(const StableParams& p, RngStream& rng);
std::vector<double> sample_stable(const StableParams& p, std::size_t count, RngStream& rng);

struct PositiveStableResult {
    std::vector<double> values;
    double acceptance_rate = 1.0;
};
// Stable draws conditioned on positivity by rejection. Aborts with
// config_error when the acceptance rate of a warm-up batch is below 10%.
PositiveStableResult sample_positive_stable(const StableParams& p, std::size_t count,
                                            RngStream& rng);

// Weibull(shape, scale); mean = scale * Gamma(1 + 1/shape).
double sample_weibull_one(double shape, double scale, RngStream& rng);
std::vector<double> sample_weibull(double shape, double scale, std::size_t count,
                                   RngStream& rng);
// Scale that makes a Weibull with the given shape have unit mean.
double weibull_unit_mean_scale(double shape);

// Pareto: P(X > x) = (x/x_min)^-alpha for x >= x_min. The equilibrium
// (integrated-tail) variant has tail index alpha-1 and requires alpha > 1.
double sample_pareto_one(double alpha, double x_min, RngStream& rng);
double sample_pareto_equilibrium_one(double alpha, double x_min, RngStream& rng);
std::vector<double> sample_pareto(double alpha, double x_min, std::size_t count,
                                  RngStream& rng, bool equilibrium = false);

}  // namespace longmem

#endif

#include "longmem/rng.hpp"

#include <cmath>

namespace longmem {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t x = seed;
    // Fold the stream id into the splitmix state so streams with the same
    // seed start far apart.
    x ^= 0x6a09e667f3bcc909ULL + stream_id * 0x9e3779b97f4a7c15ULL;
    for (auto& s : s_) s = splitmix64(x);
    // All-zero state is invalid for xoshiro; splitmix cannot produce four
    // zero words from any input, but keep the guard cheap and explicit.
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RngStream RngStream::substream(std::uint64_t tag) const {
    std::uint64_t x = stream_id_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
    return RngStream(seed_, splitmix64(x));
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::uniform() {
    // 53-bit mantissa in (0,1): offset by half an ulp so 0 is excluded.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RngStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_normal_ = r * std::sin(2.0 * kPi * u2);
    has_cached_normal_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

double RngStream::exponential() {
    return -std::log(uniform());
}

void StableParams::validate() const {
    if (!(alpha > 0.0) || alpha > 2.0)
        throw parameter_error("stable: alpha must be in (0,2]");
    if (std::abs(beta) > 1.0)
        throw parameter_error("stable: |beta| must be <= 1");
    if (!(scale > 0.0))
        throw parameter_error("stable: scale must be > 0");
}

double sample_stable_one(const StableParams& p, RngStream& rng) {
    const double v = rng.uniform(-kPi / 2.0, kPi / 2.0);
    const double w = rng.exponential();
    if (p.alpha == 1.0) {
        // Dedicated limit branch of the CMS construction.
        const double a = kPi / 2.0 + p.beta * v;
        const double x = (2.0 / kPi) *
                         (a * std::tan(v) -
                          p.beta * std::log((kPi / 2.0) * w * std::cos(v) / a));
        return p.scale * x + (2.0 / kPi) * p.beta * p.scale * std::log(p.scale) + p.shift;
    }
    const double t = p.beta * std::tan(kPi * p.alpha / 2.0);
    const double b = std::atan(t) / p.alpha;
    const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * p.alpha));
    const double x = s * std::sin(p.alpha * (v + b)) /
                     std::pow(std::cos(v), 1.0 / p.alpha) *
                     std::pow(std::cos(v - p.alpha * (v + b)) / w,
                              (1.0 - p.alpha) / p.alpha);
    return p.scale * x + p.shift;
}

std::vector<double> sample_stable(const StableParams& p, std::size_t count, RngStream& rng) {
    p.validate();
    if (count == 0) throw parameter_error("sample_stable: count must be >= 1");
    std::vector<double> out(count);
    for (auto& x : out) x = sample_stable_one(p, rng);
    return out;
}

PositiveStableResult sample_positive_stable(const StableParams& p, std::size_t count,
                                            RngStream& rng) {
    p.validate();
    if (count == 0) throw parameter_error("sample_positive_stable: count must be >= 1");

    PositiveStableResult res;
    res.values.reserve(count);
    std::size_t drawn = 0;
    constexpr std::size_t kWarmup = 1024;
    while (res.values.size() < count) {
        const double x = sample_stable_one(p, rng);
        ++drawn;
        if (x > 0.0) res.values.push_back(x);
        if (drawn == kWarmup && res.values.size() < kWarmup / 10)
            throw config_error(
                "sample_positive_stable: acceptance rate below 10%; "
                "distribution insufficiently skewed toward positive values");
    }
    res.acceptance_rate = static_cast<double>(res.values.size()) /
                          static_cast<double>(drawn);
    return res;
}

double weibull_unit_mean_scale(double shape) {
    if (!(shape > 0.0)) throw parameter_error("weibull: shape must be > 0");
    return 1.0 / std::tgamma(1.0 + 1.0 / shape);
}

double sample_weibull_one(double shape, double scale, RngStream& rng) {
    return scale * std::pow(rng.exponential(), 1.0 / shape);
}

std::vector<double> sample_weibull(double shape, double scale, std::size_t count,
                                   RngStream& rng) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw parameter_error("weibull: shape and scale must be > 0");
    std::vector<double> out(count);
    for (auto& x : out) x = sample_weibull_one(shape, scale, rng);
    return out;
}

double sample_pareto_one(double alpha, double x_min, RngStream& rng) {
    return x_min * std::pow(rng.uniform(), -1.0 / alpha);
}

double sample_pareto_equilibrium_one(double alpha, double x_min, RngStream& rng) {
    // Integrated-tail law: uniform on [0, x_min] with probability
    // (alpha-1)/alpha, else Pareto(alpha-1, x_min).
    if (rng.uniform() < (alpha - 1.0) / alpha)
        return x_min * rng.uniform();
    return x_min * std::pow(rng.uniform(), -1.0 / (alpha - 1.0));
}

std::vector<double> sample_pareto(double alpha, double x_min, std::size_t count,
                                  RngStream& rng, bool equilibrium) {
    if (!(alpha > 0.0) || !(x_min > 0.0))
        throw parameter_error("pareto: alpha and x_min must be > 0");
    if (equilibrium && alpha <= 1.0)
        throw parameter_error("pareto equilibrium: alpha must be > 1 (finite mean)");
    std::vector<double> out(count);
    for (auto& x : out)
        x = equilibrium ? sample_pareto_equilibrium_one(alpha, x_min, rng)
                        : sample_pareto_one(alpha, x_min, rng);
    return out;
}

double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

double variance_mle(std::span<const double> x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size());
}

double skewness(std::span<const double> x) {
    const double m = mean(x);
    double s2 = 0.0, s3 = 0.0;
    for (double v : x) {
        const double c = v - m;
        s2 += c * c;
        s3 += c * c * c;
    }
    const double n = static_cast<double>(x.size());
    s2 /= n;
    s3 /= n;
    return s3 / std::pow(s2, 1.5);
}

double excess_kurtosis(std::span<const double> x) {
    const double m = mean(x);
    double s2 = 0.0, s4 = 0.0;
    for (double v : x) {
        const double c = (v - m) * (v - m);
        s2 += c;
        s4 += c * c;
    }
    const double n = static_cast<double>(x.size());
    s2 /= n;
    s4 /= n;
    return s4 / (s2 * s2) - 3.0;
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    LineFit f;
    f.slope = ols_slope(x, y);
    f.intercept = mean(y) - f.slope * mean(x);
    const double my = mean(y);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        ss_res += e * e;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

}  // namespace longmem

#include "longmem/shotnoise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace longmem {

namespace {

// Upper incomplete gamma Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt,
// series / continued-fraction split as in Numerical Recipes.
double upper_incomplete_gamma(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw parameter_error("upper_incomplete_gamma: bad args");
    if (x == 0.0) return std::tgamma(a);
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // lower series, then complement
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        const double lower = sum * std::exp(-x + a * std::log(x));
        return std::tgamma(a) - lower;
    }
    // Lentz continued fraction for the upper tail
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h * std::tgamma(a);
}

}  // namespace

DurationLaw DurationLaw::pareto(double alpha, double x_min) {
    DurationLaw l;
    l.kind = Kind::pareto;
    l.alpha = alpha;
    l.x_min = x_min;
    l.validate();
    return l;
}

DurationLaw DurationLaw::exponential(double mean) {
    DurationLaw l;
    l.kind = Kind::exponential;
    l.mean_ = mean;
    l.validate();
    return l;
}

DurationLaw DurationLaw::weibull(double shape, double scale) {
    DurationLaw l;
    l.kind = Kind::weibull;
    l.shape = shape;
    l.scale = scale;
    l.validate();
    return l;
}

DurationLaw DurationLaw::deterministic(double value) {
    DurationLaw l;
    l.kind = Kind::deterministic;
    l.mean_ = value;
    l.validate();
    return l;
}

void DurationLaw::validate() const {
    switch (kind) {
        case Kind::pareto:
            if (!(alpha > 0.0) || !(x_min > 0.0))
                throw parameter_error("pareto durations: alpha and x_min must be > 0");
            break;
        case Kind::exponential:
            if (!(mean_ > 0.0))
                throw parameter_error("exponential durations: mean must be > 0");
            break;
        case Kind::weibull:
            if (!(shape > 0.0) || !(scale > 0.0))
                throw parameter_error("weibull durations: shape and scale must be > 0");
            break;
        case Kind::deterministic:
            if (!(mean_ >= 0.0))
                throw parameter_error("deterministic durations: value must be >= 0");
            break;
    }
}

double DurationLaw::mean() const {
    switch (kind) {
        case Kind::pareto:
            if (alpha <= 1.0)
                throw parameter_error("pareto durations with alpha <= 1 have infinite mean");
            return x_min * alpha / (alpha - 1.0);
        case Kind::exponential:
            return mean_;
        case Kind::weibull:
            return scale * std::tgamma(1.0 + 1.0 / shape);
        case Kind::deterministic:
            return mean_;
    }
    return 0.0;
}

double DurationLaw::sample(RngStream& rng) const {
    switch (kind) {
        case Kind::pareto:
            return sample_pareto_one(alpha, x_min, rng);
        case Kind::exponential:
            return mean_ * rng.exponential();
        case Kind::weibull:
            return sample_weibull_one(shape, scale, rng);
        case Kind::deterministic:
            return mean_;
    }
    return 0.0;
}

double DurationLaw::equilibrium_sample(RngStream& rng) const {
    switch (kind) {
        case Kind::pareto:
            if (alpha <= 1.0)
                throw parameter_error("pareto equilibrium needs alpha > 1");
            return sample_pareto_equilibrium_one(alpha, x_min, rng);
        case Kind::exponential:
            return mean_ * rng.exponential();
        case Kind::deterministic:
            return mean_ * rng.uniform();
        case Kind::weibull: {
            // Numeric inversion of F_e(x) = 1 - E[(eta-x)_+]/mean.
            const double target = (1.0 - rng.uniform()) * mean();
            double hi = scale;
            while (integrated_tail(hi) > target) hi *= 2.0;
            double lo = 0.0;
            for (int i = 0; i < 80; ++i) {
                const double mid = 0.5 * (lo + hi);
                (integrated_tail(mid) > target ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
    }
    return 0.0;
}

double DurationLaw::survival(double t) const {
    if (t < 0.0) return 1.0;
    switch (kind) {
        case Kind::pareto:
            return t < x_min ? 1.0 : std::pow(t / x_min, -alpha);
        case Kind::exponential:
            return std::exp(-t / mean_);
        case Kind::weibull:
            return std::exp(-std::pow(t / scale, shape));
        case Kind::deterministic:
            return t < mean_ ? 1.0 : 0.0;
    }
    return 0.0;
}

double DurationLaw::integrated_tail(double t) const {
    if (t < 0.0) t = 0.0;
    switch (kind) {
        case Kind::pareto: {
            if (alpha <= 1.0)
                throw parameter_error("pareto integrated tail needs alpha > 1");
            const double tail_at_min = x_min / (alpha - 1.0);
            if (t <= x_min) return (x_min - t) + tail_at_min;
            return std::pow(x_min, alpha) * std::pow(t, 1.0 - alpha) / (alpha - 1.0);
        }
        case Kind::exponential:
            return mean_ * std::exp(-t / mean_);
        case Kind::weibull: {
            const double z = std::pow(t / scale, shape);
            return (scale / shape) * upper_incomplete_gamma(1.0 / shape, z);
        }
        case Kind::deterministic:
            return std::max(mean_ - t, 0.0);
    }
    return 0.0;
}

double DurationLaw::quantile(double u) const {
    if (!(u >= 0.0) || !(u < 1.0))
        throw parameter_error("duration quantile: u must be in [0,1)");
    switch (kind) {
        case Kind::pareto:
            return x_min * std::pow(1.0 - u, -1.0 / alpha);
        case Kind::exponential:
            return -mean_ * std::log(1.0 - u);
        case Kind::weibull:
            return scale * std::pow(-std::log(1.0 - u), 1.0 / shape);
        case Kind::deterministic:
            return mean_;
    }
    return 0.0;
}

ShockLaw ShockLaw::constant(double value) {
    ShockLaw l;
    l.kind = Kind::constant;
    l.value = value;
    return l;
}

ShockLaw ShockLaw::gaussian(double mean, double sd) {
    if (!(sd >= 0.0)) throw parameter_error("gaussian shocks: sd must be >= 0");
    ShockLaw l;
    l.kind = Kind::gaussian;
    l.value = mean;
    l.sd = sd;
    return l;
}

double ShockLaw::sample(RngStream& rng) const {
    return kind == Kind::constant ? value : value + sd * rng.normal();
}

double ShockLaw::mean() const { return value; }

double ShockLaw::second_moment() const {
    return kind == Kind::constant ? value * value : value * value + sd * sd;
}

void write_event_stream_csv(std::ostream& os, const MarkedEventStream& events) {
    os << "birth_time,shock,duration\n";
    char buf[128];
    for (std::size_t i = 0; i < events.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", events.births[i],
                      events.shocks[i], events.durations[i]);
        os << buf;
    }
}

double ShotNoisePath::value_at(double t) const {
    if (knots.empty() || t < knots.front() || t > knots.back())
        throw parameter_error("ShotNoisePath::value_at: t outside [0, T]");
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - knots.begin());
    if (i >= knots.size()) return piece_values.back();
    return piece_values[i - 1];
}

double ShotNoisePath::integrate(double a, double b) const {
    if (a > b) return -integrate(b, a);
    if (knots.empty() || a < knots.front() - 1e-12 || b > knots.back() + 1e-12)
        throw parameter_error("ShotNoisePath::integrate: range outside [0, T]");
    const auto cum_at = [this](double x) {
        x = std::clamp(x, knots.front(), knots.back());
        const auto it = std::upper_bound(knots.begin(), knots.end(), x);
        std::size_t i = static_cast<std::size_t>(it - knots.begin());
        if (i >= knots.size()) return cum_integral.back();
        return cum_integral[i - 1] + piece_values[i - 1] * (x - knots[i - 1]);
    };
    return cum_at(b) - cum_at(a);
}

namespace {

// Fill grid samples and the cumulative integral from the piecewise structure.
void finalize_path(ShotNoisePath& path, double T, double delta) {
    path.delta = delta;
    path.cum_integral.resize(path.knots.size());
    path.cum_integral[0] = 0.0;
    for (std::size_t i = 1; i < path.knots.size(); ++i)
        path.cum_integral[i] = path.cum_integral[i - 1] +
                               path.piece_values[i - 1] *
                                   (path.knots[i] - path.knots[i - 1]);
    const std::size_t gn = static_cast<std::size_t>(std::floor(T / delta)) + 1;
    path.grid_values.resize(gn);
    std::size_t piece = 0;
    for (std::size_t i = 0; i < gn; ++i) {
        const double t = static_cast<double>(i) * delta;
        while (piece + 2 < path.knots.size() && path.knots[piece + 1] <= t) ++piece;
        path.grid_values[i] = path.piece_values[piece];
    }
}

void append_piece(ShotNoisePath& path, double end, double value) {
    if (end <= path.knots.back()) return;  // zero-length piece
    path.knots.push_back(end);
    path.piece_values.push_back(value);
}

}  // namespace

ShotNoisePath simulate_renewal_reward(const DurationLaw& duration_law,
                                      const ShockLaw& shock_law, double T,
                                      double delta, RngStream& rng) {
    duration_law.validate();
    if (!(duration_law.mean() > 0.0))  // also throws on infinite mean
        throw parameter_error("simulate_renewal_reward: durations must have positive mean");
    if (!(T > 0.0) || !(delta > 0.0))
        throw parameter_error("simulate_renewal_reward: T and delta must be > 0");

    ShotNoisePath path;
    path.kind = ShotNoiseKind::renewal_reward;
    path.knots.push_back(0.0);

    // First interval from the equilibrium (stationary delay) law.
    double t = 0.0;
    bool first = true;
    while (t < T) {
        const double gap = first ? duration_law.equilibrium_sample(rng)
                                 : duration_law.sample(rng);
        const double shock = shock_law.sample(rng);
        path.events.births.push_back(t);
        path.events.durations.push_back(gap);
        path.events.shocks.push_back(shock);
        append_piece(path, std::min(t + gap, T), shock);
        t += gap;
        first = false;
    }
    finalize_path(path, T, delta);
    return path;
}

ShotNoisePath simulate_on_off(const DurationLaw& on_law, const DurationLaw& off_law,
                              double T, double delta, RngStream& rng) {
    on_law.validate();
    off_law.validate();
    const double mean_on = on_law.mean();
    const double mean_off = off_law.mean();
    if (!(T > 0.0) || !(delta > 0.0))
        throw parameter_error("simulate_on_off: T and delta must be > 0");
    if (!(mean_on > 0.0))
        throw parameter_error("simulate_on_off: ON periods must have positive mean");

    ShotNoisePath path;
    path.kind = ShotNoiseKind::on_off;
    path.knots.push_back(0.0);

    // Stationary start: ON with probability E[on]/(E[on]+E[off]), residual
    // length from the equilibrium law of the running period.
    bool on = rng.uniform() < mean_on / (mean_on + mean_off);
    double t = 0.0;
    bool first = true;
    while (t < T) {
        double len;
        if (first)
            len = on ? on_law.equilibrium_sample(rng) : off_law.equilibrium_sample(rng);
        else
            len = on ? on_law.sample(rng) : off_law.sample(rng);
        if (on) {
            path.events.births.push_back(t);
            path.events.durations.push_back(len);
            path.events.shocks.push_back(1.0);
        }
        append_piece(path, std::min(t + len, T), on ? 1.0 : 0.0);
        t += len;
        on = !on;
        first = false;
    }
    finalize_path(path, T, delta);
    return path;
}

TimeSeries simulate_error_duration(const ShockLaw& shock_law,
                                   const DurationLaw& duration_law, std::size_t n,
                                   RngStream& rng, double window_tail_prob) {
    duration_law.validate();
    duration_law.mean();
    if (n == 0) throw parameter_error("simulate_error_duration: n must be >= 1");
    if (!(window_tail_prob > 0.0) || !(window_tail_prob < 1.0))
        throw config_error("simulate_error_duration: window tail probability must be in (0,1)");
    const double q = duration_law.quantile(1.0 - window_tail_prob);
    if (!(q < 1e8))
        throw config_error(
            "simulate_error_duration: pre-sample window exceeds 1e8 steps; "
            "loosen window_tail_prob");
    const long long w = static_cast<long long>(std::ceil(q));

    // Difference array over t = 1..n; shock j alive for j <= t < j + eta_j.
    std::vector<double> diff(n + 2, 0.0);
    const long long nn = static_cast<long long>(n);
    for (long long j = 1 - w; j <= nn; ++j) {
        const double eta = duration_law.sample(rng);
        const double eps = shock_law.sample(rng);
        const long long a = std::max<long long>(1, j);
        const long long b =
            std::min<long long>(nn, j + static_cast<long long>(std::ceil(eta)) - 1);
        if (a > b) continue;
        diff[static_cast<std::size_t>(a)] += eps;
        diff[static_cast<std::size_t>(b + 1)] -= eps;
    }
    TimeSeries out;
    out.values.resize(n);
    double acc = 0.0;
    for (std::size_t t = 1; t <= n; ++t) {
        acc += diff[t];
        out.values[t - 1] = acc;
    }
    return out;
}

namespace {

ShotNoisePath build_poisson_path(double lambda, double window, double T, double delta,
                                 RngStream& rng,
                                 const std::function<std::pair<double, double>(RngStream&)>&
                                     draw_shock_duration) {
    if (!(lambda > 0.0)) throw parameter_error("infinite_source_poisson: lambda must be > 0");
    if (!(T > 0.0) || !(delta > 0.0))
        throw parameter_error("infinite_source_poisson: T and delta must be > 0");
    if (!(window >= 0.0) || !std::isfinite(window))
        throw config_error("infinite_source_poisson: invalid stationarity window");

    ShotNoisePath path;
    path.kind = ShotNoiseKind::poisson;

    // Events: value change of +eps at max(birth, 0), -eps at min(death, T).
    std::vector<std::pair<double, double>> changes;
    double t = -window;
    while (true) {
        t += rng.exponential() / lambda;
        if (t > T) break;
        const auto [eps, eta] = draw_shock_duration(rng);
        if (!(eta > 0.0)) throw parameter_error("infinite_source_poisson: duration <= 0");
        path.events.births.push_back(t);
        path.events.shocks.push_back(eps);
        path.events.durations.push_back(eta);
        const double death = t + eta;
        if (death <= 0.0) continue;
        changes.emplace_back(std::max(t, 0.0), eps);
        if (death < T) changes.emplace_back(death, -eps);
    }
    std::sort(changes.begin(), changes.end());

    path.knots.push_back(0.0);
    double level = 0.0;
    std::size_t i = 0;
    // Changes at time 0 set the initial level.
    while (i < changes.size() && changes[i].first <= 0.0) level += changes[i++].second;
    while (i < changes.size()) {
        const double at = changes[i].first;
        double jump = 0.0;
        while (i < changes.size() && changes[i].first == at) jump += changes[i++].second;
        append_piece(path, std::min(at, T), level);
        level += jump;
    }
    append_piece(path, T, level);
    finalize_path(path, T, delta);
    return path;
}

}  // namespace

ShotNoisePath simulate_infinite_source_poisson(double lambda,
                                               const DurationLaw& duration_law,
                                               const ShockLaw& shock_law, double T,
                                               double delta, RngStream& rng,
                                               double window_tail_prob) {
    duration_law.validate();
    duration_law.mean();
    if (!(window_tail_prob > 0.0) || !(window_tail_prob < 1.0))
        throw config_error("infinite_source_poisson: window tail probability must be in (0,1)");
    const double window = duration_law.quantile(1.0 - window_tail_prob);
    if (!(window < 1e9))
        throw config_error(
            "infinite_source_poisson: stationarity window exceeds 1e9; loosen "
            "window_tail_prob");
    return build_poisson_path(lambda, window, T, delta, rng, [&](RngStream& r) {
        return std::make_pair(shock_law.sample(r), duration_law.sample(r));
    });
}

ShotNoisePath simulate_infinite_source_poisson(double lambda,
                                               const JointShockDuration& joint,
                                               double window, double T, double delta,
                                               RngStream& rng) {
    return build_poisson_path(lambda, window, T, delta, rng, joint.sample);
}

TheoreticalAcvf theoretical_shotnoise_acvf(const DurationLaw& duration_law,
                                           const ShockLaw& shock_law, double lambda,
                                           double t) {
    duration_law.validate();
    if (!(lambda > 0.0))
        throw parameter_error("theoretical_shotnoise_acvf: lambda must be > 0");
    TheoreticalAcvf r;
    r.value = lambda * shock_law.second_moment() * duration_law.integrated_tail(std::abs(t));
    r.exact = true;
    return r;
}

TheoreticalAcvf theoretical_shotnoise_acvf_asymptotic(double alpha, double ell,
                                                      double lambda, double t) {
    if (!(alpha > 1.0) || alpha >= 2.0)
        throw parameter_error("asymptotic acvf: alpha must be in (1,2)");
    if (!(t > 0.0)) throw parameter_error("asymptotic acvf: t must be > 0");
    TheoreticalAcvf r;
    r.value = lambda / (alpha - 1.0) * ell * std::pow(t, 1.0 - alpha);
    r.exact = false;
    return r;
}

double shotnoise_mean(const SuperpositionConfig& config) {
    switch (config.kind) {
        case ShotNoiseKind::renewal_reward:
            return config.shock_law.mean();
        case ShotNoiseKind::on_off: {
            const double on = config.duration_law.mean();
            const double off = config.off_law.mean();
            return on / (on + off);
        }
        case ShotNoiseKind::poisson:
            return config.lambda * config.shock_law.mean() * config.duration_law.mean();
        case ShotNoiseKind::error_duration:
            throw unsupported_error(
                "superposition is defined for the continuous-time kinds");
    }
    return 0.0;
}

std::vector<double> superpose_partial_sums(const SuperpositionConfig& config,
                                           std::size_t copies, double T,
                                           std::span<const double> t_grid,
                                           RngStream& rng) {
    if (copies == 0) throw parameter_error("superpose_partial_sums: copies must be >= 1");
    double t_max = 0.0;
    for (double t : t_grid) {
        if (!(t >= 0.0)) throw parameter_error("superpose_partial_sums: grid times must be >= 0");
        t_max = std::max(t_max, t);
    }
    const double horizon = T * t_max;
    const double ex = shotnoise_mean(config);

    std::vector<double> acc(t_grid.size(), 0.0);
    for (std::size_t i = 0; i < copies; ++i) {
        RngStream copy_rng = rng.substream(i);
        ShotNoisePath path;
        switch (config.kind) {
            case ShotNoiseKind::renewal_reward:
                path = simulate_renewal_reward(config.duration_law, config.shock_law,
                                               horizon, horizon, copy_rng);
                break;
            case ShotNoiseKind::on_off:
                path = simulate_on_off(config.duration_law, config.off_law, horizon,
                                       horizon, copy_rng);
                break;
            case ShotNoiseKind::poisson:
                path = simulate_infinite_source_poisson(
                    config.lambda, config.duration_law, config.shock_law, horizon,
                    horizon, copy_rng, config.window_tail_prob);
                break;
            case ShotNoiseKind::error_duration:
                throw unsupported_error(
                    "superposition is defined for the continuous-time kinds");
        }
        for (std::size_t g = 0; g < t_grid.size(); ++g) {
            const double upto = T * t_grid[g];
            acc[g] += path.integrate(0.0, upto) - ex * upto;
        }
    }
    return acc;
}

}  // namespace longmem

#include "longmem/counts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace longmem {

std::int64_t CountSeries::total() const {
    std::int64_t s = 0;
    for (auto c : counts) s += c;
    return s;
}

std::vector<double> CountSeries::as_doubles() const {
    return std::vector<double>(counts.begin(), counts.end());
}

IidDurationSource::IidDurationSource(DurationLaw law, RngStream rng)
    : law_(law), rng_(rng) {
    law_.validate();
    law_.mean();  // finite-mean check
}

bool IidDurationSource::next(double& out) {
    out = law_.sample(rng_);
    return true;
}

PositiveStableDurationSource::PositiveStableDurationSource(StableParams params, double c,
                                                           RngStream rng)
    : params_(params), c_(c), rng_(rng) {
    params_.validate();
    if (!(c > 0.0)) throw parameter_error("stable durations: scale c must be > 0");
    if (params_.alpha <= 1.0)
        throw parameter_error("stable durations: alpha must be > 1 (finite mean)");
}

bool PositiveStableDurationSource::next(double& out) {
    // Rejection of non-positive draws; acceptance monitored over a batch
    // would duplicate sample_positive_stable, so guard pathological skew by
    // bounding the rejection run instead.
    for (int tries = 0; tries < 10000; ++tries) {
        const double x = sample_stable_one(params_, rng_);
        if (x > 0.0) {
            out = c_ * x;
            return true;
        }
    }
    throw config_error("stable durations: no positive draw in 10000 attempts");
}

SequenceDurationSource::SequenceDurationSource(std::vector<double> durations)
    : durations_(std::move(durations)) {}

bool SequenceDurationSource::next(double& out) {
    if (pos_ >= durations_.size()) return false;
    out = durations_[pos_++];
    return true;
}

LmsdDurationSource::LmsdDurationSource(FracSpec latent, double weibull_shape,
                                       double target_clock_time, RngStream rng)
    : latent_(std::move(latent)),
      weibull_shape_(weibull_shape),
      remaining_time_(target_clock_time),
      rng_(rng) {
    latent_.validate();
    if (!(latent_.d > 0.0))
        throw parameter_error("lmsd durations: latent memory parameter must be > 0");
    weibull_scale_ = weibull_unit_mean_scale(weibull_shape);
    mean_duration_ = std::exp(arfima_variance(latent_) / 2.0);
    const auto planned = static_cast<std::size_t>(
        std::ceil(target_clock_time / mean_duration_ * 1.5)) + 1024;
    generate_block(planned);
}

void LmsdDurationSource::generate_block(std::size_t count) {
    RngStream block_rng = rng_.substream(block_index_++);
    RngStream h_rng = block_rng.substream(1);
    RngStream v_rng = block_rng.substream(2);
    const TimeSeries h = simulate_arfima(latent_, count, h_rng);
    block_.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        block_[i] = std::exp(h.values[i]) *
                    sample_weibull_one(weibull_shape_, weibull_scale_, v_rng);
    pos_ = 0;
}

bool LmsdDurationSource::next(double& out) {
    if (pos_ >= block_.size()) {
        // Ran past the planned block: extend with an independent block sized
        // from the remaining clock time.
        const auto planned = static_cast<std::size_t>(std::ceil(
            std::max(remaining_time_, 0.0) / mean_duration_ * 1.5)) + 4096;
        generate_block(planned);
    }
    out = block_[pos_++];
    remaining_time_ -= out;
    return true;
}

CountSeries durations_to_counts(DurationSource& source, double delta_t,
                                std::size_t n_intervals) {
    if (!(delta_t > 0.0)) throw parameter_error("durations_to_counts: delta_t must be > 0");
    if (n_intervals == 0)
        throw parameter_error("durations_to_counts: n_intervals must be >= 1");

    CountSeries out;
    out.delta_t = delta_t;
    out.counts.assign(n_intervals, 0);
    const double span = delta_t * static_cast<double>(n_intervals);

    double t = 0.0;
    std::size_t consumed = 0;
    double tau = 0.0;
    while (true) {
        if (!source.next(tau)) {
            const double avg = consumed > 0 ? t / static_cast<double>(consumed) : 0.0;
            const double need =
                avg > 0.0 ? std::ceil((span - t) / avg) : std::numeric_limits<double>::infinity();
            throw config_error(
                "durations_to_counts: source exhausted after " + std::to_string(consumed) +
                " durations covering " + std::to_string(t) + " of " + std::to_string(span) +
                " seconds; roughly " + std::to_string(need) + " more are needed");
        }
        if (!(tau > 0.0)) throw parameter_error("durations_to_counts: durations must be > 0");
        ++consumed;
        t += tau;
        if (t > span) break;
        // Left-open right-closed intervals: boundary events belong to the
        // earlier interval.
        const auto idx = static_cast<std::size_t>(std::ceil(t / delta_t));
        out.counts[idx - 1] += 1;
    }
    return out;
}

CountSeries durations_to_counts(std::span<const double> durations, double delta_t,
                                std::size_t n_intervals) {
    SequenceDurationSource src(std::vector<double>(durations.begin(), durations.end()));
    return durations_to_counts(src, delta_t, n_intervals);
}

CountSeries rebin(const CountSeries& counts, std::size_t factor) {
    if (factor == 0 || counts.counts.size() % factor != 0)
        throw parameter_error("rebin: factor must divide the series length");
    CountSeries out;
    out.delta_t = counts.delta_t * static_cast<double>(factor);
    out.origin = counts.origin;
    out.counts.resize(counts.counts.size() / factor);
    for (std::size_t i = 0; i < out.counts.size(); ++i) {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < factor; ++k) s += counts.counts[i * factor + k];
        out.counts[i] = s;
    }
    return out;
}

namespace {

VarianceTimeCurve vt_from_block_stats(std::span<const CountSeries> reps,
                                      std::span<const std::size_t> block_sizes,
                                      double pooled_rate) {
    VarianceTimeCurve curve;
    std::vector<double> lx, ly;
    for (std::size_t b : block_sizes) {
        double ss = 0.0;
        std::size_t nblocks = 0;
        for (const auto& series : reps) {
            const std::size_t nb = series.counts.size() / b;
            for (std::size_t i = 0; i < nb; ++i) {
                double s = 0.0;
                for (std::size_t k = 0; k < b; ++k)
                    s += static_cast<double>(series.counts[i * b + k]);
                const double c = s - pooled_rate * static_cast<double>(b);
                ss += c * c;
                ++nblocks;
            }
        }
        if (nblocks < 2) continue;
        const double v = ss / static_cast<double>(nblocks);
        if (!(v > 0.0))
            throw parameter_error("variance_time: degenerate (constant) counts");
        curve.points.push_back({b, v});
        lx.push_back(std::log(static_cast<double>(b)));
        ly.push_back(std::log(v));
    }
    if (curve.points.size() < 3)
        throw parameter_error("variance_time: need at least 3 usable block sizes");
    curve.hurst = ols_slope(lx, ly) / 2.0;
    return curve;
}

}  // namespace

VarianceTimeCurve variance_time_curve(const CountSeries& counts,
                                      std::span<const std::size_t> block_sizes) {
    if (block_sizes.size() < 3)
        throw parameter_error("variance_time: need at least 3 block sizes");
    for (std::size_t b : block_sizes)
        if (b == 0 || b > counts.counts.size() / 10)
            throw parameter_error("variance_time: block sizes must be in [1, n/10]");
    const double rate = static_cast<double>(counts.total()) /
                        static_cast<double>(counts.counts.size());
    return vt_from_block_stats(std::span<const CountSeries>(&counts, 1), block_sizes,
                               rate);
}

VarianceTimeCurve variance_time_pooled(std::span<const CountSeries> reps,
                                       std::span<const std::size_t> block_sizes) {
    if (reps.empty()) throw parameter_error("variance_time_pooled: no replications");
    if (block_sizes.size() < 3)
        throw parameter_error("variance_time: need at least 3 block sizes");
    double total = 0.0, len = 0.0;
    for (const auto& r : reps) {
        for (std::size_t b : block_sizes)
            if (b == 0 || b > r.counts.size() / 10)
                throw parameter_error("variance_time: block sizes must be in [1, n/10]");
        total += static_cast<double>(r.total());
        len += static_cast<double>(r.counts.size());
    }
    return vt_from_block_stats(reps, block_sizes, total / len);
}

void write_counts_csv(std::ostream& os, const CountSeries& counts) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", counts.delta_t);
    os << "# delta_t=" << buf << "\n";
    os << "interval_index,count\n";
    for (std::size_t i = 0; i < counts.counts.size(); ++i)
        os << (i + 1) << ',' << counts.counts[i] << '\n';
}

}  // namespace longmem

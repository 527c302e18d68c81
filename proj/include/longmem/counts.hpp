#ifndef LONGMEM_COUNTS_HPP
#define LONGMEM_COUNTS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "longmem/common.hpp"
#include "longmem/fracsim.hpp"
#include "longmem/rng.hpp"
#include "longmem/shotnoise.hpp"

namespace longmem {

// Event counts per clock interval of width delta_t; interval t' covers
// ((t'-1) delta_t, t' delta_t], so an event exactly on a boundary belongs to
// the earlier interval.
struct CountSeries {
    std::vector<std::int64_t> counts;
    double delta_t = 1.0;
    double origin = 0.0;

    std::int64_t total() const;
    std::vector<double> as_doubles() const;
};

// Streamed producer of inter-event durations, so covering millions of
// seconds of clock time never materializes more durations than consumed.
class DurationSource {
public:
    virtual ~DurationSource() = default;
    // False once the source is exhausted (only finite sources ever are).
    virtual bool next(double& out) = 0;
};

class IidDurationSource : public DurationSource {
public:
    IidDurationSource(DurationLaw law, RngStream rng);
    bool next(double& out) override;

private:
    DurationLaw law_;
    RngStream rng_;
};

// i.i.d. positive-stable durations scaled by c (rejection-conditioned).
class PositiveStableDurationSource : public DurationSource {
public:
    PositiveStableDurationSource(StableParams params, double c, RngStream rng);
    bool next(double& out) override;

private:
    StableParams params_;
    double c_;
    RngStream rng_;
};

class SequenceDurationSource : public DurationSource {
public:
    explicit SequenceDurationSource(std::vector<double> durations);
    bool next(double& out) override;

private:
    std::vector<double> durations_;
    std::size_t pos_ = 0;
};

// LMSD durations tau_k = exp(h_k) v_k with h an ARFIMA latent signal and v
// unit-mean Weibull shocks. The latent path is simulated exactly in one block
// sized from the analytic mean duration and the clock-time target; if a
// replication runs long, an independent extension block is appended.
class LmsdDurationSource : public DurationSource {
public:
    LmsdDurationSource(FracSpec latent, double weibull_shape, double target_clock_time,
                       RngStream rng);
    bool next(double& out) override;
    // Analytic E[tau] = exp(var(h)/2) for the configured latent spec.
    double mean_duration() const { return mean_duration_; }

private:
    void generate_block(std::size_t count);

    FracSpec latent_;
    double weibull_shape_ = 1.0;
    double weibull_scale_ = 1.0;
    double mean_duration_ = 1.0;
    double remaining_time_ = 0.0;
    RngStream rng_;
    std::uint64_t block_index_ = 0;
    std::vector<double> block_;
    std::size_t pos_ = 0;
};

// Count events on n_intervals intervals of width delta_t. Event times are the
// cumulative sums of the durations. A finite source that runs out before the
// span is covered raises a config_error estimating how many more durations
// are needed.
CountSeries durations_to_counts(DurationSource& source, double delta_t,
                                std::size_t n_intervals);
CountSeries durations_to_counts(std::span<const double> durations, double delta_t,
                                std::size_t n_intervals);

// Counts on 2^k-wider intervals; factor must divide evenly into full blocks.
CountSeries rebin(const CountSeries& counts, std::size_t factor);

struct VarianceTimePoint {
    std::size_t block_size = 0;
    double variance = 0.0;
};
struct VarianceTimeCurve {
    std::vector<VarianceTimePoint> points;
    double hurst = 0.0;  // slope/2 of log variance on log block size
};

// Variance of non-overlapping aggregated counts per block size, centered at
// the series mean rate; Hurst exponent from the log-log slope.
VarianceTimeCurve variance_time_curve(const CountSeries& counts,
                                      std::span<const std::size_t> block_sizes);

// Pooled version across replications, centered at the pooled mean rate. This
// removes the within-series centering bias that otherwise flattens the curve.
VarianceTimeCurve variance_time_pooled(std::span<const CountSeries> reps,
                                       std::span<const std::size_t> block_sizes);

// CSV: rows (interval_index, count); header carries delta_t.
void write_counts_csv(std::ostream& os, const CountSeries& counts);

}  // namespace longmem

#endif

#ifndef LONGMEM_HARNESS_HPP
#define LONGMEM_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "longmem/common.hpp"
#include "longmem/counts.hpp"
#include "longmem/estimators.hpp"
#include "longmem/spectral.hpp"

namespace longmem {

// Flat key=value configuration with CLI overrides; the canonical hash is
// recorded in every output so artifacts are traceable to their settings.
class Config {
public:
    Config() = default;
    static Config from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;

    // FNV-1a over the sorted canonical "key=value" serialization.
    std::uint64_t hash() const;
    std::string hash_hex() const;
    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

// Shared experiment settings; each table fills its model defaults.
struct CountExperimentConfig {
    std::size_t n = 10000;
    std::vector<double> delta_ts;   // seconds
    std::vector<double> m_exps;     // bandwidth exponents, m = floor(n^e)
    std::size_t reps = 500;
    std::uint64_t seed = 1;
    int threads = 0;
    double d0 = 0.25;

    // stable-duration model (table 1)
    double alpha = 1.5;
    double beta = 0.8;
    double c = 1.21;

    // LMSD model (table 2)
    double d = 0.3545;
    double ar1 = -0.42;
    double weibull_gamma = 1.3376;
    double innovation_sd = 1.0;
};

CountExperimentConfig table1_defaults();
CountExperimentConfig table2_defaults();
CountExperimentConfig experiment_from_config(const Config& cfg, bool lmsd);

enum class CountModel { stable, lmsd };

// One replication of counts for the configured duration model.
CountSeries simulate_count_replication(const CountExperimentConfig& cfg, CountModel model,
                                       double delta_t, std::size_t n, std::uint64_t rep);

struct TableCell {
    double delta_t = 0.0;
    double m_exp = 0.0;
    std::size_t m = 0;
    ReplicationSummary summary;
    std::vector<double> d_hats;  // by replication index
};

// GPH replication grid over (delta_t, m); rows ordered as configured.
std::vector<TableCell> run_count_table(const CountExperimentConfig& cfg, CountModel model);

inline std::vector<TableCell> run_table1(const CountExperimentConfig& cfg) {
    return run_count_table(cfg, CountModel::stable);
}
inline std::vector<TableCell> run_table2(const CountExperimentConfig& cfg) {
    return run_count_table(cfg, CountModel::lmsd);
}

struct FigureResult {
    AveragedLogPeriodogram stable_panel;
    AveragedLogPeriodogram lmsd_panel;
};

// Averaged log-log periodogram data for both duration models (Figure 1).
FigureResult run_figure(const CountExperimentConfig& cfg);

struct VarianceTimeResult {
    VarianceTimeCurve curve;
    std::size_t reps = 0;
    std::size_t n = 0;
};

VarianceTimeResult run_variance_time(const CountExperimentConfig& cfg, CountModel model,
                                     const std::vector<std::size_t>& block_sizes);

// ---- CSV output ------------------------------------------------------

struct OutputMeta {
    std::uint64_t seed = 0;
    std::string config_hash;
};

void write_meta(std::ostream& os, const OutputMeta& meta);
void write_series_csv(std::ostream& os, const OutputMeta& meta, const TimeSeries& series);
TimeSeries read_series_csv(std::istream& is);
CountSeries read_counts_csv(std::istream& is);

// Rows (estimator, n, m, trim, rep, d_hat, aux).
void write_estimates_csv(std::ostream& os, const OutputMeta& meta,
                         const std::string& estimator, std::size_t n,
                         const std::vector<TableCell>& cells);
// Rows (estimator, config, mean, sd, t_value); sd/t print as "na" for R = 1.
void write_summary_csv(std::ostream& os, const OutputMeta& meta,
                       const std::string& estimator,
                       const std::vector<TableCell>& cells);
// Rows (log10_frequency, mean_log10_ordinate, reps_used).
void write_figure_csv(std::ostream& os, const OutputMeta& meta,
                      const AveragedLogPeriodogram& data);
void write_variance_time_csv(std::ostream& os, const OutputMeta& meta,
                             const VarianceTimeResult& result);

std::string format_double(double v);

}  // namespace longmem

#endif

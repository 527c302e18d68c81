#include "longmem/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "longmem/parallel.hpp"
#include "longmem/volatility.hpp"

namespace longmem {

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("config: cannot open " + path);
    Config cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error("config: line " + std::to_string(lineno) +
                              ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw usage_error("config: line " + std::to_string(lineno) + ": empty key");
        cfg.kv_[key] = value;
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw usage_error("config: key '" + key + "' is not a number: " + it->second);
    }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw usage_error("config: key '" + key + "' is not an integer: " + it->second);
    }
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
    return static_cast<std::size_t>(get_u64(key, fallback));
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw usage_error("config: key '" + key + "' has a bad list entry: " + tok);
        }
    }
    if (out.empty())
        throw usage_error("config: key '" + key + "' is an empty list");
    return out;
}

std::uint64_t Config::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [k, v] : kv_) {
        feed(k);
        feed("=");
        feed(v);
        feed("\n");
    }
    return h;
}

std::string Config::hash_hex() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash()));
    return buf;
}

CountExperimentConfig table1_defaults() {
    CountExperimentConfig cfg;
    cfg.delta_ts = {300.0, 600.0, 1200.0};  // 5, 10, 20 minutes
    cfg.m_exps = {0.5, 0.8};
    cfg.reps = 500;
    cfg.d0 = 0.25;
    return cfg;
}

CountExperimentConfig table2_defaults() {
    CountExperimentConfig cfg;
    cfg.delta_ts = {300.0, 1800.0, 3600.0};  // 5, 30, 60 minutes
    cfg.m_exps = {0.5, 0.8};
    cfg.reps = 200;
    cfg.d0 = 0.3545;
    return cfg;
}

CountExperimentConfig experiment_from_config(const Config& cfg, bool lmsd) {
    CountExperimentConfig e = lmsd ? table2_defaults() : table1_defaults();
    e.n = cfg.get_size("n", e.n);
    e.delta_ts = cfg.get_double_list("delta_t", e.delta_ts);
    e.m_exps = cfg.get_double_list("m_exp", e.m_exps);
    e.reps = cfg.get_size("reps", e.reps);
    e.seed = cfg.get_u64("seed", e.seed);
    e.d0 = cfg.get_double("d0", e.d0);
    e.alpha = cfg.get_double("alpha", e.alpha);
    e.beta = cfg.get_double("beta", e.beta);
    e.c = cfg.get_double("c", e.c);
    e.d = cfg.get_double("d", e.d);
    e.ar1 = cfg.get_double("ar1", e.ar1);
    e.weibull_gamma = cfg.get_double("weibull_gamma", e.weibull_gamma);
    e.innovation_sd = cfg.get_double("innovation_sd", e.innovation_sd);
    if (e.reps < 1) throw parameter_error("experiment: reps must be >= 1");
    if (e.n < 64) throw parameter_error("experiment: n must be >= 64");
    for (double dt : e.delta_ts)
        if (!(dt > 0.0)) throw parameter_error("experiment: delta_t must be > 0");
    return e;
}

CountSeries simulate_count_replication(const CountExperimentConfig& cfg, CountModel model,
                                       double delta_t, std::size_t n, std::uint64_t rep) {
    RngStream rng(cfg.seed, rep);
    const double span = delta_t * static_cast<double>(n);
    if (model == CountModel::stable) {
        StableParams params{cfg.alpha, cfg.beta, 1.0, 0.0};
        PositiveStableDurationSource src(params, cfg.c, rng);
        return durations_to_counts(src, delta_t, n);
    }
    FracSpec latent;
    latent.d = cfg.d;
    if (cfg.ar1 != 0.0) latent.ar = {cfg.ar1};
    latent.innovation_sd = cfg.innovation_sd;
    LmsdDurationSource src(latent, cfg.weibull_gamma, span, rng);
    return durations_to_counts(src, delta_t, n);
}

std::vector<TableCell> run_count_table(const CountExperimentConfig& cfg, CountModel model) {
    std::vector<TableCell> cells;
    for (double delta_t : cfg.delta_ts) {
        // All bandwidths are estimated from one periodogram per replication.
        std::vector<std::vector<double>> d_hats(
            cfg.m_exps.size(), std::vector<double>(cfg.reps, 0.0));
        parallel_for(cfg.reps, cfg.threads, [&](std::size_t rep) {
            const auto tag = [rep](const char* what) {
                return "replication " + std::to_string(rep) + ": " + what;
            };
            try {
                const CountSeries counts =
                    simulate_count_replication(cfg, model, delta_t, cfg.n, rep);
                const std::vector<double> values = counts.as_doubles();
                const auto pgram = periodogram(std::span<const double>(values));
                for (std::size_t e = 0; e < cfg.m_exps.size(); ++e) {
                    BandwidthSpec bw;
                    bw.m = static_cast<std::size_t>(
                        std::floor(std::pow(static_cast<double>(cfg.n), cfg.m_exps[e])));
                    d_hats[e][rep] = gph(pgram, bw).d_hat;
                }
            } catch (const parameter_error& err) {
                throw parameter_error(tag(err.what()));
            } catch (const config_error& err) {
                throw config_error(tag(err.what()));
            } catch (const std::exception& err) {
                throw numerical_error(tag(err.what()));
            }
        });
        for (std::size_t e = 0; e < cfg.m_exps.size(); ++e) {
            TableCell cell;
            cell.delta_t = delta_t;
            cell.m_exp = cfg.m_exps[e];
            cell.m = static_cast<std::size_t>(
                std::floor(std::pow(static_cast<double>(cfg.n), cfg.m_exps[e])));
            cell.d_hats = std::move(d_hats[e]);
            cell.summary = summarize(cell.d_hats, cfg.d0);
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

FigureResult run_figure(const CountExperimentConfig& cfg) {
    FigureResult out;
    const double delta_t = cfg.delta_ts.front();
    out.stable_panel = averaged_loglog_periodogram(
        [&](std::size_t rep) {
            return simulate_count_replication(cfg, CountModel::stable, delta_t, cfg.n, rep)
                .as_doubles();
        },
        cfg.n, cfg.reps, cfg.threads);
    out.lmsd_panel = averaged_loglog_periodogram(
        [&](std::size_t rep) {
            return simulate_count_replication(cfg, CountModel::lmsd, delta_t, cfg.n, rep)
                .as_doubles();
        },
        cfg.n, cfg.reps, cfg.threads);
    return out;
}

VarianceTimeResult run_variance_time(const CountExperimentConfig& cfg, CountModel model,
                                     const std::vector<std::size_t>& block_sizes) {
    const double delta_t = cfg.delta_ts.front();
    std::vector<CountSeries> reps(cfg.reps);
    parallel_for(cfg.reps, cfg.threads, [&](std::size_t rep) {
        reps[rep] = simulate_count_replication(cfg, model, delta_t, cfg.n, rep);
    });
    VarianceTimeResult res;
    res.curve = variance_time_pooled(reps, block_sizes);
    res.reps = cfg.reps;
    res.n = cfg.n;
    return res;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "na";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_meta(std::ostream& os, const OutputMeta& meta) {
    os << "# generator=longmem " << kVersion << "\n";
    os << "# seed=" << meta.seed << "\n";
    os << "# config_hash=" << meta.config_hash << "\n";
}

void write_series_csv(std::ostream& os, const OutputMeta& meta, const TimeSeries& series) {
    write_meta(os, meta);
    os << "# dt=" << format_double(series.dt) << "\n";
    os << "t,value\n";
    for (std::size_t i = 0; i < series.values.size(); ++i)
        os << (i + 1) << ',' << format_double(series.values[i]) << '\n';
}

TimeSeries read_series_csv(std::istream& is) {
    TimeSeries out;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("dt=");
            if (pos != std::string::npos) out.dt = std::stod(line.substr(pos + 3));
            continue;
        }
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw usage_error("series csv: malformed row: " + line);
        out.values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (out.values.empty()) throw usage_error("series csv: no data rows");
    return out;
}

CountSeries read_counts_csv(std::istream& is) {
    CountSeries out;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("delta_t=");
            if (pos != std::string::npos) out.delta_t = std::stod(line.substr(pos + 8));
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw usage_error("counts csv: malformed row: " + line);
        out.counts.push_back(std::stoll(line.substr(comma + 1)));
    }
    if (out.counts.empty()) throw usage_error("counts csv: no data rows");
    return out;
}

void write_estimates_csv(std::ostream& os, const OutputMeta& meta,
                         const std::string& estimator, std::size_t n,
                         const std::vector<TableCell>& cells) {
    write_meta(os, meta);
    os << "estimator,n,m,trim,rep,d_hat,aux\n";
    for (const auto& cell : cells)
        for (std::size_t r = 0; r < cell.d_hats.size(); ++r)
            os << estimator << ',' << n << ',' << cell.m << ",0," << r << ','
               << format_double(cell.d_hats[r]) << ",na\n";
}

void write_summary_csv(std::ostream& os, const OutputMeta& meta,
                       const std::string& estimator,
                       const std::vector<TableCell>& cells) {
    write_meta(os, meta);
    os << "estimator,config,mean,sd,t_value\n";
    for (const auto& cell : cells) {
        os << estimator << ",delta_t=" << format_double(cell.delta_t)
           << " m=" << cell.m << ',' << format_double(cell.summary.mean) << ','
           << format_double(cell.summary.sd) << ',' << format_double(cell.summary.t)
           << '\n';
    }
}

void write_figure_csv(std::ostream& os, const OutputMeta& meta,
                      const AveragedLogPeriodogram& data) {
    write_meta(os, meta);
    os << "# log_base=10\n";
    os << "log10_frequency,mean_log10_ordinate,reps_used\n";
    for (std::size_t i = 0; i < data.log10_frequency.size(); ++i)
        os << format_double(data.log10_frequency[i]) << ','
           << format_double(data.mean_log10_ordinate[i]) << ',' << data.reps_used[i]
           << '\n';
}

void write_variance_time_csv(std::ostream& os, const OutputMeta& meta,
                             const VarianceTimeResult& result) {
    write_meta(os, meta);
    os << "# hurst=" << format_double(result.curve.hurst) << "\n";
    os << "# reps=" << result.reps << "\n";
    os << "block_size,variance\n";
    for (const auto& p : result.curve.points)
        os << p.block_size << ',' << format_double(p.variance) << '\n';
}

}  // namespace longmem

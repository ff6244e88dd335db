#include "periloss/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace periloss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    if (std::isinf(sorted[lo]) || std::isinf(sorted[lo + 1])) return kInf;
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

double StudySpec::limit_per_cell() const {
    LimitInputs in;
    in.mean_x = interarrival.mean();
    in.mean_y = maintenance.mean();
    in.u_bar = mean_utility(profile);
    in.n_cells = 1;
    return expected_loss_limit(in);
}

SeriesOut run_series(const StudySpec& spec, std::uint64_t rep_seed) {
    SeriesOut out;
    if (spec.mode == StudySpec::Mode::by_cycle) {
        if (spec.n_cells != 1) {
            throw std::invalid_argument("run_series: by_cycle mode is single-cell");
        }
        Rng rng = make_rng(derive_seed(rep_seed, 0));
        const CellTrace trace =
            simulate_cell(spec.interarrival, spec.maintenance, StopRule::cycles(spec.n_cycles), rng);
        NoisePath path;
        const NoisePath* path_ptr = nullptr;
        if (spec.noise.kind != NoiseModel::Kind::none) {
            const std::uint64_t ns = derive_seed(rep_seed, 1000000);
            Rng noise_rng = make_rng(ns);
            path = sample_noise_path(spec.noise, trace.cycles.back().end, noise_rng, ns);
            path_ptr = &path;
        }
        const LossSeries series = loss_series_by_cycle(trace, spec.profile, path_ptr);
        out.value = series.running_by_cycle;
        out.x.resize(out.value.size());
        for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] = static_cast<double>(i + 1);
        return out;
    }
    if (spec.horizon <= 0.0 || spec.grid_step <= 0.0) {
        throw std::invalid_argument("run_series: by_time needs horizon and grid step");
    }
    std::vector<CellTrace> traces;
    traces.reserve(spec.n_cells);
    std::vector<NoisePath> paths;
    const bool noisy = spec.noise.kind != NoiseModel::Kind::none;
    for (int c = 0; c < spec.n_cells; ++c) {
        Rng rng = make_rng(derive_seed(rep_seed, static_cast<std::uint64_t>(c)));
        traces.push_back(simulate_cell(spec.interarrival, spec.maintenance,
                                       StopRule::by_horizon(spec.horizon), rng));
        if (noisy) {
            const std::uint64_t ns = derive_seed(rep_seed, 1000000 + static_cast<std::uint64_t>(c));
            Rng noise_rng = make_rng(ns);
            paths.push_back(
                sample_noise_path(spec.noise, traces.back().cycles.back().end, noise_rng, ns));
        }
    }
    std::vector<double> grid;
    for (double t = spec.grid_step; t <= spec.horizon + 1e-9; t += spec.grid_step) {
        grid.push_back(std::min(t, spec.horizon));
    }
    const NetworkRun run =
        loss_series_by_time(traces, spec.profile, grid, noisy ? &paths : nullptr);
    out.x = run.time_grid;
    out.value = run.running;
    return out;
}

ReplicationResult run_replication(const StudySpec& spec, std::uint64_t rep_seed) {
    const SeriesOut series = run_series(spec, rep_seed);
    const double limit = spec.limit_per_cell();
    ReplicationResult result;
    if (spec.mode == StudySpec::Mode::by_cycle) {
        const StageResult stage = convergence_stage(series.value, limit, spec.threshold);
        result.reached = stage.reached;
        result.stat = stage.reached ? static_cast<double>(stage.index) : kInf;
    } else {
        const StageResult stage =
            convergence_stage_time(series.x, series.value, limit, spec.threshold);
        result.reached = stage.reached;
        result.stat = stage.reached ? (stage.time > 0.0 ? stage.time : series.x.front()) : kInf;
    }
    result.final_value = series.value.back();
    return result;
}

ReplicationSummary replicate(const StudySpec& spec, int reps, std::uint64_t base_seed,
                             int threads) {
    if (reps < 1) throw std::invalid_argument("replicate: reps must be >= 1");
    if (threads < 1) threads = 1;
    threads = std::min(threads, reps);
    std::vector<ReplicationResult> results(reps);
    auto worker = [&](int first, int step) {
        for (int r = first; r < reps; r += step) {
            results[r] = run_replication(spec, derive_seed(base_seed, static_cast<std::uint64_t>(r)));
        }
    };
    if (threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
        for (std::thread& t : pool) t.join();
    }
    ReplicationSummary summary;
    summary.stats.reserve(reps);
    const double limit = spec.limit_per_cell();
    long final_ok = 0;
    for (const ReplicationResult& r : results) {
        summary.stats.push_back(r.stat);
        if (!r.reached) ++summary.unreached;
        if (r.final_value > 0.0 && std::abs(r.final_value - limit) / r.final_value < spec.threshold) {
            ++final_ok;
        }
    }
    summary.final_within_threshold_frac = static_cast<double>(final_ok) / reps;
    std::vector<double> sorted = summary.stats;
    std::sort(sorted.begin(), sorted.end());
    summary.median = quantile(sorted, 0.5);
    summary.q10 = quantile(sorted, 0.1);
    summary.q90 = quantile(sorted, 0.9);
    summary.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / reps;
    return summary;
}

void write_ticket_fixture(const std::string& path, const TicketFixtureSpec& spec,
                          std::uint64_t seed) {
    if (spec.lambda_pooled <= 0.0 || spec.mu <= 0.0 || spec.n_cells < 1 || spec.n_tickets < 1) {
        throw std::invalid_argument("write_ticket_fixture: invalid spec");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_ticket_fixture: cannot open " + path);
    out << "anomaly_id,cell_id,start_ts,end_ts\n";
    Rng rng = make_rng(seed);
    double t_h = 0.0;
    for (long i = 0; i < spec.n_tickets; ++i) {
        t_h += -std::log(uniform01(rng)) / spec.lambda_pooled;
        const double y_h = -std::log(uniform01(rng)) / spec.mu;
        // round-robin cell assignment keeps the pooled arrival stream intact
        const int cell = static_cast<int>(i % spec.n_cells);
        const std::int64_t start = spec.t0 + static_cast<std::int64_t>(std::llround(t_h * 3600.0));
        out << "A" << i << ",cell_" << cell << "," << start << ",";
        if (uniform01(rng) >= spec.unresolved_frac) {
            out << start + static_cast<std::int64_t>(std::llround(y_h * 3600.0));
        }
        out << "\n";
    }
}

void write_kpi_fixture(const std::string& path, const PeriodicProfile& profile, int n_cells,
                       int n_hours, double sigma, std::uint64_t seed, std::int64_t t0) {
    if (n_cells < 1 || n_hours < 1) throw std::invalid_argument("write_kpi_fixture: invalid spec");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_kpi_fixture: cannot open " + path);
    out << "cell_id,timestamp,traffic_gb\n";
    Rng rng = make_rng(seed);
    char stamp[64];
    for (int h = 0; h < n_hours; ++h) {
        const std::int64_t ts = t0 + 3600LL * h;
        const std::time_t tt = static_cast<std::time_t>(ts);
        std::tm tm{};
        gmtime_r(&tt, &tm);
        std::snprintf(stamp, sizeof stamp, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                      tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
        for (int c = 0; c < n_cells; ++c) {
            double v = profile(static_cast<double>(h));
            if (sigma > 0.0) v += sigma * standard_normal(rng);
            if (v < 0.0) v = 0.0;
            out << "cell_" << c << "," << stamp << "," << v << "\n";
        }
    }
}

}  // namespace periloss

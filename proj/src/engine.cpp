#include "periloss/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace periloss {

StopRule StopRule::cycles(long n) {
    if (n <= 0) throw std::invalid_argument("StopRule: cycle count must be > 0");
    return StopRule{n, 0.0};
}

StopRule StopRule::by_horizon(double t) {
    if (t <= 0.0) throw std::invalid_argument("StopRule: horizon must be > 0");
    return StopRule{0, t};
}

CellTrace simulate_cell(const InterArrivalModel& interarrival, const MaintenanceModel& maintenance,
                        StopRule stop, Rng& rng) {
    CellTrace trace;
    trace.horizon = stop.horizon;
    double t = 0.0;
    long n = 0;
    for (;;) {
        const double x = sample_interarrival(interarrival, rng);
        const double y = sample_maintenance(maintenance, rng);
        t += x + y;
        trace.cycles.push_back(Cycle{x, y, t});
        ++n;
        if (stop.n_cycles > 0 && n >= stop.n_cycles) break;
        if (stop.horizon > 0.0 && t >= stop.horizon) break;
    }
    return trace;
}

double loss_integral(const PeriodicProfile& profile, const NoisePath* noise, double t0, double t1) {
    if (t1 < t0) throw std::invalid_argument("loss_integral: reversed interval");
    const double len = t1 - t0;
    if (len == 0.0) return 0.0;
    int intervals = static_cast<int>(std::ceil(len / std::min(0.05, len / 16.0)));
    if (intervals % 2 != 0) ++intervals;
    const double h = len / intervals;
    double sum = profile(t0) + profile(t1);
    for (int i = 1; i < intervals; ++i) {
        sum += profile(t0 + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    double value = sum * h / 3.0;
    if (noise != nullptr) value += noise->integral(t0, t1);
    return value;
}

LossSeries loss_series_by_cycle(const CellTrace& trace, const PeriodicProfile& profile,
                                const NoisePath* noise) {
    if (trace.cycles.empty()) throw std::invalid_argument("loss_series_by_cycle: empty trace");
    LossSeries series;
    series.per_cycle.reserve(trace.cycles.size());
    series.running_by_cycle.reserve(trace.cycles.size());
    double total = 0.0;
    for (const Cycle& c : trace.cycles) {
        const double i_j = loss_integral(profile, noise, c.end - c.down, c.end);
        total += i_j;
        series.per_cycle.push_back(i_j);
        series.running_by_cycle.push_back(total / c.end);
    }
    return series;
}

std::vector<double> cumulative_loss(const CellTrace& trace, const PeriodicProfile& profile,
                                    const NoisePath* noise, const std::vector<double>& grid) {
    // prefix sums of completed down-interval integrals, then a partial
    // integral for the down interval straddling each grid point
    const auto& cycles = trace.cycles;
    std::vector<double> prefix(cycles.size() + 1, 0.0);
    for (std::size_t j = 0; j < cycles.size(); ++j) {
        prefix[j + 1] = prefix[j] +
                        loss_integral(profile, noise, cycles[j].end - cycles[j].down, cycles[j].end);
    }
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) {
        // first cycle ending at or after t
        const auto it = std::lower_bound(cycles.begin(), cycles.end(), t,
                                         [](const Cycle& c, double v) { return c.end < v; });
        if (it == cycles.end()) {
            out.push_back(prefix.back());
            continue;
        }
        const std::size_t j = static_cast<std::size_t>(it - cycles.begin());
        double value = prefix[j];
        const double down_start = it->end - it->down;
        if (t > down_start) value += loss_integral(profile, noise, down_start, t);
        out.push_back(value);
    }
    return out;
}

NetworkRun loss_series_by_time(const std::vector<CellTrace>& traces,
                               const PeriodicProfile& profile, const std::vector<double>& grid,
                               const std::vector<NoisePath>* noise_paths) {
    if (traces.empty()) throw std::invalid_argument("loss_series_by_time: no traces");
    if (grid.empty()) throw std::invalid_argument("loss_series_by_time: empty grid");
    const double t_max = *std::max_element(grid.begin(), grid.end());
    for (const CellTrace& trace : traces) {
        const double covered = std::max(trace.horizon, trace.cycles.empty() ? 0.0 : trace.cycles.back().end);
        if (covered < t_max) {
            throw std::invalid_argument("loss_series_by_time: grid extends beyond a trace horizon");
        }
    }
    if (noise_paths != nullptr && noise_paths->size() != traces.size()) {
        throw std::invalid_argument("loss_series_by_time: one noise path per trace required");
    }
    NetworkRun run;
    run.n_cells = static_cast<int>(traces.size());
    run.time_grid = grid;
    run.running.assign(grid.size(), 0.0);
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const NoisePath* path = noise_paths != nullptr ? &(*noise_paths)[i] : nullptr;
        const std::vector<double> cum = cumulative_loss(traces[i], profile, path, grid);
        for (std::size_t g = 0; g < grid.size(); ++g) run.running[g] += cum[g];
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (grid[g] <= 0.0) throw std::invalid_argument("loss_series_by_time: grid times must be > 0");
        run.running[g] /= static_cast<double>(traces.size()) * grid[g];
    }
    return run;
}

namespace {
bool within_threshold(double value, double limit, double threshold) {
    if (value == limit) return true;
    if (value <= 0.0) return false;
    return std::abs(value - limit) / value < threshold;
}
}  // namespace

StageResult convergence_stage(const std::vector<double>& values, double limit, double threshold) {
    if (limit <= 0.0) throw std::invalid_argument("convergence_stage: limit must be > 0");
    if (values.empty()) throw std::invalid_argument("convergence_stage: empty series");
    std::size_t last_violation = 0;  // 1-based; 0 means none
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!within_threshold(values[i], limit, threshold)) last_violation = i + 1;
    }
    StageResult r;
    if (last_violation >= values.size()) {
        r.reached = false;
        return r;
    }
    r.reached = true;
    r.index = last_violation + 1;
    return r;
}

StageResult convergence_stage_time(const std::vector<double>& grid,
                                   const std::vector<double>& values, double limit,
                                   double threshold) {
    if (grid.size() != values.size()) {
        throw std::invalid_argument("convergence_stage_time: grid/value size mismatch");
    }
    StageResult r = convergence_stage(values, limit, threshold);
    if (r.reached) {
        r.time = r.index == 1 ? 0.0 : grid[r.index - 1];
    }
    return r;
}

}  // namespace periloss

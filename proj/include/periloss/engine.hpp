#pragma once

#include <optional>
#include <vector>

#include "periloss/rng.hpp"
#include "periloss/stochastic.hpp"
#include "periloss/utility.hpp"

namespace periloss {

/// One anomaly-repair cycle: up duration, down duration, cumulative end time.
struct Cycle {
    double up = 0.0;
    double down = 0.0;
    double end = 0.0;  // sum of all (up + down) through this cycle
};

/// A single component's renewal history. `horizon > 0` when the simulation
/// was stopped by wall-clock time; the last cycle may then overshoot it and
/// time-based evaluations clip at the horizon.
struct CellTrace {
    std::vector<Cycle> cycles;
    double horizon = 0.0;
};

struct StopRule {
    long n_cycles = 0;     // > 0: stop after that many complete cycles
    double horizon = 0.0;  // > 0: stop once cumulative time covers the horizon

    static StopRule cycles(long n);
    static StopRule by_horizon(double t);
};

CellTrace simulate_cell(const InterArrivalModel& interarrival, const MaintenanceModel& maintenance,
                        StopRule stop, Rng& rng);

/// Per-cycle loss integrals I_j and the running per-cycle average loss.
struct LossSeries {
    std::vector<double> per_cycle;          // I_j
    std::vector<double> running_by_cycle;   // sum(I_1..I_n) / D_n
};

// Integral of the (optionally noise-corrupted) utility over [t0, t1].
// Composite Simpson with step <= min(0.05 h, window/16); the noise path
// contributes its exact piecewise-linear integral.
double loss_integral(const PeriodicProfile& profile, const NoisePath* noise, double t0, double t1);

LossSeries loss_series_by_cycle(const CellTrace& trace, const PeriodicProfile& profile,
                                const NoisePath* noise = nullptr);

// Cumulative lost utility of one cell evaluated at each grid time (down
// intervals clipped at the grid point).
std::vector<double> cumulative_loss(const CellTrace& trace, const PeriodicProfile& profile,
                                    const NoisePath* noise, const std::vector<double>& grid);

/// Network aggregate: per-cell average of (1/t) * cumulative loss at each
/// grid time.
struct NetworkRun {
    int n_cells = 0;
    std::vector<double> time_grid;
    std::vector<double> running;  // average L_bar_T over cells
};

NetworkRun loss_series_by_time(const std::vector<CellTrace>& traces,
                               const PeriodicProfile& profile, const std::vector<double>& grid,
                               const std::vector<NoisePath>* noise_paths = nullptr);

/// First recorded point from which the relative error |v - limit| / v stays
/// below the threshold through the end of the series.
struct StageResult {
    bool reached = false;
    std::size_t index = 0;  // 1-based cycle index (by-cycle series)
    double time = 0.0;      // grid time (by-time series); 0 when every point passes
};

StageResult convergence_stage(const std::vector<double>& values, double limit,
                              double threshold = 0.10);
StageResult convergence_stage_time(const std::vector<double>& grid,
                                   const std::vector<double>& values, double limit,
                                   double threshold = 0.10);

}  // namespace periloss

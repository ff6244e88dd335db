#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "periloss/engine.hpp"
#include "periloss/theory.hpp"

namespace periloss {

/// One complete Monte Carlo study: models, utility, stopping mode, budgets.
struct StudySpec {
    enum class Mode { by_cycle, by_time };

    InterArrivalModel interarrival = InterArrivalModel::exponential(1.0);
    MaintenanceModel maintenance = MaintenanceModel::exponential(1.0);
    PeriodicProfile profile = PeriodicProfile::sinusoid(0.0, 1.0, 24.0);
    NoiseModel noise = NoiseModel::none();
    int n_cells = 1;
    Mode mode = Mode::by_cycle;
    long n_cycles = 2000;   // by_cycle budget
    double horizon = 0.0;   // by_time budget, hours
    double grid_step = 1.0; // by_time recording cadence, hours
    double threshold = 0.10;

    double limit_per_cell() const;  // E[Y] * U_bar / (E[X] + E[Y])
};

/// One replication's convergence stage: cycle count (by_cycle) or hours
/// (by_time); +infinity when the stage was never reached.
struct ReplicationResult {
    bool reached = false;
    double stat = 0.0;
    double final_value = 0.0;  // last recorded running loss
};

/// The recorded running-loss series of one replication: x is the cycle index
/// (by_cycle) or the grid time in hours (by_time).
struct SeriesOut {
    std::vector<double> x;
    std::vector<double> value;
};

SeriesOut run_series(const StudySpec& spec, std::uint64_t rep_seed);

ReplicationResult run_replication(const StudySpec& spec, std::uint64_t rep_seed);

struct ReplicationSummary {
    std::vector<double> stats;  // per replication, +inf when unreached
    double median = 0.0;
    double mean = 0.0;
    double q10 = 0.0;
    double q90 = 0.0;
    long unreached = 0;
    double final_within_threshold_frac = 0.0;
};

// Runs `reps` independent replications; replication r uses seed
// derive_seed(base_seed, r), each cell within it derive_seed(rep_seed, cell),
// and noise paths derive_seed(rep_seed, 1000000 + cell). The result is
// bit-identical for a fixed base seed regardless of thread count.
ReplicationSummary replicate(const StudySpec& spec, int reps, std::uint64_t base_seed,
                             int threads = 1);

/// Synthetic data fixtures used by the estimation round-trip checks.
struct TicketFixtureSpec {
    double lambda_pooled = 12.6;  // network-wide arrivals per hour
    double mu = 0.47;             // repair rate, per hour
    int n_cells = 660;
    long n_tickets = 10000;
    double unresolved_frac = 0.0;
    std::int64_t t0 = 1704067200;  // 2024-01-01T00:00:00Z
};

void write_ticket_fixture(const std::string& path, const TicketFixtureSpec& spec,
                          std::uint64_t seed);

// Hourly KPI rows for n_cells cells over n_hours, traffic = profile(hour of
// week) plus N(0, sigma) clipped at zero.
void write_kpi_fixture(const std::string& path, const PeriodicProfile& profile, int n_cells,
                       int n_hours, double sigma, std::uint64_t seed,
                       std::int64_t t0 = 1704067200);

}  // namespace periloss

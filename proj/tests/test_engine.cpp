#include <doctest.h>

#include <cmath>

#include "periloss/engine.hpp"

using namespace periloss;

namespace {

CellTrace fixed_trace(const std::vector<std::pair<double, double>>& cycles) {
    CellTrace t;
    double end = 0.0;
    for (const auto& [x, y] : cycles) {
        end += x + y;
        t.cycles.push_back(Cycle{x, y, end});
    }
    return t;
}

}  // namespace

TEST_CASE("simulation alternates and is reproducible from the seed") {
    const InterArrivalModel up = InterArrivalModel::exponential(0.019);
    const MaintenanceModel down = MaintenanceModel::exponential(0.47);
    Rng r1 = make_rng(555), r2 = make_rng(555);
    const CellTrace a = simulate_cell(up, down, StopRule::cycles(200), r1);
    const CellTrace b = simulate_cell(up, down, StopRule::cycles(200), r2);
    REQUIRE(a.cycles.size() == 200);
    REQUIRE(b.cycles.size() == 200);
    double prev_end = 0.0;
    for (std::size_t i = 0; i < a.cycles.size(); ++i) {
        CHECK(a.cycles[i].up > 0.0);
        CHECK(a.cycles[i].down > 0.0);
        CHECK(a.cycles[i].end ==
              doctest::Approx(prev_end + a.cycles[i].up + a.cycles[i].down));
        prev_end = a.cycles[i].end;
        CHECK(a.cycles[i].end == b.cycles[i].end);
    }
}

TEST_CASE("horizon stop covers the horizon with the last cycle") {
    const InterArrivalModel up = InterArrivalModel::exponential(0.1);
    const MaintenanceModel down = MaintenanceModel::exponential(1.0);
    Rng rng = make_rng(9);
    const CellTrace t = simulate_cell(up, down, StopRule::by_horizon(500.0), rng);
    CHECK(t.horizon == 500.0);
    CHECK(t.cycles.back().end >= 500.0);
}

TEST_CASE("constant utility reduces the per-cycle loss to scaled downtime") {
    const double K = 3.5;
    const PeriodicProfile u = PeriodicProfile::sinusoid(0.0, K, 24.0);
    const CellTrace t = fixed_trace({{10.0, 2.0}, {5.0, 1.5}, {20.0, 0.25}});
    const LossSeries s = loss_series_by_cycle(t, u);
    REQUIRE(s.per_cycle.size() == 3);
    CHECK(s.per_cycle[0] == doctest::Approx(K * 2.0).epsilon(1e-10));
    CHECK(s.per_cycle[1] == doctest::Approx(K * 1.5).epsilon(1e-10));
    CHECK(s.per_cycle[2] == doctest::Approx(K * 0.25).epsilon(1e-10));
    // running average: K * cumulative downtime / elapsed time
    CHECK(s.running_by_cycle[2] ==
          doctest::Approx(K * (2.0 + 1.5 + 0.25) / t.cycles.back().end).epsilon(1e-10));
}

TEST_CASE("single-cycle sinusoid loss matches the antiderivative") {
    // x=10, y=2, U(t) = 1.75 sin(2 pi t / 24) + 3: integral over [10, 12]
    const PeriodicProfile u = PeriodicProfile::sinusoid(1.75, 3.0, 24.0);
    const CellTrace t = fixed_trace({{10.0, 2.0}});
    const LossSeries s = loss_series_by_cycle(t, u);
    CHECK(s.per_cycle[0] == doctest::Approx(6.895554207930793).epsilon(1e-7));
}

TEST_CASE("cumulative loss clips the straddled down interval") {
    const double K = 2.0;
    const PeriodicProfile u = PeriodicProfile::sinusoid(0.0, K, 24.0);
    const CellTrace t = fixed_trace({{4.0, 2.0}, {4.0, 2.0}});
    const std::vector<double> grid = {1.0, 5.0, 6.0, 9.0, 11.0, 12.0, 50.0};
    const std::vector<double> c = cumulative_loss(t, u, nullptr, grid);
    CHECK(c[0] == doctest::Approx(0.0));
    CHECK(c[1] == doctest::Approx(K * 1.0));  // one hour into the first repair
    CHECK(c[2] == doctest::Approx(K * 2.0));
    CHECK(c[3] == doctest::Approx(K * 2.0));
    CHECK(c[4] == doctest::Approx(K * 3.0));
    CHECK(c[5] == doctest::Approx(K * 4.0));
    CHECK(c[6] == doctest::Approx(K * 4.0));
}

TEST_CASE("network series with identical traces equals the single-cell series") {
    const PeriodicProfile u = PeriodicProfile::sinusoid(1.0, 2.0, 24.0);
    CellTrace t = fixed_trace({{4.0, 2.0}, {10.0, 1.0}, {6.0, 3.0}});
    t.horizon = 26.0;
    const std::vector<double> grid = {5.0, 10.0, 20.0, 26.0};
    const NetworkRun one = loss_series_by_time({t}, u, grid);
    const NetworkRun many = loss_series_by_time({t, t, t, t}, u, grid);
    REQUIRE(one.running.size() == many.running.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(many.running[i] == doctest::Approx(one.running[i]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(loss_series_by_time({t}, u, {30.0}), std::invalid_argument);
}

TEST_CASE("convergence stage scans for persistent sub-threshold error") {
    const double L = 5.0;
    SUBCASE("identically at the limit") {
        const StageResult r = convergence_stage({L, L, L}, L);
        CHECK(r.reached);
        CHECK(r.index == 1);
    }
    SUBCASE("algebraic 1/n envelope crosses at n = 10") {
        // 1/n < t (1 + 1/n) first holds at n = 10 for t = 0.1
        std::vector<double> v;
        for (int n = 1; n <= 100; ++n) v.push_back(1.0 + 1.0 / n);
        const StageResult r = convergence_stage(v, 1.0, 0.10);
        CHECK(r.reached);
        CHECK(r.index == 10);
    }
    SUBCASE("tail violation means not reached") {
        const StageResult r = convergence_stage({L, L, 2.0 * L}, L);
        CHECK_FALSE(r.reached);
    }
    SUBCASE("time variant reports the grid time") {
        const std::vector<double> grid = {1.0, 2.0, 3.0, 4.0};
        const std::vector<double> vals = {9.0, 9.0, 5.2, 5.1};
        const StageResult r = convergence_stage_time(grid, vals, L);
        CHECK(r.reached);
        CHECK(r.time == doctest::Approx(3.0));
        const StageResult all = convergence_stage_time(grid, {L, L, L, L}, L);
        CHECK(all.reached);
        CHECK(all.time == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(convergence_stage({1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(convergence_stage({}, 1.0), std::invalid_argument);
}

TEST_CASE("loss bounded by the utility bound") {
    const PeriodicProfile u = PeriodicProfile::sinusoid(1.75, 3.0, 24.0);
    const InterArrivalModel up = InterArrivalModel::exponential(0.019);
    const MaintenanceModel down = MaintenanceModel::exponential(0.47);
    Rng rng = make_rng(31);
    const CellTrace t = simulate_cell(up, down, StopRule::cycles(500), rng);
    const LossSeries s = loss_series_by_cycle(t, u);
    for (double v : s.running_by_cycle) {
        CHECK(v >= 0.0);
        CHECK(v <= u.bound());
    }
}

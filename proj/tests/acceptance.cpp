// Acceptance gate: one line per criterion, evaluated against pinned
// tolerances. The binary exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "periloss/estimate.hpp"
#include "periloss/study.hpp"

using namespace periloss;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d: %s — %s (%s)\n", id, pass ? "PASS" : "FAIL", what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

fs::path work_dir() {
    const fs::path p = fs::temp_directory_path() / "periloss_acceptance";
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ACCEPTANCE_CLI_PATH) + " " + args;
    return std::system(cmd.c_str());
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    json j;
    in >> j;
    return j;
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int hw_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 2 : static_cast<int>(n);
}

StudySpec paper_single_cell() {
    StudySpec spec;
    spec.interarrival = InterArrivalModel::exponential(0.019);
    spec.maintenance = MaintenanceModel::exponential(0.47);
    spec.profile = PeriodicProfile::sinusoid(1.75, 3.0, 24.0);
    spec.n_cells = 1;
    spec.mode = StudySpec::Mode::by_cycle;
    spec.n_cycles = 2000;
    return spec;
}

StudySpec paper_network(int cells) {
    StudySpec spec = paper_single_cell();
    spec.n_cells = cells;
    spec.mode = StudySpec::Mode::by_time;
    spec.horizon = 400.0;
    spec.grid_step = 1.0;
    return spec;
}

// ---- criteria ----

void criterion_1_closed_form() {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "limit.json";
    std::ofstream(cfg) << R"({"scenario":"calibrated-limit","lambda":0.019,"mu":)"
                       << 1.0 / 2.13
                       << R"(,"amplitude":0.0,"offset":1.55,"period":24.0,"n_cells":660,)"
                       << R"("mode":"by_time","horizon_h":400.0,"seed":1})";
    const auto t0 = std::chrono::steady_clock::now();
    const int rc =
        run_cli("limit --config " + cfg.string() + " --out " + (dir / "c1").string());
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = rc == 0 && secs < 1.0;
    double limit = 0.0, fraction = 0.0;
    if (rc == 0) {
        const json j = read_json(dir / "c1" / "limit.json");
        limit = j["loss_limit"].get<double>();
        fraction = j["loss_fraction"].get<double>();
        pass = pass && limit >= 38.5 && limit <= 40.5 && fraction >= 0.037 && fraction <= 0.041;
    }
    report(1, pass, "closed-form loss limit for the calibrated 660-cell network",
           "limit=" + fmt(limit) + " GB/h in [38.5,40.5], fraction=" + fmt(fraction) +
               " in [0.037,0.041], " + fmt(secs) + " s");
}

void criterion_2_single_cell() {
    const ReplicationSummary s = replicate(paper_single_cell(), 100, 20240601, hw_threads());
    const bool pass = s.unreached == 0 && s.median >= 200.0 && s.median <= 600.0;
    report(2, pass, "single-cell convergence stage over 100 replications",
           "median n*=" + fmt(s.median) + " in [200,600], q10=" + fmt(s.q10) +
               ", q90=" + fmt(s.q90) + ", unreached=" + std::to_string(s.unreached));
}

double g_clean_660_median = 0.0;

void criterion_3_network() {
    const ReplicationSummary big = replicate(paper_network(660), 20, 20240602, hw_threads());
    g_clean_660_median = big.median;
    const ReplicationSummary small = replicate(paper_network(100), 20, 20240603, hw_threads());
    const bool pass = big.unreached == 0 && big.median >= 20.0 && big.median <= 80.0 &&
                      std::isfinite(small.median) && small.median <= 336.0;
    report(3, pass, "network convergence stage (660 and 100 cells)",
           "median T* 660-cell=" + fmt(big.median) + " h in [20,80], unreached=" +
               std::to_string(big.unreached) + "; 100-cell=" + fmt(small.median) +
               " h <= 336, unreached=" + std::to_string(small.unreached));
}

void criterion_4_noise() {
    StudySpec spec = paper_network(660);
    spec.noise = NoiseModel::ou(1.0, 0.01, 0.1);
    const ReplicationSummary s = replicate(spec, 20, 20240602, hw_threads());
    const double rel = std::abs(s.median - g_clean_660_median) / g_clean_660_median;
    const bool pass = s.unreached == 0 && rel < 0.25;
    report(4, pass, "OU-corrupted utility leaves the convergence speed similar",
           "noisy median T*=" + fmt(s.median) + " h vs clean " + fmt(g_clean_660_median) +
               " h, rel diff=" + fmt(rel) + " < 0.25");
}

void criterion_5_geometric_bound() {
    const FourierBound fb = fourier_bound_exponential(10.0, 1.0);
    const double grid_error = 0.02;  // 4096-bin measurement tolerance
    const WrappedDensity base = wrap_density(exponential_density(10.0), 1.0, 4096);
    WrappedDensity cur = base;
    bool pass = true;
    std::string violations;
    for (int j = 1; j <= 30; ++j) {
        if (j > 1) cur = convolve_mod_p(cur, base);
        const double measured = sup_distance_to_uniform(cur);
        const double bound = fb.constant * std::pow(fb.alpha, j) / 1.0;
        if (measured > bound + grid_error) {
            pass = false;
            if (!violations.empty()) violations += " ";
            violations += "j=" + std::to_string(j) + ":" + fmt(measured) + ">" + fmt(bound);
        }
    }
    report(5, pass, "geometric bound dominates measured wrapped-clock distances, j=1..30",
           "alpha=" + fmt(fb.alpha) + ", C=" + fmt(fb.constant) +
               (pass ? ", all j within bound + 0.02" : ", exceeded at " + violations));
}

void criterion_6_smoothing() {
    const double p = 1.0;
    const WrappedDensity gauss = wrap_density(gaussian_density(0.0, 1.0), p, 4096);
    WrappedDensity cur = wrap_density(exponential_density(10.0), p, 4096);
    std::vector<double> d = {sup_distance_to_uniform(cur)};
    for (int n = 1; n <= 10; ++n) {
        cur = convolve_mod_p(cur, gauss);
        d.push_back(sup_distance_to_uniform(cur));
    }
    bool monotone = true;
    for (std::size_t n = 1; n < d.size(); ++n) {
        if (d[n] > d[n - 1] + 1e-12) monotone = false;
    }
    const bool pass = monotone && d.back() < 0.02 / p;
    report(6, pass, "adding Gaussians smooths the wrapped density monotonically",
           "d0=" + fmt(d[0]) + ", d1=" + fmt(d[1]) + ", d10=" + fmt(d.back()) + " < " +
               fmt(0.02 / p));
}

void criterion_7_mean_loss() {
    const StudySpec spec = paper_single_cell();
    Rng rng = make_rng(derive_seed(777, 0));
    const CellTrace trace =
        simulate_cell(spec.interarrival, spec.maintenance, StopRule::cycles(10000), rng);
    const LossSeries series = loss_series_by_cycle(trace, spec.profile);
    double sum = 0.0;
    long n = 0;
    for (std::size_t j = 100; j < series.per_cycle.size(); ++j) {
        sum += series.per_cycle[j];
        ++n;
    }
    const double target = (1.0 / 0.47) * 3.0;  // E[Y] * U_bar
    const double mean = sum / n;
    const bool pass = std::abs(mean - target) / target < 0.05;
    report(7, pass, "per-cycle loss mean matches E[Y]*U_bar past the transient",
           "mean I_j (j>100)=" + fmt(mean) + " vs " + fmt(target) + ", rel err=" +
               fmt(std::abs(mean - target) / target) + " < 0.05");
}

void criterion_8_variance_bound() {
    const StudySpec spec = paper_single_cell();
    const FourierBound fb = fourier_bound_exponential(0.019, 24.0);
    const double wrapped_sup = 0.019 / (1.0 - std::exp(-0.019 * 24.0));
    const BoundInputs bi = make_bound_inputs(fb, 24.0, wrapped_sup, (1.0 / 0.47) * 3.0, 4.75,
                                             2.0 / (0.47 * 0.47));
    const std::vector<long> ns = {10, 100, 1000};
    std::vector<std::vector<double>> means(ns.size());
    for (int rep = 0; rep < 200; ++rep) {
        Rng rng = make_rng(derive_seed(424242, rep));
        const CellTrace trace =
            simulate_cell(spec.interarrival, spec.maintenance, StopRule::cycles(1000), rng);
        const LossSeries series = loss_series_by_cycle(trace, spec.profile);
        double sum = 0.0;
        std::size_t next = 0;
        for (std::size_t j = 0; j < series.per_cycle.size(); ++j) {
            sum += series.per_cycle[j];
            if (next < ns.size() && static_cast<long>(j + 1) == ns[next]) {
                means[next].push_back(sum / static_cast<double>(ns[next]));
                ++next;
            }
        }
    }
    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        double m = 0.0;
        for (double v : means[i]) m += v;
        m /= means[i].size();
        double var = 0.0;
        for (double v : means[i]) var += (v - m) * (v - m);
        var /= (means[i].size() - 1);
        const double bound = variance_upper_bound(ns[i], bi);
        if (var > bound) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += "n=" + std::to_string(ns[i]) + ": " + fmt(var) + " <= " + fmt(bound);
    }
    report(8, pass, "empirical variance of the running loss stays below the bound", detail);
}

void criterion_9_round_trip() {
    const fs::path path = work_dir() / "tickets_acceptance.csv";
    TicketFixtureSpec fixture;
    fixture.lambda_pooled = 12.6;
    fixture.mu = 0.47;
    fixture.n_cells = 660;
    fixture.n_tickets = 10000;
    write_ticket_fixture(path.string(), fixture, 20240604);
    const IngestResult data = ingest_tickets(path.string());
    const FitReport fit = fit_interarrival(data.tickets, 660);
    const MaintenanceStats stats = maintenance_stats(data.tickets);
    const double lam_err = std::abs(fit.lambda_hat - 12.6) / 12.6;
    const double ey_err = std::abs(stats.mean_y - 1.0 / 0.47) / (1.0 / 0.47);
    const double per_cell_err = std::abs(fit.per_cell_lambda - 12.6 / 660.0) / (12.6 / 660.0);
    const bool pass = lam_err < 0.02 && ey_err < 0.02 && per_cell_err < 0.02;
    report(9, pass, "estimation round-trip on engine-generated tickets",
           "lambda_hat=" + fmt(fit.lambda_hat) + " (err " + fmt(lam_err) + "), E[Y]=" +
               fmt(stats.mean_y) + " (err " + fmt(ey_err) + "), per-cell=" +
               fmt(fit.per_cell_lambda));
}

void criterion_10_determinism() {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "det.json";
    std::ofstream(cfg)
        << R"({"scenario":"det","lambda":0.019,"mu":0.47,"amplitude":1.75,"offset":3.0,)"
        << R"("period":24.0,"n_cells":1,"mode":"by_cycle","n_cycles":500,"reps":5,"seed":77})";
    const int rc1 = run_cli("simulate --config " + cfg.string() + " --out " +
                            (dir / "det_a").string() + " --threads 4");
    const int rc2 = run_cli("simulate --config " + cfg.string() + " --out " +
                            (dir / "det_b").string() + " --threads 1");
    bool pass = rc1 == 0 && rc2 == 0;
    for (const char* f : {"series.csv", "replications.csv", "summary.json"}) {
        if (read_bytes(dir / "det_a" / f) != read_bytes(dir / "det_b" / f)) pass = false;
    }
    const int rl1 =
        run_cli("limit --config " + cfg.string() + " --out " + (dir / "det_c").string());
    const int rl2 =
        run_cli("limit --config " + cfg.string() + " --out " + (dir / "det_d").string());
    pass = pass && rl1 == 0 && rl2 == 0 &&
           read_bytes(dir / "det_c" / "limit.json") == read_bytes(dir / "det_d" / "limit.json");
    report(10, pass, "identical config and seed give byte-identical outputs",
           pass ? "simulate (across thread counts) and limit reports identical"
                : "outputs differ");
}

}  // namespace

int main() {
    criterion_1_closed_form();
    criterion_2_single_cell();
    criterion_3_network();
    criterion_4_noise();
    criterion_5_geometric_bound();
    criterion_6_smoothing();
    criterion_7_mean_loss();
    criterion_8_variance_bound();
    criterion_9_round_trip();
    criterion_10_determinism();
    if (g_failures > 0) {
        std::printf("%d of 10 criteria failed\n", g_failures);
    } else {
        std::printf("all 10 criteria passed\n");
    }
    return g_failures;
}

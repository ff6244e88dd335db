// periloss: reliability-loss studies for networks with periodic demand.
//
// Subcommands: limit, simulate, bounds, fit, smoothing. Every JSON report
// embeds the input hash, the seed and the artifact version; identical inputs
// produce byte-identical outputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "periloss/config.hpp"
#include "periloss/estimate.hpp"
#include "periloss/study.hpp"
#include "periloss/version.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace periloss;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitBudget = 4;

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setfill('0') << std::setw(16) << v;
    return os.str();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int reps = 0;
    int threads = 1;
};

void attach_common(CLI::App* cmd, CommonOpts& opts, bool needs_config) {
    auto* c = cmd->add_option("--config", opts.config_path, "study configuration (JSON)");
    if (needs_config) c->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "base seed (overrides the config)")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--reps", opts.reps, "replication count (overrides the config)");
    cmd->add_option("--threads", opts.threads, "worker threads for replications");
}

json report_header(const StudyConfig& cfg, const std::string& config_path, std::uint64_t seed) {
    json j;
    j["version"] = kVersion;
    j["config_hash"] = hex64(config_hash(config_path));
    j["seed"] = seed;
    j["scenario"] = cfg.scenario;
    return j;
}

double config_mean_x(const StudyConfig& cfg) {
    if (cfg.interarrival_kind == "exponential") return 1.0 / cfg.lambda;
    return 0.5 * (cfg.uniform_lo + cfg.uniform_hi);
}

double config_mean_y(const StudyConfig& cfg) {
    if (cfg.maintenance_kind == "instant") return 0.0;
    if (cfg.maintenance_kind == "exponential") return 1.0 / cfg.mu;
    return std::exp(cfg.lognormal_mu + 0.5 * cfg.lognormal_sigma * cfg.lognormal_sigma);
}

double config_e_y2(const StudyConfig& cfg) {
    if (cfg.maintenance_kind == "instant") return 0.0;
    if (cfg.maintenance_kind == "exponential") return 2.0 / (cfg.mu * cfg.mu);
    return std::exp(2.0 * cfg.lognormal_mu + 2.0 * cfg.lognormal_sigma * cfg.lognormal_sigma);
}

int cmd_limit(const CommonOpts& opts) {
    const StudyConfig cfg = load_config(opts.config_path);
    const std::uint64_t seed = opts.seed_set ? opts.seed : cfg.seed;
    const double mean_x = config_mean_x(cfg);
    const double mean_y = config_mean_y(cfg);
    const double u_bar = cfg.offset;  // sinusoid period-average
    const double dl = mean_y / (mean_x + mean_y);
    json j = report_header(cfg, opts.config_path, seed);
    j["inputs"]["mean_x_h"] = mean_x;
    j["inputs"]["mean_y_h"] = mean_y;
    j["inputs"]["u_bar"] = u_bar;
    j["inputs"]["n_cells"] = cfg.n_cells;
    j["loss_limit"] = cfg.n_cells * mean_y * u_bar / (mean_x + mean_y);
    j["loss_limit_per_cell"] = mean_y * u_bar / (mean_x + mean_y);
    j["availability"] = mean_x / (mean_x + mean_y);
    j["delta"] = dl;
    j["loss_fraction"] = dl;
    j["i_bar"] = mean_y * u_bar;
    write_json(std::filesystem::path(opts.out_dir) / "limit.json", j);
    return kExitOk;
}

int cmd_simulate(const CommonOpts& opts) {
    const StudyConfig cfg = load_config(opts.config_path);
    const StudySpec spec = make_study_spec(cfg);
    const std::uint64_t seed = opts.seed_set ? opts.seed : cfg.seed;
    const int reps = opts.reps > 0 ? opts.reps : cfg.reps;
    const ReplicationSummary summary = replicate(spec, reps, seed, opts.threads);

    const std::filesystem::path out(opts.out_dir);
    const bool by_cycle = spec.mode == StudySpec::Mode::by_cycle;

    const SeriesOut series = run_series(spec, derive_seed(seed, 0));
    std::ostringstream scsv;
    scsv << (by_cycle ? "cycle" : "time_h") << ",running_loss\n";
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        scsv << fmt(series.x[i]) << "," << fmt(series.value[i]) << "\n";
    }
    write_text(out / "series.csv", scsv.str());

    std::ostringstream rcsv;
    rcsv << "replication," << (by_cycle ? "n_star" : "t_star_h") << ",reached\n";
    for (std::size_t r = 0; r < summary.stats.size(); ++r) {
        const bool reached = std::isfinite(summary.stats[r]);
        rcsv << r << "," << (reached ? fmt(summary.stats[r]) : std::string("")) << ","
             << (reached ? 1 : 0) << "\n";
    }
    write_text(out / "replications.csv", rcsv.str());

    json j = report_header(cfg, opts.config_path, seed);
    j["mode"] = by_cycle ? "by_cycle" : "by_time";
    j["reps"] = reps;
    j["threshold"] = spec.threshold;
    j["loss_limit_per_cell"] = spec.limit_per_cell();
    j["stage"]["median"] = finite_or_null(summary.median);
    j["stage"]["mean"] = finite_or_null(summary.mean);
    j["stage"]["q10"] = finite_or_null(summary.q10);
    j["stage"]["q90"] = finite_or_null(summary.q90);
    j["unreached"] = summary.unreached;
    j["final_within_threshold_frac"] = summary.final_within_threshold_frac;
    write_json(out / "summary.json", j);

    if (summary.unreached == reps) {
        std::cerr << "simulate: no replication reached the convergence stage within the budget\n";
        return kExitBudget;
    }
    return kExitOk;
}

int cmd_bounds(const CommonOpts& opts) {
    const StudyConfig cfg = load_config(opts.config_path);
    const std::uint64_t seed = opts.seed_set ? opts.seed : cfg.seed;
    const double p = cfg.period;

    const FourierBound fb = fourier_bound_exponential(cfg.lambda, p);
    const FourierBound fb_gen = fourier_bound_general(exponential_density(cfg.lambda), p);
    const FourierBound fb_uni = fourier_bound_general(uniform_density(0.0, p), p);

    const double mean_y = config_mean_y(cfg);
    const double u_bar = cfg.offset;
    const double k_bound = cfg.offset + cfg.amplitude;
    const double wrapped_sup = cfg.lambda / (1.0 - std::exp(-cfg.lambda * p));
    const BoundInputs bi = make_bound_inputs(fb, p, wrapped_sup, i_bar(mean_y, u_bar), k_bound,
                                             config_e_y2(cfg));

    json j = report_header(cfg, opts.config_path, seed);
    j["alpha"] = fb.alpha;
    j["fourier_c"] = fb.constant;
    j["alpha_general_path"] = fb_gen.alpha;
    j["fourier_c_general_path"] = fb_gen.constant;
    j["alpha_cross_check_abs_diff"] = std::abs(fb.alpha - fb_gen.alpha);
    j["alpha_uniform_density"] = fb_uni.alpha;
    json tb = json::array();
    for (int jj = 1; jj <= 30; ++jj) tb.push_back(theorem1_bound(jj, fb, p));
    j["wrapped_sup_bounds"] = tb;
    for (long n : {10L, 100L, 1000L}) {
        j["variance_bounds"][std::to_string(n)] = variance_upper_bound(n, bi);
    }
    for (int k : {1, 5, 20}) {
        const double geo = covariance_upper_bound(k, k, bi);
        const double triv = covariance_trivial_bound(bi);
        json c;
        c["j"] = k;
        c["k"] = k;
        c["geometric"] = geo;
        c["trivial"] = triv;
        c["active"] = geo <= triv ? "geometric" : "trivial";
        c["bound"] = std::min(geo, triv);
        j["covariance_bounds"].push_back(c);
    }
    const std::filesystem::path out(opts.out_dir);
    write_json(out / "bounds.json", j);

    std::ostringstream grid;
    grid << "lambda,period,alpha\n";
    const std::vector<double> lambdas = {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1, 2, 5, 10, 20};
    const std::vector<double> periods = {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 40, 48};
    for (double l : lambdas) {
        for (double pp : periods) {
            grid << fmt(l) << "," << fmt(pp) << ","
                 << fmt(fourier_bound_exponential(l, pp).alpha) << "\n";
        }
    }
    write_text(out / "alpha_grid.csv", grid.str());
    return kExitOk;
}

int cmd_fit(const std::string& tickets_path, const std::string& kpi_path, int n_cells,
            const std::string& out_dir, double window_h, double step_h, const std::string& fold) {
    const IngestResult data = ingest_tickets(tickets_path);
    const FitReport fit = fit_interarrival(data.tickets, n_cells);
    const MaintenanceStats stats = maintenance_stats(data.tickets);
    const std::filesystem::path out(out_dir);

    json j;
    j["version"] = kVersion;
    j["config_hash"] = hex64(config_hash(tickets_path));
    j["seed"] = 0;
    j["n_cells"] = n_cells;
    j["n_tickets"] = data.tickets.size();
    j["n_malformed"] = data.malformed.size();
    j["n_unresolved"] = data.unresolved;
    j["lambda_hat"] = fit.lambda_hat;
    j["per_cell_lambda"] = fit.per_cell_lambda;
    j["ks_statistic"] = fit.ks_statistic;
    j["ks_threshold_05"] = fit.ks_threshold_05;
    j["ks_pass"] = fit.ks_statistic < fit.ks_threshold_05;
    j["mean_y_h"] = stats.mean_y;
    j["e_y2"] = stats.e_y2;

    std::ostringstream hist;
    hist << "bin_lo_h,bin_hi_h,count\n";
    for (std::size_t b = 0; b + 1 < stats.hist_edges.size(); ++b) {
        hist << fmt(stats.hist_edges[b]) << "," << fmt(stats.hist_edges[b + 1]) << ","
             << stats.hist_counts[b] << "\n";
    }
    write_text(out / "maintenance_hist.csv", hist.str());

    if (!kpi_path.empty()) {
        const std::vector<KpiRecord> kpi = ingest_kpi(kpi_path);
        const WeeklyProfileResult wp =
            weekly_profile(kpi, fold == "daily" ? ProfileFold::daily : ProfileFold::weekly);
        j["u_bar"] = wp.u_bar;
        j["imputed_slots"] = wp.imputed_slots.size();
        const double mean_x = 1.0 / fit.per_cell_lambda;
        j["loss_limit"] =
            n_cells * stats.mean_y * wp.u_bar / (mean_x + stats.mean_y);
        j["delta"] = stats.mean_y / (mean_x + stats.mean_y);
        std::ostringstream prof;
        prof << "slot,mean_gb,imputed\n";
        const auto& vals = wp.profile.values();
        for (std::size_t s = 0; s < vals.size(); ++s) {
            const bool imp = std::find(wp.imputed_slots.begin(), wp.imputed_slots.end(),
                                       static_cast<int>(s)) != wp.imputed_slots.end();
            prof << s << "," << fmt(vals[s]) << "," << (imp ? 1 : 0) << "\n";
        }
        write_text(out / "weekly_profile.csv", prof.str());
    }

    const std::vector<DeltaPoint> rd = rolling_delta(data, window_h, step_h);
    std::ostringstream rdc;
    rdc << "window_start_h,delta,n_cycles\n";
    for (const DeltaPoint& d : rd) {
        rdc << fmt(d.window_start_h) << "," << fmt(d.delta) << "," << d.n_cycles << "\n";
    }
    write_text(out / "rolling_delta.csv", rdc.str());

    write_json(out / "fit.json", j);
    return kExitOk;
}

int cmd_smoothing(double period, int bins, int gaussians, double rate,
                  const std::string& out_dir) {
    std::vector<WrappedDensity> densities;
    densities.push_back(wrap_density(exponential_density(rate), period, bins));
    const WrappedDensity gauss = wrap_density(gaussian_density(0.0, 1.0), period, bins);
    for (int n = 1; n <= gaussians; ++n) {
        densities.push_back(convolve_mod_p(densities.back(), gauss));
    }
    const std::filesystem::path out(out_dir);
    std::ostringstream csv;
    csv << "x";
    for (int n = 0; n <= gaussians; ++n) csv << ",n" << n;
    csv << "\n";
    const double w = densities.front().bin_width();
    for (int b = 0; b < bins; ++b) {
        csv << fmt((b + 0.5) * w);
        for (const WrappedDensity& d : densities) csv << "," << fmt(d.values[b]);
        csv << "\n";
    }
    write_text(out / "smoothing.csv", csv.str());

    std::ostringstream dist;
    dist << "n_gaussians,sup_distance\n";
    for (int n = 0; n <= gaussians; ++n) {
        dist << n << "," << fmt(sup_distance_to_uniform(densities[n])) << "\n";
    }
    write_text(out / "smoothing_distances.csv", dist.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"network reliability loss under periodic demand"};
    app.require_subcommand(1);

    CommonOpts limit_opts, sim_opts, bounds_opts;
    auto* limit = app.add_subcommand("limit", "closed-form long-run loss report");
    attach_common(limit, limit_opts, true);
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo convergence study");
    attach_common(simulate, sim_opts, true);
    auto* bounds = app.add_subcommand("bounds", "geometric-rate and variance bound report");
    attach_common(bounds, bounds_opts, true);

    std::string fit_tickets, fit_kpi, fit_out = "out", fit_fold = "weekly";
    int fit_cells = 1;
    double fit_window = 336.0, fit_step = 24.0;
    auto* fit = app.add_subcommand("fit", "estimate model parameters from ticket/KPI data");
    fit->add_option("--tickets", fit_tickets, "tickets.csv path")->required();
    fit->add_option("--kpi", fit_kpi, "kpi.csv path (optional)");
    fit->add_option("--cells", fit_cells, "number of cells in the network")->required();
    fit->add_option("--out", fit_out, "output directory");
    fit->add_option("--window", fit_window, "rolling window, hours");
    fit->add_option("--step", fit_step, "rolling step, hours");
    fit->add_option("--fold", fit_fold, "profile fold: weekly or daily");

    double sm_period = 1.0, sm_rate = 10.0;
    int sm_bins = 4096, sm_gauss = 10;
    std::string sm_out = "out";
    auto* smoothing = app.add_subcommand("smoothing", "wrapped-density smoothing series");
    smoothing->add_option("--period", sm_period, "wrap period");
    smoothing->add_option("--bins", sm_bins, "density grid bins");
    smoothing->add_option("--gaussians", sm_gauss, "number of added standard Gaussians");
    smoothing->add_option("--rate", sm_rate, "exponential rate of the base variable");
    smoothing->add_option("--out", sm_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (limit->parsed()) return cmd_limit(limit_opts);
        if (simulate->parsed()) return cmd_simulate(sim_opts);
        if (bounds->parsed()) return cmd_bounds(bounds_opts);
        if (fit->parsed()) {
            return cmd_fit(fit_tickets, fit_kpi, fit_cells, fit_out, fit_window, fit_step,
                           fit_fold);
        }
        if (smoothing->parsed()) {
            return cmd_smoothing(sm_period, sm_bins, sm_gauss, sm_rate, sm_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}

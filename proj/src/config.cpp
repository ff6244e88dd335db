#include "periloss/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace periloss {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
}

double get_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) fail(key, "expected a number");
    return j[key].get<double>();
}

long get_integer(const json& j, const std::string& key, long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) fail(key, "expected an integer");
    return j[key].get<long>();
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) fail(key, "expected a string");
    return j[key].get<std::string>();
}

}  // namespace

StudyConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a single JSON object");
    static const std::set<std::string> known = {
        "scenario",       "interarrival_kind", "lambda",        "uniform_lo",
        "uniform_hi",     "maintenance_kind",  "mu",            "lognormal_mu",
        "lognormal_sigma", "profile_kind",     "amplitude",     "offset",
        "period",         "noise_kind",        "theta",         "sigma",
        "noise_dt",       "n_cells",           "mode",          "n_cycles",
        "horizon_h",      "grid_step_h",       "threshold",     "reps",
        "seed",           "out_dir"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) fail(it.key(), "unknown key");
    }
    StudyConfig cfg;
    cfg.scenario = get_string(j, "scenario", cfg.scenario);
    cfg.interarrival_kind = get_string(j, "interarrival_kind", cfg.interarrival_kind);
    if (cfg.interarrival_kind != "exponential" && cfg.interarrival_kind != "uniform") {
        fail("interarrival_kind", "must be 'exponential' or 'uniform'");
    }
    cfg.lambda = get_number(j, "lambda", cfg.lambda);
    if (cfg.lambda <= 0.0) fail("lambda", "must be > 0");
    cfg.uniform_lo = get_number(j, "uniform_lo", cfg.uniform_lo);
    cfg.uniform_hi = get_number(j, "uniform_hi", cfg.uniform_hi);
    if (cfg.interarrival_kind == "uniform" &&
        (cfg.uniform_lo < 0.0 || cfg.uniform_hi <= cfg.uniform_lo)) {
        fail("uniform_hi", "need 0 <= uniform_lo < uniform_hi");
    }
    cfg.maintenance_kind = get_string(j, "maintenance_kind", cfg.maintenance_kind);
    if (cfg.maintenance_kind != "exponential" && cfg.maintenance_kind != "lognormal" &&
        cfg.maintenance_kind != "instant") {
        fail("maintenance_kind", "must be 'exponential', 'lognormal' or 'instant'");
    }
    cfg.mu = get_number(j, "mu", cfg.mu);
    if (cfg.maintenance_kind == "exponential" && cfg.mu <= 0.0) fail("mu", "must be > 0");
    cfg.lognormal_mu = get_number(j, "lognormal_mu", cfg.lognormal_mu);
    cfg.lognormal_sigma = get_number(j, "lognormal_sigma", cfg.lognormal_sigma);
    if (cfg.maintenance_kind == "lognormal" && cfg.lognormal_sigma <= 0.0) {
        fail("lognormal_sigma", "must be > 0");
    }
    cfg.profile_kind = get_string(j, "profile_kind", cfg.profile_kind);
    if (cfg.profile_kind != "sinusoid") fail("profile_kind", "must be 'sinusoid'");
    cfg.amplitude = get_number(j, "amplitude", cfg.amplitude);
    cfg.offset = get_number(j, "offset", cfg.offset);
    cfg.period = get_number(j, "period", cfg.period);
    if (cfg.amplitude < 0.0) fail("amplitude", "must be >= 0");
    if (cfg.offset < cfg.amplitude) fail("offset", "must be >= amplitude (non-negative utility)");
    if (cfg.period <= 0.0) fail("period", "must be > 0");
    cfg.noise_kind = get_string(j, "noise_kind", cfg.noise_kind);
    if (cfg.noise_kind != "none" && cfg.noise_kind != "white" && cfg.noise_kind != "ou") {
        fail("noise_kind", "must be 'none', 'white' or 'ou'");
    }
    cfg.theta = get_number(j, "theta", cfg.theta);
    cfg.sigma = get_number(j, "sigma", cfg.sigma);
    cfg.noise_dt = get_number(j, "noise_dt", cfg.noise_dt);
    if (cfg.noise_kind == "ou" && cfg.theta <= 0.0) fail("theta", "must be > 0");
    if (cfg.noise_kind != "none" && cfg.sigma < 0.0) fail("sigma", "must be >= 0");
    if (cfg.noise_kind != "none" && cfg.noise_dt <= 0.0) fail("noise_dt", "must be > 0");
    cfg.n_cells = static_cast<int>(get_integer(j, "n_cells", cfg.n_cells));
    if (cfg.n_cells < 1) fail("n_cells", "must be >= 1");
    cfg.mode = get_string(j, "mode", cfg.mode);
    if (cfg.mode != "by_cycle" && cfg.mode != "by_time") {
        fail("mode", "must be 'by_cycle' or 'by_time'");
    }
    cfg.n_cycles = get_integer(j, "n_cycles", cfg.n_cycles);
    if (cfg.mode == "by_cycle" && cfg.n_cycles < 1) fail("n_cycles", "must be >= 1");
    if (cfg.mode == "by_cycle" && cfg.n_cells != 1) fail("n_cells", "by_cycle mode is single-cell");
    cfg.horizon_h = get_number(j, "horizon_h", cfg.horizon_h);
    cfg.grid_step_h = get_number(j, "grid_step_h", cfg.grid_step_h);
    if (cfg.mode == "by_time" && cfg.horizon_h <= 0.0) fail("horizon_h", "must be > 0");
    if (cfg.mode == "by_time" && cfg.grid_step_h <= 0.0) fail("grid_step_h", "must be > 0");
    cfg.threshold = get_number(j, "threshold", cfg.threshold);
    if (cfg.threshold <= 0.0 || cfg.threshold >= 1.0) fail("threshold", "must be in (0, 1)");
    cfg.reps = static_cast<int>(get_integer(j, "reps", cfg.reps));
    if (cfg.reps < 1) fail("reps", "must be >= 1");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            fail("seed", "expected an unsigned integer");
        }
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    cfg.out_dir = get_string(j, "out_dir", cfg.out_dir);
    return cfg;
}

StudySpec make_study_spec(const StudyConfig& cfg) {
    StudySpec spec;
    if (cfg.interarrival_kind == "exponential") {
        spec.interarrival = InterArrivalModel::exponential(cfg.lambda);
    } else {
        spec.interarrival =
            InterArrivalModel::general(uniform_density(cfg.uniform_lo, cfg.uniform_hi));
    }
    if (cfg.maintenance_kind == "instant") {
        throw ConfigError("config field 'maintenance_kind': 'instant' (E[Y]=0) only supports "
                          "limit reports, not simulation");
    }
    if (cfg.maintenance_kind == "exponential") {
        spec.maintenance = MaintenanceModel::exponential(cfg.mu);
    } else {
        spec.maintenance = MaintenanceModel::lognormal(cfg.lognormal_mu, cfg.lognormal_sigma);
    }
    spec.profile = PeriodicProfile::sinusoid(cfg.amplitude, cfg.offset, cfg.period);
    if (cfg.noise_kind == "none") {
        spec.noise = NoiseModel::none();
    } else if (cfg.noise_kind == "white") {
        spec.noise = NoiseModel::white(cfg.sigma, cfg.noise_dt);
    } else {
        spec.noise = NoiseModel::ou(cfg.theta, cfg.sigma, cfg.noise_dt);
    }
    spec.n_cells = cfg.n_cells;
    spec.mode = cfg.mode == "by_cycle" ? StudySpec::Mode::by_cycle : StudySpec::Mode::by_time;
    spec.n_cycles = cfg.n_cycles;
    spec.horizon = cfg.horizon_h;
    spec.grid_step = cfg.grid_step_h;
    spec.threshold = cfg.threshold;
    return spec;
}

std::uint64_t config_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace periloss

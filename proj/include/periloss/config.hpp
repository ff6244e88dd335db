#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "periloss/study.hpp"

namespace periloss {

/// Raised on malformed configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat, strictly validated study configuration (single JSON object, no
/// nesting, unknown keys rejected).
struct StudyConfig {
    std::string scenario = "study";
    std::string interarrival_kind = "exponential";  // exponential | uniform
    double lambda = 0.019;                          // per-cell anomalies per hour
    double uniform_lo = 0.0;                        // general-uniform support
    double uniform_hi = 1.0;
    std::string maintenance_kind = "exponential";  // exponential | lognormal
    double mu = 0.47;                              // repairs per hour
    double lognormal_mu = 0.0;
    double lognormal_sigma = 1.0;
    std::string profile_kind = "sinusoid";  // sinusoid only (sampled comes from data)
    double amplitude = 1.75;
    double offset = 3.0;
    double period = 24.0;
    std::string noise_kind = "none";  // none | white | ou
    double theta = 1.0;
    double sigma = 0.01;
    double noise_dt = 0.1;
    int n_cells = 1;
    std::string mode = "by_cycle";  // by_cycle | by_time
    long n_cycles = 2000;
    double horizon_h = 400.0;
    double grid_step_h = 1.0;
    double threshold = 0.10;
    int reps = 1;
    std::uint64_t seed = 1;
    std::string out_dir;
};

StudyConfig load_config(const std::string& path);

StudySpec make_study_spec(const StudyConfig& cfg);

// FNV-1a over the raw config file bytes; embedded in every report.
std::uint64_t config_hash(const std::string& path);

}  // namespace periloss

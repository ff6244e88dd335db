#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "periloss/rng.hpp"

namespace periloss {

/// Non-negative bounded periodic utility profile U(t), either an analytic
/// sinusoid A*sin(2*pi*t/p) + c (c >= A) or sampled slot values with linear
/// interpolation across one period.
class PeriodicProfile {
public:
    static PeriodicProfile sinusoid(double amplitude, double offset, double period);
    static PeriodicProfile sampled(std::vector<double> values, double period);

    double operator()(double t) const;
    double mean() const;
    double period() const { return period_; }
    double bound() const { return bound_; }  // K
    bool is_sinusoid() const { return sinusoid_; }
    const std::vector<double>& values() const { return values_; }

private:
    PeriodicProfile() = default;
    bool sinusoid_ = true;
    double amplitude_ = 0.0;
    double offset_ = 0.0;
    double period_ = 24.0;
    double bound_ = 0.0;
    std::vector<double> values_;
};

double eval_utility(const PeriodicProfile& profile, double t);
double mean_utility(const PeriodicProfile& profile);

/// Additive noise on top of the periodic profile: none, white Gaussian per
/// grid point, or a stationary Ornstein-Uhlenbeck process.
struct NoiseModel {
    enum class Kind { none, white, ou };
    Kind kind = Kind::none;
    double theta = 0.0;
    double sigma = 0.0;
    double dt = 0.1;  // hours

    static NoiseModel none();
    static NoiseModel white(double sigma, double dt = 0.1);
    static NoiseModel ou(double theta, double sigma, double dt = 0.1);
};

/// A realized noise path on a uniform grid, linearly interpolated between
/// grid points. Records the seed it was generated from.
struct NoisePath {
    double start = 0.0;
    double dt = 0.1;
    std::vector<double> values;
    std::uint64_t seed = 0;

    double horizon() const { return start + dt * (values.size() - 1); }
    double value_at(double t) const;
    // Exact integral of the piecewise-linear path over [a, b].
    double integral(double a, double b) const;
};

// OU paths use the exact Gauss-Markov discretization
//   B_{k+1} = B_k e^{-theta dt} + N(0, sigma^2 (1 - e^{-2 theta dt}) / (2 theta))
// started from the stationary law.
NoisePath sample_noise_path(const NoiseModel& model, double horizon, Rng& rng,
                            std::uint64_t seed_label = 0);

// U(t) + B(t); not clipped at zero. Throws if t is outside the path horizon.
double corrupted_utility(const PeriodicProfile& profile, const NoisePath& path, double t);

}  // namespace periloss

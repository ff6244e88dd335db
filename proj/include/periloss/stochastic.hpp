#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "periloss/rng.hpp"

namespace periloss {

/// A probability density with finite numeric support [lo, hi] and a known
/// sup bound. Factories truncate analytic tails so that the missing mass is
/// below 1e-12; validate() enforces nonnegativity and unit mass.
struct Density {
    std::function<double(double)> pdf;
    double lo = 0.0;
    double hi = 1.0;
    double sup_bound = 0.0;  // M such that pdf(x) <= M everywhere

    double operator()(double x) const { return x < lo || x > hi ? 0.0 : pdf(x); }
};

Density exponential_density(double rate);
Density uniform_density(double lo, double hi);
Density gaussian_density(double mean, double stddev);

// Throws std::invalid_argument if the density is negative somewhere on its
// grid, its mass deviates from 1 by more than 1e-9, or it exceeds sup_bound.
void validate_density(const Density& d);

// Numeric integral of d.pdf over [a, b] (composite Simpson).
double integrate_density(const Density& d, double a, double b);
double density_mean(const Density& d);

/// Anomaly inter-arrival law: exponential(rate) or a general bounded density.
class InterArrivalModel {
public:
    static InterArrivalModel exponential(double rate);
    static InterArrivalModel general(Density density);

    bool is_exponential() const { return exponential_; }
    double rate() const;
    const Density& density() const;
    double mean() const { return mean_; }

private:
    InterArrivalModel() = default;
    bool exponential_ = true;
    double rate_ = 0.0;
    Density density_;
    double mean_ = 0.0;
    // inverse-CDF grid for general sampling
    std::vector<double> grid_x_;
    std::vector<double> grid_cdf_;
    friend double sample_interarrival(const InterArrivalModel&, Rng&);
};

/// Repair-duration law with finite first and second moments.
class MaintenanceModel {
public:
    enum class Kind { exponential, empirical, lognormal };

    static MaintenanceModel exponential(double rate);
    static MaintenanceModel empirical(std::vector<double> samples);
    static MaintenanceModel lognormal(double mu, double sigma);

    Kind kind() const { return kind_; }
    double mean() const { return mean_; }
    double second_moment() const { return second_moment_; }

private:
    MaintenanceModel() = default;
    Kind kind_ = Kind::exponential;
    double rate_ = 0.0;
    double mu_ = 0.0;
    double sigma_ = 0.0;
    std::vector<double> samples_;
    double mean_ = 0.0;
    double second_moment_ = 0.0;
    friend double sample_maintenance(const MaintenanceModel&, Rng&);
};

double sample_interarrival(const InterArrivalModel& model, Rng& rng);
double sample_maintenance(const MaintenanceModel& model, Rng& rng);

/// Discretized density on [0, period), piecewise constant over `values.size()`
/// equal bins. (period / bins) * sum(values) must equal 1 within 1e-6.
struct WrappedDensity {
    double period = 1.0;
    std::vector<double> values;

    double bin_width() const { return period / static_cast<double>(values.size()); }
};

void validate_wrapped(const WrappedDensity& w);

/// Geometric convergence certificate: sup |f_j - 1/p| <= constant * alpha^j / p.
struct FourierBound {
    double alpha = 0.0;
    double constant = 0.0;  // C, infinite series with certified tail
    int truncation = 0;
};

// Closed-form alpha = lambda*p / sqrt(lambda^2 p^2 + 4 pi^2); C is the series
// sum_{n>=1} (lambda^2 p^2 + 4 pi^2) / (lambda^2 p^2 + 4 pi^2 n^2) evaluated
// with its exact analytic remainder, so the result does not depend on N.
FourierBound fourier_bound_exponential(double rate, double period, int truncation = 10000);

// General bounded density: alpha = max_n |g_hat(n)| with g_hat(n) the Fourier
// transform of the density at frequency n / period, computed by Filon
// (piecewise-linear) quadrature. Throws if alpha >= 1 - 1e-9.
FourierBound fourier_bound_general(const Density& density, double period,
                                   int truncation = 10000,
                                   int quadrature_bins = 1 << 16);

// Folds the density onto [0, period) by summing translates. Throws if the
// support spans more than 1e4 periods.
WrappedDensity wrap_density(const Density& density, double period, int bins = 4096);

WrappedDensity convolve_mod_p(const WrappedDensity& a, const WrappedDensity& b);
WrappedDensity self_convolve(const WrappedDensity& w, int fold);
double sup_distance_to_uniform(const WrappedDensity& w);

namespace detail {
// Both convolution routes, exposed for the cross-check tests. The public
// convolve_mod_p dispatches on size: direct O(m^2) up to 1024 bins,
// radix-2 FFT above (power-of-two bin counts).
WrappedDensity convolve_direct(const WrappedDensity& a, const WrappedDensity& b);
WrappedDensity convolve_fft(const WrappedDensity& a, const WrappedDensity& b);
void fft_radix2(std::vector<std::complex<double>>& data, bool inverse);
}  // namespace detail

}  // namespace periloss

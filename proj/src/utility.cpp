#include "periloss/utility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace periloss {

namespace {
double wrap_time(double t, double period) {
    double r = std::fmod(t, period);
    if (r < 0.0) r += period;
    return r;
}
}  // namespace

PeriodicProfile PeriodicProfile::sinusoid(double amplitude, double offset, double period) {
    if (amplitude < 0.0) throw std::invalid_argument("PeriodicProfile: amplitude must be >= 0");
    if (offset < amplitude) {
        throw std::invalid_argument("PeriodicProfile: offset must be >= amplitude");
    }
    if (period <= 0.0) throw std::invalid_argument("PeriodicProfile: period must be > 0");
    PeriodicProfile p;
    p.sinusoid_ = true;
    p.amplitude_ = amplitude;
    p.offset_ = offset;
    p.period_ = period;
    p.bound_ = offset + amplitude;
    return p;
}

PeriodicProfile PeriodicProfile::sampled(std::vector<double> values, double period) {
    if (values.empty()) throw std::invalid_argument("PeriodicProfile: empty sample vector");
    if (period <= 0.0) throw std::invalid_argument("PeriodicProfile: period must be > 0");
    double hi = 0.0;
    for (double v : values) {
        if (v < 0.0) throw std::invalid_argument("PeriodicProfile: negative sample");
        hi = std::max(hi, v);
    }
    if (hi <= 0.0) throw std::invalid_argument("PeriodicProfile: all-zero profile");
    PeriodicProfile p;
    p.sinusoid_ = false;
    p.values_ = std::move(values);
    p.period_ = period;
    p.bound_ = hi;
    return p;
}

double PeriodicProfile::operator()(double t) const {
    const double x = wrap_time(t, period_);
    if (sinusoid_) {
        return amplitude_ * std::sin(2.0 * std::numbers::pi * x / period_) + offset_;
    }
    const std::size_t n = values_.size();
    const double slot = period_ / static_cast<double>(n);
    const double pos = x / slot;
    const std::size_t k = std::min<std::size_t>(n - 1, static_cast<std::size_t>(pos));
    const double frac = pos - static_cast<double>(k);
    return values_[k] + frac * (values_[(k + 1) % n] - values_[k]);
}

double PeriodicProfile::mean() const {
    if (sinusoid_) return offset_;  // sine integrates to zero over a period
    double sum = 0.0;
    for (double v : values_) sum += v;  // trapezoid over the wrapped grid
    return sum / static_cast<double>(values_.size());
}

double eval_utility(const PeriodicProfile& profile, double t) { return profile(t); }
double mean_utility(const PeriodicProfile& profile) { return profile.mean(); }

NoiseModel NoiseModel::none() { return NoiseModel{}; }

NoiseModel NoiseModel::white(double sigma, double dt) {
    if (sigma < 0.0 || dt <= 0.0) throw std::invalid_argument("NoiseModel: bad white parameters");
    return NoiseModel{Kind::white, 0.0, sigma, dt};
}

NoiseModel NoiseModel::ou(double theta, double sigma, double dt) {
    if (theta <= 0.0 || sigma < 0.0 || dt <= 0.0) {
        throw std::invalid_argument("NoiseModel: bad OU parameters");
    }
    return NoiseModel{Kind::ou, theta, sigma, dt};
}

double NoisePath::value_at(double t) const {
    if (values.empty()) return 0.0;
    if (t < start - 1e-9 || t > horizon() + 1e-9) {
        throw std::out_of_range("NoisePath: t outside path horizon");
    }
    const double pos = std::clamp((t - start) / dt, 0.0, static_cast<double>(values.size() - 1));
    const std::size_t k = std::min<std::size_t>(values.size() - 2, static_cast<std::size_t>(pos));
    const double frac = pos - static_cast<double>(k);
    return values[k] + frac * (values[k + 1] - values[k]);
}

double NoisePath::integral(double a, double b) const {
    if (values.size() < 2 || b <= a) return 0.0;
    // trapezoid over grid points is exact for the piecewise-linear path
    const double lo = std::max(a, start);
    const double hi = std::min(b, horizon());
    if (hi <= lo) return 0.0;
    const std::size_t k0 = static_cast<std::size_t>((lo - start) / dt);
    const std::size_t k1 = std::min(values.size() - 2, static_cast<std::size_t>((hi - start) / dt));
    if (k0 == k1) {
        return 0.5 * (value_at(lo) + value_at(hi)) * (hi - lo);
    }
    double sum = 0.5 * (value_at(lo) + values[k0 + 1]) * (start + (k0 + 1) * dt - lo);
    for (std::size_t k = k0 + 1; k < k1; ++k) {
        sum += 0.5 * (values[k] + values[k + 1]) * dt;
    }
    sum += 0.5 * (values[k1] + value_at(hi)) * (hi - start - k1 * dt);
    return sum;
}

NoisePath sample_noise_path(const NoiseModel& model, double horizon, Rng& rng,
                            std::uint64_t seed_label) {
    if (horizon <= 0.0) throw std::invalid_argument("sample_noise_path: horizon must be > 0");
    NoisePath path;
    path.start = 0.0;
    path.dt = model.dt;
    path.seed = seed_label;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(horizon / model.dt)) + 1;
    path.values.assign(steps + 1, 0.0);
    switch (model.kind) {
        case NoiseModel::Kind::none:
            break;
        case NoiseModel::Kind::white:
            for (auto& v : path.values) v = model.sigma * standard_normal(rng);
            break;
        case NoiseModel::Kind::ou: {
            const double decay = std::exp(-model.theta * model.dt);
            const double stat_sd = model.sigma / std::sqrt(2.0 * model.theta);
            const double step_sd = stat_sd * std::sqrt(1.0 - decay * decay);
            double b = stat_sd * standard_normal(rng);  // stationary start
            path.values[0] = b;
            for (std::size_t k = 1; k < path.values.size(); ++k) {
                b = b * decay + step_sd * standard_normal(rng);
                path.values[k] = b;
            }
            break;
        }
    }
    return path;
}

double corrupted_utility(const PeriodicProfile& profile, const NoisePath& path, double t) {
    return profile(t) + path.value_at(t);
}

}  // namespace periloss

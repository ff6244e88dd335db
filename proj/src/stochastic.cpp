#include "periloss/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace periloss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (b <= a) return 0.0;
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        sum += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return sum * h / 3.0;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Density exponential_density(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("exponential_density: rate must be > 0");
    Density d;
    d.lo = 0.0;
    d.hi = std::log(1e12) / rate;  // truncated tail mass 1e-12
    d.sup_bound = rate;
    d.pdf = [rate](double x) { return rate * std::exp(-rate * x); };
    return d;
}

Density uniform_density(double lo, double hi) {
    if (hi <= lo) throw std::invalid_argument("uniform_density: hi must exceed lo");
    Density d;
    d.lo = lo;
    d.hi = hi;
    const double height = 1.0 / (hi - lo);
    d.sup_bound = height;
    d.pdf = [lo, hi, height](double x) { return (x >= lo && x <= hi) ? height : 0.0; };
    return d;
}

Density gaussian_density(double mean, double stddev) {
    if (stddev <= 0.0) throw std::invalid_argument("gaussian_density: stddev must be > 0");
    Density d;
    d.lo = mean - 8.5 * stddev;
    d.hi = mean + 8.5 * stddev;
    d.sup_bound = 1.0 / (stddev * std::sqrt(kTwoPi));
    d.pdf = [mean, stddev](double x) {
        const double z = (x - mean) / stddev;
        return std::exp(-0.5 * z * z) / (stddev * std::sqrt(kTwoPi));
    };
    return d;
}

double integrate_density(const Density& d, double a, double b) {
    a = std::max(a, d.lo);
    b = std::min(b, d.hi);
    if (b <= a) return 0.0;
    return simpson(d.pdf, a, b, 1 << 14);
}

double density_mean(const Density& d) {
    return simpson([&d](double x) { return x * d.pdf(x); }, d.lo, d.hi, 1 << 14);
}

void validate_density(const Density& d) {
    if (!d.pdf) throw std::invalid_argument("density: missing pdf");
    if (d.hi <= d.lo) throw std::invalid_argument("density: empty support");
    if (d.sup_bound <= 0.0) throw std::invalid_argument("density: sup bound must be > 0");
    const int grid = 1 << 12;
    const double h = (d.hi - d.lo) / grid;
    for (int i = 0; i <= grid; ++i) {
        const double v = d.pdf(d.lo + i * h);
        if (v < -1e-12) throw std::invalid_argument("density: negative value on grid");
        if (v > d.sup_bound * (1.0 + 1e-9)) {
            throw std::invalid_argument("density: exceeds declared sup bound");
        }
    }
    const double mass = integrate_density(d, d.lo, d.hi);
    if (std::abs(mass - 1.0) > 1e-9) {
        throw std::invalid_argument("density: mass deviates from 1 beyond 1e-9");
    }
}

InterArrivalModel InterArrivalModel::exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("InterArrivalModel: rate must be > 0");
    InterArrivalModel m;
    m.exponential_ = true;
    m.rate_ = rate;
    m.mean_ = 1.0 / rate;
    return m;
}

InterArrivalModel InterArrivalModel::general(Density density) {
    validate_density(density);
    if (density.lo < 0.0) {
        throw std::invalid_argument("InterArrivalModel: inter-arrival support must be >= 0");
    }
    InterArrivalModel m;
    m.exponential_ = false;
    m.density_ = std::move(density);
    m.mean_ = density_mean(m.density_);
    // cumulative grid for inverse-CDF sampling
    const int cells = 1 << 13;
    const double h = (m.density_.hi - m.density_.lo) / cells;
    m.grid_x_.resize(cells + 1);
    m.grid_cdf_.resize(cells + 1);
    m.grid_x_[0] = m.density_.lo;
    m.grid_cdf_[0] = 0.0;
    for (int i = 1; i <= cells; ++i) {
        m.grid_x_[i] = m.density_.lo + i * h;
        m.grid_cdf_[i] = m.grid_cdf_[i - 1] +
                         simpson(m.density_.pdf, m.grid_x_[i - 1], m.grid_x_[i], 4);
    }
    const double total = m.grid_cdf_.back();
    for (auto& c : m.grid_cdf_) c /= total;
    return m;
}

double InterArrivalModel::rate() const {
    if (!exponential_) throw std::logic_error("InterArrivalModel: not exponential");
    return rate_;
}

const Density& InterArrivalModel::density() const {
    if (exponential_) throw std::logic_error("InterArrivalModel: not general");
    return density_;
}

double sample_interarrival(const InterArrivalModel& model, Rng& rng) {
    if (model.exponential_) {
        return -std::log(uniform01(rng)) / model.rate_;
    }
    const double u = uniform01(rng);
    const auto it = std::lower_bound(model.grid_cdf_.begin(), model.grid_cdf_.end(), u);
    const std::size_t i = std::max<std::size_t>(1, it - model.grid_cdf_.begin());
    const double c0 = model.grid_cdf_[i - 1];
    const double c1 = model.grid_cdf_[i];
    const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
    return model.grid_x_[i - 1] + frac * (model.grid_x_[i] - model.grid_x_[i - 1]);
}

MaintenanceModel MaintenanceModel::exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("MaintenanceModel: rate must be > 0");
    MaintenanceModel m;
    m.kind_ = Kind::exponential;
    m.rate_ = rate;
    m.mean_ = 1.0 / rate;
    m.second_moment_ = 2.0 / (rate * rate);
    return m;
}

MaintenanceModel MaintenanceModel::empirical(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("MaintenanceModel: empty sample list");
    double sum = 0.0, sum2 = 0.0;
    for (double y : samples) {
        if (y < 0.0) throw std::invalid_argument("MaintenanceModel: negative duration");
        sum += y;
        sum2 += y * y;
    }
    MaintenanceModel m;
    m.kind_ = Kind::empirical;
    m.samples_ = std::move(samples);
    m.mean_ = sum / m.samples_.size();
    m.second_moment_ = sum2 / m.samples_.size();
    if (m.mean_ <= 0.0) throw std::invalid_argument("MaintenanceModel: mean must be > 0");
    return m;
}

MaintenanceModel MaintenanceModel::lognormal(double mu, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("MaintenanceModel: sigma must be >= 0");
    MaintenanceModel m;
    m.kind_ = Kind::lognormal;
    m.mu_ = mu;
    m.sigma_ = sigma;
    m.mean_ = std::exp(mu + 0.5 * sigma * sigma);
    m.second_moment_ = std::exp(2.0 * mu + 2.0 * sigma * sigma);
    return m;
}

double sample_maintenance(const MaintenanceModel& model, Rng& rng) {
    switch (model.kind_) {
        case MaintenanceModel::Kind::exponential:
            return -std::log(uniform01(rng)) / model.rate_;
        case MaintenanceModel::Kind::empirical: {
            const std::size_t i =
                std::min<std::size_t>(model.samples_.size() - 1,
                                      static_cast<std::size_t>(uniform01(rng) * model.samples_.size()));
            return model.samples_[i];
        }
        case MaintenanceModel::Kind::lognormal:
            return std::exp(model.mu_ + model.sigma_ * standard_normal(rng));
    }
    throw std::logic_error("MaintenanceModel: unknown kind");
}

void validate_wrapped(const WrappedDensity& w) {
    if (w.period <= 0.0) throw std::invalid_argument("WrappedDensity: period must be > 0");
    if (w.values.size() < 16) throw std::invalid_argument("WrappedDensity: need >= 16 bins");
    double sum = 0.0;
    for (double v : w.values) {
        if (v < 0.0) throw std::invalid_argument("WrappedDensity: negative bin");
        sum += v;
    }
    if (std::abs(sum * w.bin_width() - 1.0) > 1e-6) {
        throw std::invalid_argument("WrappedDensity: mass deviates from 1 beyond 1e-6");
    }
}

FourierBound fourier_bound_exponential(double rate, double period, int truncation) {
    if (rate <= 0.0 || period <= 0.0) {
        throw std::invalid_argument("fourier_bound_exponential: rate and period must be > 0");
    }
    if (truncation < 100) {
        throw std::invalid_argument("fourier_bound_exponential: truncation must be >= 100");
    }
    const double lp = rate * period;
    const double c = lp / kTwoPi;
    FourierBound fb;
    fb.alpha = lp / std::sqrt(lp * lp + kTwoPi * kTwoPi);
    fb.truncation = truncation;
    // sum_{n>=1} 1/(n^2 + c^2) = (pi*coth(pi*c) - 1/c) / (2c); the truncated
    // partial sum plus this exact remainder collapses to the closed form.
    double series;
    if (c < 1e-4) {
        const double pi2 = std::numbers::pi * std::numbers::pi;
        series = pi2 / 6.0 - c * c * pi2 * pi2 / 90.0;
    } else {
        const double pc = std::numbers::pi * c;
        series = (std::numbers::pi / std::tanh(pc) - 1.0 / c) / (2.0 * c);
    }
    fb.constant = (c * c + 1.0) * series;
    return fb;
}

FourierBound fourier_bound_general(const Density& density, double period, int truncation,
                                   int quadrature_bins) {
    validate_density(density);
    if (period <= 0.0) throw std::invalid_argument("fourier_bound_general: period must be > 0");
    if (truncation < 100) {
        throw std::invalid_argument("fourier_bound_general: truncation must be >= 100");
    }
    const int bins = quadrature_bins;
    const double w = (density.hi - density.lo) / bins;
    std::vector<double> f(bins + 1);
    for (int k = 0; k <= bins; ++k) f[k] = density(density.lo + k * w);

    double alpha = 0.0;
    double power_sum = 0.0;
    double tail_scale = 0.0;  // max of n^2 |g_hat(n)|^2 near the truncation order
    using cplx = std::complex<double>;
    for (int n = 1; n <= truncation; ++n) {
        const double omega = kTwoPi * n / period;
        // exact per-bin integrals of (linear interpolant) * exp(-i omega x)
        const cplx a(0.0, -omega);
        const cplx eaw = std::exp(a * w);
        const cplx c1 = (eaw - 1.0) / a;                          // int_0^w e^{as} ds
        const cplx c2 = ((eaw * (a * w - 1.0)) + 1.0) / (a * a) / w;  // (1/w) int_0^w s e^{as} ds
        const cplx w_left = c1 - c2;
        const cplx rot = eaw;
        cplx phase = std::exp(a * density.lo);
        cplx acc(0.0, 0.0);
        for (int k = 0; k < bins; ++k) {
            acc += phase * (f[k] * w_left + f[k + 1] * c2);
            phase *= rot;
        }
        const double mag2 = std::norm(acc);
        alpha = std::max(alpha, std::sqrt(mag2));
        power_sum += mag2;
        if (n > truncation - 16) {
            tail_scale = std::max(tail_scale, static_cast<double>(n) * n * mag2);
        }
    }
    if (alpha >= 1.0 - 1e-9) {
        throw std::invalid_argument(
            "fourier_bound_general: alpha >= 1 (atomic density or insufficient resolution)");
    }
    FourierBound fb;
    fb.alpha = alpha;
    fb.truncation = truncation;
    if (alpha < 1e-12) {
        fb.constant = 0.0;  // all coefficients vanish (uniform density)
    } else {
        const double N = truncation;
        const double tail = tail_scale * (1.0 / N - 1.0 / (2.0 * N * N) + 1.0 / (6.0 * N * N * N));
        fb.constant = (power_sum + tail) / (alpha * alpha);
    }
    return fb;
}

WrappedDensity wrap_density(const Density& density, double period, int bins) {
    validate_density(density);
    if (period <= 0.0) throw std::invalid_argument("wrap_density: period must be > 0");
    if (bins < 16) throw std::invalid_argument("wrap_density: need >= 16 bins");
    const double span_periods = (density.hi - density.lo) / period;
    if (span_periods > 1e4) {
        throw std::invalid_argument("wrap_density: support spans more than 1e4 periods");
    }
    const long k_lo = static_cast<long>(std::floor(density.lo / period));
    const long k_hi = static_cast<long>(std::floor(density.hi / period));
    WrappedDensity w;
    w.period = period;
    w.values.assign(bins, 0.0);
    const double width = period / bins;
    for (int i = 0; i < bins; ++i) {
        double mass = 0.0;
        for (long k = k_lo; k <= k_hi; ++k) {
            const double a = std::max(k * period + i * width, density.lo);
            const double b = std::min(k * period + (i + 1) * width, density.hi);
            if (b > a) mass += simpson(density.pdf, a, b, 4);
        }
        w.values[i] = mass / width;
    }
    return w;
}

namespace detail {

WrappedDensity convolve_direct(const WrappedDensity& a, const WrappedDensity& b) {
    const std::size_t m = a.values.size();
    WrappedDensity out;
    out.period = a.period;
    out.values.assign(m, 0.0);
    const double w = a.bin_width();
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            s += a.values[j] * b.values[(i + m - j) % m];
        }
        out.values[i] = s * w;
    }
    return out;
}

void fft_radix2(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft_radix2: size must be a power of 2");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = data[i + k];
                const auto v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        for (auto& x : data) x /= static_cast<double>(n);
    }
}

WrappedDensity convolve_fft(const WrappedDensity& a, const WrappedDensity& b) {
    const std::size_t m = a.values.size();
    std::vector<std::complex<double>> fa(a.values.begin(), a.values.end());
    std::vector<std::complex<double>> fb(b.values.begin(), b.values.end());
    fft_radix2(fa, false);
    fft_radix2(fb, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft_radix2(fa, true);
    WrappedDensity out;
    out.period = a.period;
    out.values.resize(m);
    const double w = a.bin_width();
    for (std::size_t i = 0; i < m; ++i) {
        out.values[i] = std::max(0.0, fa[i].real() * w);
    }
    return out;
}

}  // namespace detail

WrappedDensity convolve_mod_p(const WrappedDensity& a, const WrappedDensity& b) {
    if (a.values.size() != b.values.size() || a.period != b.period) {
        throw std::invalid_argument("convolve_mod_p: mismatched grids");
    }
    if (a.values.size() > 1024 && is_power_of_two(a.values.size())) {
        return detail::convolve_fft(a, b);
    }
    return detail::convolve_direct(a, b);
}

WrappedDensity self_convolve(const WrappedDensity& w, int fold) {
    if (fold < 1) throw std::invalid_argument("self_convolve: fold must be >= 1");
    WrappedDensity out = w;
    for (int i = 1; i < fold; ++i) out = convolve_mod_p(out, w);
    return out;
}

double sup_distance_to_uniform(const WrappedDensity& w) {
    const double uniform = 1.0 / w.period;
    double d = 0.0;
    for (double v : w.values) d = std::max(d, std::abs(v - uniform));
    return d;
}

}  // namespace periloss

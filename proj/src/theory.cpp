#include "periloss/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace periloss {

BoundInputs make_bound_inputs(const FourierBound& fb, double period, double density_sup,
                              double i_bar, double k_bound, double e_y2) {
    if (period <= 0.0 || density_sup <= 0.0 || k_bound <= 0.0 || e_y2 <= 0.0) {
        throw std::invalid_argument("make_bound_inputs: constants must be positive");
    }
    BoundInputs b;
    b.alpha = fb.alpha;
    b.fourier_c = fb.constant;
    b.c_prime = density_sup + 1.0 / period;
    b.period = period;
    b.i_bar = i_bar;
    b.k_bound = k_bound;
    b.e_y2 = e_y2;
    return b;
}

double expected_loss_limit(const LimitInputs& in) {
    if (in.mean_x <= 0.0 || in.mean_y < 0.0 || in.u_bar < 0.0 || in.n_cells < 1) {
        throw std::invalid_argument("expected_loss_limit: invalid inputs");
    }
    return in.n_cells * in.mean_y * in.u_bar / (in.mean_x + in.mean_y);
}

double availability(double mtbf, double mttr) {
    if (mtbf <= 0.0 || mttr < 0.0) throw std::invalid_argument("availability: invalid inputs");
    return mtbf / (mtbf + mttr);
}

double delta(double mean_x, double mean_y) {
    if (mean_x <= 0.0 || mean_y < 0.0) throw std::invalid_argument("delta: invalid inputs");
    return mean_y / (mean_x + mean_y);
}

double i_bar(double mean_y, double u_bar) {
    if (mean_y < 0.0 || u_bar < 0.0) throw std::invalid_argument("i_bar: negative inputs");
    return mean_y * u_bar;
}

double covariance_upper_bound(int j, int k, const BoundInputs& b) {
    if (j < 1 || k < 1) throw std::invalid_argument("covariance_upper_bound: j, k must be >= 1");
    const double a = b.alpha;
    const double cp = b.fourier_c / b.period;
    const double term_j = 1.0 - cp * std::pow(a, j - 1);
    const double term_jk = 1.0 - cp * std::pow(a, j + k - 1);
    return b.i_bar * b.i_bar *
           (1.0 + b.period * b.c_prime * b.fourier_c * (std::pow(a, j) + std::pow(a, k)) -
            term_j * term_jk);
}

double covariance_trivial_bound(const BoundInputs& b) { return b.k_bound * b.k_bound * b.e_y2; }

double variance_upper_bound(long n, const BoundInputs& b) {
    if (n < 1) throw std::invalid_argument("variance_upper_bound: n must be >= 1");
    if (b.alpha >= 1.0) throw std::invalid_argument("variance_upper_bound: alpha must be < 1");
    const double a = b.alpha;
    const double C = b.fourier_c;
    const double p = b.period;
    const double nn = static_cast<double>(n);
    const double one_minus = 1.0 - a;
    const double lead = (b.k_bound * b.k_bound * b.e_y2 -
                         b.i_bar * b.i_bar * (1.0 - C / p) * (1.0 - C / p)) /
                        nn;
    const double bracket = nn * b.c_prime * p / one_minus +
                           a * a * b.c_prime * p / (one_minus * one_minus) +
                           nn / (p * one_minus) +
                           a * a / (p * one_minus * (1.0 - a * a));
    return lead + 2.0 * b.i_bar * b.i_bar * C / (nn * nn) * bracket;
}

double theorem1_bound(int j, const FourierBound& fb, double period) {
    if (j < 1) throw std::invalid_argument("theorem1_bound: j must be >= 1");
    return fb.constant * std::pow(fb.alpha, j) / period;
}

}  // namespace periloss

#pragma once

#include "periloss/stochastic.hpp"

namespace periloss {

/// Inputs of the closed-form long-run loss limit.
struct LimitInputs {
    double mean_x = 0.0;  // E[X], hours
    double mean_y = 0.0;  // E[Y], hours
    double u_bar = 0.0;   // period-average utility
    int n_cells = 1;
};

/// Constants entering the covariance / variance upper bounds.
struct BoundInputs {
    double alpha = 0.0;
    double fourier_c = 0.0;  // C
    double c_prime = 0.0;    // C' = M + 1/p
    double period = 0.0;
    double i_bar = 0.0;  // E[Y] * U_bar
    double k_bound = 0.0;
    double e_y2 = 0.0;  // E[Y^2]
};

BoundInputs make_bound_inputs(const FourierBound& fb, double period, double density_sup,
                              double i_bar, double k_bound, double e_y2);

// N * E[Y] * U_bar / (E[X] + E[Y])
double expected_loss_limit(const LimitInputs& in);

double availability(double mtbf, double mttr);
double delta(double mean_x, double mean_y);  // 1 - availability
double i_bar(double mean_y, double u_bar);

// Cov[I_j, I_{j+k}] <= Ibar^2 (1 + p C' C (a^j + a^k)
//                              - (1 - C a^{j-1}/p)(1 - C a^{j+k-1}/p))
double covariance_upper_bound(int j, int k, const BoundInputs& b);

// The trivial alternative K^2 E[Y^2]; the geometric bound can exceed it for
// small j, k.
double covariance_trivial_bound(const BoundInputs& b);

// Var[(1/n) sum I_j] upper bound; tends to 0 as n grows.
double variance_upper_bound(long n, const BoundInputs& b);

// C alpha^j / p
double theorem1_bound(int j, const FourierBound& fb, double period);

}  // namespace periloss

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "periloss/utility.hpp"

using namespace periloss;

TEST_CASE("sinusoid profile evaluates and averages analytically") {
    const PeriodicProfile u = PeriodicProfile::sinusoid(1.75, 3.0, 24.0);
    CHECK(u(0.0) == doctest::Approx(3.0));
    CHECK(u(6.0) == doctest::Approx(4.75));   // peak at a quarter period
    CHECK(u(18.0) == doctest::Approx(1.25));  // trough
    CHECK(u(25.0) == doctest::Approx(u(1.0)));
    CHECK(u(-1.0) == doctest::Approx(u(23.0)));
    CHECK(mean_utility(u) == doctest::Approx(3.0));
    CHECK(u.bound() == doctest::Approx(4.75));
    CHECK_THROWS_AS(PeriodicProfile::sinusoid(2.0, 1.0, 24.0), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicProfile::sinusoid(1.0, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("sampled profile interpolates with wraparound") {
    const PeriodicProfile u = PeriodicProfile::sampled({1.0, 3.0, 2.0, 4.0}, 4.0);
    CHECK(u(0.0) == doctest::Approx(1.0));
    CHECK(u(0.5) == doctest::Approx(2.0));
    CHECK(u(3.5) == doctest::Approx(2.5));  // wraps toward slot 0
    CHECK(u.bound() == doctest::Approx(4.0));
    CHECK(mean_utility(u) == doctest::Approx(2.5));
    CHECK_THROWS_AS(PeriodicProfile::sampled({}, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicProfile::sampled({1.0, -0.5}, 4.0), std::invalid_argument);
}

TEST_CASE("noise paths are reproducible and label their seed") {
    Rng r1 = make_rng(99), r2 = make_rng(99);
    const NoiseModel m = NoiseModel::ou(1.0, 0.5, 0.1);
    const NoisePath a = sample_noise_path(m, 50.0, r1, 7);
    const NoisePath b = sample_noise_path(m, 50.0, r2, 7);
    CHECK(a.seed == 7);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    CHECK(a.horizon() >= 50.0);
}

TEST_CASE("OU path has the stationary variance") {
    Rng rng = make_rng(4242);
    const double theta = 1.0, sigma = 0.5;
    const NoiseModel m = NoiseModel::ou(theta, sigma, 0.5);
    double sum2 = 0.0;
    long n = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const NoisePath p = sample_noise_path(m, 500.0, rng, rep);
        for (double v : p.values) {
            sum2 += v * v;
            ++n;
        }
    }
    const double target = sigma * sigma / (2.0 * theta);
    CHECK(sum2 / n == doctest::Approx(target).epsilon(0.10));
}

TEST_CASE("piecewise-linear path integral is exact") {
    NoisePath p;
    p.start = 0.0;
    p.dt = 1.0;
    p.values = {0.0, 2.0, 2.0, 0.0};
    CHECK(p.integral(0.0, 3.0) == doctest::Approx(4.0));
    CHECK(p.integral(0.5, 1.0) == doctest::Approx(0.5 * (1.0 + 2.0) * 0.5));
    CHECK(p.integral(1.25, 1.75) == doctest::Approx(1.0));
    CHECK(p.integral(2.0, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("corrupted utility adds the path value and respects the horizon") {
    const PeriodicProfile u = PeriodicProfile::sinusoid(0.0, 2.0, 24.0);
    NoisePath p;
    p.start = 0.0;
    p.dt = 1.0;
    p.values = {1.0, -1.0, 1.0};
    CHECK(corrupted_utility(u, p, 0.5) == doctest::Approx(2.0));
    CHECK(corrupted_utility(u, p, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(corrupted_utility(u, p, 5.0), std::out_of_range);
}

#pragma once

#include <cstdint>
#include <random>

namespace periloss {

using Rng = std::mt19937_64;

// splitmix64 finalizer, used as the seed-splitting rule everywhere:
// stream k of a base seed s is seeded with splitmix64(s + (k+1) * golden).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform on (0, 1); never returns 0 so -log(u) is safe.
double uniform01(Rng& rng);

// Standard normal via polar Marsaglia, one value per call.
double standard_normal(Rng& rng);

}  // namespace periloss

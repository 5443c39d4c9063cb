#pragma once

// Portable random streams for scan simulation.
//
// Stream rule: scan point k draws from std::mt19937_64 seeded with the
// (k+1)-th output of SplitMix64 started at the scan seed. Points are
// therefore independent of evaluation order and thread count. Uniforms take
// the top 53 bits of each 64-bit draw. Poisson variates use multiplication of
// uniforms below mean 10 and Hormann's PTRS transformed rejection above.

#include <cstdint>
#include <random>

namespace eraser::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Advances `state` by one SplitMix64 step and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed of the generator for scan point `index`.
std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform double in [0, 1).
double uniform(std::mt19937_64& gen) noexcept;

/// Poisson(mean) variate; mean <= 0 yields 0.
std::uint64_t poisson(double mean, std::mt19937_64& gen);

}  // namespace eraser::rng

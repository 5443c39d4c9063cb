#include "eraser/rng.hpp"

#include <cmath>

#include "eraser/error.hpp"

namespace eraser::rng {

namespace {

std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t poisson_small(double mean, std::mt19937_64& gen) {
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double prod = uniform(gen);
  while (prod > limit) {
    ++k;
    prod *= uniform(gen);
  }
  return k;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables", algorithm PTRS.
std::uint64_t poisson_ptrs(double mean, std::mt19937_64& gen) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform(gen) - 0.5;
    const double v = uniform(gen);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += kGoldenGamma;
  return mix(state);
}

std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix(seed + (index + 1) * kGoldenGamma);
}

double uniform(std::mt19937_64& gen) noexcept {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::uint64_t poisson(double mean, std::mt19937_64& gen) {
  if (!std::isfinite(mean)) throw Error(ErrorCode::invalid_argument, "Poisson mean not finite");
  if (mean <= 0.0) return 0;
  return mean < 10.0 ? poisson_small(mean, gen) : poisson_ptrs(mean, gen);
}

}  // namespace eraser::rng

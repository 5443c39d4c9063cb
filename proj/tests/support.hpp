#pragma once

// Shared generators for property-style tests.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "eraser/qstate.hpp"

namespace eraser::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261017);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline double random_angle() { return uniform(-std::numbers::pi, std::numbers::pi); }

inline StateVector random_state(std::vector<std::size_t> dims, bool normalize = true) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(n);
  for (auto& a : amps) a = {normal(rng()), normal(rng())};
  StateVector s(std::move(amps), std::move(dims));
  return normalize ? s.normalized() : s;
}

/// Gram-Schmidt on a Gaussian complex matrix.
inline LinearOperator random_unitary(std::size_t d) {
  std::normal_distribution<double> normal;
  std::vector<std::vector<Complex>> cols(d, std::vector<Complex>(d));
  for (auto& c : cols)
    for (auto& v : c) v = {normal(rng()), normal(rng())};
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex proj{};
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(cols[k][i]) * cols[j][i];
      for (std::size_t i = 0; i < d; ++i) cols[j][i] -= proj * cols[k][i];
    }
    double n = 0.0;
    for (auto& v : cols[j]) n += std::norm(v);
    for (auto& v : cols[j]) v /= std::sqrt(n);
  }
  std::vector<Complex> entries(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) entries[r * d + c] = cols[c][r];
  return LinearOperator::unitary(std::move(entries), d);
}

inline double deg(double degrees) { return degrees * std::numbers::pi / 180.0; }

}  // namespace eraser::testing

#include "eraser/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "eraser/error.hpp"
#include "eraser/rng.hpp"

namespace eraser::kernels {

namespace {

void check_layout(const StateVector& state, const std::optional<LinearOperator>& p_projector) {
  if (state.dims() != std::vector<std::size_t>{2, 2, 2}) {
    throw Error(ErrorCode::dimension_mismatch, "detection kernel expects dims (2,2,2)");
  }
  if (p_projector && p_projector->dim() != 2) {
    throw Error(ErrorCode::dimension_mismatch, "p projector must act on a qubit");
  }
}

double detection_at(std::span<const Complex> amps, const std::optional<LinearOperator>& p_projector,
                    double delta) {
  // <d(delta)| on the path qubit: slit 1 weighted by e^{i delta/2}, slit 2 by e^{-i delta/2}.
  const Complex w1 = std::polar(1.0 / std::numbers::sqrt2, 0.5 * delta);
  const Complex w2 = std::conj(w1);
  std::array<Complex, 4> joint;
  for (std::size_t k = 0; k < 4; ++k) joint[k] = w1 * amps[k] + w2 * amps[4 + k];

  double prob = 0.0;
  for (std::size_t s = 0; s < 2; ++s) {
    const Complex a0 = joint[2 * s];
    const Complex a1 = joint[2 * s + 1];
    if (p_projector) {
      const auto& P = *p_projector;
      prob += std::norm(P(0, 0) * a0 + P(0, 1) * a1) + std::norm(P(1, 0) * a0 + P(1, 1) * a1);
    } else {
      prob += std::norm(a0) + std::norm(a1);
    }
  }
  return prob;
}

}  // namespace

std::vector<double> detection_serial(const StateVector& state,
                                     const std::optional<LinearOperator>& p_projector,
                                     std::span<const double> deltas) {
  check_layout(state, p_projector);
  std::vector<double> out(deltas.size());
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < deltas.size(); ++i) out[i] = detection_at(amps, p_projector, deltas[i]);
  return out;
}

std::vector<double> detection_parallel(const StateVector& state,
                                       const std::optional<LinearOperator>& p_projector,
                                       std::span<const double> deltas) {
  check_layout(state, p_projector);
  std::vector<double> out(deltas.size());
  const auto amps = state.amplitudes();
  const auto n = static_cast<std::ptrdiff_t>(deltas.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = detection_at(amps, p_projector, deltas[i]);
  return out;
}

std::vector<std::uint64_t> poisson_serial(std::span<const double> means, std::uint64_t seed) {
  std::vector<std::uint64_t> out(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    std::mt19937_64 gen(rng::point_seed(seed, i));
    out[i] = rng::poisson(means[i], gen);
  }
  return out;
}

std::vector<std::uint64_t> poisson_parallel(std::span<const double> means, std::uint64_t seed) {
  for (double m : means) {
    if (!std::isfinite(m)) throw Error(ErrorCode::invalid_argument, "Poisson mean not finite");
  }
  std::vector<std::uint64_t> out(means.size());
  const auto n = static_cast<std::ptrdiff_t>(means.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::mt19937_64 gen(rng::point_seed(seed, static_cast<std::uint64_t>(i)));
    out[i] = rng::poisson(means[i], gen);
  }
  return out;
}

}  // namespace eraser::kernels

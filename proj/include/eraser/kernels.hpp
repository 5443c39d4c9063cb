#pragma once

// Per-point loops behind the pattern and scan operations. Each kernel has a
// serial reference and an OpenMP version; both produce bit-identical output
// because every point is computed independently.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eraser/qstate.hpp"

namespace eraser::kernels {

/// s-first detection probabilities: contract the path qubit with <d(delta)|,
/// then project the p polarization when a projector is given.
std::vector<double> detection_serial(const StateVector& state,
                                     const std::optional<LinearOperator>& p_projector,
                                     std::span<const double> deltas);
std::vector<double> detection_parallel(const StateVector& state,
                                       const std::optional<LinearOperator>& p_projector,
                                       std::span<const double> deltas);

/// Poisson counts with per-point streams (see rng.hpp).
std::vector<std::uint64_t> poisson_serial(std::span<const double> means, std::uint64_t seed);
std::vector<std::uint64_t> poisson_parallel(std::span<const double> means, std::uint64_t seed);

}  // namespace eraser::kernels

#pragma once

// Monte Carlo detector scans with Poisson coincidence counts.

#include <cstdint>
#include <optional>
#include <vector>

#include "eraser/engine.hpp"
#include "eraser/optics.hpp"

namespace eraser {

struct ScanConfig {
  BenchGeometry geometry;
  PairSourceSpec source;
  std::optional<double> theta1 = std::nullopt;  // QWP1 fast axis; absent = plate removed
  std::optional<double> theta2 = std::nullopt;
  std::optional<double> alpha = std::nullopt;   // POL1 axis; absent = polarizer removed
  // Counts per dwell at the central maximum of the bare double-slit pattern.
  // No measured rate exists for the bench; 200 is a working default.
  double peak_rate = 200.0;
  double dwell_scale = 1.0;       // 2 compensates the polarizer's 50% loss
  double rate_scale = 1.0;        // optional rescale, e.g. for the delayed-erasure arm
  double qwp_misalignment = 0.0;  // added to both plate angles
  std::uint64_t seed = 1;
  double x_min = -3e-3;
  double x_max = 3e-3;
  std::size_t points = 60;
  bool delayed = false;  // metadata: s detected before p

  /// Throws invalid-argument on non-positive rates or an empty scan range.
  void validate() const;
  std::vector<double> positions() const;
  /// Source state after the slits and the (misaligned) plates.
  EraserState prepared_state() const;
};

struct ScanRecord {
  std::vector<double> positions;
  std::vector<std::uint64_t> coincidences;
  std::vector<double> expected;
  std::uint64_t seed = 0;
};

/// Mean coincidence count at detector position x.
double expected_counts(const ScanConfig& cfg, double x);

/// expected_counts at every scan position.
std::vector<double> expected_curve(const ScanConfig& cfg);

/// Poisson draw at every scan position using the per-point stream rule.
ScanRecord simulate_scan(const ScanConfig& cfg);

}  // namespace eraser

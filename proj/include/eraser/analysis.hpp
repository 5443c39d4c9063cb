#pragma once

#include <span>
#include <vector>

#include "eraser/engine.hpp"
#include "eraser/qstate.hpp"

namespace eraser {

struct ScanRecord;

/// counts ~ envelope * (offset + amplitude * sin(delta + phase)).
struct VisibilityFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;       // radians, in (-pi, pi]
  double visibility = 0.0;  // amplitude / offset clamped to [0, 1]
  double rms_residual = 0.0;
};

/// (max - min) / (max + min). Throws degenerate-pattern when max + min < 1e-14.
double visibility_exact(std::span<const double> pattern);

/// Linear least squares on (1, sin delta, cos delta) with fixed per-point
/// weights (the envelope). Throws fit-failed when the design is singular or
/// the fit is worse than the best constant.
VisibilityFit fit_sinusoid(std::span<const double> deltas, std::span<const double> values,
                           std::span<const double> weights);

/// fit_sinusoid over a scan with delta and envelope taken from geometry.
/// Requires at least 8 points spanning a full fringe period.
VisibilityFit fit_fringes(const ScanRecord& scan, const BenchGeometry& g);

/// Singles visibility of the engine pattern, envelope excluded.
double singles_visibility(const EraserState& state);

/// Trace distance between the normalized marker (s-pol x p-pol) states of the
/// two slit branches.
double distinguishability(const EraserState& state);

struct ChshAngles {
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
};

/// E(a, b) = P(same) - P(different) for linear analyzers at a on s, b on p.
double correlation(const StateVector& pair, double a, double b);

/// |E(a,b) - E(a,b') + E(a',b) + E(a',b')| for a normalized (2,2) state.
double chsh(const StateVector& pair, const ChshAngles& angles);

struct ChshResult {
  double value = 0.0;
  ChshAngles angles;
};

/// Maximizes chsh over all four analyzer angles.
ChshResult optimize_chsh(const StateVector& pair);

}  // namespace eraser

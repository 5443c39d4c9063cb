#include "eraser/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "eraser/error.hpp"
#include "eraser/optics.hpp"
#include "eraser/scan.hpp"

namespace eraser {

namespace {

constexpr double kPi = std::numbers::pi;

void require_pair(const StateVector& pair) {
  if (pair.dims() != std::vector<std::size_t>{2, 2}) {
    throw Error(ErrorCode::dimension_mismatch, "CHSH expects a two-qubit (2,2) state");
  }
}

double chsh_signed(const StateVector& pair, const ChshAngles& t) {
  return correlation(pair, t.a, t.b) - correlation(pair, t.a, t.b_prime) +
         correlation(pair, t.a_prime, t.b) + correlation(pair, t.a_prime, t.b_prime);
}

// Each analyzer enters through cos(2t), sin(2t) only, so along one coordinate
// the CHSH sum is c0 + c1 cos 2t + c2 sin 2t and has a closed-form maximum.
ChshResult coordinate_ascent(const StateVector& pair, ChshAngles start, double sign) {
  ChshAngles t = start;
  double best = sign * chsh_signed(pair, t);
  for (int sweep = 0; sweep < 10000; ++sweep) {
    const double before = best;
    for (double* coord : {&t.a, &t.a_prime, &t.b, &t.b_prime}) {
      const auto at = [&](double v) {
        *coord = v;
        return sign * chsh_signed(pair, t);
      };
      const double f0 = at(0.0);
      const double f45 = at(kPi / 4.0);
      const double f90 = at(kPi / 2.0);
      const double c0 = 0.5 * (f0 + f90);
      const double c1 = 0.5 * (f0 - f90);
      const double c2 = f45 - c0;
      best = at(0.5 * std::atan2(c2, c1));
    }
    if (best - before <= 1e-15) break;
  }
  return {std::abs(best), t};
}

}  // namespace

double visibility_exact(std::span<const double> pattern) {
  if (pattern.empty()) throw Error(ErrorCode::degenerate_pattern, "empty pattern");
  const auto [lo, hi] = std::minmax_element(pattern.begin(), pattern.end());
  if (*lo < 0.0) throw Error(ErrorCode::invalid_argument, "pattern has negative values");
  if (*hi + *lo < tol::zero_probability) {
    throw Error(ErrorCode::degenerate_pattern, "pattern is identically zero");
  }
  return (*hi - *lo) / (*hi + *lo);
}

VisibilityFit fit_sinusoid(std::span<const double> deltas, std::span<const double> values,
                           std::span<const double> weights) {
  const auto n = static_cast<Eigen::Index>(deltas.size());
  if (values.size() != deltas.size() || weights.size() != deltas.size()) {
    throw Error(ErrorCode::dimension_mismatch, "fit inputs have different lengths");
  }
  if (n < 3) throw Error(ErrorCode::fit_failed, "need at least 3 points");

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i) = weights[i];
    design(i, 0) = weights[i];
    design(i, 1) = weights[i] * std::sin(deltas[i]);
    design(i, 2) = weights[i] * std::cos(deltas[i]);
    y(i) = values[i];
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw Error(ErrorCode::fit_failed, "fringe design matrix is rank deficient");
  const Eigen::Vector3d c = qr.solve(y);
  const double rss = (design * c - y).squaredNorm();

  const double ww = w.squaredNorm();
  const double c_const = ww > 0.0 ? w.dot(y) / ww : 0.0;
  const double rss_const = (w * c_const - y).squaredNorm();
  if (!std::isfinite(rss) || rss > rss_const * (1.0 + 1e-9) + 1e-24 * y.squaredNorm()) {
    throw Error(ErrorCode::fit_failed, "sinusoid fit does not improve on a constant");
  }

  VisibilityFit fit;
  fit.offset = c(0);
  fit.amplitude = std::hypot(c(1), c(2));
  fit.phase = std::atan2(c(2), c(1));
  if (fit.offset <= 0.0) throw Error(ErrorCode::fit_failed, "fitted offset is not positive");
  fit.visibility = std::clamp(fit.amplitude / fit.offset, 0.0, 1.0);
  fit.rms_residual = std::sqrt(rss / static_cast<double>(n));
  return fit;
}

VisibilityFit fit_fringes(const ScanRecord& scan, const BenchGeometry& g) {
  const std::size_t n = scan.positions.size();
  if (scan.coincidences.size() != n) {
    throw Error(ErrorCode::dimension_mismatch, "scan positions and counts differ in length");
  }
  if (n < 8) throw Error(ErrorCode::fit_failed, "need at least 8 scan points");
  const auto [lo, hi] = std::minmax_element(scan.positions.begin(), scan.positions.end());
  if (*hi - *lo < fringe_period(g)) {
    throw Error(ErrorCode::fit_failed, "scan spans less than one fringe period");
  }
  std::vector<double> deltas(n), values(n), weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    deltas[i] = delta(scan.positions[i], g);
    weights[i] = envelope(scan.positions[i], g);
    values[i] = static_cast<double>(scan.coincidences[i]);
  }
  return fit_sinusoid(deltas, values, weights);
}

double singles_visibility(const EraserState& state) {
  constexpr std::size_t n = 16;
  std::array<double, n> deltas, values, weights;
  for (std::size_t i = 0; i < n; ++i) {
    deltas[i] = 2.0 * kPi * static_cast<double>(i) / n;
    values[i] = detection_probability(state, std::nullopt, deltas[i]);
    weights[i] = 1.0;
  }
  return fit_sinusoid(deltas, values, weights).visibility;
}

double distinguishability(const EraserState& state) {
  const StateVector m1 = state.branch(Slit::s1).normalized();
  const StateVector m2 = state.branch(Slit::s2).normalized();
  return std::sqrt(std::max(0.0, 1.0 - std::norm(inner(m1, m2))));
}

double correlation(const StateVector& pair, double a, double b) {
  require_pair(pair);
  double e = 0.0;
  for (int i = 0; i < 2; ++i) {
    const StateVector s = apply(polarizer(a + i * kPi / 2.0), pair, 0);
    for (int j = 0; j < 2; ++j) {
      const double p = apply(polarizer(b + j * kPi / 2.0), s, 1).norm_squared() / pair.norm_squared();
      e += (i == j ? 1.0 : -1.0) * p;
    }
  }
  return e;
}

double chsh(const StateVector& pair, const ChshAngles& angles) {
  return std::abs(chsh_signed(pair, angles));
}

ChshResult optimize_chsh(const StateVector& pair) {
  require_pair(pair);
  // Coarse 22.5 deg grid to pick starting points, then exact coordinate ascent.
  constexpr int steps = 8;
  const double step = kPi / steps;
  ChshResult best;
  for (double sign : {1.0, -1.0}) {
    ChshAngles seed;
    double seed_value = -1e300;
    for (int i = 0; i < steps; ++i)
      for (int j = 0; j < steps; ++j)
        for (int k = 0; k < steps; ++k)
          for (int l = 0; l < steps; ++l) {
            const ChshAngles t{i * step, j * step, k * step, l * step};
            const double v = sign * chsh_signed(pair, t);
            if (v > seed_value) {
              seed_value = v;
              seed = t;
            }
          }
    const ChshResult r = coordinate_ascent(pair, seed, sign);
    if (r.value > best.value) best = r;
  }
  return best;
}

}  // namespace eraser

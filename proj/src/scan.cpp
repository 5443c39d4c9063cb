#include "eraser/scan.hpp"

#include <cmath>

#include "eraser/error.hpp"
#include "eraser/kernels.hpp"

namespace eraser {

namespace {

double count_scale(const ScanConfig& cfg) { return cfg.peak_rate * cfg.dwell_scale * cfg.rate_scale; }

std::vector<double> curve_at(const ScanConfig& cfg, const std::vector<double>& xs) {
  std::vector<double> curve = coincidence_pattern(cfg.prepared_state(), cfg.alpha, cfg.geometry, xs);
  for (auto& v : curve) v *= count_scale(cfg);
  return curve;
}

}  // namespace

void ScanConfig::validate() const {
  geometry.validate();
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(peak_rate)) throw Error(ErrorCode::invalid_argument, "peak_rate must be > 0");
  if (!positive(dwell_scale)) throw Error(ErrorCode::invalid_argument, "dwell_scale must be > 0");
  if (!positive(rate_scale)) throw Error(ErrorCode::invalid_argument, "rate_scale must be > 0");
  if (!std::isfinite(qwp_misalignment)) {
    throw Error(ErrorCode::invalid_argument, "qwp_misalignment must be finite");
  }
  if (points < 2) throw Error(ErrorCode::invalid_argument, "scan needs at least 2 points");
  if (!(x_min < x_max)) throw Error(ErrorCode::invalid_argument, "x_min must be < x_max");
}

std::vector<double> ScanConfig::positions() const {
  std::vector<double> xs(points);
  const double step = (x_max - x_min) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) xs[i] = x_min + step * static_cast<double>(i);
  xs.back() = x_max;
  return xs;
}

EraserState ScanConfig::prepared_state() const {
  const auto shifted = [this](std::optional<double> theta) -> std::optional<double> {
    if (!theta) return std::nullopt;
    return *theta + qwp_misalignment;
  };
  return apply_slit_qwps(build_initial(source), shifted(theta1), shifted(theta2));
}

double expected_counts(const ScanConfig& cfg, double x) {
  cfg.validate();
  return curve_at(cfg, {x}).front();
}

std::vector<double> expected_curve(const ScanConfig& cfg) {
  cfg.validate();
  return curve_at(cfg, cfg.positions());
}

ScanRecord simulate_scan(const ScanConfig& cfg) {
  cfg.validate();
  ScanRecord record;
  record.positions = cfg.positions();
  record.expected = curve_at(cfg, record.positions);
  record.coincidences = kernels::poisson_parallel(record.expected, cfg.seed);
  record.seed = cfg.seed;
  return record;
}

}  // namespace eraser

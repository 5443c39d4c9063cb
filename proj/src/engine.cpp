#include "eraser/engine.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eraser/error.hpp"
#include "eraser/kernels.hpp"

namespace eraser {

namespace {

const std::vector<std::size_t> kEraserDims{2, 2, 2};

std::size_t subsystem_of(Arm arm) { return arm == Arm::s ? kSignalSubsystem : kIdlerSubsystem; }

std::optional<LinearOperator> p_filter(std::optional<double> alpha) {
  if (!alpha) return std::nullopt;
  return polarizer(*alpha);
}

// Probability that p survives the polarizer; zero means every coincidence
// vanishes and there is no conditional pattern to report.
void require_transmission(const EraserState& state, double alpha) {
  const Projection pass = project(state.vector(), polarizer(alpha), kIdlerSubsystem);
  if (pass.probability < tol::zero_probability) {
    throw Error(ErrorCode::zero_probability_branch,
                "polarizer at " + std::to_string(alpha) + " rad blocks photon p");
  }
}

std::vector<double> deltas_for(std::span<const double> xs, const BenchGeometry& g) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = delta(xs[i], g);
  return out;
}

}  // namespace

EraserState::EraserState(StateVector state) : state_(std::move(state)) {
  if (state_.dims() != kEraserDims) {
    throw Error(ErrorCode::dimension_mismatch, "eraser state must have dims (2,2,2)");
  }
  if (!state_.is_normalized()) {
    throw Error(ErrorCode::invalid_argument, "eraser state must be normalized");
  }
}

EraserState EraserState::from_branches(const StateVector& slit1, const StateVector& slit2) {
  const std::vector<std::size_t> pol_dims{2, 2};
  if (slit1.dims() != pol_dims || slit2.dims() != pol_dims) {
    throw Error(ErrorCode::dimension_mismatch, "slit branches must have dims (2,2)");
  }
  return EraserState(tensor(StateVector::basis({2}, 0), slit1) +
                     tensor(StateVector::basis({2}, 1), slit2));
}

StateVector EraserState::branch(Slit slit) const {
  const std::size_t offset = slit == Slit::s1 ? 0 : 4;
  const auto amps = state_.amplitudes();
  return StateVector({amps.begin() + offset, amps.begin() + offset + 4}, {2, 2});
}

std::array<double, 2> EraserState::slit_probabilities() const {
  return {branch(Slit::s1).norm_squared(), branch(Slit::s2).norm_squared()};
}

void BenchGeometry::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(wavelength)) throw Error(ErrorCode::invalid_argument, "wavelength must be > 0");
  if (!positive(slit_width)) throw Error(ErrorCode::invalid_argument, "slit_width must be > 0");
  if (!positive(slit_separation)) {
    throw Error(ErrorCode::invalid_argument, "slit_separation must be > 0");
  }
  if (!positive(distance)) throw Error(ErrorCode::invalid_argument, "distance must be > 0");
  if (slit_separation < slit_width) {
    throw Error(ErrorCode::invalid_argument,
                "slit_separation must be >= slit_width (slits would overlap)");
  }
}

double delta(double x, const BenchGeometry& g) {
  return 2.0 * std::numbers::pi * g.slit_separation * x / (g.wavelength * g.distance);
}

double fringe_period(const BenchGeometry& g) {
  return g.wavelength * g.distance / g.slit_separation;
}

double envelope(double x, const BenchGeometry& g) {
  const double u = std::numbers::pi * g.slit_width * x / (g.wavelength * g.distance);
  if (u == 0.0) return 1.0;
  const double sinc = std::sin(u) / u;
  return sinc * sinc;
}

LinearOperator detector_projector(double delta) {
  const Complex half = std::polar(1.0 / std::numbers::sqrt2, -0.5 * delta);
  return LinearOperator::projector_onto(StateVector({half, std::conj(half)}, {2}));
}

EraserState build_initial(const PairSourceSpec& spec) {
  const double h = 1.0 / std::numbers::sqrt2;
  return EraserState(tensor(StateVector({h, h}, {2}), spdc_state(spec)));
}

EraserState apply_slit_qwps(const EraserState& state, std::optional<double> theta1,
                            std::optional<double> theta2) {
  const auto through = [](const StateVector& branch, std::optional<double> theta) {
    return theta ? apply(qwp(*theta), branch, 0) : branch;
  };
  return EraserState::from_branches(through(state.branch(Slit::s1), theta1),
                                    through(state.branch(Slit::s2), theta2));
}

StateVector basis_state(Basis basis, int result) {
  if (result != 0 && result != 1) {
    throw Error(ErrorCode::invalid_argument, "outcome index must be 0 or 1");
  }
  switch (basis) {
    case Basis::linear: return result == 0 ? jones::x() : jones::y();
    case Basis::diagonal: return result == 0 ? jones::plus() : jones::minus();
    case Basis::circular: return result == 0 ? jones::right() : jones::left();
  }
  throw Error(ErrorCode::invalid_argument, "unknown basis");
}

double outcome_probability(const EraserState& state, const MeasurementOutcome& outcome) {
  const auto P = LinearOperator::projector_onto(basis_state(outcome.basis, outcome.result));
  return project(state.vector(), P, subsystem_of(outcome.arm)).probability;
}

EraserState condition(const EraserState& state, const MeasurementOutcome& outcome) {
  const auto P = LinearOperator::projector_onto(basis_state(outcome.basis, outcome.result));
  return EraserState(project(state.vector(), P, subsystem_of(outcome.arm)).conditional());
}

double detection_probability(const EraserState& state, std::optional<double> alpha, double delta) {
  const double d[1] = {delta};
  return kernels::detection_serial(state.vector(), p_filter(alpha), d).front();
}

std::vector<double> coincidence_pattern(const EraserState& state, std::optional<double> alpha,
                                        const BenchGeometry& g, std::span<const double> xs) {
  if (alpha) require_transmission(state, *alpha);
  std::vector<double> out = kernels::detection_parallel(state.vector(), p_filter(alpha), deltas_for(xs, g));
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] *= envelope(xs[i], g);
  return out;
}

double closed_form_coincidence(double theta, double alpha, double phi, double delta) {
  const double sp = std::sin(theta + alpha);
  const double sm = std::sin(theta - alpha);
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  return 0.5 + (0.5 - sp * sp * c * c - sm * sm * s * s) * std::sin(delta);
}

std::vector<double> pattern_by_ordering(const EraserState& state, std::optional<double> alpha,
                                        const BenchGeometry& g, std::span<const double> xs,
                                        Ordering order) {
  if (order == Ordering::s_first) {
    if (alpha) require_transmission(state, *alpha);
    std::vector<double> out = kernels::detection_serial(state.vector(), p_filter(alpha), deltas_for(xs, g));
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] *= envelope(xs[i], g);
    return out;
  }

  // p detected first: each polarizer outcome prepares a conditional s state.
  std::vector<std::pair<double, StateVector>> prepared;
  if (alpha) {
    const Projection pass = project(state.vector(), polarizer(*alpha), kIdlerSubsystem);
    prepared.emplace_back(pass.probability, pass.conditional());
  } else {
    for (double axis : {0.0, std::numbers::pi / 2.0}) {
      const Projection out = project(state.vector(), polarizer(axis), kIdlerSubsystem);
      if (out.probability >= tol::zero_probability) {
        prepared.emplace_back(out.probability, out.conditional());
      }
    }
  }

  std::vector<double> pattern(xs.size(), 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const LinearOperator at_x = detector_projector(delta(xs[i], g));
    for (const auto& [weight, conditional] : prepared) {
      pattern[i] += weight * project(conditional, at_x, kPathSubsystem).probability;
    }
    pattern[i] *= envelope(xs[i], g);
  }
  return pattern;
}

}  // namespace eraser

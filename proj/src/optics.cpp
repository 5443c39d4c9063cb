#include "eraser/optics.hpp"

#include <cmath>

#include "eraser/error.hpp"

namespace eraser {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr Complex kI{0.0, 1.0};

StateVector jones_vector(Complex a, Complex b) { return StateVector({a, b}, {2}); }

}  // namespace

namespace jones {

StateVector x() { return jones_vector(1.0, 0.0); }
StateVector y() { return jones_vector(0.0, 1.0); }
StateVector plus() { return jones_vector(kInvSqrt2, kInvSqrt2); }
StateVector minus() { return jones_vector(kInvSqrt2, -kInvSqrt2); }
StateVector right() { return jones_vector(kInvSqrt2, -kI * kInvSqrt2); }
StateVector left() { return jones_vector(kInvSqrt2, kI * kInvSqrt2); }

StateVector linear(double angle) { return jones_vector(std::cos(angle), std::sin(angle)); }

}  // namespace jones

LinearOperator rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return LinearOperator::unitary({c, -s, s, c}, 2);
}

LinearOperator qwp(double fast_axis) {
  if (!std::isfinite(fast_axis)) throw Error(ErrorCode::invalid_argument, "qwp angle not finite");
  // R(t) diag(f, conj f) R(-t), written out so the entries stay exactly symmetric.
  const double c = std::cos(fast_axis);
  const double s = std::sin(fast_axis);
  const Complex f = kQwpFastAxisPhase;
  const Complex g = std::conj(f);
  const Complex off = (f - g) * c * s;
  return LinearOperator::unitary({f * c * c + g * s * s, off, off, f * s * s + g * c * c}, 2);
}

LinearOperator polarizer(double axis) {
  if (!std::isfinite(axis)) throw Error(ErrorCode::invalid_argument, "polarizer angle not finite");
  const double c = std::cos(axis);
  const double s = std::sin(axis);
  return LinearOperator::projector({c * c, s * c, s * c, s * s}, 2);
}

bool PairSourceSpec::is_bell_state() const noexcept {
  const double wrapped = std::remainder(phi, 2.0 * std::numbers::pi);
  return std::abs(wrapped) <= tol::algebraic ||
         std::abs(std::abs(wrapped) - std::numbers::pi) <= tol::algebraic;
}

StateVector spdc_state(const PairSourceSpec& spec) {
  if (!std::isfinite(spec.phi)) throw Error(ErrorCode::invalid_argument, "phi not finite");
  const StateVector o = spec.ordinary == OrdinaryAxis::x ? jones::x() : jones::y();
  const StateVector e = spec.ordinary == OrdinaryAxis::x ? jones::y() : jones::x();
  const StateVector first = tensor(o, e).scaled(kInvSqrt2);
  const StateVector second = tensor(e, o).scaled(std::polar(kInvSqrt2, spec.phi));
  return first + second;
}

}  // namespace eraser

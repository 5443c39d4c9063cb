#pragma once

// Jones-calculus elements and the type-II down-conversion pair source.
//
// Angles are radians measured from the x axis, which is the crystal's
// ordinary (o) axis under the default source mapping.

#include <numbers>

#include "eraser/qstate.hpp"

namespace eraser {

namespace jones {

StateVector x();
StateVector y();
StateVector plus();   // +45 deg
StateVector minus();  // -45 deg
StateVector right();  // (1, -i)/sqrt(2)
StateVector left();   // (1,  i)/sqrt(2)

/// cos(a)|x> + sin(a)|y>.
StateVector linear(double angle);

}  // namespace jones

/// Phase picked up by a quarter-wave plate along its fast axis. The slow axis
/// gets the conjugate, so every plate has unit determinant. With this choice
/// qwp(+45 deg) takes |x> to |L> and |y> to i|R> with no extra global phase,
/// where R and L are the circular states of jones::right/left.
inline const Complex kQwpFastAxisPhase = std::polar(1.0, std::numbers::pi / 4.0);

/// Global phase between qwp(+45 deg)|x> and |L>; unity in this convention.
inline const Complex kQwpGlobalPhase{1.0, 0.0};

/// Real rotation by `angle` (counter-clockwise, x towards y).
LinearOperator rotation(double angle);

/// Quarter-wave plate with fast axis at `fast_axis` from x (unitary, det 1).
LinearOperator qwp(double fast_axis);

/// Ideal linear polarizer with transmission axis at `axis` from x.
LinearOperator polarizer(double axis);

/// Which lab axis carries the ordinary polarization.
enum class OrdinaryAxis { x, y };

struct PairSourceSpec {
  double phi = 0.0;  // relative phase of the |e>_s|o>_p term
  OrdinaryAxis ordinary = OrdinaryAxis::x;

  bool is_bell_state() const noexcept;
  friend bool operator==(const PairSourceSpec&, const PairSourceSpec&) = default;
};

/// (|o>_s|e>_p + e^{i phi}|e>_s|o>_p)/sqrt(2), dims (2,2) ordered (s, p).
StateVector spdc_state(const PairSourceSpec& spec);

}  // namespace eraser

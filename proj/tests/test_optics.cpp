#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eraser/optics.hpp"
#include "support.hpp"

using namespace eraser;
using eraser::testing::deg;
using eraser::testing::random_angle;

namespace {

constexpr Complex kI{0.0, 1.0};

StateVector jv(Complex a, Complex b) { return StateVector({a, b}, {2}); }

Complex amp(const StateVector& bra, const StateVector& ket) { return inner(bra, ket); }

}  // namespace

TEST_CASE("basis vectors are unit norm and R, L orthogonal") {
  for (const auto& v : {jones::x(), jones::y(), jones::plus(), jones::minus(), jones::right(), jones::left()}) {
    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  }
  CHECK(std::abs(inner(jones::right(), jones::left())) <= 1e-12);
  CHECK(std::abs(inner(jones::plus(), jones::minus())) <= 1e-12);
}

TEST_CASE("x, y expand in the diagonal basis and back") {
  const double h = 1.0 / std::numbers::sqrt2;
  const StateVector x = (jones::plus() + jones::minus()).scaled(h);
  const StateVector y = (jones::plus() + jones::minus().scaled(-1.0)).scaled(h);
  CHECK(max_abs_diff(x, jones::x()) <= 1e-12);
  CHECK(max_abs_diff(y, jones::y()) <= 1e-12);
  const StateVector plus = (jones::x() + jones::y()).scaled(h);
  CHECK(max_abs_diff(plus, jones::plus()) <= 1e-12);
}

TEST_CASE("circular states satisfy the diagonal-basis relations literally") {
  const Complex c = (1.0 - kI) / 2.0;
  const StateVector R = (jones::plus() + jones::minus().scaled(kI)).scaled(c);
  const StateVector L = (jones::plus().scaled(kI) + jones::minus()).scaled(c);
  CHECK(max_abs_diff(R, jones::right()) <= 1e-12);
  CHECK(max_abs_diff(L, jones::left()) <= 1e-12);
}

TEST_CASE("qwp(0) is diagonal with a quarter-wave relative phase") {
  const auto q = qwp(0.0);
  const StateVector qx = apply(q, jones::x(), 0);
  const StateVector qy = apply(q, jones::y(), 0);
  CHECK(std::abs(qx[1]) <= 1e-15);
  CHECK(std::abs(qy[0]) <= 1e-15);
  // |y> picks up -i relative to |x> in this convention (see kQwpFastAxisPhase).
  const Complex relative = qy[1] / qx[0];
  CHECK(std::abs(relative - (-kI)) <= 1e-12);
}

TEST_CASE("qwp(+45 deg) maps x to L and y to i R") {
  const auto q = qwp(deg(45));
  const StateVector qx = apply(q, jones::x(), 0);
  const StateVector qy = apply(q, jones::y(), 0);
  CHECK(max_abs_diff(qx, jones::left().scaled(kQwpGlobalPhase)) <= 1e-12);
  CHECK(max_abs_diff(qy, jones::right().scaled(kI * kQwpGlobalPhase)) <= 1e-12);
  CHECK(std::abs(std::abs(amp(jones::right(), qy)) - 1.0) <= 1e-12);
}

TEST_CASE("qwp(-45 deg) maps x to R and y to -i L") {
  const auto q = qwp(deg(-45));
  CHECK(max_abs_diff(apply(q, jones::x(), 0), jones::right()) <= 1e-12);
  CHECK(max_abs_diff(apply(q, jones::y(), 0), jones::left().scaled(-kI)) <= 1e-12);
}

TEST_CASE("qwp is unitary with unit determinant for random angles") {
  for (int trial = 0; trial < 50; ++trial) {
    const auto q = qwp(random_angle());
    CHECK((q.adjoint() * q - LinearOperator::identity(2)).inf_norm() <= 1e-12);
    const Complex det = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);
    CHECK(std::abs(det - 1.0) <= 1e-12);
  }
}

TEST_CASE("two quarter-wave plates make a half-wave plate up to global phase") {
  for (int trial = 0; trial < 20; ++trial) {
    const double t = random_angle();
    const auto h = qwp(t) * qwp(t);
    // Half-wave plate: reflection about the axis, c2 = cos 2t, s2 = sin 2t.
    const LinearOperator hwp({std::cos(2 * t), std::sin(2 * t), std::sin(2 * t), -std::cos(2 * t)}, 2);
    const Complex phase = h(0, 0) / hwp(0, 0) ;
    CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-9);
    CHECK((h - phase * hwp).inf_norm() <= 1e-9);
  }
}

TEST_CASE("qwp(theta + 90 deg) swaps the fast and slow eigenphases") {
  for (int trial = 0; trial < 20; ++trial) {
    const double t = random_angle();
    const auto a = qwp(t);
    const auto b = qwp(t + deg(90));
    const StateVector fast = jones::linear(t);
    const StateVector slow = jones::linear(t + deg(90));
    CHECK(max_abs_diff(apply(a, fast, 0), fast.scaled(kQwpFastAxisPhase)) <= 1e-12);
    CHECK(max_abs_diff(apply(a, slow, 0), slow.scaled(std::conj(kQwpFastAxisPhase))) <= 1e-12);
    CHECK(max_abs_diff(apply(b, fast, 0), fast.scaled(std::conj(kQwpFastAxisPhase))) <= 1e-12);
    CHECK(max_abs_diff(apply(b, slow, 0), slow.scaled(kQwpFastAxisPhase)) <= 1e-12);
  }
}

TEST_CASE("polarizer transmission probabilities") {
  CHECK(project(jones::x(), polarizer(0.0), 0).probability == doctest::Approx(1.0));
  CHECK(project(jones::y(), polarizer(0.0), 0).probability <= 1e-30);
  CHECK(project(jones::x(), polarizer(deg(45)), 0).probability == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("crossed polarizers annihilate and each is idempotent") {
  for (int trial = 0; trial < 50; ++trial) {
    const double a = random_angle();
    CHECK((polarizer(a) * polarizer(a + deg(90))).inf_norm() <= 1e-12);
    CHECK(polarizer(a).is_idempotent());
  }
}

TEST_CASE("polarizer output is parallel to its transmission axis") {
  for (int trial = 0; trial < 20; ++trial) {
    const double a = random_angle();
    const StateVector in = eraser::testing::random_state({2});
    const StateVector out = apply(polarizer(a), in, 0);
    const StateVector axis = jones::linear(a);
    const StateVector along = axis.scaled(inner(axis, out));
    CHECK(max_abs_diff(out, along) <= 1e-12);
  }
}

TEST_CASE("spdc_state: phi = 0 gives Psi+ and phi = pi gives an orthogonal Psi-") {
  const double h = 1.0 / std::numbers::sqrt2;
  const StateVector psi_plus({0.0, h, h, 0.0}, {2, 2});
  CHECK(max_abs_diff(spdc_state({0.0}), psi_plus) <= 1e-12);
  CHECK(std::abs(inner(spdc_state({std::numbers::pi}), psi_plus)) <= 1e-12);
  CHECK(PairSourceSpec{0.0}.is_bell_state());
  CHECK(PairSourceSpec{std::numbers::pi}.is_bell_state());
  CHECK_FALSE(PairSourceSpec{1.0}.is_bell_state());
}

TEST_CASE("spdc_state mapping: o along y swaps the roles") {
  const PairSourceSpec spec{0.3, OrdinaryAxis::y};
  const StateVector s = spdc_state(spec);
  // |o>_s|e>_p = |y>|x> -> index 2; e^{i phi}|e>_s|o>_p = |x>|y> -> index 1.
  CHECK(std::abs(s[2] - 1.0 / std::numbers::sqrt2) <= 1e-15);
  CHECK(std::abs(s[1] - std::polar(1.0 / std::numbers::sqrt2, 0.3)) <= 1e-15);
}

TEST_CASE("spdc_state(pi/3): unit norm and each photon maximally mixed in any linear basis") {
  const StateVector s = spdc_state({std::numbers::pi / 3.0});
  CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = random_angle();
    const double c = std::cos(a), sn = std::sin(a);
    // Oracle: sum |<a|_k <j| psi>|^2 over j by hand for each photon.
    double p_s = 0.0, p_p = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
      p_s += std::norm(c * s[0 * 2 + j] + sn * s[1 * 2 + j]);
      p_p += std::norm(c * s[j * 2 + 0] + sn * s[j * 2 + 1]);
    }
    CHECK(std::abs(p_s - 0.5) <= 1e-12);
    CHECK(std::abs(p_p - 0.5) <= 1e-12);
  }
}

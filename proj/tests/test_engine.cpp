#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eraser/analysis.hpp"
#include "eraser/engine.hpp"
#include "eraser/error.hpp"
#include "support.hpp"

using namespace eraser;
using eraser::testing::deg;
using eraser::testing::random_angle;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

EraserState marked(double phi = 0.0) {
  return apply_slit_qwps(build_initial({phi}), deg(45), deg(-45));
}

std::vector<double> scan_xs(const BenchGeometry& g, std::size_t n = 201) {
  std::vector<double> xs(n);
  const double half = 2.0 * fringe_period(g);
  for (std::size_t i = 0; i < n; ++i) xs[i] = -half + 2.0 * half * static_cast<double>(i) / (n - 1);
  return xs;
}

std::vector<double> phase_grid(std::size_t n) {
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = 2.0 * kPi * static_cast<double>(i) / n;
  return d;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an eraser::Error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("build_initial: slit branches carry the source pair with equal weight") {
  const EraserState s = build_initial({0.0});
  // index = slit*4 + s_pol*2 + p_pol; |s1, x, y> is index 1.
  CHECK(std::abs(s.vector()[1] - 0.5) <= 1e-15);
  CHECK(std::abs(s.vector()[2] - 0.5) <= 1e-15);
  const auto w = s.slit_probabilities();
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(inner(build_initial({0.0}).vector(), build_initial({kPi}).vector())) <= 1e-12);
}

TEST_CASE("apply_slit_qwps(45, -45) reproduces the marked branch states exactly") {
  const EraserState s = marked();
  const double r2 = std::numbers::sqrt2;
  // Each branch carries weight 1/2, so the branch vector times sqrt(2) is the
  // normalized two-photon state of that slit.
  const StateVector b1 = s.branch(Slit::s1).scaled(r2);
  const StateVector b2 = s.branch(Slit::s2).scaled(r2);
  const double h = 1.0 / r2;
  const StateVector expect1 =
      (tensor(jones::left(), jones::y()) + tensor(jones::right(), jones::x()).scaled(kI)).scaled(h);
  const StateVector expect2 =
      (tensor(jones::right(), jones::y()) + tensor(jones::left(), jones::x()).scaled(-kI)).scaled(h);
  CHECK(max_abs_diff(b1, expect1.scaled(kQwpGlobalPhase)) <= 1e-12);
  CHECK(max_abs_diff(b2, expect2.scaled(kQwpGlobalPhase)) <= 1e-12);
  CHECK(std::abs(inner(b1, b2)) <= 1e-12);
  CHECK(s.vector().is_normalized());
}

TEST_CASE("identical plates leave the singles visibility untouched") {
  const EraserState bare = build_initial({0.0});
  CHECK(singles_visibility(apply_slit_qwps(bare, 0.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(singles_visibility(apply_slit_qwps(bare, deg(45), deg(45))) == doctest::Approx(1.0).epsilon(1e-12));
  for (int trial = 0; trial < 10; ++trial) {
    const double t = random_angle();
    const auto plated = apply_slit_qwps(bare, t, t);
    for (double d : phase_grid(16)) {
      CHECK(std::abs(detection_probability(plated, std::nullopt, d) -
                     detection_probability(bare, std::nullopt, d)) <= 1e-12);
    }
  }
}

TEST_CASE("delta and fringe period on the bench geometry") {
  const BenchGeometry g;
  CHECK(delta(0.0, g) == 0.0);
  // Oracle: lambda L / d with 125 cm - 42 cm = 0.83 m.
  const double period = 702.2e-9 * 0.83 / 400e-6;
  CHECK(period == doctest::Approx(1.457e-3).epsilon(1e-3));
  CHECK(fringe_period(g) == doctest::Approx(period).epsilon(1e-14));
  CHECK(delta(period / 2.0, g) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(delta(period, g) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
}

TEST_CASE("single-slit envelope") {
  const BenchGeometry g;
  CHECK(envelope(0.0, g) == 1.0);
  const double first_zero = 702.2e-9 * 0.83 / 200e-6;
  CHECK(first_zero == doctest::Approx(2.914e-3).epsilon(1e-3));
  CHECK(envelope(first_zero, g) <= 1e-28);
  for (double x : {1e-4, 7e-4, 1.3e-3, 2.5e-3}) {
    CHECK(envelope(x, g) == envelope(-x, g));
    CHECK(envelope(x, g) < 1.0);
  }
}

TEST_CASE("geometry validation") {
  BenchGeometry g;
  CHECK_NOTHROW(g.validate());
  g.slit_separation = 100e-6;
  CHECK(code_of([&] { g.validate(); }) == ErrorCode::invalid_argument);
  g = BenchGeometry{};
  g.wavelength = 0.0;
  CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("closed_form_coincidence hand substitutions") {
  CHECK(closed_form_coincidence(deg(45), deg(45), 0.0, 0.0) == doctest::Approx(0.5));
  CHECK(std::abs(closed_form_coincidence(deg(45), deg(45), 0.0, kPi / 2)) <= 1e-15);
  CHECK(closed_form_coincidence(deg(45), deg(-45), 0.0, kPi / 2) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("coincidence pattern: polarizer along QWP1 gives an antifringe minimum at delta = pi/2") {
  const EraserState s = marked();
  CHECK(std::abs(detection_probability(s, deg(45), kPi / 2)) <= 1e-15);
  // alpha = -45 deg: 1/2 + 1/2 sin(delta), up to the overall factor 1/2.
  for (double d : phase_grid(32)) {
    CHECK(std::abs(detection_probability(s, deg(-45), d) - 0.5 * (0.5 + 0.5 * std::sin(d))) <= 1e-12);
  }
}

TEST_CASE("coincidence pattern: marked slits without polarizer give only the envelope") {
  const BenchGeometry g;
  const auto xs = scan_xs(g);
  const auto pattern = coincidence_pattern(marked(), std::nullopt, g, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(pattern[i] - 0.5 * envelope(xs[i], g)) <= 1e-12);
  }
}

TEST_CASE("coincidence pattern: bare double slit is envelope * (1 + cos delta)") {
  const BenchGeometry g;
  const auto xs = scan_xs(g);
  const auto pattern = coincidence_pattern(build_initial({0.0}), std::nullopt, g, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(pattern[i] - 0.5 * envelope(xs[i], g) * (1.0 + std::cos(delta(xs[i], g)))) <= 1e-12);
  }
}

TEST_CASE("engine equals the closed form on the full theta, alpha, phi, delta grid after one scale") {
  std::vector<double> engine, closed;
  for (double theta : {0.0, 22.5, 45.0})
    for (double alpha : {-45.0, 0.0, 45.0, 90.0})
      for (double phi : {0.0, kPi / 2, kPi}) {
        const auto s = apply_slit_qwps(build_initial({phi}), deg(theta), deg(theta + 90));
        for (double d : phase_grid(32)) {
          engine.push_back(detection_probability(s, deg(alpha), d));
          closed.push_back(closed_form_coincidence(deg(theta), deg(alpha), phi, d));
        }
      }
  REQUIRE(engine.size() == 3 * 4 * 3 * 32);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < engine.size(); ++i) {
    num += engine[i] * closed[i];
    den += engine[i] * engine[i];
  }
  const double scale = num / den;
  CHECK(scale == doctest::Approx(2.0).epsilon(1e-12));
  double worst = 0.0;
  for (std::size_t i = 0; i < engine.size(); ++i) worst = std::max(worst, std::abs(scale * engine[i] - closed[i]));
  CHECK(worst <= 1e-9);
}

TEST_CASE("fringe plus antifringe equals the unpolarized pattern") {
  const BenchGeometry g;
  const auto xs = scan_xs(g);
  const auto s = marked();
  const auto fringe = coincidence_pattern(s, deg(45), g, xs);
  const auto anti = coincidence_pattern(s, deg(-45), g, xs);
  const auto open = coincidence_pattern(s, std::nullopt, g, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(fringe[i] + anti[i] - open[i]) <= 1e-12);
}

TEST_CASE("which-path: p = x then s = R or L selects one slit") {
  const auto s = marked();
  const auto after_p = condition(s, {Arm::p, Basis::linear, 0});
  const auto r = condition(after_p, {Arm::s, Basis::circular, 0}).slit_probabilities();
  const auto l = condition(after_p, {Arm::s, Basis::circular, 1}).slit_probabilities();
  CHECK(r[0] >= 1.0 - 1e-12);
  CHECK(r[1] <= 1e-12);
  CHECK(l[1] >= 1.0 - 1e-12);
  CHECK(l[0] <= 1e-12);
}

TEST_CASE("which-path: s = R alone leaves the slits equally likely") {
  const auto s = marked();
  const auto r = condition(s, {Arm::s, Basis::circular, 0});
  // Oracle: sum |amplitude|^2 per slit of the R-projected vector by hand.
  const StateVector R = jones::right();
  double w[2] = {0.0, 0.0};
  for (std::size_t slit = 0; slit < 2; ++slit)
    for (std::size_t p = 0; p < 2; ++p) {
      Complex a{};
      for (std::size_t sp = 0; sp < 2; ++sp) a += std::conj(R[sp]) * s.vector()[slit * 4 + sp * 2 + p];
      w[slit] += std::norm(a);
    }
  CHECK(w[0] / (w[0] + w[1]) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.slit_probabilities()[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.slit_probabilities()[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("condition signals impossible outcomes") {
  const StateVector b = tensor(jones::x(), jones::y()).scaled(1.0 / std::numbers::sqrt2);
  const auto s = EraserState::from_branches(b, b);
  CHECK(code_of([&] { (void)condition(s, {Arm::p, Basis::linear, 0}); }) == ErrorCode::zero_probability_branch);
  CHECK(outcome_probability(s, {Arm::p, Basis::linear, 1}) == doctest::Approx(1.0));
}

TEST_CASE("measurement order does not change the coincidence pattern") {
  const BenchGeometry g;
  const auto xs = scan_xs(g, 101);
  for (int trial = 0; trial < 40; ++trial) {
    const double phi = random_angle();
    const auto s = apply_slit_qwps(build_initial({phi}), random_angle(), random_angle());
    const std::optional<double> alpha =
        trial % 4 == 0 ? std::nullopt : std::optional<double>(random_angle());
    const auto pf = pattern_by_ordering(s, alpha, g, xs, Ordering::p_first);
    const auto sf = pattern_by_ordering(s, alpha, g, xs, Ordering::s_first);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(pf[i] - sf[i]) <= 1e-12);
  }
}

TEST_CASE("a fully blocked p photon fails identically in both orders") {
  const BenchGeometry g;
  const auto xs = scan_xs(g, 11);
  const StateVector b = tensor(jones::x(), jones::y()).scaled(1.0 / std::numbers::sqrt2);
  const auto s = EraserState::from_branches(b, b);
  for (auto order : {Ordering::p_first, Ordering::s_first}) {
    CHECK(code_of([&] { (void)pattern_by_ordering(s, 0.0, g, xs, order); }) == ErrorCode::zero_probability_branch);
  }
  CHECK(code_of([&] { (void)coincidence_pattern(s, 0.0, g, xs); }) == ErrorCode::zero_probability_branch);
}

TEST_CASE("summing p-first patterns over both polarizer outcomes gives the singles pattern") {
  const BenchGeometry g;
  const auto xs = scan_xs(g, 101);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = apply_slit_qwps(build_initial({random_angle()}), random_angle(), random_angle());
    const double a = random_angle();
    const auto pass = pattern_by_ordering(s, a, g, xs, Ordering::p_first);
    const auto block = pattern_by_ordering(s, a + kPi / 2, g, xs, Ordering::p_first);
    const auto singles = coincidence_pattern(s, std::nullopt, g, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(pass[i] + block[i] - singles[i]) <= 1e-12);
  }
}

TEST_CASE("joint outcome probabilities over p outcomes and slits reproduce the singles") {
  // Oracle: for each slit branch and p outcome, |amplitude|^2 summed, versus
  // the path-collapsed singles at delta chosen so the cross term vanishes.
  const auto s = apply_slit_qwps(build_initial({0.7}), deg(10), deg(-70));
  double total = 0.0;
  for (int p = 0; p < 2; ++p) {
    const auto P = LinearOperator::projector_onto(basis_state(Basis::diagonal, p));
    const StateVector branch = apply(P, s.vector(), kIdlerSubsystem);
    for (std::size_t i = 0; i < branch.size(); ++i) total += std::norm(branch[i]);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // Averaging the singles over a full period leaves only the slit weights.
  double avg = 0.0;
  const auto grid = phase_grid(64);
  for (double d : grid) avg += detection_probability(s, std::nullopt, d);
  CHECK(avg / grid.size() == doctest::Approx(0.5 * total).epsilon(1e-12));
}

TEST_CASE("plate angles enter only through their difference without a polarizer") {
  // V = cos^2(theta2 - theta1): a common rotation of both plates keeps V = 0,
  // a differential error eps on each plate gives V = sin^2(2 eps).
  const auto bare = build_initial({0.0});
  CHECK(singles_visibility(apply_slit_qwps(bare, deg(50), deg(-40))) <= 1e-12);
  CHECK(singles_visibility(apply_slit_qwps(bare, deg(50), deg(-50))) ==
        doctest::Approx(std::pow(std::sin(deg(10)), 2)).epsilon(1e-10));
  for (int trial = 0; trial < 20; ++trial) {
    const double t1 = random_angle(), t2 = random_angle();
    CHECK(singles_visibility(apply_slit_qwps(bare, t1, t2)) ==
          doctest::Approx(std::pow(std::cos(t2 - t1), 2)).epsilon(1e-10));
  }
}

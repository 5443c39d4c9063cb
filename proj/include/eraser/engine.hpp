#pragma once

// Double-slit eraser model: slit path x s polarization x p polarization.
//
// The s photon passes the double slit; each slit can carry its own
// quarter-wave plate. The p photon optionally meets a linear polarizer
// before its detector. Detection of s at transverse position x collapses the
// path qubit onto |d(delta)> = (e^{-i delta/2}|s1> + e^{i delta/2}|s2>)/sqrt(2),
// so the slit-1 contribution arrives with relative phase e^{i delta}.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "eraser/optics.hpp"
#include "eraser/qstate.hpp"

namespace eraser {

inline constexpr std::size_t kPathSubsystem = 0;
inline constexpr std::size_t kSignalSubsystem = 1;  // s polarization
inline constexpr std::size_t kIdlerSubsystem = 2;   // p polarization

enum class Slit { s1 = 0, s2 = 1 };

class EraserState {
 public:
  /// Requires dims (2,2,2) and unit norm.
  explicit EraserState(StateVector state);

  /// (|s1> x b1 + |s2> x b2), each branch a (2,2) polarization vector.
  static EraserState from_branches(const StateVector& slit1, const StateVector& slit2);

  const StateVector& vector() const noexcept { return state_; }

  /// Unnormalized (s-pol, p-pol) amplitudes of one slit branch.
  StateVector branch(Slit slit) const;

  std::array<double, 2> slit_probabilities() const;

 private:
  StateVector state_;
};

/// Bench lengths in meters. Defaults: 702.2 nm pairs, 200 um slits with a
/// 200 um gap (400 um center to center), detector 83 cm behind the slits.
struct BenchGeometry {
  double wavelength = 702.2e-9;
  double slit_width = 200e-6;
  double slit_separation = 400e-6;  // center to center
  double distance = 0.83;           // slit plane to detector

  /// Throws invalid-argument on non-positive lengths or overlapping slits.
  void validate() const;
  friend bool operator==(const BenchGeometry&, const BenchGeometry&) = default;
};

/// Fraunhofer phase between the two slit paths: 2 pi d x / (lambda L).
double delta(double x, const BenchGeometry& g);

/// lambda L / d.
double fringe_period(const BenchGeometry& g);

/// Single-slit envelope sinc^2(pi a x / (lambda L)).
double envelope(double x, const BenchGeometry& g);

/// Path-qubit projector for detection at phase `delta`.
LinearOperator detector_projector(double delta);

/// Equal-weight slit superposition times the source pair state.
EraserState build_initial(const PairSourceSpec& spec);

/// Quarter-wave plate on the s polarization of each slit branch; an absent
/// angle means no plate in front of that slit.
EraserState apply_slit_qwps(const EraserState& state, std::optional<double> theta1,
                            std::optional<double> theta2);

enum class Arm { s, p };
enum class Basis { linear, diagonal, circular };  // {x,y}, {+,-}, {R,L}

struct MeasurementOutcome {
  Arm arm;
  Basis basis;
  int result;  // 0 or 1 in the order listed on Basis
};

StateVector basis_state(Basis basis, int result);

double outcome_probability(const EraserState& state, const MeasurementOutcome& outcome);

/// Projects the outcome's polarization and renormalizes; the path factor is
/// untouched. Throws zero-probability-branch for impossible outcomes.
EraserState condition(const EraserState& state, const MeasurementOutcome& outcome);

/// Joint probability that s is found at phase `delta` and p passes a
/// polarizer at `alpha` (or p is detected at all when alpha is absent),
/// envelope excluded.
double detection_probability(const EraserState& state, std::optional<double> alpha, double delta);

/// envelope(x) * detection_probability at each x. Throws
/// zero-probability-branch when the polarizer blocks p entirely.
std::vector<double> coincidence_pattern(const EraserState& state, std::optional<double> alpha,
                                        const BenchGeometry& g, std::span<const double> xs);

/// 1/2 + [1/2 - sin^2(theta+alpha) cos^2(phi/2) - sin^2(theta-alpha) sin^2(phi/2)] sin(delta)
/// for plates at theta and theta + 90 deg. Twice detection_probability.
double closed_form_coincidence(double theta, double alpha, double phi, double delta);

enum class Ordering { p_first, s_first };

/// Coincidence pattern computed in the given measurement order. p_first
/// conditions on the polarizer outcome and weights the conditional s pattern
/// by its probability; s_first forms the joint amplitudes at x and projects p
/// afterwards. Without a polarizer the p outcomes {x, y} are summed.
std::vector<double> pattern_by_ordering(const EraserState& state, std::optional<double> alpha,
                                        const BenchGeometry& g, std::span<const double> xs,
                                        Ordering order);

}  // namespace eraser

#pragma once

#include <cstddef>
#include <numbers>

#include <Eigen/Core>

#include "fracprop/multiplier.hpp"
#include "fracprop/semistability.hpp"

namespace fracprop {

/// Continuous phase phi on an increasing s = ln r grid.
struct PhaseTrace {
  Eigen::VectorXd s;
  Eigen::VectorXd phi;
  std::size_t base_index = 0;

  /// Linear interpolation in s; Range error outside [s.front(), s.back()].
  double at(double s_query) const;
};

/// Largest admissible principal-value step between neighbouring samples.
inline constexpr double kDefaultMaxStep = 0.75 * std::numbers::pi;

/// Lifts unit-modulus samples to a continuous phase.  phi[base_index] is the
/// representative of arg(values[base_index]) nearest to base_value; every
/// other entry is arg(values[k]) + 2 pi n_k continuing its neighbour.
/// Throws UnwrapResolution (naming the index) if two neighbours differ by
/// max_step or more, InvalidInput if some |values[k]| is off 1 by > 1e-9.
PhaseTrace unwrap_phase(const Eigen::VectorXd& s, const Eigen::VectorXcd& values, double base_value,
                        std::size_t base_index = 0, double max_step = kDefaultMaxStep);

struct BranchIntegers {
  long M = 0;
  long N = 0;
  double max_deviation = 0.0;  ///< worst distance of a raw quotient to its integer
  std::size_t test_points = 0;
};

/// M and N from phi(a r) = 2 phi(r) + 2 pi M and phi(b r) = 3 phi(r) + 2 pi N
/// over every trace point whose a- and b-shifts stay on the trace (>= 100
/// needed).  Non-constant integers raise InconsistentBranch; N != 2M raises
/// SemistabilityViolation.
BranchIntegers branch_integers(const PhaseTrace& trace, const SemistablePair& pair);

struct AffineFit {
  double alpha = 0.0;
  double gamma = 0.0;
  double residual = 0.0;  ///< max |psi_delta - (alpha s + gamma)|
  std::size_t windows = 0;
};

/// Moving average of psi over windows of half-width delta (rounded to whole
/// grid steps) followed by a least-squares line through the averages.
/// s must be uniform.
AffineFit mollified_affine_fit(const Eigen::VectorXd& s, const Eigen::VectorXd& psi, double delta);

struct IdentifyOptions {
  double tol = 1e-9;        ///< identity threshold and reconstruction tolerance
  double pair_tol = 1e-6;   ///< bound on |a^alpha - 2| and |b^alpha - 3|
  double delta_steps = 8;   ///< mollifier half-width in grid steps
  double max_step = kDefaultMaxStep;
  /// Samples with |phi_1| below this fraction of max |phi_1| are left out of
  /// the log fit (their relative round-off would dominate).
  double fit_floor = 1e-6;
  /// Extra full turns added to the base branch at r = 1.
  int base_turns = 0;
};

struct IdentificationResult {
  double alpha = 0.0;
  double beta = 0.0;
  long M = 0;
  long N = 0;
  double gamma = 0.0;  ///< ln |beta|; NaN for the identity
  double fit_residual = 0.0;
  double pair_residual_a = 0.0;  ///< |a^alpha - 2|
  double pair_residual_b = 0.0;  ///< |b^alpha - 3|
  double reconstruction_residual = 0.0;
  bool is_identity = false;
  double r_lo = 0.0;  ///< part of the table that was resolved and used
  double r_hi = 0.0;
};

/// Recovers (alpha, beta) with m(r) = exp(i beta r^alpha) from a tabulated
/// radial profile and its semistability pair.  The phase is lifted from the
/// sample nearest r = 1 outwards for as long as neighbouring samples differ
/// by less than max_step; everything downstream works on that window.
IdentificationResult identify(const Tabulated& profile, const SemistablePair& pair,
                              const IdentifyOptions& options = {});

}  // namespace fracprop

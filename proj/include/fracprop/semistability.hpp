#pragma once

#include <Eigen/Core>

#include "fracprop/multiplier.hpp"
#include "fracprop/spectral_core.hpp"

namespace fracprop {

/// Constants (a, b) with T^2 = T_a and T^3 = T_b.  Held in extended
/// precision: canonical pairs are irrational, and a^alpha - 2 evaluated
/// from a double-rounded a is already ~1e-16, enough to show up in residuals
/// once beta r^alpha reaches 1e4.
struct SemistablePair {
  SemistablePair(long double a, long double b);

  long double a;
  long double b;
};

/// (2^{1/alpha}, 3^{1/alpha}).
SemistablePair canonical_pair(double alpha);

struct SemistabilityReport {
  double res2 = 0.0;     ///< sup |m(a r) - m(r)^2|
  double res3 = 0.0;     ///< sup |m(b r) - m(r)^3|
  double sym_res = 0.0;  ///< sup |m(xi) - m(-xi)|
  bool pass = false;
  SemistablePair pair{2.0L, 3.0L};
  double tol = 0.0;
  double r_lo = 0.0;  ///< radii actually tested
  double r_hi = 0.0;
};

/// Default test radii: 4096 log-uniform points on [e^-3, e^3].
Eigen::VectorXd default_test_radii();

/// Symbol-level form of T^2 = T_a, T^3 = T_b.  Tabulated symbols are tested
/// only at radii r with r, a r, b r all inside the table; the effective range
/// is reported and fewer than 16 usable radii is a Range error.
SemistabilityReport check_semistable(const MultiplierSpec& spec, const SemistablePair& pair,
                                     const Eigen::VectorXd& r_grid, double tol);

/// sup over r_grid of |m(r)^2 - m(lambda r)|, with the square taken through
/// combine() and the dilation through dilate().
double order_residual(const ClosedForm& spec, long double lambda, const Eigen::VectorXd& r_grid);

/// T^2 = T_{2^{1/alpha}} at symbol level (within 1e-12 on the default radii).
/// alpha = 0 is only accepted for the identity (beta = 0).
bool check_order(const ClosedForm& spec);

/// ||T T f - T_a f|| / ||f|| at signal level, T_a through conjugated_apply.
double signal_order_residual(const ClosedForm& spec, const SampledSignal& f, const BandSpec& band);

}  // namespace fracprop

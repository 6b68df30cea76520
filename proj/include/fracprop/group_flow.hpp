#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fracprop/multiplier.hpp"
#include "fracprop/spectral_core.hpp"

namespace fracprop {

/// t -> exp(i beta t |xi|^alpha).  (0, 0) is the trivial group; otherwise both
/// constants must be nonzero.
struct GroupSpec {
  GroupSpec(double alpha, double beta);

  double alpha;
  double beta;

  bool trivial() const { return alpha == 0.0 && beta == 0.0; }
};

/// Symbol of T(t); T(0) is the constant-1 symbol (0, 0).
ClosedForm member(const GroupSpec& group, double t);

/// ||T(t1 + t2) f - T(t1) T(t2) f|| / ||f|| on the band.
double check_group_law(const GroupSpec& group, double t1, double t2, const SampledSignal& f,
                       const BandSpec& band);

/// sup_r |m_t(r) - m_1(t^{1/alpha} r)| over r_grid, i.e. T(t) = T(1)_{t^{1/alpha}}.
double check_scaling(const GroupSpec& group, double t, const Eigen::VectorXd& r_grid);
double check_scaling(const GroupSpec& group, double t);

struct SlopeFit {
  double slope = 0.0;
  double residual = 0.0;  ///< max |beta_tilde - slope t|
};

/// Least-squares slope through the origin of beta_tilde(t) = beta t.
/// Needs >= 8 samples and at least two distinct t.
SlopeFit recover_beta(const std::vector<std::pair<double, double>>& samples);

/// Reads the symbol of T(t) back off a signal: evolves a probe with flat
/// spectrum on the band, divides output by input spectrum on the positive
/// in-band bins, lifts the phase along the bins and resamples it onto
/// `points` log-uniform radii spanning those bins.
Tabulated measure_member_symbol(const GroupSpec& group, double t, const SpatialGrid& grid,
                                const BandSpec& band, std::size_t points);

}  // namespace fracprop

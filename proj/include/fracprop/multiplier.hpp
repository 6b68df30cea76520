#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "fracprop/error.hpp"
#include "fracprop/spectral_core.hpp"

namespace fracprop {

/// m(xi) = exp(i beta |xi|^alpha).
struct ClosedForm {
  double alpha = 0.0;
  double beta = 0.0;

  bool operator==(const ClosedForm&) const = default;
};

/// Radial profile sampled on a log-uniform radius grid r_k = exp(s0 + k h).
/// Evaluation interpolates the lifted (continuous) phase with a four-point
/// Lagrange stencil in s and re-exponentiates, so values stay on the unit
/// circle and never cut a chord between neighbouring samples.
class Tabulated {
 public:
  /// Validates strict increase, log-uniform spacing (1e-9 relative) and
  /// |value| = 1 within modulus_tol; values are then renormalised exactly.
  Tabulated(const Eigen::VectorXd& r, const Eigen::VectorXcd& values, double modulus_tol = 1e-12);

  /// Log-uniform grid of `count` radii on [r_min, r_max].
  static Eigen::VectorXd log_grid(double r_min, double r_max, std::size_t count);

  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double s_front() const { return s0_; }
  double s_step() const { return h_; }
  double s_back() const { return s0_ + h_ * static_cast<double>(size() - 1); }
  double r_min() const { return std::exp(s_front()); }
  double r_max() const { return std::exp(s_back()); }
  double s_at(std::size_t k) const { return s0_ + h_ * static_cast<double>(k); }

  Eigen::VectorXd radii() const;
  const Eigen::VectorXcd& values() const { return values_; }
  /// Phase lifted by principal-value increments from the first sample.
  const Eigen::VectorXd& lifted_phase() const { return phase_; }

  /// Interpolated lifted phase at radius r; Range error outside [r_min, r_max].
  double phase_at(double r) const;

  /// Profile of r -> m(lambda r): same samples on the grid shifted by -ln(lambda).
  Tabulated dilated(double lambda) const;

 private:
  Tabulated(double s0, double h, Eigen::VectorXcd values, Eigen::VectorXd phase);

  double s0_;
  double h_;
  Eigen::VectorXcd values_;
  Eigen::VectorXd phase_;
};

using MultiplierSpec = std::variant<ClosedForm, Tabulated>;

template <class Scalar>
Scalar phase(const ClosedForm& spec, Scalar r) {
  using std::pow;
  if (spec.alpha == 0.0) return static_cast<Scalar>(spec.beta);
  if (r == Scalar(0) && spec.alpha < 0.0) {
    throw Error(ErrorKind::Domain, "closed-form symbol with alpha < 0 is singular at xi = 0");
  }
  return static_cast<Scalar>(spec.beta) * pow(r, static_cast<Scalar>(spec.alpha));
}

/// Continuous phase of the radial profile at r >= 0.
double phase(const MultiplierSpec& spec, double r);

/// m(xi) on the unit circle; even in xi by construction.
Complex eval(const MultiplierSpec& spec, double xi);

/// Closed interval of radii on which the symbol can be evaluated.
std::pair<double, double> valid_range(const MultiplierSpec& spec);

/// Symbol of T_lambda: xi -> m(lambda xi).  The factor is taken in extended
/// precision so that closed-form coefficients beta * lambda^alpha round
/// correctly (e.g. lambda = 2^{1/alpha} gives exactly 2 beta).
MultiplierSpec dilate(const MultiplierSpec& spec, long double lambda);

/// Samples a symbol on `count` log-uniform radii spanning [r_min, r_max].
Tabulated tabulate(const MultiplierSpec& spec, double r_min, double r_max, std::size_t count);

/// Pointwise product  prod_j m_j(xi)^{p_j}  for integer powers.
class SymbolProduct {
 public:
  using Factor = std::pair<MultiplierSpec, int>;

  explicit SymbolProduct(std::vector<Factor> factors);

  double phase(double r) const;
  Complex eval(double xi) const;
  std::pair<double, double> valid_range() const { return range_; }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Collapses to a single closed form when every factor is closed-form and
  /// all factors with nonzero net coefficient share one exponent.
  std::optional<ClosedForm> closed_form() const;

 private:
  std::vector<Factor> factors_;
  std::pair<double, double> range_;
};

SymbolProduct combine(std::vector<SymbolProduct::Factor> factors);

inline double phase(const SymbolProduct& p, double r) { return p.phase(r); }
inline Complex eval(const SymbolProduct& p, double xi) { return p.eval(xi); }
inline std::pair<double, double> valid_range(const SymbolProduct& p) { return p.valid_range(); }

template <class T>
concept RadialSymbol = requires(const T& m, double r) {
  { fracprop::phase(m, r) } -> std::convertible_to<double>;
  { fracprop::valid_range(m) } -> std::convertible_to<std::pair<double, double>>;
};

struct SupLocation {
  double value = 0.0;   ///< sup of |m1 - m2| over the band
  double radius = 0.0;  ///< radius where it is attained
};

namespace detail {
/// Dense log grid on [lo, hi] plus golden-section polish of
/// 2 |sin(gap(r) / 2)| around the grid argmax.
SupLocation sup_of_gap(const std::function<double(double)>& gap, double lo, double hi,
                       std::size_t samples);
void require_covers(std::pair<double, double> range, double lo, double hi, const char* which);
}  // namespace detail

/// sup over lo <= r <= hi of |m1(r) - m2(r)|, which is the exact norm of
/// T[m1] - T[m2] restricted to L^2_R.
template <RadialSymbol A, RadialSymbol B>
SupLocation band_sup_location(const A& m1, const B& m2, const BandSpec& band,
                              std::size_t samples = 4096) {
  detail::require_covers(fracprop::valid_range(m1), band.lo(), band.hi(), "first symbol");
  detail::require_covers(fracprop::valid_range(m2), band.lo(), band.hi(), "second symbol");
  return detail::sup_of_gap(
      [&](double r) { return fracprop::phase(m1, r) - fracprop::phase(m2, r); }, band.lo(),
      band.hi(), samples);
}

template <RadialSymbol A, RadialSymbol B>
double band_sup_distance(const A& m1, const B& m2, const BandSpec& band,
                         std::size_t samples = 4096) {
  return band_sup_location(m1, m2, band, samples).value;
}

struct ContinuityReport {
  std::vector<double> eps_grid;  ///< ascending
  std::vector<double> omega;     ///< non-decreasing
  double threshold = 0.0;
  bool luc_flag = false;
};

/// omega(eps) = sup over |ln lambda| <= eps (probed at lambda = e^{+-eps}) of
/// the band sup distance between m(lambda .) and m.  The flag compares
/// omega at the smallest positive eps with `threshold`, defaulting to
/// max(1e-6, 10 eps_min * local phase-slope bound).
ContinuityReport continuity_modulus(const MultiplierSpec& spec, const BandSpec& band,
                                    std::vector<double> eps_grid,
                                    std::optional<double> threshold = std::nullopt);

/// Bound on |d phase / d ln r| over [lo, hi].  For tabulated profiles each
/// cell's slope is replaced by the smallest slope among it and its two
/// neighbours, so an isolated jump does not count as steepness.
double local_slope_bound(const MultiplierSpec& spec, double lo, double hi);

}  // namespace fracprop

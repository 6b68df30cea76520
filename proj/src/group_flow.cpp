#include "fracprop/group_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracprop/error.hpp"
#include "fracprop/propagator.hpp"
#include "fracprop/semistability.hpp"

namespace fracprop {

GroupSpec::GroupSpec(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw Error(ErrorKind::Domain, "group constants must be finite");
  if ((alpha == 0.0) != (beta == 0.0)) {
    throw Error(ErrorKind::Domain, "a nontrivial group needs alpha != 0 and beta != 0; use (0, 0) for T(t) = I");
  }
}

ClosedForm member(const GroupSpec& group, double t) {
  if (t == 0.0 || group.trivial()) return ClosedForm{0.0, 0.0};
  return ClosedForm{group.alpha, group.beta * t};
}

double check_group_law(const GroupSpec& group, double t1, double t2, const SampledSignal& f, const BandSpec& band) {
  const SampledSignal joint = apply(member(group, t1 + t2), f, band);
  const SampledSignal stepped = apply(member(group, t1), apply(member(group, t2), f, band), band);
  return norm(SampledSignal(f.grid, joint.values - stepped.values)) / norm(f);
}

double check_scaling(const GroupSpec& group, double t, const Eigen::VectorXd& r_grid) {
  if (group.alpha == 0.0) throw Error(ErrorKind::Domain, "scaling identity needs alpha != 0");
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "scaling identity needs t > 0");
  const MultiplierSpec direct = member(group, t);
  const long double lambda = std::pow(static_cast<long double>(t), 1.0L / static_cast<long double>(group.alpha));
  const MultiplierSpec rescaled = dilate(member(group, 1.0), lambda);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < r_grid.size(); ++k) {
    worst = std::max(worst, std::abs(eval(direct, r_grid[k]) - eval(rescaled, r_grid[k])));
  }
  return worst;
}

double check_scaling(const GroupSpec& group, double t) { return check_scaling(group, t, default_test_radii()); }

SlopeFit recover_beta(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 8) throw Error(ErrorKind::InsufficientData, "slope recovery needs at least 8 samples");
  const bool all_same = std::all_of(samples.begin(), samples.end(),
                                    [&](const auto& p) { return p.first == samples.front().first; });
  if (all_same) throw Error(ErrorKind::InsufficientData, "slope recovery needs distinct t values");
  double tt = 0.0, tb = 0.0;
  for (const auto& [t, b] : samples) {
    tt += t * t;
    tb += t * b;
  }
  SlopeFit fit;
  fit.slope = tb / tt;
  for (const auto& [t, b] : samples) fit.residual = std::max(fit.residual, std::abs(b - fit.slope * t));
  return fit;
}

Tabulated measure_member_symbol(const GroupSpec& group, double t, const SpatialGrid& grid, const BandSpec& band,
                                std::size_t points) {
  band.require_resolvable(grid);
  Spectrum flat(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (band.contains(std::abs(grid.xi(k)))) flat.values[static_cast<Eigen::Index>(k)] = 1.0;
  }
  const Spectrum out = forward_transform(apply(member(group, t), inverse_transform(flat), band));

  std::vector<double> xi;
  std::vector<double> phase;
  for (std::size_t k = 1; k < grid.size() / 2; ++k) {
    if (!band.contains(grid.xi(k))) continue;
    const Complex m = out.values[static_cast<Eigen::Index>(k)];
    const double principal = std::arg(m);
    double lifted = principal;
    if (!phase.empty()) {
      if (std::abs(std::remainder(principal - phase.back(), 2.0 * std::numbers::pi)) >= 0.75 * std::numbers::pi) {
        throw Error(ErrorKind::UnwrapResolution, "measured symbol varies too fast between frequency bins");
      }
      lifted = principal + 2.0 * std::numbers::pi * std::round((phase.back() - principal) / (2.0 * std::numbers::pi));
    }
    xi.push_back(grid.xi(k));
    phase.push_back(lifted);
  }
  if (xi.size() < 4) throw Error(ErrorKind::InsufficientData, "band holds fewer than 4 positive bins");

  // Four-point Lagrange interpolation on the uniform bin grid.
  const double dxi = grid.dxi();
  const auto nb = static_cast<std::ptrdiff_t>(xi.size());
  auto lifted_at = [&](double r) {
    const double u_full = std::clamp((r - xi.front()) / dxi, 0.0, static_cast<double>(nb - 1));
    const std::ptrdiff_t i = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(u_full), 1, nb - 3);
    const double u = u_full - static_cast<double>(i);
    return -u * (u - 1.0) * (u - 2.0) / 6.0 * phase[i - 1] + (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0 * phase[i] -
           (u + 1.0) * u * (u - 2.0) / 2.0 * phase[i + 1] + (u + 1.0) * u * (u - 1.0) / 6.0 * phase[i + 2];
  };

  const Eigen::VectorXd r = Tabulated::log_grid(xi.front(), xi.back(), points);
  Eigen::VectorXcd values(r.size());
  for (Eigen::Index k = 0; k < r.size(); ++k) values[k] = std::polar(1.0, lifted_at(r[k]));
  return Tabulated(r, values);
}

}  // namespace fracprop

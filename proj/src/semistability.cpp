#include "fracprop/semistability.hpp"

#include <algorithm>
#include <cmath>

#include "fracprop/error.hpp"
#include "fracprop/propagator.hpp"

namespace fracprop {

namespace {

long double chord(long double gap) { return 2.0L * std::abs(std::sin(0.5L * gap)); }

// Phase of m(scale * r), in extended precision for closed forms.
long double scaled_phase(const MultiplierSpec& spec, long double scale, double r) {
  if (const auto* c = std::get_if<ClosedForm>(&spec)) return phase<long double>(*c, scale * r);
  return phase(spec, static_cast<double>(scale * r));
}

}  // namespace

SemistablePair::SemistablePair(long double a_, long double b_) : a(a_), b(b_) {
  if (!(a > 0.0L) || !(b > 0.0L) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::Domain, "semistability constants must be positive and finite");
  }
  if (a == 1.0L) throw Error(ErrorKind::Domain, "a = 1 forces m = 1; not a semistability pair");
}

SemistablePair canonical_pair(double alpha) {
  if (alpha == 0.0 || !std::isfinite(alpha)) {
    throw Error(ErrorKind::Domain, "canonical pair needs a finite nonzero order alpha");
  }
  const long double inv = 1.0L / static_cast<long double>(alpha);
  return {std::pow(2.0L, inv), std::pow(3.0L, inv)};
}

Eigen::VectorXd default_test_radii() { return Tabulated::log_grid(std::exp(-3.0), std::exp(3.0), 4096); }

SemistabilityReport check_semistable(const MultiplierSpec& spec, const SemistablePair& pair,
                                     const Eigen::VectorXd& r_grid, double tol) {
  SemistabilityReport report;
  report.pair = pair;
  report.tol = tol;

  const auto [lo, hi] = valid_range(spec);
  const long double top = std::max({1.0L, pair.a, pair.b});
  const long double bottom = std::min({1.0L, pair.a, pair.b});
  std::vector<double> radii;
  for (Eigen::Index k = 0; k < r_grid.size(); ++k) {
    const double r = r_grid[k];
    if (r * bottom >= lo * (1.0 - 1e-12) && r * top <= hi * (1.0 + 1e-12)) radii.push_back(r);
  }
  if (radii.size() < 16) {
    throw Error(ErrorKind::Range, "symbol range too small to test the semistability pair");
  }
  report.r_lo = radii.front();
  report.r_hi = radii.back();

  long double res2 = 0.0L, res3 = 0.0L, sym = 0.0L;
  for (double r : radii) {
    const long double base = scaled_phase(spec, 1.0L, r);
    res2 = std::max(res2, chord(scaled_phase(spec, pair.a, r) - 2.0L * base));
    res3 = std::max(res3, chord(scaled_phase(spec, pair.b, r) - 3.0L * base));
    sym = std::max(sym, static_cast<long double>(std::abs(eval(spec, r) - eval(spec, -r))));
  }
  report.res2 = static_cast<double>(res2);
  report.res3 = static_cast<double>(res3);
  report.sym_res = static_cast<double>(sym);
  report.pass = report.res2 <= tol && report.res3 <= tol && report.sym_res <= tol;
  return report;
}

double order_residual(const ClosedForm& spec, long double lambda, const Eigen::VectorXd& r_grid) {
  const SymbolProduct squared = combine({{spec, 2}});
  const MultiplierSpec dilated = dilate(spec, lambda);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < r_grid.size(); ++k) {
    const double r = r_grid[k];
    worst = std::max(worst, std::abs(squared.eval(r) - eval(dilated, r)));
  }
  return worst;
}

bool check_order(const ClosedForm& spec) {
  if (spec.alpha == 0.0) {
    if (spec.beta != 0.0) {
      throw Error(ErrorKind::Domain, "alpha = 0 with beta != 0 is not a Schroedinger operator");
    }
    return true;
  }
  return order_residual(spec, canonical_pair(spec.alpha).a, default_test_radii()) <= 1e-12;
}

double signal_order_residual(const ClosedForm& spec, const SampledSignal& f, const BandSpec& band) {
  const SampledSignal twice = apply(spec, apply(spec, f, band), band);
  const SampledSignal conjugated =
      conjugated_apply(spec, static_cast<double>(canonical_pair(spec.alpha).a), f, band);
  return norm(SampledSignal(f.grid, twice.values - conjugated.values)) / norm(f);
}

}  // namespace fracprop

#include "fracprop/identification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "fracprop/error.hpp"

namespace fracprop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double principal_step(Complex from, Complex to) { return std::arg(to * std::conj(from)); }

double continue_branch(double previous, double principal) {
  return principal + kTwoPi * std::round((previous - principal) / kTwoPi);
}

void require_uniform(const Eigen::VectorXd& s) {
  const Eigen::Index n = s.size();
  const double h = (s[n - 1] - s[0]) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidInput, "grid must be increasing");
  for (Eigen::Index k = 1; k < n; ++k) {
    if (std::abs((s[k] - s[k - 1]) - h) > 1e-9 * h) {
      throw Error(ErrorKind::InvalidInput, "grid must be uniform (index " + std::to_string(k) + ")");
    }
  }
}

}  // namespace

double PhaseTrace::at(double s_query) const {
  const Eigen::Index n = s.size();
  const double h = (s[n - 1] - s[0]) / static_cast<double>(n - 1);
  if (s_query < s[0] - 1e-9 * h || s_query > s[n - 1] + 1e-9 * h) {
    throw Error(ErrorKind::Range, "query outside the phase trace");
  }
  const double t = std::clamp((s_query - s[0]) / h, 0.0, static_cast<double>(n - 1));
  const Eigen::Index i = std::min<Eigen::Index>(static_cast<Eigen::Index>(t), n - 2);
  const double u = t - static_cast<double>(i);
  return (1.0 - u) * phi[i] + u * phi[i + 1];
}

PhaseTrace unwrap_phase(const Eigen::VectorXd& s, const Eigen::VectorXcd& values, double base_value,
                        std::size_t base_index, double max_step) {
  const auto n = static_cast<std::size_t>(values.size());
  if (static_cast<std::size_t>(s.size()) != n || n < 2) {
    throw Error(ErrorKind::InvalidInput, "phase unwrap needs matching s and value arrays of length >= 2");
  }
  if (base_index >= n) throw Error(ErrorKind::InvalidInput, "base index outside the trace");
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    if (std::abs(std::abs(values[i]) - 1.0) > 1e-9) {
      throw Error(ErrorKind::InvalidInput, "sample " + std::to_string(k) + " is not unit modulus");
    }
    if (k > 0 && !(s[i] > s[i - 1])) throw Error(ErrorKind::InvalidInput, "s grid must be increasing");
  }

  PhaseTrace trace;
  trace.s = s;
  trace.phi.resize(static_cast<Eigen::Index>(n));
  trace.base_index = base_index;

  auto check = [&](std::size_t from, std::size_t to) {
    const double step = principal_step(values[static_cast<Eigen::Index>(from)], values[static_cast<Eigen::Index>(to)]);
    if (std::abs(step) >= max_step) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "phase jumps by %.6g rad between samples %zu and %zu; grid too coarse",
                    step, std::min(from, to), std::max(from, to));
      throw Error(ErrorKind::UnwrapResolution, buf);
    }
  };

  const auto b = static_cast<Eigen::Index>(base_index);
  trace.phi[b] = continue_branch(base_value, std::arg(values[b]));
  for (std::size_t k = base_index + 1; k < n; ++k) {
    check(k - 1, k);
    const auto i = static_cast<Eigen::Index>(k);
    trace.phi[i] = continue_branch(trace.phi[i - 1], std::arg(values[i]));
  }
  for (std::size_t k = base_index; k-- > 0;) {
    check(k + 1, k);
    const auto i = static_cast<Eigen::Index>(k);
    trace.phi[i] = continue_branch(trace.phi[i + 1], std::arg(values[i]));
  }
  return trace;
}

BranchIntegers branch_integers(const PhaseTrace& trace, const SemistablePair& pair) {
  const double shift_a = static_cast<double>(std::log(pair.a));
  const double shift_b = static_cast<double>(std::log(pair.b));
  const Eigen::Index n = trace.s.size();
  const double s_lo = trace.s[0];
  const double s_hi = trace.s[n - 1];

  BranchIntegers out;
  bool first = true;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double s = trace.s[k];
    const double sa = s + shift_a;
    const double sb = s + shift_b;
    if (sa < s_lo || sa > s_hi || sb < s_lo || sb > s_hi) continue;
    const double qa = (trace.at(sa) - 2.0 * trace.phi[k]) / kTwoPi;
    const double qb = (trace.at(sb) - 3.0 * trace.phi[k]) / kTwoPi;
    const long ma = std::lround(qa);
    const long nb = std::lround(qb);
    if (first) {
      out.M = ma;
      out.N = nb;
      first = false;
    }
    out.max_deviation = std::max({out.max_deviation, std::abs(qa - static_cast<double>(out.M)),
                                  std::abs(qb - static_cast<double>(out.N))});
    if (ma != out.M || nb != out.N || out.max_deviation > 0.01) {
      char buf[240];
      std::snprintf(buf, sizeof buf,
                    "branch integers not constant: at s = %.6g got M = %ld, N = %ld (first M = %ld, N = %ld, "
                    "deviation %.3g)",
                    s, ma, nb, out.M, out.N, out.max_deviation);
      throw Error(ErrorKind::InconsistentBranch, buf);
    }
    ++out.test_points;
  }
  if (out.test_points < 100) {
    throw Error(ErrorKind::InsufficientData,
                "only " + std::to_string(out.test_points) + " trace points admit both a- and b-shifts (need 100)");
  }
  if (out.N != 2 * out.M) {
    throw Error(ErrorKind::SemistabilityViolation,
                "branch integers violate N = 2M: M = " + std::to_string(out.M) + ", N = " + std::to_string(out.N));
  }
  return out;
}

AffineFit mollified_affine_fit(const Eigen::VectorXd& s, const Eigen::VectorXd& psi, double delta) {
  const Eigen::Index n = s.size();
  if (n != psi.size()) throw Error(ErrorKind::InvalidInput, "s and psi differ in length");
  if (n < 16) throw Error(ErrorKind::InsufficientData, "affine fit needs at least 16 samples");
  require_uniform(s);
  const double h = (s[n - 1] - s[0]) / static_cast<double>(n - 1);
  if (!(delta >= h * (1.0 - 1e-9))) {
    throw Error(ErrorKind::Configuration, "mollifier half-width must be at least one grid step");
  }
  const auto w = static_cast<Eigen::Index>(std::max(1.0, std::round(delta / h)));
  const Eigen::Index windows = n - 2 * w;
  if (windows < 16) {
    throw Error(ErrorKind::InsufficientData,
                "only " + std::to_string(std::max<Eigen::Index>(windows, 0)) + " full mollifier windows (need 16)");
  }

  Eigen::VectorXd centre = s.segment(w, windows);
  Eigen::VectorXd smooth(windows);
  const double inv = 1.0 / static_cast<double>(2 * w + 1);
  for (Eigen::Index i = 0; i < windows; ++i) smooth[i] = psi.segment(i, 2 * w + 1).sum() * inv;

  const double s_mean = centre.mean();
  const double p_mean = smooth.mean();
  const Eigen::ArrayXd ds = centre.array() - s_mean;
  const Eigen::ArrayXd dp = smooth.array() - p_mean;
  AffineFit fit;
  fit.alpha = (ds * dp).sum() / ds.square().sum();
  fit.gamma = p_mean - fit.alpha * s_mean;
  fit.residual = (smooth.array() - (fit.alpha * centre.array() + fit.gamma)).abs().maxCoeff();
  fit.windows = static_cast<std::size_t>(windows);
  return fit;
}

IdentificationResult identify(const Tabulated& profile, const SemistablePair& pair, const IdentifyOptions& options) {
  IdentificationResult result;
  const Eigen::VectorXcd& values = profile.values();
  const auto n = static_cast<Eigen::Index>(profile.size());

  if ((values.array() - 1.0).abs().maxCoeff() <= options.tol) {
    result.is_identity = true;
    result.gamma = std::numeric_limits<double>::quiet_NaN();
    result.r_lo = profile.r_min();
    result.r_hi = profile.r_max();
    return result;
  }

  // Resolved window around the sample nearest r = 1.
  const auto base = static_cast<Eigen::Index>(
      std::clamp(std::round(-profile.s_front() / profile.s_step()), 0.0, static_cast<double>(n - 1)));
  Eigen::Index lo = base;
  Eigen::Index hi = base;
  while (lo > 0 && std::abs(principal_step(values[lo], values[lo - 1])) < options.max_step) --lo;
  while (hi + 1 < n && std::abs(principal_step(values[hi], values[hi + 1])) < options.max_step) ++hi;
  const Eigen::Index count = hi - lo + 1;
  if (count < 16) {
    throw Error(ErrorKind::UnwrapResolution, "fewer than 16 resolvable samples around r = 1");
  }
  Eigen::VectorXd s(count);
  for (Eigen::Index k = 0; k < count; ++k) s[k] = profile.s_at(static_cast<std::size_t>(lo + k));
  result.r_lo = std::exp(s[0]);
  result.r_hi = std::exp(s[count - 1]);

  const double base_value = std::arg(values[base]) + kTwoPi * options.base_turns;
  const PhaseTrace trace = unwrap_phase(s, values.segment(lo, count), base_value,
                                        static_cast<std::size_t>(base - lo), options.max_step);

  BranchIntegers branches;
  try {
    branches = branch_integers(trace, pair);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InconsistentBranch || e.kind() == ErrorKind::SemistabilityViolation) {
      throw Error(ErrorKind::InconsistentPair, std::string("symbol is not semistable for this pair: ") + e.what());
    }
    throw;
  }
  result.M = branches.M;
  result.N = branches.N;

  const Eigen::VectorXd phi1 = trace.phi.array() + kTwoPi * static_cast<double>(branches.M);
  const double peak = phi1.cwiseAbs().maxCoeff();
  const double floor = options.fit_floor * peak;
  if (!(peak > options.tol)) {
    throw Error(ErrorKind::DegenerateSymbol, "shifted phase phi_1 vanishes on the resolved range");
  }
  int sign = 0;
  for (Eigen::Index k = 0; k < count; ++k) {
    if (std::abs(phi1[k]) <= options.tol) continue;
    const int sk = phi1[k] > 0.0 ? 1 : -1;
    if (sign == 0) sign = sk;
    if (sk != sign) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "shifted phase phi_1 changes sign near r = %.6g", std::exp(s[k]));
      throw Error(ErrorKind::DegenerateSymbol, buf);
    }
  }

  // Longest run of samples whose |phi_1| is well above round-off.
  Eigen::Index run_start = 0, run_len = 0;
  for (Eigen::Index k = 0; k < count;) {
    if (std::abs(phi1[k]) < floor) {
      ++k;
      continue;
    }
    Eigen::Index j = k;
    while (j < count && std::abs(phi1[j]) >= floor) ++j;
    if (j - k > run_len) {
      run_start = k;
      run_len = j - k;
    }
    k = j;
  }
  const Eigen::VectorXd s_fit = s.segment(run_start, run_len);
  const Eigen::VectorXd psi = phi1.segment(run_start, run_len).cwiseAbs().array().log();
  const AffineFit fit = mollified_affine_fit(s_fit, psi, options.delta_steps * profile.s_step());

  result.alpha = fit.alpha;
  result.gamma = fit.gamma;
  result.fit_residual = fit.residual;
  result.beta = static_cast<double>(sign) * std::exp(fit.gamma);

  const long double alpha_ld = result.alpha;
  result.pair_residual_a = static_cast<double>(std::abs(std::pow(pair.a, alpha_ld) - 2.0L));
  result.pair_residual_b = static_cast<double>(std::abs(std::pow(pair.b, alpha_ld) - 3.0L));
  if (result.pair_residual_a > options.pair_tol || result.pair_residual_b > options.pair_tol) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "recovered alpha = %.17g gives |a^alpha - 2| = %.3g, |b^alpha - 3| = %.3g",
                  result.alpha, result.pair_residual_a, result.pair_residual_b);
    throw Error(ErrorKind::InconsistentPair, buf);
  }

  const ClosedForm model{result.alpha, result.beta};
  for (Eigen::Index k = 0; k < count; ++k) {
    const double r = std::exp(s[k]);
    result.reconstruction_residual =
        std::max(result.reconstruction_residual, std::abs(eval(MultiplierSpec(model), r) - values[lo + k]));
  }
  if (result.reconstruction_residual > options.tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "reconstructed symbol misses the samples by %.3g (tol %.3g)",
                  result.reconstruction_residual, options.tol);
    throw Error(ErrorKind::ModelMismatch, buf);
  }
  return result;
}

}  // namespace fracprop

#include "fracprop/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace fracprop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Eigen::VectorXd lift(const Eigen::VectorXcd& values) {
  Eigen::VectorXd phi(values.size());
  if (values.size() == 0) return phi;
  phi[0] = std::arg(values[0]);
  for (Eigen::Index k = 1; k < values.size(); ++k) {
    // Nearest representative of arg(v_k) to the previous lifted value; this
    // keeps every entry within one ulp of a principal argument plus 2 pi n.
    const double principal = std::arg(values[k]);
    const double turns = std::round((phi[k - 1] - principal) / kTwoPi);
    phi[k] = principal + kTwoPi * turns;
  }
  return phi;
}

}  // namespace

Tabulated::Tabulated(const Eigen::VectorXd& r, const Eigen::VectorXcd& values, double modulus_tol) {
  const Eigen::Index n = r.size();
  if (n != values.size()) throw Error(ErrorKind::InvalidInput, "radius and value arrays differ in length");
  if (n < 4) throw Error(ErrorKind::InvalidInput, "tabulated symbol needs at least 4 samples");
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(r[k] > 0.0) || !std::isfinite(r[k])) {
      throw Error(ErrorKind::InvalidInput, "tabulated radii must be positive and finite");
    }
    if (k > 0 && !(r[k] > r[k - 1])) {
      throw Error(ErrorKind::InvalidInput,
                  "tabulated radii must be strictly increasing (index " + std::to_string(k) + ")");
    }
    const double mod = std::abs(values[k]);
    if (!std::isfinite(mod) || std::abs(mod - 1.0) > modulus_tol) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "tabulated value %ld has modulus %.17g, not 1", static_cast<long>(k), mod);
      throw Error(ErrorKind::InvalidInput, buf);
    }
  }
  s0_ = std::log(r[0]);
  h_ = (std::log(r[n - 1]) - s0_) / static_cast<double>(n - 1);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double step = std::log(r[k]) - std::log(r[k - 1]);
    if (std::abs(step - h_) > 1e-9 * h_) {
      throw Error(ErrorKind::InvalidInput,
                  "tabulated radii are not log-uniform at index " + std::to_string(k));
    }
  }
  values_ = values.array() / values.array().abs();
  phase_ = lift(values_);
}

Tabulated::Tabulated(double s0, double h, Eigen::VectorXcd values, Eigen::VectorXd phase)
    : s0_(s0), h_(h), values_(std::move(values)), phase_(std::move(phase)) {}

Eigen::VectorXd Tabulated::log_grid(double r_min, double r_max, std::size_t count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || count < 2) {
    throw Error(ErrorKind::Configuration, "log grid needs 0 < r_min < r_max and count >= 2");
  }
  const double s0 = std::log(r_min);
  const double h = (std::log(r_max) - s0) / static_cast<double>(count - 1);
  Eigen::VectorXd r(count);
  for (std::size_t k = 0; k < count; ++k) r[k] = std::exp(s0 + h * static_cast<double>(k));
  return r;
}

Eigen::VectorXd Tabulated::radii() const {
  Eigen::VectorXd r(size());
  for (std::size_t k = 0; k < size(); ++k) r[k] = std::exp(s_at(k));
  return r;
}

double Tabulated::phase_at(double r) const {
  if (!(r > 0.0)) throw Error(ErrorKind::Range, "tabulated symbol is not defined at radius 0");
  const double s = std::log(r);
  const double slack = 1e-9 * h_;
  if (s < s_front() - slack || s > s_back() + slack) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "radius %.17g outside tabulated range [%.17g, %.17g]", r, r_min(),
                  r_max());
    throw Error(ErrorKind::Range, buf);
  }
  const auto n = static_cast<std::ptrdiff_t>(size());
  const double t = std::clamp((s - s0_) / h_, 0.0, static_cast<double>(n - 1));
  const std::ptrdiff_t i = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor(t)), 1, n - 3);
  const double u = t - static_cast<double>(i);
  const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return w0 * phase_[i - 1] + w1 * phase_[i] + w2 * phase_[i + 1] + w3 * phase_[i + 2];
}

Tabulated Tabulated::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw Error(ErrorKind::Domain, "dilation factor must be positive");
  return Tabulated(s0_ - std::log(lambda), h_, values_, phase_);
}

double phase(const MultiplierSpec& spec, double r) {
  return std::visit(overloaded{[r](const ClosedForm& c) { return phase<double>(c, r); },
                               [r](const Tabulated& t) { return t.phase_at(r); }},
                    spec);
}

Complex eval(const MultiplierSpec& spec, double xi) { return std::polar(1.0, phase(spec, std::abs(xi))); }

std::pair<double, double> valid_range(const MultiplierSpec& spec) {
  return std::visit(
      overloaded{[](const ClosedForm& c) {
                   return std::pair{c.alpha < 0.0 ? std::numeric_limits<double>::min() : 0.0,
                                    std::numeric_limits<double>::infinity()};
                 },
                 [](const Tabulated& t) { return std::pair{t.r_min(), t.r_max()}; }},
      spec);
}

MultiplierSpec dilate(const MultiplierSpec& spec, long double lambda) {
  if (!(lambda > 0.0L)) throw Error(ErrorKind::Domain, "dilation factor must be positive");
  return std::visit(overloaded{[lambda](const ClosedForm& c) -> MultiplierSpec {
                                 const long double scale = std::pow(lambda, static_cast<long double>(c.alpha));
                                 return ClosedForm{c.alpha, static_cast<double>(c.beta * scale)};
                               },
                               [lambda](const Tabulated& t) -> MultiplierSpec {
                                 return t.dilated(static_cast<double>(lambda));
                               }},
                    spec);
}

Tabulated tabulate(const MultiplierSpec& spec, double r_min, double r_max, std::size_t count) {
  const Eigen::VectorXd r = Tabulated::log_grid(r_min, r_max, count);
  Eigen::VectorXcd v(r.size());
  for (Eigen::Index k = 0; k < r.size(); ++k) v[k] = eval(spec, r[k]);
  return Tabulated(r, v);
}

SymbolProduct::SymbolProduct(std::vector<Factor> factors) : factors_(std::move(factors)) {
  range_ = {0.0, std::numeric_limits<double>::infinity()};
  for (const auto& [spec, power] : factors_) {
    if (power == 0) continue;
    const auto [lo, hi] = fracprop::valid_range(spec);
    range_.first = std::max(range_.first, lo);
    range_.second = std::min(range_.second, hi);
  }
  if (!(range_.first <= range_.second)) {
    throw Error(ErrorKind::Range, "factors have disjoint tabulated ranges");
  }
}

double SymbolProduct::phase(double r) const {
  double total = 0.0;
  for (const auto& [spec, power] : factors_) {
    if (power != 0) total += static_cast<double>(power) * fracprop::phase(spec, r);
  }
  return total;
}

Complex SymbolProduct::eval(double xi) const { return std::polar(1.0, phase(std::abs(xi))); }

std::optional<ClosedForm> SymbolProduct::closed_form() const {
  std::map<double, double> net;
  for (const auto& [spec, power] : factors_) {
    const auto* c = std::get_if<ClosedForm>(&spec);
    if (c == nullptr) return std::nullopt;
    net[c->alpha] += static_cast<double>(power) * c->beta;
  }
  std::optional<ClosedForm> result;
  for (const auto& [alpha, beta] : net) {
    if (beta == 0.0) continue;
    if (result) return std::nullopt;
    result = ClosedForm{alpha, beta};
  }
  return result.value_or(ClosedForm{0.0, 0.0});
}

SymbolProduct combine(std::vector<SymbolProduct::Factor> factors) { return SymbolProduct(std::move(factors)); }

namespace detail {

void require_covers(std::pair<double, double> range, double lo, double hi, const char* which) {
  if (lo < range.first * (1.0 - 1e-12) || hi > range.second * (1.0 + 1e-12)) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s is only evaluable on [%.17g, %.17g], band needs [%.17g, %.17g]",
                  which, range.first, range.second, lo, hi);
    throw Error(ErrorKind::Range, buf);
  }
}

SupLocation sup_of_gap(const std::function<double(double)>& gap, double lo, double hi,
                       std::size_t samples) {
  if (samples < 1024) throw Error(ErrorKind::Configuration, "sup distance needs at least 1024 samples");
  const double s_lo = std::log(lo);
  const double s_hi = std::log(hi);
  const double h = (s_hi - s_lo) / static_cast<double>(samples - 1);
  auto distance = [&](double s) {
    const double r = std::clamp(std::exp(s), lo, hi);
    return 2.0 * std::abs(std::sin(0.5 * gap(r)));
  };

  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double v = distance(s_lo + h * static_cast<double>(k));
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  double best_s = s_lo + h * static_cast<double>(best);

  // Golden-section polish on the two cells around the grid argmax.
  double a = std::max(s_lo, best_s - h);
  double b = std::min(s_hi, best_s + h);
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = distance(c);
  double fd = distance(d);
  while (b - a > 1e-10) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = distance(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = distance(d);
    }
  }
  for (double s : {c, d}) {
    const double v = distance(s);
    if (v > best_value) {
      best_value = v;
      best_s = s;
    }
  }
  return {best_value, std::clamp(std::exp(best_s), lo, hi)};
}

}  // namespace detail

double local_slope_bound(const MultiplierSpec& spec, double lo, double hi) {
  if (const auto* c = std::get_if<ClosedForm>(&spec)) {
    return std::abs(c->alpha * c->beta) * std::max(std::pow(lo, c->alpha), std::pow(hi, c->alpha));
  }
  const auto& t = std::get<Tabulated>(spec);
  const Eigen::VectorXd& phi = t.lifted_phase();
  const auto n = static_cast<std::ptrdiff_t>(t.size());
  const double s_lo = std::log(lo);
  const double s_hi = std::log(hi);
  auto cell_slope = [&](std::ptrdiff_t k) {
    k = std::clamp<std::ptrdiff_t>(k, 0, n - 2);
    return std::abs(phi[k + 1] - phi[k]) / t.s_step();
  };
  double bound = 0.0;
  for (std::ptrdiff_t k = 0; k + 1 < n; ++k) {
    if (t.s_at(static_cast<std::size_t>(k + 1)) < s_lo || t.s_at(static_cast<std::size_t>(k)) > s_hi) continue;
    bound = std::max(bound, std::min({cell_slope(k - 1), cell_slope(k), cell_slope(k + 1)}));
  }
  return bound;
}

ContinuityReport continuity_modulus(const MultiplierSpec& spec, const BandSpec& band,
                                    std::vector<double> eps_grid, std::optional<double> threshold) {
  if (eps_grid.empty()) throw Error(ErrorKind::Configuration, "continuity modulus needs an eps grid");
  std::sort(eps_grid.begin(), eps_grid.end());
  if (eps_grid.front() < 0.0) throw Error(ErrorKind::Domain, "eps values must be non-negative");

  ContinuityReport report;
  report.eps_grid = eps_grid;
  double running = 0.0;
  for (double eps : eps_grid) {
    double d = 0.0;
    if (eps > 0.0) {
      for (double lambda : {std::exp(eps), std::exp(-eps)}) {
        d = std::max(d, band_sup_distance(dilate(spec, lambda), spec, band));
      }
    }
    running = std::max(running, d);
    report.omega.push_back(running);
  }

  const auto first_positive = std::find_if(eps_grid.begin(), eps_grid.end(), [](double e) { return e > 0.0; });
  if (first_positive == eps_grid.end()) {
    report.threshold = threshold.value_or(1e-6);
    report.luc_flag = true;
    return report;
  }
  const double eps_min = *first_positive;
  const double slope = local_slope_bound(spec, band.lo() * std::exp(-eps_min), band.hi() * std::exp(eps_min));
  report.threshold = threshold.value_or(std::max(1e-6, 10.0 * eps_min * slope));
  report.luc_flag = report.omega[static_cast<std::size_t>(first_positive - eps_grid.begin())] <= report.threshold;
  return report;
}

}  // namespace fracprop

#include "fracprop/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "fracprop/error.hpp"
#include "fracprop/rng.hpp"

namespace fracprop {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine = [] {
    Eigen::FFT<double> e;
    e.SetFlag(Eigen::FFT<double>::Unscaled);
    return e;
  }();
  return engine;
}

void require_finite(const Eigen::VectorXcd& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
      throw Error(ErrorKind::InvalidInput,
                  std::string(what) + " has a non-finite entry at index " + std::to_string(i));
    }
  }
}

void require_same_grid(const SpatialGrid& a, const SpatialGrid& b) {
  if (!(a == b)) throw Error(ErrorKind::GridMismatch, "operands live on different grids");
}

// (-1)^k, the phase e^{i xi_k x_max} that moves the DFT origin to x = -x_max.
double parity(std::size_t k) { return (k & 1u) ? -1.0 : 1.0; }

}  // namespace

SpatialGrid::SpatialGrid(std::size_t n, double x_max) : n_(n), x_max_(x_max) {
  if (n < 8 || !is_power_of_two(n)) {
    throw Error(ErrorKind::Configuration,
                "grid size must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw Error(ErrorKind::Configuration, "grid half-width must be positive and finite");
  }
}

double SpatialGrid::dxi() const { return std::numbers::pi / x_max_; }

double SpatialGrid::xi_max() const { return std::numbers::pi / dx(); }

std::ptrdiff_t SpatialGrid::mode(std::size_t k) const {
  const auto sk = static_cast<std::ptrdiff_t>(k);
  const auto sn = static_cast<std::ptrdiff_t>(n_);
  return sk < sn / 2 ? sk : sk - sn;
}

std::size_t SpatialGrid::bin(std::ptrdiff_t m) const {
  const auto sn = static_cast<std::ptrdiff_t>(n_);
  return static_cast<std::size_t>(((m % sn) + sn) % sn);
}

double SpatialGrid::xi(std::size_t k) const { return static_cast<double>(mode(k)) * dxi(); }

Eigen::VectorXd SpatialGrid::positions() const {
  Eigen::VectorXd out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

Eigen::VectorXd SpatialGrid::frequencies() const {
  Eigen::VectorXd out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = xi(k);
  return out;
}

SampledSignal::SampledSignal(SpatialGrid g, Eigen::VectorXcd v) : grid(g), values(std::move(v)) {
  if (static_cast<std::size_t>(values.size()) != grid.size()) {
    throw Error(ErrorKind::GridMismatch, "signal length does not match grid size");
  }
}

Spectrum::Spectrum(SpatialGrid g, Eigen::VectorXcd v) : grid(g), values(std::move(v)) {
  if (static_cast<std::size_t>(values.size()) != grid.size()) {
    throw Error(ErrorKind::GridMismatch, "spectrum length does not match grid size");
  }
}

BandSpec::BandSpec(double radius) : lo_(1.0 / radius), hi_(radius) {
  if (!(radius > 1.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::Configuration, "band radius R must be a finite real > 1");
  }
}

BandSpec::BandSpec(double lo, double hi, int) : lo_(lo), hi_(hi) {}

BandSpec BandSpec::annulus(double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::Configuration, "band annulus needs 0 < lo < hi < inf");
  }
  return BandSpec(lo, hi, 0);
}

bool BandSpec::symmetric() const { return std::abs(lo_ * hi_ - 1.0) <= 1e-12; }

BandSpec BandSpec::scaled(double lambda) const {
  const double s = std::abs(lambda);
  if (!(s > 0.0)) throw Error(ErrorKind::Domain, "band scale factor must be nonzero");
  return annulus(lo_ * s, hi_ * s);
}

bool BandSpec::contains(double abs_xi) const {
  return abs_xi >= lo_ * (1.0 - 1e-12) && abs_xi <= hi_ * (1.0 + 1e-12);
}

bool BandSpec::resolvable(const SpatialGrid& grid, double margin) const {
  return lo_ >= grid.dxi() * (1.0 - 1e-12) && hi_ <= grid.xi_max() * (1.0 - margin) * (1.0 + 1e-12);
}

void BandSpec::require_resolvable(const SpatialGrid& grid, double margin) const {
  char buf[256];
  if (lo_ < grid.dxi() * (1.0 - 1e-12)) {
    std::snprintf(buf, sizeof buf, "band not resolvable: inner edge %.17g < frequency spacing %.17g",
                  lo_, grid.dxi());
    throw Error(ErrorKind::Configuration, buf);
  }
  const double limit = grid.xi_max() * (1.0 - margin);
  if (hi_ > limit * (1.0 + 1e-12)) {
    std::snprintf(buf, sizeof buf,
                  "band not resolvable: outer edge %.17g > xi_max * (1 - margin) = %.17g", hi_, limit);
    throw Error(ErrorKind::Configuration, buf);
  }
}

Spectrum forward_transform(const SampledSignal& f) {
  require_finite(f.values, "signal");
  const SpatialGrid& g = f.grid;
  Eigen::VectorXcd out(g.size());
  fft_engine().fwd(out, f.values);
  const double scale = g.dx() / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < g.size(); ++k) out[k] *= scale * parity(k);
  return Spectrum(g, std::move(out));
}

SampledSignal inverse_transform(const Spectrum& spectrum) {
  require_finite(spectrum.values, "spectrum");
  const SpatialGrid& g = spectrum.grid;
  Eigen::VectorXcd shifted(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) shifted[k] = spectrum.values[k] * parity(k);
  Eigen::VectorXcd out(g.size());
  fft_engine().inv(out, shifted);
  out *= g.dxi() / std::sqrt(2.0 * std::numbers::pi);
  return SampledSignal(g, std::move(out));
}

Complex inner_product(const SampledSignal& f, const SampledSignal& g) {
  require_same_grid(f.grid, g.grid);
  // Eigen's dot() conjugates its first argument.
  return g.values.dot(f.values) * f.grid.dx();
}

Complex inner_product(const Spectrum& f, const Spectrum& g) {
  require_same_grid(f.grid, g.grid);
  return g.values.dot(f.values) * f.grid.dxi();
}

double norm(const SampledSignal& f) { return f.values.norm() * std::sqrt(f.grid.dx()); }

double norm(const Spectrum& f) { return f.values.norm() * std::sqrt(f.grid.dxi()); }

Spectrum band_project(const Spectrum& spectrum, const BandSpec& band) {
  band.require_resolvable(spectrum.grid);
  Spectrum out = spectrum;
  for (std::size_t k = 0; k < out.grid.size(); ++k) {
    if (!band.contains(std::abs(out.grid.xi(k)))) out.values[k] = 0.0;
  }
  return out;
}

SampledSignal band_project(const SampledSignal& f, const BandSpec& band) {
  return inverse_transform(band_project(forward_transform(f), band));
}

Spectrum random_band_signal(const BandSpec& band, const SpatialGrid& grid, std::uint64_t seed,
                            std::uint64_t stream) {
  band.require_resolvable(grid);
  CounterRng rng(seed, stream);
  Spectrum out(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    // Draw for every bin so bin k always consumes the same counters.
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    if (band.contains(std::abs(grid.xi(k)))) out.values[k] = Complex(re, im);
  }
  const double nrm = norm(out);
  if (nrm == 0.0) throw Error(ErrorKind::Configuration, "band contains no frequency bins");
  out.values /= nrm;
  return out;
}

Spectrum wave_packet(const BandSpec& band, const SpatialGrid& grid, double edge_sigmas) {
  band.require_resolvable(grid);
  const double centre = std::sqrt(band.lo() * band.hi());
  const double sigma = std::min(centre - band.lo(), band.hi() - centre) / edge_sigmas;
  Spectrum out(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double r = std::abs(grid.xi(k));
    if (!band.contains(r)) continue;
    const double z = (r - centre) / sigma;
    out.values[k] = std::exp(-0.5 * z * z);
  }
  out.values /= norm(out);
  return out;
}

}  // namespace fracprop

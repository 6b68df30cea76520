#include "fracprop/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "fracprop/error.hpp"
#include "fracprop/parallel.hpp"

namespace fracprop {

SampledSignal apply(const MultiplierSpec& spec, const SampledSignal& f, const BandSpec& band) {
  return apply<MultiplierSpec>(spec, f, band);
}

SampledSignal translate(const SampledSignal& f, double a) {
  Spectrum spectrum = forward_transform(f);
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    spectrum.values[k] *= std::polar(1.0, -a * f.grid.xi(k));
  }
  return inverse_transform(spectrum);
}

namespace {

// Trigonometric interpolant of the spectrum at an arbitrary frequency, i.e.
// the Riemann-sum transform (2 pi)^{-1/2} sum_j f_j e^{-i xi x_j} dx.
class OffGridTransform {
 public:
  explicit OffGridTransform(const SampledSignal& f) : f_(f) {}

  Complex operator()(double xi) const {
    const SpatialGrid& g = f_.grid;
    const std::size_t n = g.size();
    const Complex step = std::polar(1.0, -xi * g.dx());
    Complex acc = 0.0;
    // Twiddles advance by recurrence and are re-seeded exactly every block
    // so round-off does not accumulate over the whole window.
    constexpr std::size_t kBlock = 32;
    for (std::size_t j0 = 0; j0 < n; j0 += kBlock) {
      Complex z = std::polar(1.0, -xi * g.x(j0));
      const std::size_t j1 = std::min(n, j0 + kBlock);
      for (std::size_t j = j0; j < j1; ++j) {
        acc += f_.values[static_cast<Eigen::Index>(j)] * z;
        z *= step;
      }
    }
    return acc * (g.dx() / std::sqrt(2.0 * std::numbers::pi));
  }

 private:
  const SampledSignal& f_;
};

}  // namespace

SampledSignal dilate_signal(const SampledSignal& f, double lambda, const std::optional<BandSpec>& band) {
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw Error(ErrorKind::Domain, "dilation factor must be a finite nonzero real");
  }
  const SpatialGrid& g = f.grid;
  const double scale = std::abs(lambda);
  std::optional<BandSpec> image;
  if (band) {
    image = band->scaled(1.0 / scale);
    const double limit = g.xi_max() * (1.0 - BandSpec::kDefaultMargin);
    char buf[256];
    if (image->hi() > limit * (1.0 + 1e-12)) {
      std::snprintf(buf, sizeof buf,
                    "dilated band escapes the grid: R / |lambda| = %.17g > xi_max * (1 - margin) = %.17g",
                    image->hi(), limit);
      throw Error(ErrorKind::Range, buf);
    }
    if (image->lo() < g.dxi() * (1.0 - 1e-12)) {
      std::snprintf(buf, sizeof buf,
                    "dilated band escapes the grid: R^-1 / |lambda| = %.17g < frequency spacing %.17g",
                    image->lo(), g.dxi());
      throw Error(ErrorKind::Range, buf);
    }
  }

  const OffGridTransform transform(f);
  Spectrum out(g);
  std::vector<std::size_t> bins;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double target = lambda * g.xi(k);
    const bool wanted = image ? image->contains(std::abs(g.xi(k))) : std::abs(target) < g.xi_max();
    if (wanted) bins.push_back(k);
  }
  parallel_for(bins.size(), [&](std::size_t i) {
    const std::size_t k = bins[i];
    out.values[static_cast<Eigen::Index>(k)] = transform(lambda * g.xi(k));
  });
  return inverse_transform(out);
}

SampledSignal conjugated_apply(const MultiplierSpec& spec, double lambda, const SampledSignal& f,
                               const BandSpec& band) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::Domain, "conjugation factor must be positive");
  if (lambda == 1.0) return apply(spec, f, band);
  const BandSpec inner = band.scaled(lambda);
  const SampledSignal squeezed = dilate_signal(band_project(f, band), 1.0 / lambda, band);
  const SampledSignal evolved = apply(spec, squeezed, inner);
  return dilate_signal(evolved, lambda, inner);
}

ProbeResult probe_operator_distance(const MultiplierSpec& m1, const MultiplierSpec& m2, const BandSpec& band,
                                    const SpatialGrid& grid, const ProbeOptions& options) {
  if (options.trials < 1) throw Error(ErrorKind::Configuration, "operator probing needs at least one trial");
  band.require_resolvable(grid);

  auto ratio = [&](const Spectrum& probe) {
    const SampledSignal f = inverse_transform(probe);
    const SampledSignal g1 = apply(m1, f, band);
    const SampledSignal g2 = apply(m2, f, band);
    return norm(SampledSignal(grid, g1.values - g2.values)) / norm(f);
  };

  ProbeResult result;
  std::vector<double> ratios(options.trials, 0.0);
  parallel_for(options.trials, [&](std::size_t t) {
    ratios[t] = ratio(random_band_signal(band, grid, options.seed, t));
  });
  result.random = *std::max_element(ratios.begin(), ratios.end());

  const SupLocation sup = band_sup_location(m1, m2, band);
  result.exact = sup.value;
  result.argmax_xi = sup.radius;

  const auto centre = static_cast<std::ptrdiff_t>(std::llround(sup.radius / grid.dxi()));
  const double sigma = options.bump_width_bins;
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  Spectrum bump(grid);
  for (std::ptrdiff_t m = centre - reach; m <= centre + reach; ++m) {
    const std::size_t k = grid.bin(m);
    if (!band.contains(std::abs(grid.xi(k)))) continue;
    const double z = static_cast<double>(m - centre) / sigma;
    bump.values[static_cast<Eigen::Index>(k)] = std::exp(-0.5 * z * z);
  }
  if (norm(bump) > 0.0) result.targeted = ratio(bump);
  result.estimate = std::max(result.random, result.targeted);
  return result;
}

}  // namespace fracprop

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "fracprop/multiplier.hpp"
#include "fracprop/spectral_core.hpp"

namespace fracprop {

/// T[m] restricted to the band: F^{-1}( m(xi) * P_band F f ).  Bins outside
/// the band are zero in the output.
template <RadialSymbol Symbol>
SampledSignal apply(const Symbol& symbol, const SampledSignal& f, const BandSpec& band);

SampledSignal apply(const MultiplierSpec& spec, const SampledSignal& f, const BandSpec& band);

/// tau_a f(x) = f(x - a), realised as the spectral phase exp(-i a xi).
SampledSignal translate(const SampledSignal& f, double a);

/// delta_lambda f(x) = |lambda|^{-1} f(x / lambda), computed on the frequency
/// side: the output spectrum at xi_k is the trigonometric (periodic sinc)
/// interpolant of f^ evaluated at lambda xi_k.  When `band` is given, f is
/// taken to be supported in it; only the image band is evaluated and it must
/// be resolvable on the grid (Range error otherwise, naming the inequality).
/// Accuracy relies on f being negligible near the window edges.
SampledSignal dilate_signal(const SampledSignal& f, double lambda,
                            const std::optional<BandSpec>& band = std::nullopt);

/// T_lambda f = delta_lambda T delta_{1/lambda} f, by composition.
SampledSignal conjugated_apply(const MultiplierSpec& spec, double lambda, const SampledSignal& f,
                               const BandSpec& band);

struct ProbeOptions {
  std::size_t trials = 16;
  std::uint64_t seed = 0;
  /// Standard deviation of the targeted bump in bins; support is +-3 sigma.
  double bump_width_bins = 1.0;
};

struct ProbeResult {
  double estimate = 0.0;   ///< max over all probes
  double random = 0.0;     ///< max over the random probes only
  double targeted = 0.0;   ///< ratio achieved by the targeted probe
  double exact = 0.0;      ///< band_sup_distance of the symbols
  double argmax_xi = 0.0;  ///< frequency where the exact sup is attained
};

/// Lower estimate of ||T[m1] - T[m2]||_{L^2_R -> L^2} by probing with random
/// band signals plus one Gaussian bump centred on the bin nearest the
/// maximiser of |m1 - m2|.
ProbeResult probe_operator_distance(const MultiplierSpec& m1, const MultiplierSpec& m2,
                                    const BandSpec& band, const SpatialGrid& grid,
                                    const ProbeOptions& options = {});

// ---------------------------------------------------------------------------

template <RadialSymbol Symbol>
SampledSignal apply(const Symbol& symbol, const SampledSignal& f, const BandSpec& band) {
  band.require_resolvable(f.grid);
  detail::require_covers(fracprop::valid_range(symbol), band.lo(), band.hi(), "symbol");
  Spectrum spectrum = forward_transform(f);
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    const double r = std::abs(f.grid.xi(k));
    if (band.contains(r)) {
      spectrum.values[k] *= std::polar(1.0, fracprop::phase(symbol, r));
    } else {
      spectrum.values[k] = 0.0;
    }
  }
  return inverse_transform(spectrum);
}

}  // namespace fracprop

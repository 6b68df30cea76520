#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

namespace fracprop {

using Complex = std::complex<double>;

/// Periodic window [-x_max, x_max) sampled at n points, together with its dual
/// frequency grid.  Frequencies are stored in FFT order: bin k carries
/// xi_k = k * dxi for k < n/2 and (k - n) * dxi otherwise, so the single
/// Nyquist bin sits at -xi_max.
class SpatialGrid {
 public:
  SpatialGrid(std::size_t n, double x_max);

  std::size_t size() const { return n_; }
  double x_max() const { return x_max_; }
  double dx() const { return 2.0 * x_max_ / static_cast<double>(n_); }
  double dxi() const;
  double xi_max() const;

  double x(std::size_t j) const { return -x_max_ + static_cast<double>(j) * dx(); }
  double xi(std::size_t k) const;
  /// Signed frequency index of bin k.
  std::ptrdiff_t mode(std::size_t k) const;
  /// Bin holding signed frequency index m (taken modulo n).
  std::size_t bin(std::ptrdiff_t m) const;

  Eigen::VectorXd positions() const;
  Eigen::VectorXd frequencies() const;

  bool operator==(const SpatialGrid& other) const {
    return n_ == other.n_ && x_max_ == other.x_max_;
  }

 private:
  std::size_t n_;
  double x_max_;
};

struct SampledSignal {
  SampledSignal(SpatialGrid g, Eigen::VectorXcd v);
  explicit SampledSignal(SpatialGrid g) : grid(g), values(Eigen::VectorXcd::Zero(g.size())) {}

  SpatialGrid grid;
  Eigen::VectorXcd values;
};

struct Spectrum {
  Spectrum(SpatialGrid g, Eigen::VectorXcd v);
  explicit Spectrum(SpatialGrid g) : grid(g), values(Eigen::VectorXcd::Zero(g.size())) {}

  SpatialGrid grid;
  Eigen::VectorXcd values;
};

/// Frequency annulus lo <= |xi| <= hi.  The usual L^2_R band is BandSpec(R),
/// i.e. [1/R, R]; general annuli appear when a band is carried through a
/// dilation.
class BandSpec {
 public:
  static constexpr double kDefaultMargin = 0.125;

  explicit BandSpec(double radius);
  static BandSpec annulus(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  /// R for symmetric bands (lo * hi == 1); hi otherwise.
  double radius() const { return hi_; }
  bool symmetric() const;

  /// Image of the band under xi -> |lambda| xi.
  BandSpec scaled(double lambda) const;

  /// Membership with a 1e-12 relative slack on both edges so that bins lying
  /// on an edge up to round-off are kept.
  bool contains(double abs_xi) const;

  /// Throws Configuration unless lo >= dxi and hi <= xi_max * (1 - margin).
  void require_resolvable(const SpatialGrid& grid, double margin = kDefaultMargin) const;
  bool resolvable(const SpatialGrid& grid, double margin = kDefaultMargin) const;

 private:
  BandSpec(double lo, double hi, int);
  double lo_;
  double hi_;
};

/// Samples of the unitary transform (2 pi)^{-1/2} \int f(x) e^{-i xi x} dx.
Spectrum forward_transform(const SampledSignal& f);
SampledSignal inverse_transform(const Spectrum& spectrum);

/// Riemann sum  sum_j f_j conj(g_j) dx.
Complex inner_product(const SampledSignal& f, const SampledSignal& g);
/// Frequency-side counterpart  sum_k F_k conj(G_k) dxi.
Complex inner_product(const Spectrum& f, const Spectrum& g);

double norm(const SampledSignal& f);
double norm(const Spectrum& f);

/// Zeroes every bin outside the band (DC is never inside a band).
Spectrum band_project(const Spectrum& spectrum, const BandSpec& band);
SampledSignal band_project(const SampledSignal& f, const BandSpec& band);

/// Unit-norm spectrum with independent uniform real and imaginary parts on
/// every in-band bin, drawn from CounterRng(seed, stream).
Spectrum random_band_signal(const BandSpec& band, const SpatialGrid& grid,
                            std::uint64_t seed, std::uint64_t stream = 0);

/// Unit-norm, even Gaussian bump in |xi| centred at sqrt(lo * hi).  Its width
/// is chosen so the bump has fallen by edge_sigmas standard deviations at the
/// nearer band edge, which keeps the signal localised in x as well.
Spectrum wave_packet(const BandSpec& band, const SpatialGrid& grid, double edge_sigmas = 8.0);

}  // namespace fracprop

#include <doctest.h>

#include <cmath>

#include "fracprop/error.hpp"
#include "fracprop/group_flow.hpp"
#include "fracprop/identification.hpp"
#include "fracprop/propagator.hpp"
#include "fracprop/rng.hpp"
#include "support.hpp"

using namespace fracprop;

TEST_CASE("group construction") {
  CHECK(GroupSpec(0.0, 0.0).trivial());
  CHECK_THROWS_AS(GroupSpec(0.0, 1.0), Error);
  CHECK_THROWS_AS(GroupSpec(2.0, 0.0), Error);
  CHECK(member(GroupSpec(2.0, 1.0), 0.0) == ClosedForm{0.0, 0.0});
  CHECK(member(GroupSpec(2.0, 1.0), 0.3) == ClosedForm{2.0, 0.3});
  CHECK(member(GroupSpec(1.0, -2.0), -1.0) == ClosedForm{1.0, 2.0});
  CHECK(member(GroupSpec(0.0, 0.0), 5.0) == ClosedForm{0.0, 0.0});
}

TEST_CASE("symbol-level group axioms") {
  CounterRng rng(12);
  for (int i = 0; i < 100; ++i) {
    const GroupSpec g(rng.uniform(0.25, 3.0), rng.uniform(-10.0, 10.0));
    const double t1 = rng.uniform(-3.0, 3.0), t2 = rng.uniform(-3.0, 3.0);
    const double joint = member(g, t1 + t2).beta;
    const double sum = member(g, t1).beta + member(g, t2).beta;
    CHECK(std::abs(joint - sum) <= 2.0 * std::numeric_limits<double>::epsilon() * (std::abs(g.beta) * (std::abs(t1) + std::abs(t2))));
  }
}

TEST_CASE("signal-level group law") {
  const SpatialGrid grid(2048, 100.0);
  const BandSpec band(4.0);
  const SampledSignal f = inverse_transform(random_band_signal(band, grid, 9));
  const GroupSpec g(2.0, 1.0);
  CHECK(check_group_law(g, 0.3, 0.7, f, band) <= 1e-12);
  CHECK(check_group_law(g, 1.7, -1.7, f, band) <= 1e-12);
  CounterRng rng(13);
  for (int i = 0; i < 50; ++i) {
    const GroupSpec h(rng.uniform(-3.0, 3.0), rng.uniform(0.1, 10.0));
    CHECK(check_group_law(h, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), f, band) <= 1e-12);
  }
}

TEST_CASE("adjoint is evolution backwards") {
  const GroupSpec g(1.5, 2.0);
  for (double t : {0.2, 1.0, 3.0}) {
    for (double r : {0.3, 1.0, 4.0}) CHECK(eval(member(g, -t), r) == std::conj(eval(member(g, t), r)));
  }
  const SpatialGrid grid(1024, 50.0);
  const BandSpec band(3.0);
  const SampledSignal f = inverse_transform(random_band_signal(band, grid, 1));
  const SampledSignal h = inverse_transform(random_band_signal(band, grid, 2));
  const Complex lhs = inner_product(apply(member(g, 0.8), f, band), h);
  const Complex rhs = inner_product(f, apply(member(g, -0.8), h, band));
  CHECK(std::abs(lhs - rhs) <= 1e-14);
}

TEST_CASE("scaling identity") {
  CHECK(check_scaling(GroupSpec(1.0, 2.0), 8.0) <= 1e-12);
  CHECK(check_scaling(GroupSpec(2.0, 1.0), 0.25) <= 1e-12);
  CHECK(check_scaling(GroupSpec(2.0, 1.0), 1.0) == 0.0);
  CounterRng rng(4);
  for (int i = 0; i < 30; ++i) {
    double alpha = rng.uniform(-3.0, 3.0);
    if (std::abs(alpha) < 0.25) alpha = 0.25;
    CHECK(check_scaling(GroupSpec(alpha, rng.uniform(-10.0, 10.0)), rng.uniform(0.1, 10.0)) <= 1e-12);
  }
  CHECK_THROWS_AS(check_scaling(GroupSpec(0.0, 0.0), 2.0), Error);
  CHECK_THROWS_AS(check_scaling(GroupSpec(2.0, 1.0), -1.0), Error);
}

TEST_CASE("slope recovery") {
  std::vector<std::pair<double, double>> lin;
  for (int k = 1; k <= 20; ++k) lin.push_back({k / 10.0, 3.0 * k / 10.0});
  const SlopeFit three = recover_beta(lin);
  CHECK(std::abs(three.slope - 3.0) <= 1e-12);
  CHECK(three.residual <= 1e-12);

  std::vector<std::pair<double, double>> both;
  for (int k = -10; k <= 10; ++k) both.push_back({0.3 * k, -2.5 * 0.3 * k});
  CHECK(std::abs(recover_beta(both).slope + 2.5) <= 1e-12);

  // Noisy samples against the closed-form least-squares slope.
  CounterRng rng(6);
  std::vector<std::pair<double, double>> noisy;
  double tt = 0.0, tb = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double t = k / 10.0, b = 3.0 * t + 1e-10 * rng.uniform(-1.0, 1.0);
    noisy.push_back({t, b});
    tt += t * t;
    tb += t * b;
  }
  const SlopeFit fit = recover_beta(noisy);
  CHECK(std::abs(fit.slope - 3.0) <= 1e-8);
  CHECK(std::abs(fit.slope - tb / tt) <= 1e-15);

  try {
    recover_beta(std::vector<std::pair<double, double>>(10, {1.0, 2.0}));
    FAIL("expected insufficient data");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
  CHECK_THROWS_AS(recover_beta({{1.0, 1.0}, {2.0, 2.0}}), Error);
}

TEST_CASE("order is constant along the group") {
  const double lo = std::exp(-6.0), hi = std::exp(6.0);
  for (auto [alpha, beta] : {std::pair{2.0, 1.0}, {0.5, -3.0}, {-1.0, 0.7}}) {
    const GroupSpec g(alpha, beta);
    std::vector<std::pair<double, double>> samples;
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const IdentificationResult r = identify(tabulate(member(g, t), lo, hi, 4096), canonical_pair(alpha));
      CHECK(std::abs(r.alpha - alpha) <= 1e-6 * std::abs(alpha));
      CHECK(std::abs(r.beta - beta * t) <= 1e-6 * std::abs(beta * t));
      samples.push_back({t, r.beta});
      samples.push_back({-t, -r.beta});
    }
    CHECK(std::abs(recover_beta(samples).slope - beta) <= 1e-6 * std::abs(beta));
  }
}

TEST_CASE("symbol measured from an evolved signal") {
  const SpatialGrid grid(4096, 400.0);
  const BandSpec band(4.0);
  const GroupSpec g(1.5, 2.0);
  for (double t : {0.1, 1.0, 2.0}) {
    const Tabulated m = measure_member_symbol(g, t, grid, band, 2048);
    CHECK(m.r_min() >= band.lo());
    CHECK(m.r_max() <= band.hi() * (1 + 1e-12));
    double worst = 0.0;
    for (double r = m.r_min(); r <= m.r_max(); r *= 1.0007) {
      worst = std::max(worst, std::abs(eval(m, r) - eval(member(g, t), r)));
    }
    INFO("t=" << t);
    // Cubic resampling across bins of width pi / 400 bounds the agreement.
    CHECK(worst <= 1e-7);
  }
  CHECK_THROWS_AS(measure_member_symbol(GroupSpec(2.0, 1.0), 500.0, grid, band, 256), Error);
}

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracprop/io.hpp"
#include "fracprop/multiplier.hpp"

namespace fracprop {

using DilateFn = std::function<MultiplierSpec(const MultiplierSpec&, long double)>;

struct VerifyOptions {
  double alpha = 2.0;
  double beta = 1.0;
  std::uint64_t seed = 0;
  /// Halves grid sizes and trial counts and loosens every tolerance by 10.
  bool fast = false;
  /// Symbol dilation used by the dilation-dependent checks.  Swapping it for
  /// a broken one is how the suite's own sensitivity is tested.
  DilateFn dilate = [](const MultiplierSpec& m, long double lambda) { return fracprop::dilate(m, lambda); };
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct VerifyReport {
  VerifyOptions options;
  double tolerance_scale = 1.0;
  std::size_t grid_n = 0;
  std::vector<CheckResult> checks;
  bool pass = false;
};

/// Runs every identity of the characterisation against exp(i beta |xi|^alpha).
/// alpha == 0 or beta == 0 is not an operator of this family: Domain error.
VerifyReport run_verify(const VerifyOptions& options);

Json to_json(const VerifyReport& report);

}  // namespace fracprop

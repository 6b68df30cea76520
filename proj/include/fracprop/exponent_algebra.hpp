#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fracprop {

/// One factor exp(i beta r^alpha) of a product.
struct PhaseTerm {
  double alpha = 0.0;
  double beta = 0.0;
};

enum class ProductCase { SingleA, PairA, PairB, TripleA, TripleB, TripleC, General, None };

const char* to_string(ProductCase c);

struct ProductVerdict {
  bool is_identity = false;
  ProductCase case_label = ProductCase::None;
  std::optional<double> witness;  ///< radius with product != 1 when not identity
  /// Some pair of exponents lies within 10 * alpha_tol without being grouped.
  bool near_miss = false;
};

/// Decides whether prod_j exp(i beta_j r^alpha_j) == 1 for all r > 0.
/// Exponents are grouped when consecutive sorted values differ by at most
/// alpha_tol.  The product is the identity iff every nonzero-exponent group
/// has coefficient sum 0 (relative 1e-12) and the zero-exponent group sums to
/// a multiple of 2 pi (within 1e-12 turns).  Throws Domain for beta_j == 0.
ProductVerdict classify_product(const std::vector<PhaseTerm>& terms, double alpha_tol = 0.0);

/// |prod_j exp(i beta_j r^alpha_j) - 1| evaluated directly.
double product_deviation(const std::vector<PhaseTerm>& terms, double r);

/// Brute-force check: true iff the product is within 1e-9 of 1 at every
/// radius of r_grid (>= 256 points spanning >= 2 decades).
bool sample_oracle(const std::vector<PhaseTerm>& terms, const Eigen::VectorXd& r_grid);

}  // namespace fracprop

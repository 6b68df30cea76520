#include "fracprop/exponent_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fracprop/error.hpp"
#include "fracprop/multiplier.hpp"

namespace fracprop {

const char* to_string(ProductCase c) {
  switch (c) {
    case ProductCase::SingleA: return "single-a";
    case ProductCase::PairA: return "pair-a";
    case ProductCase::PairB: return "pair-b";
    case ProductCase::TripleA: return "triple-a";
    case ProductCase::TripleB: return "triple-b";
    case ProductCase::TripleC: return "triple-c";
    case ProductCase::General: return "general";
    case ProductCase::None: return "none";
  }
  return "none";
}

namespace {

struct Group {
  double alpha = 0.0;  // smallest member
  double sum = 0.0;
  double abs_sum = 0.0;
  std::size_t count = 0;
  bool zero = false;
};

bool in_two_pi_z(double x) {
  const double turns = x / (2.0 * std::numbers::pi);
  return std::abs(turns - std::round(turns)) <= 1e-12;
}

double find_witness(const std::vector<PhaseTerm>& terms) {
  // Small integer radii first so witnesses are easy to check by hand, then a
  // log sweep; the first radius with deviation >= 1e-6 wins.
  std::vector<double> radii = {2.0, 3.0, 0.5, 1.0 / 3.0};
  const Eigen::VectorXd sweep = Tabulated::log_grid(std::exp(-3.0), std::exp(3.0), 4096);
  radii.insert(radii.end(), sweep.begin(), sweep.end());
  double best_r = radii.front();
  double best = -1.0;
  for (double r : radii) {
    const double d = product_deviation(terms, r);
    if (d >= 1e-6) return r;
    if (d > best) {
      best = d;
      best_r = r;
    }
  }
  return best_r;
}

}  // namespace

ProductVerdict classify_product(const std::vector<PhaseTerm>& terms, double alpha_tol) {
  if (!(alpha_tol >= 0.0)) throw Error(ErrorKind::Domain, "alpha tolerance must be non-negative");
  for (const auto& t : terms) {
    if (t.beta == 0.0) throw Error(ErrorKind::Domain, "every coefficient beta_j must be nonzero");
    if (!std::isfinite(t.alpha) || !std::isfinite(t.beta)) {
      throw Error(ErrorKind::Domain, "terms must be finite");
    }
  }

  std::vector<PhaseTerm> sorted = terms;
  std::stable_sort(sorted.begin(), sorted.end(), [](const PhaseTerm& x, const PhaseTerm& y) { return x.alpha < y.alpha; });

  ProductVerdict verdict;
  std::vector<Group> groups;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const PhaseTerm& t = sorted[i];
    if (i > 0) {
      const double gap = t.alpha - sorted[i - 1].alpha;
      if (gap > alpha_tol && gap <= 10.0 * alpha_tol) verdict.near_miss = true;
    }
    if (groups.empty() || t.alpha - sorted[i - 1].alpha > alpha_tol) groups.push_back(Group{t.alpha});
    Group& g = groups.back();
    g.sum += t.beta;
    g.abs_sum += std::abs(t.beta);
    g.zero = g.zero || std::abs(t.alpha) <= alpha_tol;
    ++g.count;
  }

  verdict.is_identity = std::all_of(groups.begin(), groups.end(), [](const Group& g) {
    return g.zero ? in_two_pi_z(g.sum) : std::abs(g.sum) <= 1e-12 * g.abs_sum;
  });
  if (!verdict.is_identity) {
    verdict.witness = find_witness(terms);
    return verdict;
  }

  const std::size_t n = terms.size();
  const bool single_group = groups.size() == 1;
  if (n == 1) {
    verdict.case_label = ProductCase::SingleA;
  } else if (n == 2) {
    verdict.case_label = groups.front().zero ? ProductCase::PairA : ProductCase::PairB;
  } else if (n == 3) {
    if (single_group) {
      verdict.case_label = groups.front().zero ? ProductCase::TripleA : ProductCase::TripleB;
    } else {
      verdict.case_label = ProductCase::TripleC;
    }
  } else {
    // Products of four or more factors, and the empty product.
    verdict.case_label = ProductCase::General;
  }
  return verdict;
}

double product_deviation(const std::vector<PhaseTerm>& terms, double r) {
  std::complex<double> product = 1.0;
  for (const auto& t : terms) product *= std::polar(1.0, t.beta * std::pow(r, t.alpha));
  return std::abs(product - 1.0);
}

bool sample_oracle(const std::vector<PhaseTerm>& terms, const Eigen::VectorXd& r_grid) {
  if (r_grid.size() < 256) throw Error(ErrorKind::Configuration, "sample oracle needs at least 256 radii");
  if (r_grid.maxCoeff() < 100.0 * r_grid.minCoeff()) {
    throw Error(ErrorKind::Configuration, "sample oracle radii must span at least two decades");
  }
  for (Eigen::Index k = 0; k < r_grid.size(); ++k) {
    if (product_deviation(terms, r_grid[k]) > 1e-9) return false;
  }
  return true;
}

}  // namespace fracprop

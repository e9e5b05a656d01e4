#pragma once

#include <span>
#include <vector>

#include "cfm/multivector.hpp"

namespace cfm {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// N-point Gauss–Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

/// N equispaced nodes t_j = lo + j (hi - lo) / N with equal weights.
QuadratureRule periodic_trapezoid(int n, double lo, double hi);

/// Fixed-order pairwise summation; the result depends only on the order of
/// the terms, never on scheduling.
double pairwise_sum(std::span<const double> terms);
Multivector pairwise_sum(std::span<const Multivector> terms);

}  // namespace cfm

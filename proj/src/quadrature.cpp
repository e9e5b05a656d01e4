#include "cfm/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfm {

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo_i = static_cast<std::size_t>(i);
    const auto hi_i = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo_i] = mid - half * x;
    rule.nodes[hi_i] = mid + half * x;
    rule.weights[lo_i] = half * w;
    rule.weights[hi_i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = mid;
  return rule;
}

QuadratureRule periodic_trapezoid(int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("periodic_trapezoid: need at least one node");
  QuadratureRule rule;
  const double h = (hi - lo) / n;
  for (int j = 0; j < n; ++j) {
    rule.nodes.push_back(lo + j * h);
    rule.weights.push_back(h);
  }
  return rule;
}

namespace {

template <class T>
T sum_range(std::span<const T> t) {
  if (t.size() == 1) return t[0];
  const std::size_t half = t.size() / 2;
  return sum_range(t.first(half)) + sum_range(t.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> terms) {
  return terms.empty() ? 0.0 : sum_range(terms);
}

Multivector pairwise_sum(std::span<const Multivector> terms) {
  if (terms.empty()) throw std::invalid_argument("pairwise_sum: empty multivector range");
  return sum_range(terms);
}

}  // namespace cfm

#pragma once

#include <string_view>

#include "cfm/manifold.hpp"

namespace cfm {

enum class KernelCase {
  SameChart,   ///< x and y given in the same chart
  OverlapRep,  ///< different charts, at least one point in the neck
  CrossGlue,   ///< body of one chart against body of the other
};

std::string_view to_string(KernelCase c);

struct KernelValue {
  Multivector value;
  KernelCase case_tag;
};

/// Cauchy kernel C_M(x, y) on the glued manifold, in the fibre
/// representation of the charts x and y are given in.
///
/// Same chart j: G(x_s - y_s) with x_s, y_s the chart-j embeddings and
/// exponent n. Different charts a (for x) and b (for y): y is carried to the
/// chart-a embedding by T = transfer(b, a) and
///   C_M(x, y) = J(T, y_s) G(x_s - T(y_s)),
/// which is how a left section changes chart in the y variable.
///
/// Throws DiagonalError when x and y are the same manifold point and
/// DomainViolation for inadmissible inputs.
KernelValue kernel_CM(const GluedManifold& M, const ManifoldPoint& x, const ManifoldPoint& y);

/// For x, y both in the neck:
///   | J(T, y_2) C_1(x_1, y_1) reversion(J(T, x_2)) - s C_2(x_2, y_2) |
/// with T = transfer(2, 1), C_j the chart-j same-chart kernel and
/// s = lambda |lambda|^{-n} for the pseudo-determinant lambda of T.
double overlap_consistency_residual(const GluedManifold& M, const ManifoldPoint& x,
                                    const ManifoldPoint& y);

}  // namespace cfm

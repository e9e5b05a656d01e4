#include "cfm/cauchy_kernel.hpp"

#include <cmath>

#include "cfm/errors.hpp"

namespace cfm {

std::string_view to_string(KernelCase c) {
  switch (c) {
    case KernelCase::SameChart: return "same-chart";
    case KernelCase::OverlapRep: return "overlap-rep";
    case KernelCase::CrossGlue: return "cross-glue";
  }
  return "unknown";
}

namespace {

void check_inputs(const GluedManifold& M, const ManifoldPoint& x, const ManifoldPoint& y) {
  if (!M.admissible(x) || !M.admissible(y)) throw DomainViolation("kernel_CM: inadmissible point");
  if (M.equivalent(x, y)) throw DiagonalError("kernel_CM: x and y are the same point");
}

Multivector same_chart(const GluedManifold& M, const Vec& xs, const Vec& ys) {
  return cauchy_kernel_G(Multivector::vector(M.algebra_dim(), xs - ys), M.n());
}

}  // namespace

KernelValue kernel_CM(const GluedManifold& M, const ManifoldPoint& x, const ManifoldPoint& y) {
  check_inputs(M, x, y);
  const Vec xs = M.embed(x);
  const Vec ys = M.embed(y);
  if (x.chart == y.chart) return {same_chart(M, xs, ys), KernelCase::SameChart};

  const VahlenMap to_x = M.transfer(y.chart, x.chart);
  const Vec y_in_x = to_x.apply(ys);
  const Multivector value = to_x.conformal_weight(ys) * same_chart(M, xs, y_in_x);
  const bool overlap = M.classify(x) == Region::Neck || M.classify(y) == Region::Neck;
  return {value, overlap ? KernelCase::OverlapRep : KernelCase::CrossGlue};
}

double overlap_consistency_residual(const GluedManifold& M, const ManifoldPoint& x,
                                    const ManifoldPoint& y) {
  if (M.classify(x) != Region::Neck || M.classify(y) != Region::Neck)
    throw DomainViolation("overlap_consistency_residual: both points must lie in the neck");
  if (M.equivalent(x, y)) throw DiagonalError("overlap_consistency_residual: x and y coincide");
  const ManifoldPoint x1{1, M.continued_coordinate(x, 1)};
  const ManifoldPoint y1{1, M.continued_coordinate(y, 1)};
  const ManifoldPoint x2{2, M.continued_coordinate(x, 2)};
  const ManifoldPoint y2{2, M.continued_coordinate(y, 2)};
  const Vec x2s = M.embed(x2);
  const Vec y2s = M.embed(y2);

  const Multivector chart1 = same_chart(M, M.embed(x1), M.embed(y1));
  const Multivector chart2 = same_chart(M, x2s, y2s);
  const VahlenMap to_1 = M.transfer(2, 1);
  const double lambda = to_1.pseudo_determinant();
  const double s = lambda * std::pow(std::abs(lambda), -static_cast<double>(M.n()));
  const Multivector conjugated =
      to_1.conformal_weight(y2s) * chart1 * to_1.conformal_weight(x2s).reversion();
  return (conjugated - chart2 * s).norm();
}

}  // namespace cfm

#include "cfm/integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cfm/errors.hpp"
#include "cfm/quadrature.hpp"

namespace cfm {

namespace {

SurfaceNode make_node(const GluedManifold& M, const SurfacePatch& patch, std::size_t index,
                      const Vec& t, double rule_weight) {
  const auto k = static_cast<std::size_t>(M.n() + 1);
  const auto n = static_cast<std::size_t>(M.n());
  const PatchSample s = patch.param(t);
  const Vec N = natural_normal(s.tangents);
  double span = 1.0;
  for (const Vec& tg : s.tangents) span *= tg.norm();
  if (!(N.norm() > 1e-12 * span) || span == 0.0)
    throw DomainViolation("surface node: degenerate tangent frame");

  const VahlenMap E = M.embedding(patch.chart);
  const Vec u = s.point.resized(k);
  std::vector<Vec> embedded;
  for (const Vec& tg : s.tangents) embedded.push_back(E.differential(u, tg.resized(k)));

  SurfaceNode node;
  node.point = {patch.chart, s.point.resized(n)};
  node.ambient = E.apply(u);
  node.plane_normal = N * (static_cast<double>(patch.orientation) / N.norm());
  const Vec pushed = E.differential(u, node.plane_normal.resized(k));
  node.normal = pushed / pushed.norm();
  node.weight = rule_weight * gram_measure(embedded);
  node.plane_weight = rule_weight * gram_measure(s.tangents);
  node.patch = index;
  return node;
}

bool finite(const Multivector& m) {
  for (double c : m.coeffs())
    if (!std::isfinite(c)) return false;
  return true;
}

struct Accumulated {
  Multivector value;
  double magnitude;  ///< sum of |term|, for the rounding floor
};

Accumulated accumulate(const GluedManifold& M, const std::vector<SurfaceNode>& nodes,
                       const SurfaceIntegrand& integrand) {
  std::vector<Multivector> terms;
  std::vector<double> sizes;
  terms.reserve(nodes.size());
  for (const SurfaceNode& node : nodes) {
    Multivector v = integrand(node);
    if (!finite(v)) throw SingularPoint("surface quadrature: integrand not finite at a node");
    v *= node.weight;
    sizes.push_back(v.norm());
    terms.push_back(std::move(v));
  }
  if (terms.empty()) return {Multivector(M.algebra_dim()), 0.0};
  return {pairwise_sum(terms), pairwise_sum(sizes)};
}

QuadratureReport report(const Accumulated& fine, const Accumulated& coarse, std::size_t nodes,
                        double factor) {
  QuadratureReport r{fine.value * factor, 0.0, nodes};
  const double diff = (fine.value - coarse.value).norm() * std::abs(factor);
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * fine.magnitude * std::abs(factor);
  r.estimated_error = std::max(diff, floor);
  return r;
}

struct PlaneNode {
  Vec u, normal;
  double weight;
};

PlaneNode in_chart(const GluedManifold& M, const SurfaceNode& node, int chart) {
  if (node.point.chart == chart)
    return {node.point.coord.finite(), node.plane_normal, node.plane_weight};
  const auto k = static_cast<std::size_t>(M.n() + 1);
  const auto n = static_cast<std::size_t>(M.n());
  const VahlenMap tau = M.chart_transition(node.point.chart, chart);
  const Vec u = node.point.coord.finite().resized(k);
  const Vec pushed = tau.differential(u, node.plane_normal.resized(k));
  const double stretch = pushed.norm();
  return {tau.apply(u).resized(n), (pushed / stretch).resized(n),
          node.plane_weight * std::pow(stretch, M.n() - 1)};
}

}  // namespace

std::vector<SurfaceNode> surface_nodes(const GluedManifold& M, const Hypersurface& S, int order) {
  if (S.n != M.n()) throw DimensionMismatch("surface_nodes: surface and manifold dimensions differ");
  if (order < 1) throw std::invalid_argument("surface_nodes: order must be positive");
  std::vector<SurfaceNode> nodes;
  for (std::size_t pi = 0; pi < S.patches.size(); ++pi) {
    const SurfacePatch& patch = S.patches[pi];
    const std::size_t dims = patch.domain.size();
    std::vector<QuadratureRule> rules;
    for (const auto& iv : patch.domain) rules.push_back(gauss_legendre(order, iv[0], iv[1]));
    std::size_t total = 1;
    for (std::size_t i = 0; i < dims; ++i) total *= static_cast<std::size_t>(order);
    for (std::size_t idx = 0; idx < total; ++idx) {
      Vec t(dims);
      double w = 1.0;
      std::size_t rest = idx;
      for (std::size_t i = 0; i < dims; ++i) {
        const std::size_t j = rest % static_cast<std::size_t>(order);
        rest /= static_cast<std::size_t>(order);
        t[i] = rules[i].nodes[j];
        w *= rules[i].weights[j];
      }
      nodes.push_back(make_node(M, patch, pi, t, w));
    }
  }
  return nodes;
}

std::vector<SurfaceNode> periodic_nodes(const GluedManifold& M, const Hypersurface& S, int count) {
  if (S.patches.size() != 1 || !S.patches[0].periodic || S.patches[0].domain.size() != 1)
    throw DomainViolation("periodic_nodes: need a single periodic curve patch");
  const SurfacePatch& patch = S.patches[0];
  const QuadratureRule rule = periodic_trapezoid(count, patch.domain[0][0], patch.domain[0][1]);
  std::vector<SurfaceNode> nodes;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    nodes.push_back(make_node(M, patch, 0, Vec{rule.nodes[j]}, rule.weights[j]));
  return nodes;
}

Vec outward_normal(const GluedManifold& M, const Hypersurface& S, std::size_t patch, const Vec& t) {
  return make_node(M, S.patches.at(patch), patch, t, 1.0).normal;
}

QuadratureReport surface_quadrature(const GluedManifold& M, const Hypersurface& S,
                                    const SurfaceIntegrand& integrand) {
  const int order = S.quad_order;
  const std::vector<SurfaceNode> fine = surface_nodes(M, S, order);
  const std::vector<SurfaceNode> coarse = surface_nodes(M, S, std::max(1, order / 2));
  return report(accumulate(M, fine, integrand), accumulate(M, coarse, integrand), fine.size(), 1.0);
}

double omega(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

Section::Section(const GluedManifold& M, Germ germ) : M_(M), germ_(std::move(germ)) {}

Multivector Section::germ(const ManifoldPoint& p) const {
  if (p.coord.is_infinite()) throw SingularPoint("Section: evaluation at a chart's infinity");
  return germ_(p.chart, p.coord.finite());
}

Multivector Section::operator()(const ManifoldPoint& p) const {
  const Multivector F = germ(p);
  const Vec xs = M_.embed(p);
  return M_.embedding_inverse(p.chart).conformal_weight(xs) * F;
}

Section section_from_germ(const GluedManifold& M, const CliffordField& F) {
  if (F.dim_in != M.n()) throw DimensionMismatch("section_from_germ: germ must live on R^n");
  if (F.dim_alg > M.algebra_dim())
    throw DimensionMismatch("section_from_germ: germ values exceed Cl_{n+1}");
  const VahlenMap tau = M.chart_transition(2, 1);
  const int k = M.algebra_dim();
  const auto n = static_cast<std::size_t>(M.n());
  return Section(M, [F, tau, k, n](int chart, const Vec& u) {
    if (chart == 1) return F(u).lifted(k);
    const Vec uk = u.resized(static_cast<std::size_t>(k));
    return tau.conformal_weight(uk) * F(tau.apply(uk).resized(n)).lifted(k);
  });
}

int enclosure_index(const GluedManifold& M, const std::vector<SurfaceNode>& nodes,
                    const ManifoldPoint& y) {
  ManifoldPoint target = y;
  if (target.coord.is_infinite()) {
    const int other = y.chart == 1 ? 2 : 1;
    target = {other, M.continued_coordinate(y, other)};
  }
  const Vec v = target.coord.finite();
  const int n = M.n();
  std::vector<double> flux, volume;
  for (const SurfaceNode& node : nodes) {
    const PlaneNode p = in_chart(M, node, target.chart);
    const Vec d = p.u - v;
    flux.push_back(p.weight * d.dot(p.normal) / std::pow(d.norm(), n));
    volume.push_back(p.weight * p.u.dot(p.normal) / n);
  }
  const double index = pairwise_sum(flux) / omega(n);
  const double rounded = std::round(index);
  if (std::abs(index - rounded) > 0.25)
    throw DomainViolation("y lies on S or too close to it to resolve");
  // Outward normals pointing into the compactified side mean S bounds the
  // unbounded region of the chart plane.
  const bool bounds_outer = pairwise_sum(volume) < 0.0;
  const int enclosed = static_cast<int>(rounded) + (bounds_outer ? 1 : 0);
  if (enclosed != 0 && enclosed != 1)
    throw DomainViolation("enclosure index out of range: S is not a simple closed surface");
  return enclosed;
}

Multivector cauchy_transform(const GluedManifold& M, const std::vector<SurfaceNode>& nodes,
                             const std::vector<Multivector>& values, const ManifoldPoint& y) {
  if (nodes.size() != values.size())
    throw DimensionMismatch("cauchy_transform: one value per node required");
  const int k = M.algebra_dim();
  std::vector<Multivector> terms;
  terms.reserve(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const Multivector C = kernel_CM(M, nodes[j].point, y).value;
    terms.push_back(C * Multivector::vector(k, nodes[j].normal) * values[j].lifted(k) * nodes[j].weight);
  }
  if (terms.empty()) return Multivector(k);
  return pairwise_sum(terms) * (-1.0 / omega(M.n()));
}

QuadratureReport cauchy_integral(const GluedManifold& M, const Hypersurface& S, const Section& f,
                                 const ManifoldPoint& y) {
  return cauchy_integral(M, S, f, y, CauchyOptions{});
}

QuadratureReport cauchy_integral(const GluedManifold& M, const Hypersurface& S, const Section& f,
                                 const ManifoldPoint& y, const CauchyOptions& options) {
  const int order = options.order.value_or(S.quad_order);
  const std::vector<SurfaceNode> fine = surface_nodes(M, S, order);
  if (enclosure_index(M, fine, y) != 1) throw DomainViolation("cauchy_integral: y lies outside S");
  const std::vector<SurfaceNode> coarse = surface_nodes(M, S, std::max(1, order / 2));
  const int k = M.algebra_dim();
  const double sign = options.flip_normals ? -1.0 : 1.0;
  const SurfaceIntegrand integrand = [&](const SurfaceNode& x) {
    return kernel_CM(M, x.point, y).value * Multivector::vector(k, x.normal * sign) * f(x.point);
  };
  return report(accumulate(M, fine, integrand), accumulate(M, coarse, integrand), fine.size(),
                -1.0 / omega(M.n()));
}

BoundaryData sample_boundary(const GluedManifold& M, const Hypersurface& S, int count,
                             const std::function<Multivector(const SurfaceNode&)>& g) {
  BoundaryData data{periodic_nodes(M, S, count), {}};
  for (const SurfaceNode& node : data.nodes) data.values.push_back(g(node).lifted(M.algebra_dim()));
  return data;
}

std::vector<Multivector> principal_value_transform(const GluedManifold& M, const BoundaryData& g) {
  const std::size_t N = g.nodes.size();
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("principal value: need an even node count");
  if (g.values.size() != N) throw DimensionMismatch("principal value: one value per node required");
  const int k = M.algebra_dim();
  std::vector<Multivector> weighted;
  for (std::size_t j = 0; j < N; ++j)
    weighted.push_back(Multivector::vector(k, g.nodes[j].normal) * g.values[j] * g.nodes[j].weight);
  std::vector<Multivector> out;
  out.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<Multivector> terms;
    for (std::size_t j = (i + 1) % 2; j < N; j += 2) {
      const SurfaceNode& x = g.nodes[j];
      const SurfaceNode& y = g.nodes[i];
      // Same chart: the kernel is G of the embedded difference.
      const Multivector C = x.point.chart == y.point.chart
                                ? cauchy_kernel_G(Multivector::vector(k, x.ambient - y.ambient), M.n())
                                : kernel_CM(M, x.point, y.point).value;
      terms.push_back(C * weighted[j]);
    }
    out.push_back(pairwise_sum(terms) * (-4.0 / omega(M.n())));
  }
  return out;
}

namespace {
constexpr double kSplitSlack = 1e-10;
}  // namespace

PlemeljResult plemelj_projections(const GluedManifold& M, const Hypersurface& S,
                                  const BoundaryData& g) {
  if (!S.closed) throw DomainViolation("plemelj_projections: surface is not closed");
  if (M.n() != 2) throw DimensionMismatch("plemelj_projections: closed curves (n = 2) only");
  const std::vector<Multivector> Hg = principal_value_transform(M, g);
  PlemeljResult res;
  for (std::size_t i = 0; i < Hg.size(); ++i) {
    Multivector plus = (g.values[i] + Hg[i]) * 0.5;
    Multivector minus = g.values[i] - plus;
    const double noise = kSplitSlack * std::max(g.values[i].norm(), plus.norm());
    for (std::uint32_t b = 0; b < plus.size(); ++b) {
      const double target = g.values[i][b];
      if (plus[b] + minus[b] == target) continue;
      // Rounding plus to the ulp grid of the target moves it by at most half
      // an ulp of g and makes target - plus exact whenever the two parts are
      // commensurate.
      const double q = std::abs(std::nextafter(target, 2.0 * std::abs(target) + 1.0) - target);
      const double p = std::round(plus[b] / q) * q;
      if (std::isfinite(p) && p + (target - p) == target) {
        plus[b] = p;
        minus[b] = target - p;
        continue;
      }
      // Otherwise |plus| >> |g| in this coefficient, which only happens for
      // coefficients that vanish up to quadrature and rounding error. If it is
      // below kSplitSlack of the node's size, shrink it toward zero until the
      // split is exact (plus = 0 always is); a genuine cancellation keeps the
      // computed, inexact split.
      if (std::abs(plus[b]) > noise) continue;
      for (double k = std::trunc(p / q / 2.0);; k = std::trunc(k / 2.0)) {
        plus[b] = k * q;
        minus[b] = target - plus[b];
        if (plus[b] + minus[b] == target) break;
      }
    }
    res.plus.push_back(std::move(plus));
    res.minus.push_back(std::move(minus));
  }
  return res;
}

}  // namespace cfm

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cfm/cauchy_kernel.hpp"
#include "cfm/hypersurface.hpp"
#include "cfm/monogenic.hpp"

namespace cfm {

/// A quadrature node of a hypersurface with both its embedded and its
/// chart-plane data.
struct SurfaceNode {
  ManifoldPoint point;
  Vec ambient;          ///< embedded position in R^{n+1}
  Vec normal;           ///< unit outward normal, tangent to the embedding
  double weight = 0.0;  ///< rule weight times the embedded surface measure
  Vec plane_normal;     ///< unit outward normal in the chart plane
  double plane_weight = 0.0;
  std::size_t patch = 0;
};

/// Gauss–Legendre product nodes with `order` points per parameter axis.
std::vector<SurfaceNode> surface_nodes(const GluedManifold& M, const Hypersurface& S, int order);

/// `count` equispaced nodes of a single periodic patch (closed curve, n = 2).
std::vector<SurfaceNode> periodic_nodes(const GluedManifold& M, const Hypersurface& S, int count);

/// Unit outward normal at parameter t of patch `patch`, in the embedding.
/// Throws DomainViolation on a degenerate tangent frame.
Vec outward_normal(const GluedManifold& M, const Hypersurface& S, std::size_t patch, const Vec& t);

struct QuadratureReport {
  Multivector value;
  double estimated_error = 0.0;  ///< |Q_N - Q_{N/2}|, floored at the rounding level of Q_N
  std::size_t nodes_used = 0;
};

using SurfaceIntegrand = std::function<Multivector(const SurfaceNode&)>;

/// Integral over S of the integrand against the embedded surface measure at
/// S.quad_order, with the half-order rule for the error estimate.
/// Throws SingularPoint if the integrand is not finite at a node.
QuadratureReport surface_quadrature(const GluedManifold& M, const Hypersurface& S,
                                    const SurfaceIntegrand& integrand);

/// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double omega(int n);

/// A left monogenic section: one chart-plane germ per chart, related on the
/// neck by f_2(u) = J(tau_21, u) f_1(tau_21 u).
class Section {
 public:
  using Germ = std::function<Multivector(int chart, const Vec& u)>;
  Section(const GluedManifold& M, Germ germ);

  /// Chart-plane value F_j(u) at p = (j, u).
  Multivector germ(const ManifoldPoint& p) const;
  /// Value in the embedded frame: J(E_j^{-1}, x_s) F_j(E_j^{-1} x_s).
  /// Throws SingularPoint at a chart's infinity.
  Multivector operator()(const ManifoldPoint& p) const;

 private:
  GluedManifold M_;
  Germ germ_;
};

/// Section whose chart-1 germ is F and whose chart-2 germ is the
/// J-weighted pullback of F through the inverse transition.
Section section_from_germ(const GluedManifold& M, const CliffordField& F);

/// Gauss index of y with respect to S, computed in y's chart plane: 1 when y
/// lies in the region S bounds (the side the outward normal points away
/// from), 0 on the other side.
/// Throws DomainViolation when y is too close to S to decide.
int enclosure_index(const GluedManifold& M, const std::vector<SurfaceNode>& nodes,
                    const ManifoldPoint& y);

/// -(1/omega_n) sum_j w_j C_M(x_j, y) n(x_j) g_j for y off the nodes.
Multivector cauchy_transform(const GluedManifold& M, const std::vector<SurfaceNode>& nodes,
                             const std::vector<Multivector>& values, const ManifoldPoint& y);

/// Cauchy integral of f over S at an interior point y; reproduces f(y).
/// The sign makes the normalized integral reproduce f with the kernel
/// G(x) = x / |x|^n and the outward normal.
/// Throws DomainViolation if y is on or outside S.
QuadratureReport cauchy_integral(const GluedManifold& M, const Hypersurface& S, const Section& f,
                                 const ManifoldPoint& y);

struct CauchyOptions {
  std::optional<int> order;   ///< replaces S.quad_order
  bool flip_normals = false;  ///< negative control: integrate with -n(x)
};
QuadratureReport cauchy_integral(const GluedManifold& M, const Hypersurface& S, const Section& f,
                                 const ManifoldPoint& y, const CauchyOptions& options);

struct BoundaryData {
  std::vector<SurfaceNode> nodes;  ///< from periodic_nodes
  std::vector<Multivector> values;
};

BoundaryData sample_boundary(const GluedManifold& M, const Hypersurface& S, int count,
                             const std::function<Multivector(const SurfaceNode&)>& g);

struct PlemeljResult {
  std::vector<Multivector> plus;
  std::vector<Multivector> minus;
};

/// Principal-value Cauchy transform H g at every node (odd–even rule: the
/// nodes of opposite parity to the target, with doubled weights).
std::vector<Multivector> principal_value_transform(const GluedManifold& M, const BoundaryData& g);

/// g_plus = (g + H g) / 2 and g_minus = g - g_plus, with g_plus + g_minus == g
/// exactly in floating point, except for coefficients where g_plus and g_minus
/// genuinely cancel far above the size of g (where no exact split exists).
/// Near-vanishing coefficients of g_plus may move by up to 1e-10 of the node's
/// size to make the split exact.
/// Throws DomainViolation for non-closed S.
PlemeljResult plemelj_projections(const GluedManifold& M, const Hypersurface& S,
                                  const BoundaryData& g);

}  // namespace cfm

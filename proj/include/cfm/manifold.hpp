#pragma once

#include <optional>
#include <vector>

#include "cfm/moebius.hpp"

namespace cfm {

enum class ManifoldKind {
  TwoSphere,    ///< two spheres glued along a neck, S_1 ^ S_2(r)
  PlaneSphere,  ///< a copy of R^n glued to a sphere, R_1 ^ S_2
};

enum class Region { Body, Neck, Inadmissible };

/// A chart identifier (1-based, as in the usual notation) and a chart
/// coordinate on the compactified chart plane.
struct ManifoldPoint {
  int chart = 1;
  ExtendedPoint coord;
};

/// Unit vector of R^{n+1}.
class SpherePoint {
 public:
  explicit SpherePoint(Vec components);
  const Vec& components() const noexcept { return v_; }

 private:
  Vec v_;
};

struct ChartRecord {
  /// Cayley embedding (with the chart scale folded in); absent for plane charts.
  std::optional<VahlenMap> cayley;
  double scale = 1.0;
  double neck_inner = 0.0;  ///< 1/r
  double neck_outer = 0.0;  ///< r
  bool admits_infinity = true;
};

/// Unique continuation of the neck map, admitted on N_1 = {|x| < r}.
struct Continuation {
  VahlenMap map;
  double domain_radius;
  bool admits(const ExtendedPoint& x) const;
};

/// Conformally flat manifold obtained by gluing two charts along the annulus
/// A(0, 1/r, r) with x -> -x^{-1}.
///
/// Chart coordinates are the source of truth; Cayley embeddings into R^{n+1}
/// are derived on demand. All maps are expressed in Cl_{n+1} so that plane
/// coordinates and sphere points share one algebra.
class GluedManifold {
 public:
  struct Options {
    std::vector<double> chart_scales{};  ///< sphere radii per chart, default 1
    int weight_exponent = 0;             ///< exponent m in J; 0 means n
  };

  GluedManifold(ManifoldKind kind, int n, double r);
  GluedManifold(ManifoldKind kind, int n, double r, Options options);

  ManifoldKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  int algebra_dim() const noexcept { return n_ + 1; }
  double r() const noexcept { return r_; }
  int weight_exponent() const noexcept { return m_; }
  const std::vector<ChartRecord>& charts() const noexcept { return charts_; }
  const ChartRecord& chart(int id) const;
  bool has_sphere(int chart) const { return this->chart(chart).cayley.has_value(); }

  Region classify(const ManifoldPoint& p) const;
  bool admissible(const ManifoldPoint& p) const { return classify(p) != Region::Inadmissible; }

  /// psi' : x -> -x^{-1} between chart planes (chart 1 to chart 2).
  VahlenMap transition_psi12() const;
  /// Same coefficients, admitted on the continuation domain.
  Continuation continuation_Psi12() const;
  /// Plane-level map from chart `from` to chart `to`: psi' for 1 -> 2 and its
  /// exact inverse for 2 -> 1, so that the two compose to the identity matrix.
  VahlenMap chart_transition(int from, int to) const;

  bool equivalent(const ManifoldPoint& p, const ManifoldPoint& q,
                  double tol = 1e-10) const;
  ManifoldPoint canonical(const ManifoldPoint& p) const;
  /// Cayley image; throws DomainViolation for plane charts.
  SpherePoint to_sphere(const ManifoldPoint& p) const;

  /// Map from chart plane `chart` (R^n inside R^{n+1}) to its embedding:
  /// the Cayley map for sphere charts, the identity for plane charts.
  VahlenMap embedding(int chart) const;
  /// Exact inverse of `embedding`.
  VahlenMap embedding_inverse(int chart) const;
  /// Embedding-level continuation from chart `from` to chart `to`:
  /// embedding(to) o chart_transition(from, to) o embedding_inverse(from).
  VahlenMap transfer(int from, int to) const;

  /// Embedded position in R^{n+1} (sphere point, or the plane point itself).
  Vec embed(const ManifoldPoint& p) const;
  /// The chart coordinate of an embedded point of chart `chart`.
  ExtendedPoint chart_coordinate(int chart, const Vec& embedded) const;

  /// Representation of p in chart `to` (through the continuation when p is
  /// not in the neck). The result may lie in the excised cap of `to`.
  ExtendedPoint continued_coordinate(const ManifoldPoint& p, int to) const;

 private:
  void check_chart(int id) const;

  ManifoldKind kind_;
  int n_;
  double r_;
  int m_;
  std::vector<ChartRecord> charts_;
  std::vector<VahlenMap> embeddings_;
  std::vector<VahlenMap> embedding_inverses_;
};

}  // namespace cfm

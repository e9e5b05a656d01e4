#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cfm/manifold.hpp"

namespace cfm {

/// Point and parameter tangents of a patch, in chart-plane coordinates (R^n).
struct PatchSample {
  Vec point;
  std::vector<Vec> tangents;
};

/// A parametrized piece of a hypersurface living in a single chart.
struct SurfacePatch {
  int chart = 1;
  std::vector<std::array<double, 2>> domain;  ///< one interval per parameter (n-1 of them)
  std::function<PatchSample(const Vec& t)> param;
  /// +1 when the outward normal is the natural normal of the tangent frame
  /// (det[N, T_1, ..., T_{n-1}] > 0), -1 otherwise.
  int orientation = 1;
  /// The first parameter runs over a full period (smooth closed curve).
  bool periodic = false;
};

struct Hypersurface {
  int n = 2;
  std::vector<SurfacePatch> patches;
  int quad_order = 64;
  bool closed = true;
};

/// Normal N with det[N, T_1, ..., T_{n-1}] = |N|^2 (unnormalized).
Vec natural_normal(const std::vector<Vec>& tangents);

/// sqrt(det(T_i . T_j)): the (n-1)-volume spanned by the tangents.
double gram_measure(const std::vector<Vec>& tangents);

/// Boundary of the ball |u - center| < radius in the plane of `chart`
/// (n = 2 or 3), outward normal for orientation +1. The part with |u| < 1 is
/// carried over to the other chart so every patch stays in one chart.
Hypersurface chart_sphere(const GluedManifold& M, int chart, const Vec& center, double radius,
                          int orientation = 1, int quad_order = 64);

/// Boundary of the spherical cap {<x, axis> > cos(angle)} on the sphere of
/// `chart` (axis a unit vector of R^{n+1}), outward from the cap.
/// Throws DomainViolation if the boundary passes through the chart's point at
/// infinity.
Hypersurface tilted_sphere(const GluedManifold& M, int chart, const Vec& axis, double angle,
                           int quad_order = 64);

/// Circle (sphere) at colatitude theta0 measured from e_{n+1}, bounding the
/// cap around -e_{n+1} that contains the chart origin.
Hypersurface colatitude_sphere(const GluedManifold& M, int chart, double theta0,
                               int quad_order = 64);

/// Checks admissibility and the immersion property at a grid of sample points.
/// Throws DomainViolation on failure.
void validate(const GluedManifold& M, const Hypersurface& S);

}  // namespace cfm

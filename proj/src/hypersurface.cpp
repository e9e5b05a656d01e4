#include "cfm/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cfm/errors.hpp"

namespace cfm {

namespace {

constexpr double kPi = std::numbers::pi;

double determinant(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

/// Orthonormal frame (w, p[, q]) of R^n with w = axis, right handed.
std::vector<Vec> frame_about(const Vec& axis) {
  const std::size_t n = axis.dim();
  const Vec w = axis / axis.norm();
  if (n == 2) return {w, Vec{-w[1], w[0]}};
  std::size_t least = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(w[i]) < std::abs(w[least])) least = i;
  Vec p = Vec::unit(n, least);
  p -= w * w.dot(p);
  p = p / p.norm();
  const Vec q{w[1] * p[2] - w[2] * p[1], w[2] * p[0] - w[0] * p[2], w[0] * p[1] - w[1] * p[0]};
  return {w, p, q};
}

/// Full ball boundary as one patch; the first angle is measured from frame[0].
SurfacePatch ball_patch(int chart, const Vec& center, double radius, int orientation,
                        std::vector<Vec> frame, double alpha_lo, double alpha_hi) {
  SurfacePatch patch;
  patch.chart = chart;
  patch.orientation = orientation;
  const std::size_t n = center.dim();
  if (n == 2) {
    patch.domain = {{alpha_lo, alpha_hi}};
    patch.periodic = alpha_hi - alpha_lo >= 2.0 * kPi * (1.0 - 1e-15);
    patch.param = [center, radius, frame](const Vec& t) {
      const double c = std::cos(t[0]), s = std::sin(t[0]);
      return PatchSample{center + radius * (c * frame[0] + s * frame[1]),
                         {radius * (-s * frame[0] + c * frame[1])}};
    };
  } else {
    patch.domain = {{alpha_lo, alpha_hi}, {0.0, 2.0 * kPi}};
    patch.param = [center, radius, frame](const Vec& t) {
      const double ct = std::cos(t[0]), st = std::sin(t[0]);
      const double cp = std::cos(t[1]), sp = std::sin(t[1]);
      const Vec around = cp * frame[1] + sp * frame[2];
      return PatchSample{center + radius * (ct * frame[0] + st * around),
                         {radius * (-st * frame[0] + ct * around),
                          radius * st * (-sp * frame[1] + cp * frame[2])}};
    };
  }
  return patch;
}

Vec midpoint(const SurfacePatch& p) {
  Vec t(p.domain.size());
  for (std::size_t i = 0; i < p.domain.size(); ++i) t[i] = 0.5 * (p.domain[i][0] + p.domain[i][1]);
  return t;
}

/// The same piece of surface expressed in chart `to` through the transition.
SurfacePatch carried(const GluedManifold& M, const SurfacePatch& src, int to) {
  const VahlenMap tau = M.chart_transition(src.chart, to);
  const auto k = static_cast<std::size_t>(M.n() + 1);
  const auto n = static_cast<std::size_t>(M.n());
  const auto inner = src.param;
  SurfacePatch out = src;
  out.chart = to;
  out.periodic = false;
  out.param = [tau, inner, k, n](const Vec& t) {
    const PatchSample s = inner(t);
    const Vec u = s.point.resized(k);
    PatchSample r{tau.apply(u).resized(n), {}};
    for (const Vec& tg : s.tangents) r.tangents.push_back(tau.differential(u, tg.resized(k)).resized(n));
    return r;
  };
  // Orientation follows from pushing the old outward normal forward.
  const Vec t = midpoint(src);
  const PatchSample before = inner(t);
  const PatchSample after = out.param(t);
  const Vec old_out = natural_normal(before.tangents) * static_cast<double>(src.orientation);
  const Vec pushed = tau.differential(before.point.resized(k), old_out.resized(k)).resized(n);
  out.orientation = natural_normal(after.tangents).dot(pushed) > 0.0 ? 1 : -1;
  return out;
}

void check_dim(const GluedManifold& M) {
  if (M.n() != 2 && M.n() != 3)
    throw DimensionMismatch("hypersurface builders support n = 2 and n = 3 only");
}

}  // namespace

Vec natural_normal(const std::vector<Vec>& tangents) {
  const std::size_t n = tangents.size() + 1;
  Vec N(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<double>> minor;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<double> row;
      for (const Vec& t : tangents) row.push_back(t[r]);
      minor.push_back(std::move(row));
    }
    N[i] = (i % 2 == 0 ? 1.0 : -1.0) * (minor.empty() ? 1.0 : determinant(minor));
  }
  return N;
}

double gram_measure(const std::vector<Vec>& tangents) {
  std::vector<std::vector<double>> gram(tangents.size(), std::vector<double>(tangents.size()));
  for (std::size_t i = 0; i < tangents.size(); ++i)
    for (std::size_t j = 0; j < tangents.size(); ++j) gram[i][j] = tangents[i].dot(tangents[j]);
  return std::sqrt(std::max(0.0, determinant(std::move(gram))));
}

Hypersurface chart_sphere(const GluedManifold& M, int chart, const Vec& center, double radius,
                          int orientation, int quad_order) {
  check_dim(M);
  if (center.dim() != static_cast<std::size_t>(M.n()))
    throw DimensionMismatch("chart_sphere: center must lie in R^n");
  if (!(radius > 0.0)) throw std::invalid_argument("chart_sphere: radius must be positive");
  if (orientation != 1 && orientation != -1)
    throw std::invalid_argument("chart_sphere: orientation must be +1 or -1");
  Hypersurface S;
  S.n = M.n();
  S.quad_order = quad_order;
  const int other = chart == 1 ? 2 : 1;
  const double c = center.norm();
  const std::vector<Vec> frame = frame_about(c > 0.0 ? center : Vec::unit(center.dim(), 0));
  const bool is_n2 = M.n() == 2;
  const double lo = is_n2 ? -kPi : 0.0;
  const double hi = kPi;
  // |u|^2 = c^2 + rho^2 + 2 rho c cos(alpha): |u| < 1 iff cos(alpha) < kappa.
  const double kappa = c > 0.0 ? (1.0 - c * c - radius * radius) / (2.0 * radius * c)
                               : (radius < 1.0 ? 2.0 : -2.0);
  if (kappa <= -1.0) {
    S.patches.push_back(ball_patch(chart, center, radius, orientation, frame, lo, hi));
  } else if (kappa >= 1.0) {
    SurfacePatch whole = ball_patch(chart, center, radius, orientation, frame, lo, hi);
    const bool periodic = whole.periodic;
    S.patches.push_back(carried(M, whole, other));
    S.patches.back().periodic = periodic;
  } else {
    const double a = std::acos(kappa);
    S.patches.push_back(ball_patch(chart, center, radius, orientation, frame, is_n2 ? -a : 0.0, a));
    const double far_hi = is_n2 ? 2.0 * kPi - a : kPi;
    S.patches.push_back(carried(M, ball_patch(chart, center, radius, orientation, frame, a, far_hi), other));
  }
  return S;
}

Hypersurface tilted_sphere(const GluedManifold& M, int chart, const Vec& axis, double angle,
                           int quad_order) {
  check_dim(M);
  const auto k = static_cast<std::size_t>(M.n() + 1);
  if (axis.dim() != k) throw DimensionMismatch("tilted_sphere: axis must lie in R^{n+1}");
  if (!M.has_sphere(chart)) throw DomainViolation("tilted_sphere: chart has no sphere embedding");
  if (!(angle > 0.0 && angle < kPi)) throw std::invalid_argument("tilted_sphere: angle must be in (0, pi)");
  const Vec m = axis / axis.norm();
  const Vec pole = Vec::unit(k, k - 1);
  Vec perp = pole - m * m.dot(pole);
  perp = perp.norm() > 1e-12 ? perp / perp.norm() : Vec::unit(k, 0);
  const double scale = M.chart(chart).scale;
  const auto coordinate = [&](const Vec& xi) {
    const ExtendedPoint u = M.chart_coordinate(chart, xi * scale);
    if (u.is_infinite() || (xi - pole).norm() < 1e-12)
      throw DomainViolation("tilted_sphere: boundary passes through the chart's point at infinity");
    return u.finite();
  };
  const Vec ua = coordinate(std::cos(angle) * m + std::sin(angle) * perp);
  const Vec ub = coordinate(std::cos(angle) * m - std::sin(angle) * perp);
  const Vec center = (ua + ub) * 0.5;
  const double radius = (ua - ub).norm() * 0.5;
  // The cap is the inside of the chart ball unless it contains the chart's infinity.
  int orientation = -1;
  if ((m - pole).norm() > 1e-12) {
    const ExtendedPoint um = M.chart_coordinate(chart, m * scale);
    if (!um.is_infinite() && (um.finite() - center).norm() < radius) orientation = 1;
  }
  return chart_sphere(M, chart, center, radius, orientation, quad_order);
}

Hypersurface colatitude_sphere(const GluedManifold& M, int chart, double theta0, int quad_order) {
  const auto k = static_cast<std::size_t>(M.n() + 1);
  return tilted_sphere(M, chart, -Vec::unit(k, k - 1), kPi - theta0, quad_order);
}

void validate(const GluedManifold& M, const Hypersurface& S) {
  if (S.patches.empty()) throw DomainViolation("validate: hypersurface has no patches");
  constexpr int kSamples = 9;
  for (const SurfacePatch& p : S.patches) {
    if (p.domain.size() != static_cast<std::size_t>(S.n - 1))
      throw DomainViolation("validate: patch parameter dimension must be n-1");
    const std::size_t dims = p.domain.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < dims; ++i) total *= kSamples;
    for (std::size_t idx = 0; idx < total; ++idx) {
      Vec t(dims);
      std::size_t rest = idx;
      for (std::size_t i = 0; i < dims; ++i) {
        const double frac = (static_cast<double>(rest % kSamples) + 0.5) / kSamples;
        rest /= kSamples;
        t[i] = p.domain[i][0] + frac * (p.domain[i][1] - p.domain[i][0]);
      }
      const PatchSample s = p.param(t);
      if (!M.admissible({p.chart, s.point}))
        throw DomainViolation("validate: patch leaves the admissible region of its chart");
      double scale = 1.0;
      for (const Vec& tg : s.tangents) scale *= tg.norm();
      if (!(natural_normal(s.tangents).norm() > 1e-12 * scale) || scale == 0.0)
        throw DomainViolation("validate: parametrization is not an immersion");
    }
  }
}

}  // namespace cfm

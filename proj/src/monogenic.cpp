#include "cfm/monogenic.hpp"

#include <cmath>
#include <limits>

#include "cfm/errors.hpp"

namespace cfm {

Multivector CliffordField::operator()(const Vec& x) const {
  if (x.dim() != static_cast<std::size_t>(dim_in))
    throw DimensionMismatch("CliffordField: argument has the wrong dimension");
  if (!domain(x)) throw DomainViolation("CliffordField: evaluation outside the domain");
  return eval(x);
}

namespace {

Multivector dirac_fd(const CliffordField& f, const Vec& x, double h, DiracSide side) {
  if (!(h > 0.0)) throw std::invalid_argument("dirac_fd: step must be positive");
  const auto n = static_cast<std::size_t>(f.dim_in);
  if (!f.domain(x)) throw DomainViolation("dirac_fd: centre outside the domain");
  for (std::size_t j = 0; j < n; ++j) {
    const Vec step = Vec::unit(n, j) * h;
    if (!f.domain(x + step) || !f.domain(x - step))
      throw DomainViolation("dirac_fd: stencil exits the domain");
  }
  Multivector out(f.dim_alg);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec step = Vec::unit(n, j) * h;
    const Multivector diff = (f.eval(x + step) - f.eval(x - step)) * (0.5 / h);
    const Multivector ej = Multivector::basis_vector(f.dim_alg, static_cast<int>(j));
    out += side == DiracSide::Left ? ej * diff : diff * ej;
  }
  return out;
}

}  // namespace

Multivector dirac_left_fd(const CliffordField& f, const Vec& x, double h) {
  return dirac_fd(f, x, h, DiracSide::Left);
}

Multivector dirac_right_fd(const CliffordField& g, const Vec& x, double h) {
  return dirac_fd(g, x, h, DiracSide::Right);
}

FdConvergence dirac_convergence(const CliffordField& f, const Vec& x, double h, DiracSide side) {
  const double r1 = dirac_fd(f, x, h, side).norm();
  const double r2 = dirac_fd(f, x, 0.5 * h, side).norm();
  const double order = (r1 > 0.0 && r2 > 0.0) ? std::log2(r1 / r2)
                                              : std::numeric_limits<double>::quiet_NaN();
  return {r1, r2, order};
}

CliffordField g_translate(const Vec& a, int n, int dim_alg) {
  if (a.dim() != static_cast<std::size_t>(n))
    throw DimensionMismatch("g_translate: centre must lie in R^n");
  const int k = dim_alg == 0 ? n : dim_alg;
  if (k < n) throw DimensionMismatch("g_translate: algebra smaller than R^n");
  CliffordField f;
  f.dim_in = n;
  f.dim_alg = k;
  f.eval = [a, n, k](const Vec& x) {
    return cauchy_kernel_G(Multivector::vector(k, x - a), n);
  };
  f.domain = [a](const Vec& x) { return (x - a).norm() > 0.0; };
  return f;
}

CliffordField constant_field(const Multivector& value, int dim_in) {
  CliffordField f;
  f.dim_in = dim_in;
  f.dim_alg = value.dim();
  f.eval = [value](const Vec&) { return value; };
  return f;
}

CliffordField moebius_pullback(const VahlenMap& psi, const CliffordField& f, int dim_in) {
  const int k = psi.ambient_dim();
  if (f.dim_alg != k)
    throw DimensionMismatch("moebius_pullback: field values must lie in the map's algebra");
  if (f.dim_in > k) throw DimensionMismatch("moebius_pullback: field lives on a larger space");
  CliffordField out;
  out.dim_in = dim_in == 0 ? f.dim_in : dim_in;
  out.dim_alg = k;
  const auto target_dim = static_cast<std::size_t>(f.dim_in);
  auto image = [psi, target_dim](const Vec& x) -> std::optional<Vec> {
    const ExtendedPoint p = psi.apply(ExtendedPoint{x.resized(static_cast<std::size_t>(psi.ambient_dim()))});
    if (p.is_infinite()) return std::nullopt;
    return p.finite().resized(target_dim);
  };
  out.eval = [psi, f, image](const Vec& x) {
    const auto y = image(x);
    if (!y) throw SingularPoint("moebius_pullback: point maps to infinity");
    return psi.conformal_weight(x.resized(static_cast<std::size_t>(psi.ambient_dim()))) * f.eval(*y);
  };
  out.domain = [f, image](const Vec& x) {
    try {
      const auto y = image(x);
      return y.has_value() && f.domain(*y);
    } catch (const std::exception&) {
      return false;
    }
  };
  return out;
}

}  // namespace cfm

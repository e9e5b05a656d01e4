#include "cfm/moebius.hpp"

#include <array>
#include <cmath>

#include "cfm/errors.hpp"

namespace cfm {

const Vec& ExtendedPoint::finite() const {
  if (infinite_) throw SingularPoint("ExtendedPoint: point at infinity has no finite coordinate");
  return v_;
}

VahlenMap::VahlenMap(Multivector a, Multivector b, Multivector c, Multivector d,
                     int kernel_exponent)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), m_(kernel_exponent) {
  const int k = a_.dim();
  if (b_.dim() != k || c_.dim() != k || d_.dim() != k)
    throw DimensionMismatch("VahlenMap: coefficients from different algebras");
  if (kernel_exponent < 1) throw std::invalid_argument("VahlenMap: kernel exponent must be positive");
}

VahlenMap VahlenMap::identity(int k, int m) {
  return {Multivector::scalar(k, 1.0), Multivector(k), Multivector(k), Multivector::scalar(k, 1.0), m};
}

VahlenMap VahlenMap::translation(const Vec& shift, int k, int m) {
  return {Multivector::scalar(k, 1.0), Multivector::vector(k, shift), Multivector(k),
          Multivector::scalar(k, 1.0), m};
}

VahlenMap VahlenMap::dilation(double factor, int k, int m) {
  return {Multivector::scalar(k, factor), Multivector(k), Multivector(k),
          Multivector::scalar(k, 1.0), m};
}

VahlenMap VahlenMap::neck_inversion(int k, int m) {
  return {Multivector(k), Multivector::scalar(k, -1.0), Multivector::scalar(k, 1.0), Multivector(k), m};
}

VahlenMap VahlenMap::cayley(int n) {
  if (n < 1) throw std::invalid_argument("cayley: n must be positive");
  const int k = n + 1;
  const Multivector e = Multivector::basis_vector(k, n);
  return {e, Multivector::scalar(k, 1.0), Multivector::scalar(k, 1.0), e, n};
}

VahlenMap VahlenMap::with_kernel_exponent(int m) const { return {a_, b_, c_, d_, m}; }

Multivector VahlenMap::denominator(const Vec& x) const {
  return c_ * Multivector::vector(ambient_dim(), x) + d_;
}

namespace {

Vec checked_vector(const Multivector& m, const Tolerance& tol) {
  if (!m.is_pure_grade(1, tol))
    throw InvalidVahlen("invalid Vahlen coefficients: image is not a vector");
  return m.vector_part();
}

}  // namespace

ExtendedPoint VahlenMap::apply(const ExtendedPoint& x, const Tolerance& tol) const {
  const auto k = static_cast<std::size_t>(ambient_dim());
  if (x.is_infinite()) {
    const double scale = a_.norm() + b_.norm() + c_.norm() + d_.norm();
    if (c_.norm() <= tol.singular * scale) return ExtendedPoint::infinity(k);
    return checked_vector(a_ * clifford_group_inverse(c_, tol), tol);
  }
  const Vec& v = x.finite();
  const Multivector xv = Multivector::vector(ambient_dim(), v);
  const Multivector den = c_ * xv + d_;
  const double scale = c_.norm() * v.norm() + d_.norm();
  if (den.norm() <= tol.singular * scale) return ExtendedPoint::infinity(k);
  return checked_vector((a_ * xv + b_) * clifford_group_inverse(den, tol), tol);
}

Vec VahlenMap::apply(const Vec& x, const Tolerance& tol) const {
  const ExtendedPoint p = apply(ExtendedPoint{x}, tol);
  if (p.is_infinite()) throw SingularPoint("VahlenMap::apply: point is a pole of the map");
  return p.finite();
}

Multivector VahlenMap::conformal_weight(const Vec& x, const Tolerance& tol) const {
  const Multivector den = denominator(x);
  const double nd = den.norm();
  if (nd <= tol.singular * (c_.norm() * x.norm() + d_.norm()))
    throw SingularPoint("conformal weight: cx+d vanishes");
  return den.reversion() * std::pow(nd, -static_cast<double>(m_));
}

double VahlenMap::pseudo_determinant(const Tolerance& tol) const {
  const Multivector p = a_ * d_.reversion() - b_ * c_.reversion();
  if (!p.is_pure_grade(0, tol)) throw InvalidVahlen("pseudo-determinant is not a scalar");
  const double scale = a_.norm() * d_.norm() + b_.norm() * c_.norm();
  if (std::abs(p.scalar_part()) <= tol.singular * scale)
    throw InvalidVahlen("pseudo-determinant vanishes");
  return p.scalar_part();
}

Vec VahlenMap::differential(const Vec& x, const Vec& h, const Tolerance& tol) const {
  const Multivector den = denominator(x);
  const Multivector left = clifford_group_inverse(den.reversion(), tol);
  const Multivector right = clifford_group_inverse(den, tol);
  const Multivector out = left * Multivector::vector(ambient_dim(), h) * right;
  return checked_vector(out * pseudo_determinant(tol), tol);
}

VahlenMap VahlenMap::normalized() const {
  const double s = 1.0 / std::sqrt(std::abs(pseudo_determinant()));
  return {a_ * s, b_ * s, c_ * s, d_ * s, m_};
}

VahlenMap compose(const VahlenMap& outer, const VahlenMap& inner) {
  if (outer.ambient_dim() != inner.ambient_dim())
    throw DimensionMismatch("compose: maps live in different algebras");
  return {outer.a() * inner.a() + outer.b() * inner.c(), outer.a() * inner.b() + outer.b() * inner.d(),
          outer.c() * inner.a() + outer.d() * inner.c(), outer.c() * inner.b() + outer.d() * inner.d(),
          outer.kernel_exponent()};
}

VahlenMap inverse(const VahlenMap& psi, const Tolerance& tol) {
  double lambda = 0.0;
  try {
    lambda = psi.pseudo_determinant(tol);
  } catch (const InvalidVahlen& e) {
    throw NotInvertible(std::string("inverse: ") + e.what());
  }
  const double s = 1.0 / lambda;
  VahlenMap inv{psi.d().reversion() * s, psi.b().reversion() * (-s), psi.c().reversion() * (-s),
                psi.a().reversion() * s, psi.kernel_exponent()};

  // Pointwise validation on a fixed probe set.
  const auto k = static_cast<std::size_t>(psi.ambient_dim());
  const std::array<double, 4> probe = {0.37, -0.81, 1.93, -2.71};
  int checked = 0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    Vec x(k);
    for (std::size_t j = 0; j < k; ++j) x[j] = probe[(i + j) % probe.size()] * (1.0 + 0.1 * j);
    try {
      const ExtendedPoint y = psi.apply(ExtendedPoint{x}, tol);
      const ExtendedPoint back = inv.apply(y, tol);
      if (back.is_infinite() || (back.finite() - x).norm() > 1e-8 * (1.0 + x.norm()))
        throw NotInvertible("inverse: block rearrangement failed pointwise validation");
      ++checked;
    } catch (const SingularPoint&) {
    }
  }
  if (checked == 0) throw NotInvertible("inverse: no admissible validation point");
  return inv;
}

Multivector cauchy_kernel_G(const Multivector& x, int n) {
  const double r = x.norm();
  if (!(r > 0.0)) throw SingularPoint("G: evaluation at the origin");
  return x * std::pow(r, -static_cast<double>(n));
}

Multivector cauchy_kernel_G(const Vec& x, int n) {
  return cauchy_kernel_G(Multivector::vector(static_cast<int>(x.dim()), x), n);
}

namespace {

struct CovarianceTerms {
  Multivector lhs, gxy, jx, jy;
  double scale;
};

CovarianceTerms covariance_terms(const VahlenMap& psi, const Vec& x, const Vec& y,
                                 std::optional<int> g_exponent) {
  const int m = g_exponent.value_or(psi.kernel_exponent());
  const int k = psi.ambient_dim();
  const Vec px = psi.apply(x.resized(k));
  const Vec py = psi.apply(y.resized(k));
  const double lambda = psi.pseudo_determinant();
  return {cauchy_kernel_G(px - py, m), cauchy_kernel_G((x - y).resized(k), m),
          psi.conformal_weight(x.resized(k)), psi.conformal_weight(y.resized(k)),
          lambda * std::pow(std::abs(lambda), -static_cast<double>(m))};
}

}  // namespace

double covariance_residual(const VahlenMap& psi, const Vec& x, const Vec& y,
                           std::optional<int> g_exponent) {
  const auto t = covariance_terms(psi, x, y, g_exponent);
  const Multivector rhs = clifford_group_inverse(t.jx) * t.gxy *
                          clifford_group_inverse(t.jy.reversion()) * t.scale;
  return (t.lhs - rhs).norm();
}

double covariance_residual_mirrored(const VahlenMap& psi, const Vec& x, const Vec& y,
                                    std::optional<int> g_exponent) {
  const auto t = covariance_terms(psi, x, y, g_exponent);
  const Multivector rhs = clifford_group_inverse(t.jy.reversion()) * t.gxy *
                          clifford_group_inverse(t.jx) * t.scale;
  return (t.lhs - rhs).norm();
}

}  // namespace cfm

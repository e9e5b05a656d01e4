#pragma once

#include <optional>

#include "cfm/multivector.hpp"

namespace cfm {

/// A point of R^k or the point at infinity of its one-point compactification.
class ExtendedPoint {
 public:
  ExtendedPoint() = default;
  ExtendedPoint(Vec v) : v_(std::move(v)) {}  // NOLINT: implicit on purpose
  static ExtendedPoint infinity(std::size_t dim) {
    ExtendedPoint p{Vec(dim)};
    p.infinite_ = true;
    return p;
  }

  bool is_infinite() const noexcept { return infinite_; }
  std::size_t dim() const noexcept { return v_.dim(); }
  /// The finite coordinate; throws SingularPoint at infinity.
  const Vec& finite() const;

  friend bool operator==(const ExtendedPoint& a, const ExtendedPoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.v_ == b.v_;
  }

 private:
  Vec v_;
  bool infinite_ = false;
};

/// Moebius transformation x -> (ax+b)(cx+d)^{-1} with coefficients in Cl_k.
///
/// The map acts on R^k (vectors of smaller dimension are zero padded).
/// `kernel_exponent` is the power m in the conformal weight
/// J(psi, x) = reversion(cx+d) / |cx+d|^m; it must equal the dimension of the
/// space the weight is meant to make monogenic.
class VahlenMap {
 public:
  VahlenMap(Multivector a, Multivector b, Multivector c, Multivector d, int kernel_exponent);

  static VahlenMap identity(int algebra_dim, int kernel_exponent);
  static VahlenMap translation(const Vec& shift, int algebra_dim, int kernel_exponent);
  static VahlenMap dilation(double factor, int algebra_dim, int kernel_exponent);
  /// x -> -x^{-1}, the gluing map of the neck.
  static VahlenMap neck_inversion(int algebra_dim, int kernel_exponent);
  /// (e_{n+1} x + 1)(x + e_{n+1})^{-1}, mapping R^n onto S^n minus e_{n+1};
  /// coefficients live in Cl_{n+1}, kernel exponent n.
  static VahlenMap cayley(int n);

  const Multivector& a() const noexcept { return a_; }
  const Multivector& b() const noexcept { return b_; }
  const Multivector& c() const noexcept { return c_; }
  const Multivector& d() const noexcept { return d_; }
  int ambient_dim() const noexcept { return a_.dim(); }
  int kernel_exponent() const noexcept { return m_; }
  VahlenMap with_kernel_exponent(int m) const;

  /// cx + d.
  Multivector denominator(const Vec& x) const;
  /// Point image; infinity where cx+d vanishes, a c^{-1} at infinity.
  /// Throws InvalidVahlen when the image is not a pure vector.
  ExtendedPoint apply(const ExtendedPoint& x, const Tolerance& tol = kDefaultTolerance) const;
  /// Finite image of a finite point; throws SingularPoint at a pole.
  Vec apply(const Vec& x, const Tolerance& tol = kDefaultTolerance) const;

  /// J(psi, x) = reversion(cx+d) / |cx+d|^m.
  Multivector conformal_weight(const Vec& x, const Tolerance& tol = kDefaultTolerance) const;

  /// a reversion(d) - b reversion(c); a nonzero real for valid coefficients.
  double pseudo_determinant(const Tolerance& tol = kDefaultTolerance) const;

  /// Derivative at x applied to h: lambda reversion(A)^{-1} h A^{-1}, A = cx+d.
  Vec differential(const Vec& x, const Vec& h, const Tolerance& tol = kDefaultTolerance) const;

  /// Rescales the coefficients so that |pseudo_determinant| = 1. The point map
  /// is unchanged; weights change by a constant factor.
  VahlenMap normalized() const;

 private:
  Multivector a_, b_, c_, d_;
  int m_;
};

/// Matrix product; acts as outer after inner.
VahlenMap compose(const VahlenMap& outer, const VahlenMap& inner);

/// Exact matrix inverse: the block rearrangement
/// (reversion(d), -reversion(b), -reversion(c), reversion(a)) divided by the
/// pseudo-determinant, validated pointwise. compose(inverse(p), p) is the
/// identity matrix, so conformal weights compose without stray signs.
VahlenMap inverse(const VahlenMap& psi, const Tolerance& tol = kDefaultTolerance);

/// G(x) = x / |x|^n as an element of Cl_{x.dim()}.
Multivector cauchy_kernel_G(const Vec& x, int n);
/// G on a grade-1 Multivector, result in the same algebra.
Multivector cauchy_kernel_G(const Multivector& x, int n);

/// Residual of the kernel covariance identity
///   G(psi(x) - psi(y)) = s * J(psi,x)^{-1} G(x-y) reversion(J(psi,y))^{-1},
/// s = lambda |lambda|^{-m}, lambda the pseudo-determinant, m the G exponent.
/// `g_exponent` defaults to the map's kernel exponent.
double covariance_residual(const VahlenMap& psi, const Vec& x, const Vec& y,
                           std::optional<int> g_exponent = std::nullopt);

/// Same identity with the weights in the mirrored placement
/// reversion(J(psi,y))^{-1} G(x-y) J(psi,x)^{-1}. Only valid when cx+d and cy+d
/// are vectors or scalars; kept for comparison.
double covariance_residual_mirrored(const VahlenMap& psi, const Vec& x, const Vec& y,
                                    std::optional<int> g_exponent = std::nullopt);

}  // namespace cfm

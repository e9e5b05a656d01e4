#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cfm/tolerance.hpp"
#include "cfm/vec.hpp"

namespace cfm {

/// Element of the universal Clifford algebra Cl_k over R with e_i e_i = -1.
///
/// Coefficients are stored densely; the blade e_{j1} ... e_{jr} (j1 < ... < jr)
/// lives at the index whose set bits are {j1-1, ..., jr-1}.
class Multivector {
 public:
  static constexpr int kMaxDim = 12;

  /// Zero element of Cl_dim.
  explicit Multivector(int dim);
  Multivector(int dim, std::vector<double> coeffs);

  static Multivector scalar(int dim, double s);
  static Multivector blade(int dim, std::uint32_t mask, double coeff = 1.0);
  /// e_{axis+1}, i.e. `axis` is zero based.
  static Multivector basis_vector(int dim, int axis);
  /// Grade-1 element with the components of v (v.dim() <= dim).
  static Multivector vector(int dim, const Vec& v);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return c_.size(); }
  std::span<const double> coeffs() const noexcept { return c_; }
  double operator[](std::uint32_t mask) const { return c_[mask]; }
  double& operator[](std::uint32_t mask) { return c_[mask]; }

  double scalar_part() const { return c_[0]; }
  double norm() const;
  double norm_squared() const;

  Multivector grade(int r) const;
  Multivector reversion() const;
  /// Grade-1 part as a vector of R^dim.
  Vec vector_part() const;
  /// Same element viewed in Cl_new_dim (new_dim >= dim).
  Multivector lifted(int new_dim) const;

  /// True when everything outside grade r is below tol.relative * norm().
  bool is_pure_grade(int r, const Tolerance& tol = kDefaultTolerance) const;

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, double s) { return a *= 1.0 / s; }
  /// Geometric product.
  friend Multivector operator*(const Multivector& a, const Multivector& b);
  friend bool operator==(const Multivector&, const Multivector&) = default;

 private:
  int dim_;
  std::vector<double> c_;
};

/// Sign of e_S e_T = sign * e_{S xor T} for bitmask blades S and T.
int blade_product_sign(std::uint32_t s, std::uint32_t t) noexcept;

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector reversion(const Multivector& a);
Multivector grade_projection(const Multivector& a, int r);
double norm(const Multivector& a);

/// x^{-1} = -x / |x|^2 for a nonzero vector x.
Vec kelvin_inverse(const Vec& x);

/// Inverse of a Clifford group element: reversion(a) / (a reversion(a)).
/// Throws NotInvertible if a reversion(a) is not a nonzero scalar.
Multivector clifford_group_inverse(const Multivector& a,
                                   const Tolerance& tol = kDefaultTolerance);

std::ostream& operator<<(std::ostream& os, const Multivector& m);

}  // namespace cfm

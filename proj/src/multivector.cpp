#include "cfm/multivector.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <string>

#include "cfm/errors.hpp"

namespace cfm {

double Vec::dot(const Vec& o) const {
  if (o.dim() != dim()) throw DimensionMismatch("Vec::dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * o.c_[i];
  return s;
}

Vec Vec::resized(std::size_t dim) const {
  Vec out(dim);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i < dim) {
      out.c_[i] = c_[i];
    } else if (std::abs(c_[i]) > 1e-9 * (1.0 + norm())) {
      throw DimensionMismatch("Vec::resized: dropping a nonzero component");
    }
  }
  return out;
}

Vec& Vec::operator+=(const Vec& o) {
  if (o.dim() != dim()) throw DimensionMismatch("Vec: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  if (o.dim() != dim()) throw DimensionMismatch("Vec: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Vec& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << v[i];
  return os << ')';
}

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > Multivector::kMaxDim)
    throw std::invalid_argument("Multivector: dimension must lie in 1.." +
                                std::to_string(Multivector::kMaxDim));
}

}  // namespace

Multivector::Multivector(int dim) : dim_(dim) {
  check_dim(dim);
  c_.assign(std::size_t{1} << dim, 0.0);
}

Multivector::Multivector(int dim, std::vector<double> coeffs)
    : dim_(dim), c_(std::move(coeffs)) {
  check_dim(dim);
  if (c_.size() != (std::size_t{1} << dim))
    throw DimensionMismatch("Multivector: coefficient count must be 2^dim");
}

Multivector Multivector::scalar(int dim, double s) {
  Multivector m(dim);
  m.c_[0] = s;
  return m;
}

Multivector Multivector::blade(int dim, std::uint32_t mask, double coeff) {
  Multivector m(dim);
  m.c_.at(mask) = coeff;
  return m;
}

Multivector Multivector::basis_vector(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw std::out_of_range("basis_vector: axis out of range");
  return blade(dim, std::uint32_t{1} << axis);
}

Multivector Multivector::vector(int dim, const Vec& v) {
  if (v.dim() > static_cast<std::size_t>(dim))
    throw DimensionMismatch("Multivector::vector: vector longer than algebra dimension");
  Multivector m(dim);
  for (std::size_t i = 0; i < v.dim(); ++i) m.c_[std::size_t{1} << i] = v[i];
  return m;
}

double Multivector::norm_squared() const {
  double s = 0.0;
  for (double x : c_) s += x * x;
  return s;
}

double Multivector::norm() const { return std::sqrt(norm_squared()); }

Multivector Multivector::grade(int r) const {
  if (r < 0 || r > dim_) throw std::out_of_range("grade_projection: grade out of range");
  Multivector out(dim_);
  for (std::uint32_t i = 0; i < c_.size(); ++i)
    if (std::popcount(i) == r) out.c_[i] = c_[i];
  return out;
}

Multivector Multivector::reversion() const {
  Multivector out(*this);
  for (std::uint32_t i = 0; i < c_.size(); ++i) {
    const int r = std::popcount(i);
    if ((r * (r - 1) / 2) % 2 == 1) out.c_[i] = -out.c_[i];
  }
  return out;
}

Vec Multivector::vector_part() const {
  Vec v(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) v[static_cast<std::size_t>(i)] = c_[std::size_t{1} << i];
  return v;
}

Multivector Multivector::lifted(int new_dim) const {
  if (new_dim < dim_) throw DimensionMismatch("Multivector::lifted: target algebra is smaller");
  Multivector out(new_dim);
  std::copy(c_.begin(), c_.end(), out.c_.begin());
  return out;
}

bool Multivector::is_pure_grade(int r, const Tolerance& tol) const {
  double off = 0.0;
  for (std::uint32_t i = 0; i < c_.size(); ++i)
    if (std::popcount(i) != r) off += c_[i] * c_[i];
  return std::sqrt(off) <= tol.relative * norm();
}

Multivector& Multivector::operator+=(const Multivector& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("Multivector: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("Multivector: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

int blade_product_sign(std::uint32_t s, std::uint32_t t) noexcept {
  // Transpositions needed to sort the concatenated word, then one -1 for
  // each generator squared away.
  int swaps = 0;
  for (std::uint32_t a = s >> 1; a != 0; a >>= 1) swaps += std::popcount(a & t);
  swaps += std::popcount(s & t);
  return (swaps & 1) ? -1 : 1;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("geometric_product: dimension mismatch");
  Multivector out(a.dim_);
  const std::uint32_t n = static_cast<std::uint32_t>(a.c_.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      const double bj = b.c_[j];
      if (bj == 0.0) continue;
      out.c_[i ^ j] += blade_product_sign(i, j) * ai * bj;
    }
  }
  return out;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }
Multivector reversion(const Multivector& a) { return a.reversion(); }
Multivector grade_projection(const Multivector& a, int r) { return a.grade(r); }
double norm(const Multivector& a) { return a.norm(); }

Vec kelvin_inverse(const Vec& x) {
  const double n2 = x.norm_squared();
  if (!(n2 > 0.0)) throw SingularPoint("kelvin_inverse: zero vector");
  return x * (-1.0 / n2);
}

Multivector clifford_group_inverse(const Multivector& a, const Tolerance& tol) {
  const Multivector rev = a.reversion();
  const Multivector p = a * rev;
  const double s = p.scalar_part();
  const double scale = a.norm_squared();
  if (!(scale > 0.0) || std::abs(s) <= tol.singular * scale)
    throw NotInvertible("not invertible in Clifford group: a*reversion(a) vanishes");
  if (!p.is_pure_grade(0, tol))
    throw NotInvertible("not invertible in Clifford group: a*reversion(a) is not scalar");
  return rev * (1.0 / s);
}

std::ostream& operator<<(std::ostream& os, const Multivector& m) {
  bool first = true;
  for (std::uint32_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0.0) continue;
    os << (first ? "" : " + ") << m[i];
    if (i != 0) {
      os << " e";
      for (int k = 0; k < m.dim(); ++k)
        if (i & (std::uint32_t{1} << k)) os << (k + 1);
    }
    first = false;
  }
  if (first) os << 0;
  return os;
}

}  // namespace cfm

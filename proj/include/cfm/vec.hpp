#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace cfm {

/// A point or vector of R^k.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim) : c_(dim, 0.0) {}
  Vec(std::initializer_list<double> init) : c_(init) {}
  explicit Vec(std::vector<double> components) : c_(std::move(components)) {}

  static Vec unit(std::size_t dim, std::size_t axis) {
    Vec v(dim);
    v.c_.at(axis) = 1.0;
    return v;
  }

  std::size_t dim() const noexcept { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  std::span<const double> components() const noexcept { return c_; }

  double dot(const Vec& o) const;
  double norm() const { return std::sqrt(dot(*this)); }
  double norm_squared() const { return dot(*this); }

  /// Zero-pads (or checks and drops trailing zeros) to reach `dim`.
  Vec resized(std::size_t dim) const;

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s);

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator-(Vec a) { return a *= -1.0; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator/(Vec a, double s) { return a *= 1.0 / s; }
  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  std::vector<double> c_;
};

std::ostream& operator<<(std::ostream& os, const Vec& v);

}  // namespace cfm

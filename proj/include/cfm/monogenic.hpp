#pragma once

#include <functional>

#include "cfm/moebius.hpp"

namespace cfm {

/// A Clifford-valued field on (a subset of) R^dim_in.
///
/// `domain` says where `eval` may be called; finite-difference stencils are
/// checked against it before evaluation.
struct CliffordField {
  int dim_in = 0;
  int dim_alg = 0;
  std::function<Multivector(const Vec&)> eval;
  std::function<bool(const Vec&)> domain = [](const Vec&) { return true; };

  /// Evaluates after checking the domain; throws DomainViolation outside.
  Multivector operator()(const Vec& x) const;
};

/// Central-difference left Dirac operator sum_j e_j (f(x+h e_j) - f(x-h e_j)) / 2h.
/// Throws DomainViolation if a stencil point leaves the domain.
Multivector dirac_left_fd(const CliffordField& f, const Vec& x, double h);
/// Right Dirac operator, e_j multiplied on the right.
Multivector dirac_right_fd(const CliffordField& g, const Vec& x, double h);

/// Residual |D f(x)| at step h and h/2 with the observed order
/// log2(residual(h) / residual(h/2)).
struct FdConvergence {
  double residual_h;
  double residual_half;
  double order;
};
enum class DiracSide { Left, Right };
FdConvergence dirac_convergence(const CliffordField& f, const Vec& x, double h,
                                DiracSide side = DiracSide::Left);

/// x -> G(x - a) on R^n minus {a}, values in Cl_dim_alg (default Cl_n).
CliffordField g_translate(const Vec& a, int n, int dim_alg = 0);

/// x -> A on R^dim_in.
CliffordField constant_field(const Multivector& value, int dim_in);

/// x -> J(psi, x) f(psi(x)). The pullback lives on R^dim_in (defaults to
/// f.dim_in); its domain excludes the poles of psi.
/// Throws DimensionMismatch unless f takes values in psi's algebra.
CliffordField moebius_pullback(const VahlenMap& psi, const CliffordField& f, int dim_in = 0);

}  // namespace cfm

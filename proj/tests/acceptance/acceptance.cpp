// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cfm/cauchy_kernel.hpp"
#include "cfm/errors.hpp"
#include "cfm/hypersurface.hpp"
#include "cfm/integration.hpp"
#include "cfm/manifold.hpp"
#include "cfm/moebius.hpp"
#include "cfm/monogenic.hpp"
#include "cfm/multivector.hpp"

using namespace cfm;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(g_() >> 11) * 0x1p-53; }
  int pick(int count) { return static_cast<int>(g_() % static_cast<std::uint64_t>(count)); }
  Vec vec(std::size_t dim, double scale) {
    Vec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = uniform(-scale, scale);
    return v;
  }
  Vec direction(std::size_t dim) {
    for (;;) {
      const Vec v = vec(dim, 1.0);
      if (v.norm() > 0.1 && v.norm() <= 1.0) return v / v.norm();
    }
  }
  Multivector multivector(int dim) {
    Multivector m(dim);
    for (std::uint32_t b = 0; b < m.size(); ++b) m[b] = uniform(-1.0, 1.0);
    return m;
  }

 private:
  std::mt19937_64 g_;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  if (!ok) ++failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Runs a criterion body; a library exception is a failure, not a crash.
void criterion(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    verdict(id, false, std::string("exception: ") + e.what());
  }
}

// Product of two generator words by explicit rewriting: adjacent distinct
// generators are swapped with a sign flip, adjacent equal ones cancel to -1.
// Knows nothing about bitmasks.
struct Word {
  double sign = 1.0;
  std::vector<int> gens;
};

Word rewrite(std::vector<int> word) {
  Word w;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] == word[i + 1]) {
        word.erase(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i) + 2);
        w.sign = -w.sign;
        changed = true;
        break;
      }
      if (word[i] > word[i + 1]) {
        std::swap(word[i], word[i + 1]);
        w.sign = -w.sign;
        changed = true;
        break;
      }
    }
  }
  w.gens = word;
  return w;
}

std::vector<int> generators_of(std::uint32_t mask) {
  std::vector<int> g;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) g.push_back(i);
  return g;
}

std::uint32_t mask_of(const std::vector<int>& gens) {
  std::uint32_t m = 0;
  for (int g : gens) m |= 1u << g;
  return m;
}

/// Full product via the rewrite table.
Multivector table_product(const Multivector& a, const Multivector& b) {
  const int k = a.dim();
  const auto size = static_cast<std::uint32_t>(a.size());
  std::vector<std::vector<Word>> table(size, std::vector<Word>(size));
  for (std::uint32_t s = 0; s < size; ++s)
    for (std::uint32_t t = 0; t < size; ++t) {
      std::vector<int> word = generators_of(s);
      const std::vector<int> rhs = generators_of(t);
      word.insert(word.end(), rhs.begin(), rhs.end());
      table[s][t] = rewrite(word);
    }
  Multivector out(k);
  for (std::uint32_t s = 0; s < size; ++s)
    for (std::uint32_t t = 0; t < size; ++t)
      out[mask_of(table[s][t].gens)] += table[s][t].sign * a[s] * b[t];
  return out;
}

VahlenMap random_map(Rng& rng, int k, int m, int depth = 0) {
  switch (rng.pick(depth == 0 ? 4 : 3)) {
    case 0: return VahlenMap::translation(rng.vec(static_cast<std::size_t>(k), 1.0), k, m);
    case 1: return VahlenMap::neck_inversion(k, m);
    case 2: return VahlenMap::cayley(k - 1).with_kernel_exponent(m);
    default: {
      VahlenMap out = random_map(rng, k, m, depth + 1);
      for (int i = 0; i < 1 + rng.pick(3); ++i) out = compose(random_map(rng, k, m, depth + 1), out);
      return out;
    }
  }
}

Vec off_pole(Rng& rng, const VahlenMap& psi, std::size_t dim) {
  for (;;) {
    const Vec x = rng.vec(dim, 2.0);
    if (psi.denominator(x).norm() > 0.2) return x;
  }
}

/// Worst covariance residual relative to |G(psi x - psi y)|; `weight_offset`
/// and `corrupt` are the negative controls.
double covariance_worst(std::uint64_t seed, int count, int weight_offset, double corrupt) {
  Rng rng(seed);
  const int n = 2, k = 3;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    VahlenMap psi = random_map(rng, k, n);
    const Vec x = off_pole(rng, psi, k);
    Vec y = off_pole(rng, psi, k);
    while ((x - y).norm() < 0.1) y = off_pole(rng, psi, k);
    if (corrupt != 0.0)
      psi = VahlenMap(psi.a(), psi.b(), psi.c(), psi.d() + Multivector::blade(k, 0b11, corrupt), n);
    psi = psi.with_kernel_exponent(n + weight_offset);
    try {
      const double scale = cauchy_kernel_G(psi.apply(x) - psi.apply(y), n).norm();
      worst = std::max(worst, covariance_residual(psi, x, y, n) / scale);
    } catch (const InvalidVahlen&) {
      return kInf;  // the corruption was caught by the validity check
    }
  }
  return worst;
}

// Geometry on S1^S2(2), n = 2.
constexpr double kR = 2.0;

GluedManifold manifold(int weight_offset = 0) {
  GluedManifold::Options opt;
  opt.weight_exponent = weight_offset == 0 ? 0 : 2 + weight_offset;
  return GluedManifold(ManifoldKind::TwoSphere, 2, kR, opt);
}

CliffordField germ(const Vec& pole) { return g_translate(pole, 2, 3); }

/// Relative reproduction errors of the same-chart experiment at `order`.
struct SameChart {
  double error;
  double value_norm;
  QuadratureReport q;
};
SameChart same_chart(const GluedManifold& M, int order, bool flip) {
  const Hypersurface S = chart_sphere(M, 1, Vec{3.0, 0.5}, 0.8, 1, order);
  const Section f = section_from_germ(M, germ(Vec{-3.0, 0.5}));
  const ManifoldPoint y{1, Vec{3.1, 0.4}};
  const QuadratureReport q = cauchy_integral(M, S, f, y, CauchyOptions{order, flip});
  return {(q.value - f(y)).norm() / f(y).norm(), f(y).norm(), q};
}

std::vector<double> cross_glue_errors(const GluedManifold& M, const std::vector<int>& orders, bool flip) {
  const Hypersurface S = chart_sphere(M, 1, Vec{0.0, 0.0}, 3.0, 1, 64);
  const Section f = section_from_germ(M, germ(Vec{6.0, 1.0}));
  const ManifoldPoint y{2, Vec{2.5, 1.0}};
  std::vector<double> out;
  for (int order : orders) {
    const QuadratureReport q = cauchy_integral(M, S, f, y, CauchyOptions{order, flip});
    out.push_back((q.value - f(y)).norm() / f(y).norm());
  }
  return out;
}

/// Euclidean Cauchy integral in the chart plane over the circle |u - c| = rho,
/// by the periodic trapezoid rule on the explicit parametrization.
Multivector plane_cauchy(const CliffordField& F, const Vec& c, double rho, const Vec& v, int count) {
  Multivector sum(3);
  const double dt = 2.0 * std::numbers::pi / count;
  for (int j = 0; j < count; ++j) {
    const double t = j * dt;
    const Vec nrm{std::cos(t), std::sin(t)};
    const Vec u = c + nrm * rho;
    const Vec d = u - v;
    const Multivector G = Multivector::vector(3, d) / d.norm_squared();
    sum += G * Multivector::vector(3, nrm) * F(u) * (rho * dt);
  }
  return sum * (-1.0 / (2.0 * std::numbers::pi));
}

}  // namespace

int main() {
  // 1. Algebra laws and the rewrite-table oracle.
  criterion(1, [] {
    const auto t0 = Clock::now();
    Rng rng(101);
    double assoc = 0.0, rev = 0.0, square = 0.0;
    int checks = 0;
    for (int i = 0; i < 3400; ++i) {
      const int k = 2 + i % 3;
      const Multivector a = rng.multivector(k), b = rng.multivector(k), c = rng.multivector(k);
      assoc = std::max(assoc, ((a * b) * c - a * (b * c)).norm() / (a.norm() * b.norm() * c.norm()));
      rev = std::max(rev, ((a * b).reversion() - b.reversion() * a.reversion()).norm() / (a.norm() * b.norm()));
      const Vec v = rng.vec(static_cast<std::size_t>(k), 1.0);
      const Multivector mv = Multivector::vector(k, v);
      square = std::max(square, (mv * mv + Multivector::scalar(k, v.norm_squared())).norm() / v.norm_squared());
      checks += 3;
    }
    double table = 0.0;
    bool blades_exact = true;
    for (int k : {2, 3}) {
      const auto size = static_cast<std::uint32_t>(1u << k);
      for (std::uint32_t s = 0; s < size; ++s)
        for (std::uint32_t t = 0; t < size; ++t) {
          const Multivector ea = Multivector::blade(k, s), eb = Multivector::blade(k, t);
          blades_exact = blades_exact && (ea * eb == table_product(ea, eb));
        }
      for (int i = 0; i < 200; ++i) {
        const Multivector a = rng.multivector(k), b = rng.multivector(k);
        table = std::max(table, (a * b - table_product(a, b)).norm() / (a.norm() * b.norm()));
      }
    }
    const double secs = seconds_since(t0);
    const bool ok = assoc <= 1e-10 && rev <= 1e-10 && square <= 1e-10 && blades_exact && table <= 1e-14 &&
                    checks >= 10000 && secs < 5.0;
    verdict(1, ok,
            std::to_string(checks) + " checks; assoc " + sci(assoc) + ", reversion " + sci(rev) + ", v^2 " +
                sci(square) + "; rewrite table: blades " + (blades_exact ? "exact" : "MISMATCH") +
                ", random " + sci(table) + "; " + sci(secs) + " s");
  });

  // 2. Covariance of the Cauchy kernel under Moebius maps.
  criterion(2, [] {
    const auto t0 = Clock::now();
    const double worst = covariance_worst(202, 1000, 0, 0.0);
    const double secs = seconds_since(t0);
    verdict(2, worst <= 1e-9 && secs < 5.0,
            "max relative residual " + sci(worst) + " over 1000 maps (<= 1e-9); " + sci(secs) + " s");
  });

  // 3. Pullbacks of G-translates stay monogenic.
  criterion(3, [] {
    Rng rng(303);
    double worst = 0.0, order = kInf;
    for (int n : {2, 3}) {
      const auto dn = static_cast<std::size_t>(n);
      for (int i = 0; i < 40; ++i) {
        CliffordField pulled;
        Vec x;
        if (i % 2 == 0) {
          const VahlenMap psi = compose(VahlenMap::translation(rng.vec(dn, 1.0), n, n),
                                        compose(VahlenMap::neck_inversion(n, n),
                                                VahlenMap::translation(rng.vec(dn, 1.0), n, n)));
          x = off_pole(rng, psi, dn);
          Vec x0 = x + rng.direction(dn) * rng.uniform(0.5, 1.0);
          while (psi.denominator(x0).norm() < 0.2) x0 = x + rng.direction(dn) * rng.uniform(0.5, 1.0);
          pulled = moebius_pullback(psi, g_translate(psi.apply(x0), n));
        } else {
          const VahlenMap c = VahlenMap::cayley(n);
          x = rng.vec(dn, 1.5);
          const Vec pole = c.apply((x + rng.direction(dn) * rng.uniform(0.5, 1.0)).resized(dn + 1));
          // G with the manifold exponent n on R^{n+1}.
          CliffordField g;
          g.dim_in = n + 1;
          g.dim_alg = n + 1;
          g.eval = [pole, n](const Vec& z) { return cauchy_kernel_G(Multivector::vector(n + 1, z - pole), n); };
          pulled = moebius_pullback(c, g, n);
        }
        const FdConvergence fd = dirac_convergence(pulled, x, 1e-4);
        worst = std::max(worst, fd.residual_h / pulled(x).norm());
        order = std::min(order, fd.order);
      }
    }
    verdict(3, worst <= 1e-5 && order >= 1.9,
            "max FD residual " + sci(worst) + " relative (<= 1e-5), min order " + sci(order) + " (>= 1.9)");
  });

  // 4. Overlap consistency on the neck.
  criterion(4, [] {
    const GluedManifold M = manifold();
    Rng rng(404);
    double worst_abs = 0.0, worst_rel = 0.0;
    int pairs = 0;
    while (pairs < 1000) {
      const auto neck = [&] {
        const double rho = std::exp(rng.uniform(-std::log(kR), std::log(kR)) * (1.0 - 1e-9));
        return ManifoldPoint{1 + rng.pick(2), rng.direction(2) * rho};
      };
      const ManifoldPoint x = neck(), y = neck();
      if (M.equivalent(x, y, 1e-6)) continue;
      const double res = overlap_consistency_residual(M, x, y);
      const ManifoldPoint x2{2, M.continued_coordinate(x, 2)}, y2{2, M.continued_coordinate(y, 2)};
      worst_abs = std::max(worst_abs, res);
      worst_rel = std::max(worst_rel, res / kernel_CM(M, x2, y2).value.norm());
      ++pairs;
    }
    verdict(4, worst_rel <= 1e-9,
            "max residual " + sci(worst_rel) + " relative to |C_M| (<= 1e-9), " + sci(worst_abs) +
                " absolute, 1000 pairs");
  });

  // 5. Same-chart reproduction and the chart-plane oracle.
  criterion(5, [] {
    const auto t0 = Clock::now();
    const GluedManifold M = manifold();
    const SameChart s = same_chart(M, 512, false);
    const CliffordField F = germ(Vec{-3.0, 0.5});
    const ManifoldPoint y{1, Vec{3.1, 0.4}};
    const Multivector plane = plane_cauchy(F, Vec{3.0, 0.5}, 0.8, Vec{3.1, 0.4}, 512);
    const Multivector plane_half = plane_cauchy(F, Vec{3.0, 0.5}, 0.8, Vec{3.1, 0.4}, 256);
    const Multivector oracle = M.embedding_inverse(1).conformal_weight(M.embed(y)) * plane;
    const double plane_err = std::max((plane - plane_half).norm(), 1e-15 * plane.norm());
    const double gap = (s.q.value - oracle).norm();
    const double allowed = 2.0 * (s.q.estimated_error + plane_err) + 1e-13 * s.value_norm;
    const double secs = seconds_since(t0);
    verdict(5, s.error <= 1e-6 && gap <= allowed && secs < 30.0,
            "relative error " + sci(s.error) + " at order 512 (<= 1e-6); plane oracle gap " + sci(gap) +
                " (<= " + sci(allowed) + "); " + sci(secs) + " s");
  });

  // 6. Cross-glue reproduction.
  criterion(6, [] {
    const auto t0 = Clock::now();
    const std::vector<int> orders{16, 32, 64, 128, 256};
    const std::vector<double> err = cross_glue_errors(manifold(), orders, false);
    bool monotone = true;
    for (std::size_t i = 1; i < err.size(); ++i)
      if (err[i] > err[i - 1] && err[i] > 1e-12) monotone = false;
    const double secs = seconds_since(t0);
    std::string table;
    for (std::size_t i = 0; i < err.size(); ++i) table += " " + std::to_string(orders[i]) + ":" + sci(err[i]);
    verdict(6, err.back() <= 1e-4 && monotone && secs < 60.0,
            "relative error at 256 " + sci(err.back()) + " (<= 1e-4), " + (monotone ? "monotone" : "NOT monotone") +
                " [" + table.substr(1) + "]; " + sci(secs) + " s");
  });

  // 7. Contour independence: a same-chart circle and one reaching through the neck.
  criterion(7, [] {
    const GluedManifold M = manifold();
    const Hypersurface A = chart_sphere(M, 1, Vec{3.0, 0.0}, 0.5, 1, 128);
    const Hypersurface B = chart_sphere(M, 1, Vec{2.0, 0.0}, 1.6, 1, 128);
    const Section f = section_from_germ(M, germ(Vec{-3.0, 0.5}));
    const ManifoldPoint y{1, Vec{3.0, 0.1}};
    const QuadratureReport qa = cauchy_integral(M, A, f, y);
    const QuadratureReport qb = cauchy_integral(M, B, f, y);
    const double gap = (qa.value - qb.value).norm();
    const double allowed = 2.0 * (qa.estimated_error + qb.estimated_error);
    verdict(7, gap <= allowed && B.patches.size() > 1,
            "gap " + sci(gap) + " (<= " + sci(allowed) + "), patches " + std::to_string(A.patches.size()) + " and " +
                std::to_string(B.patches.size()));
  });

  // 8. Plemelj projections of a monogenic trace.
  criterion(8, [] {
    const GluedManifold M = manifold();
    const Hypersurface S = chart_sphere(M, 1, Vec{3.0, 0.0}, 1.0);
    const Section f = section_from_germ(M, germ(Vec{4.05, 0.0}));
    const auto trace = [&](const SurfaceNode& x) { return f(x.point); };
    const auto defect = [&](int count, std::size_t* mismatches) {
      const BoundaryData g = sample_boundary(M, S, count, trace);
      const PlemeljResult p = plemelj_projections(M, S, g);
      double sup = 0.0, gsup = 0.0;
      for (std::size_t i = 0; i < g.values.size(); ++i) {
        sup = std::max(sup, p.minus[i].norm());
        gsup = std::max(gsup, g.values[i].norm());
        if (mismatches && !(p.plus[i] + p.minus[i] == g.values[i])) ++*mismatches;
      }
      return sup / gsup;
    };
    std::size_t mismatches = 0;
    const double d512 = defect(512, &mismatches);
    const double d256 = defect(256, nullptr);
    const double d1024 = defect(1024, nullptr);
    const bool halving = d512 <= 0.5 * d256 && (d1024 <= 0.5 * d512 || d1024 <= 1e-12);
    verdict(8, d512 <= 1e-3 && mismatches == 0 && halving,
            "|P-g| " + sci(d512) + " relative at 512 nodes (<= 1e-3); split mismatches " +
                std::to_string(mismatches) + "; defects 256/512/1024: " + sci(d256) + " " + sci(d512) + " " +
                sci(d1024));
  });

  // 9. Negative controls inflate criteria 2, 5 and 6 by two orders of magnitude.
  criterion(9, [] {
    const double cov_weight = covariance_worst(202, 1000, 1, 0.0);
    const double cov_vahlen = covariance_worst(202, 1000, 0, 1e-3);
    const double same_weight = same_chart(manifold(1), 512, false).error;
    const double same_flip = same_chart(manifold(), 512, true).error;
    const double cross_weight = cross_glue_errors(manifold(1), {256}, false)[0];
    const double cross_flip = cross_glue_errors(manifold(), {256}, true)[0];
    // The normal sign does not enter the covariance identity, so criterion 2
    // is constrained by the weight exponent (and the Vahlen corruption) only.
    const bool ok = cov_weight >= 100.0 * 1e-9 && cov_vahlen > 1e-9 && same_weight >= 100.0 * 1e-6 &&
                    same_flip >= 100.0 * 1e-6 && cross_weight >= 100.0 * 1e-4 && cross_flip >= 100.0 * 1e-4;
    verdict(9, ok,
            "wrong exponent: C2 " + sci(cov_weight) + ", C5 " + sci(same_weight) + ", C6 " + sci(cross_weight) +
                "; flipped normal: C5 " + sci(same_flip) + ", C6 " + sci(cross_flip) + "; corrupted Vahlen: C2 " +
                sci(cov_vahlen));
  });

  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}

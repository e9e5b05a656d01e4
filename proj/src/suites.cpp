#include "cfm/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cfm/cauchy_kernel.hpp"
#include "cfm/errors.hpp"
#include "cfm/integration.hpp"
#include "cfm/monogenic.hpp"
#include "cfm/quadrature.hpp"

namespace cfm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Seeded generator with a portable uniform mapping, so reports do not depend
/// on the standard library's distribution implementations.
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
      const double r = v.norm();
      if (r > 0.1 && r <= 1.0) return v / r;
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

class Recorder {
 public:
  Recorder(SuiteReport& report, const RunConfig& cfg) : report_(report), cfg_(cfg) {}

  void upper(const std::string& name, double residual, double threshold, std::string detail = {}) {
    add(name, residual, threshold, "<=", std::move(detail));
  }
  void lower(const std::string& name, double value, double threshold, std::string detail = {}) {
    add(name, value, threshold, ">=", std::move(detail));
  }
  void error(const std::string& name, double threshold, const std::string& what) {
    report_.checks.push_back({name, kInf, cfg_.tolerance(name, threshold), "<=", "error", what});
  }

 private:
  void add(const std::string& name, double value, double threshold, const std::string& cmp,
           std::string detail) {
    const double t = cfg_.tolerance(name, threshold);
    const bool ok = cmp == "<=" ? value <= t : value >= t;  // NaN fails either way
    report_.checks.push_back({name, value, t, cmp, ok ? "pass" : "fail", std::move(detail)});
  }

  SuiteReport& report_;
  const RunConfig& cfg_;
};

/// Runs `body`, turning a library exception into an "error" record.
void guarded(Recorder& rec, const std::string& name, double threshold, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rec.error(name, threshold, e.what());
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// ---------------------------------------------------------------- algebra --

VahlenMap random_map(Rng& rng, int k, int m, bool with_cayley, int depth = 0) {
  const int family = rng.pick(depth == 0 ? (with_cayley ? 5 : 4) : (with_cayley ? 4 : 3));
  switch (family) {
    case 0: return VahlenMap::translation(rng.vec(static_cast<std::size_t>(k), 1.0), k, m);
    case 1: return VahlenMap::dilation(rng.uniform(0.5, 2.0), k, m);
    case 2: return VahlenMap::neck_inversion(k, m);
    default:
      if (family == 3 && with_cayley) return VahlenMap::cayley(k - 1).with_kernel_exponent(m);
      {
        VahlenMap out = random_map(rng, k, m, with_cayley, depth + 1);
        const int extra = 1 + rng.pick(2);
        for (int i = 0; i < extra; ++i) out = compose(random_map(rng, k, m, with_cayley, depth + 1), out);
        return out;
      }
  }
}

/// Draws a point away from the pole of psi.
Vec point_off_pole(Rng& rng, const VahlenMap& psi, std::size_t dim) {
  for (;;) {
    const Vec x = rng.vec(dim, 2.0);
    if (psi.denominator(x.resized(static_cast<std::size_t>(psi.ambient_dim()))).norm() > 0.2) return x;
  }
}

void algebra_laws(const RunConfig& cfg, Rng& rng, Recorder& rec) {
  double assoc = 0.0, rev = 0.0, square = 0.0, inv = 0.0;
  for (int i = 0; i < cfg.samples; ++i) {
    const int k = 2 + i % 5;
    const Multivector a = rng.multivector(k), b = rng.multivector(k), c = rng.multivector(k);
    assoc = std::max(assoc, ((a * b) * c - a * (b * c)).norm() / (a.norm() * b.norm() * c.norm()));
    rev = std::max(rev, ((a * b).reversion() - b.reversion() * a.reversion()).norm() / (a.norm() * b.norm()));
    const Vec v = rng.vec(static_cast<std::size_t>(k), 1.0);
    const Multivector mv = Multivector::vector(k, v);
    square = std::max(square, (mv * mv + Multivector::scalar(k, v.norm_squared())).norm() / v.norm_squared());
    Multivector prod = Multivector::scalar(k, 1.0);
    for (int f = 0; f <= i % 4; ++f) prod = prod * Multivector::vector(k, rng.vec(static_cast<std::size_t>(k), 1.0));
    inv = std::max(inv, (clifford_group_inverse(prod) * prod - Multivector::scalar(k, 1.0)).norm());
  }
  rec.upper("algebra.associativity", assoc, 1e-10);
  rec.upper("algebra.reversion_antiautomorphism", rev, 1e-10);
  rec.upper("algebra.vector_square", square, 1e-10);
  rec.upper("algebra.clifford_group_inverse", inv, 1e-10);
}

VahlenMap corrupted(const VahlenMap& psi, double eps) {
  if (eps == 0.0) return psi;
  const Multivector d = psi.d() + Multivector::blade(psi.ambient_dim(), 0b11, eps);
  return VahlenMap(psi.a(), psi.b(), psi.c(), d, psi.kernel_exponent());
}

void covariance(const RunConfig& cfg, Rng& rng, Recorder& rec) {
  const int n = cfg.n;
  const int k = n + 1;
  const auto dim = static_cast<std::size_t>(k);
  guarded(rec, "moebius.covariance", 1e-9, [&] {
    double worst = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      VahlenMap psi = random_map(rng, k, n, true);
      const Vec x = point_off_pole(rng, psi, dim);
      Vec y = point_off_pole(rng, psi, dim);
      while ((x - y).norm() < 0.1) y = point_off_pole(rng, psi, dim);
      psi = corrupted(psi, cfg.inject_vahlen).with_kernel_exponent(n + cfg.inject_weight_offset);
      const Vec px = psi.apply(x), py = psi.apply(y);
      const double scale = cauchy_kernel_G(px - py, n).norm();
      worst = std::max(worst, covariance_residual(psi, x, y, n) / scale);
    }
    rec.upper("moebius.covariance", worst, 1e-9, "relative, " + std::to_string(cfg.samples) + " samples");
  });
  guarded(rec, "moebius.inverse_composition", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i < std::min(cfg.samples, 200); ++i) {
      const VahlenMap psi = corrupted(random_map(rng, k, n, true), cfg.inject_vahlen);
      const VahlenMap id = compose(inverse(psi), psi);
      const double res = (id.a() - Multivector::scalar(k, 1.0)).norm() + id.b().norm() + id.c().norm() +
                         (id.d() - Multivector::scalar(k, 1.0)).norm();
      worst = std::max(worst, res);
    }
    rec.upper("moebius.inverse_composition", worst, 1e-12);
  });
  guarded(rec, "moebius.weight_chain_rule", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i < std::min(cfg.samples, 200); ++i) {
      const VahlenMap chi = random_map(rng, k, n, true);
      const VahlenMap phi = random_map(rng, k, n, true);
      const VahlenMap both = compose(phi, chi);
      const Vec x = point_off_pole(rng, both, dim);
      if (chi.denominator(x).norm() < 0.2) continue;
      const Multivector lhs = both.conformal_weight(x);
      const Multivector rhs = chi.conformal_weight(x) * phi.conformal_weight(chi.apply(x));
      worst = std::max(worst, (lhs - rhs).norm() / lhs.norm());
    }
    rec.upper("moebius.weight_chain_rule", worst, 1e-12, "relative");
  });
}

void pullbacks(const RunConfig& cfg, Rng& rng, Recorder& rec) {
  const double h = 1e-4;
  for (int n : {2, 3}) {
    const std::string tag = "_n" + std::to_string(n);
    guarded(rec, "monogenic.pullback" + tag, 1e-5, [&] {
      const int m = n + cfg.inject_weight_offset;
      const auto dn = static_cast<std::size_t>(n);
      double worst = 0.0, order = kInf;
      const int count = std::max(4, std::min(cfg.samples / 25, 40));
      for (int i = 0; i < count; ++i) {
        CliffordField pulled;
        Vec x;
        if (i % 2 == 0) {
          // Maps of R^n composed from translations, dilations and the neck map.
          // The singularity is placed by its preimage x0 so that the pulled
          // back field has a pole at a controlled distance from x.
          const VahlenMap psi = random_map(rng, n, n, false).with_kernel_exponent(m);
          x = point_off_pole(rng, psi, dn);
          Vec x0 = x + rng.direction(dn) * rng.uniform(0.5, 1.0);
          while (psi.denominator(x0).norm() < 0.2) x0 = x + rng.direction(dn) * rng.uniform(0.5, 1.0);
          pulled = moebius_pullback(psi, g_translate(psi.apply(x0), n));
        } else {
          // Cayley pullback of a G-translate centred at a sphere point.
          const VahlenMap c = VahlenMap::cayley(n).with_kernel_exponent(m);
          x = rng.vec(dn, 1.5);
          const Vec v0 = x + rng.direction(dn) * rng.uniform(0.5, 1.0);
          const Vec pole = c.apply(v0.resized(dn + 1));
          CliffordField f;
          f.dim_in = n + 1;
          f.dim_alg = n + 1;
          f.eval = [pole, n](const Vec& z) { return cauchy_kernel_G(Multivector::vector(n + 1, z - pole), n); };
          f.domain = [pole](const Vec& z) { return (z - pole).norm() > 0.0; };
          pulled = moebius_pullback(c, f, n);
        }
        const FdConvergence fd = dirac_convergence(pulled, x, h);
        worst = std::max(worst, fd.residual_h / pulled(x).norm());
        order = std::min(order, fd.order);
      }
      rec.upper("monogenic.pullback" + tag, worst, 1e-5, "FD left Dirac at h = 1e-4, relative to |f(x)|");
      rec.lower("monogenic.pullback_order" + tag, order, 1.9, "observed order under h-halving");
    });
  }
}

// ----------------------------------------------------------------- kernel --

ManifoldPoint random_neck_point(Rng& rng, const GluedManifold& M) {
  const double r = M.r();
  const double rho = std::exp(rng.uniform(-std::log(r), std::log(r)) * (1.0 - 1e-9));
  return {1 + rng.pick(2), rng.direction(static_cast<std::size_t>(M.n())) * rho};
}

void kernel_checks(const RunConfig& cfg, Rng& rng, Recorder& rec) {
  const GluedManifold M = cfg.manifold();
  const auto dn = static_cast<std::size_t>(M.n());
  // Thin necks put neck partners closer together; the relative residual keeps
  // the same tolerance and only the absolute value grows.
  guarded(rec, "kernel.overlap_consistency", 1e-9, [&] {
    double worst = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const ManifoldPoint x = random_neck_point(rng, M);
      const ManifoldPoint y = random_neck_point(rng, M);
      if (M.equivalent(x, y, 1e-6)) continue;
      const ManifoldPoint y2{2, M.continued_coordinate(y, 2)};
      const ManifoldPoint x2{2, M.continued_coordinate(x, 2)};
      const double scale = kernel_CM(M, x2, y2).value.norm();
      worst = std::max(worst, overlap_consistency_residual(M, x, y) / scale);
    }
    rec.upper("kernel.overlap_consistency", worst, 1e-9, "relative to |C_M|");
  });
  guarded(rec, "kernel.case_coherence", 1e-6, [&] {
    double worst = 0.0;
    bool tags_ok = true;
    const int paths = std::max(10, cfg.samples / 10);
    for (int i = 0; i < paths; ++i) {
      const Vec dir = rng.direction(dn);
      const ManifoldPoint x{1, rng.direction(dn) * (M.r() * rng.uniform(1.2, 3.0))};
      const double delta = 1e-9 * M.r();
      const ManifoldPoint inside{2, dir * (M.r() - delta)};
      const ManifoldPoint outside{2, dir * (M.r() + delta)};
      const KernelValue a = kernel_CM(M, x, inside);
      const KernelValue b = kernel_CM(M, x, outside);
      tags_ok = tags_ok && a.case_tag == KernelCase::OverlapRep && b.case_tag == KernelCase::CrossGlue;
      worst = std::max(worst, (a.value - b.value).norm() / a.value.norm());
    }
    if (!tags_ok) worst = kInf;
    rec.upper("kernel.case_coherence", worst, 1e-6, "jump across |y| = r in chart 2");
  });
  guarded(rec, "kernel.diagonal_strength", 1e-6, [&] {
    double worst = 0.0;
    for (int i = 0; i < std::min(cfg.samples, 200); ++i) {
      const ManifoldPoint x{1 + rng.pick(2), rng.direction(dn) * (M.r() * rng.uniform(1.0, 3.0))};
      const Vec off = rng.direction(dn) * 1e-7;
      const ManifoldPoint y{x.chart, x.coord.finite() + off};
      const double d = (M.embed(x) - M.embed(y)).norm();
      worst = std::max(worst, std::abs(kernel_CM(M, x, y).value.norm() * std::pow(d, M.n() - 1) - 1.0));
    }
    rec.upper("kernel.diagonal_strength", worst, 1e-6, "|C_M| |x_s - y_s|^(n-1) - 1");
  });
  guarded(rec, "kernel.x_monogenic", 1e-5, [&] {
    double right = 0.0, left = 0.0;
    const int count = std::max(4, std::min(cfg.samples / 25, 40));
    for (int i = 0; i < count; ++i) {
      const int a = 1 + rng.pick(2);
      if (!M.has_sphere(a)) continue;
      const Vec u = rng.direction(dn) * (M.r() * rng.uniform(1.2, 2.5));
      const Vec yc = u + rng.direction(dn) * rng.uniform(0.5, 1.0);
      const int ychart = i % 3 == 0 ? a : 3 - a;
      const ManifoldPoint y{ychart, ychart == a ? yc : M.continued_coordinate({a, yc}, ychart)};
      if (!M.admissible(y)) continue;
      const VahlenMap E = M.embedding(a);
      const auto k = static_cast<std::size_t>(M.n() + 1);
      CliffordField field;
      field.dim_in = M.n();
      field.dim_alg = M.algebra_dim();
      // Right weight reversion(J(E, u)): right monogenic in u for every case.
      field.eval = [&M, E, a, y, k](const Vec& p) {
        return kernel_CM(M, {a, p}, y).value * E.conformal_weight(p.resized(k)).reversion();
      };
      right = std::max(right, dirac_right_fd(field, u, 1e-4).norm());
      if (ychart == a) {
        field.eval = [&M, E, a, y, k](const Vec& p) {
          return E.conformal_weight(p.resized(k)) * kernel_CM(M, {a, p}, y).value;
        };
        left = std::max(left, dirac_left_fd(field, u, 1e-4).norm());
      }
    }
    rec.upper("kernel.x_monogenic", right, 1e-5, "FD right Dirac of C_M(., y) reversion(J)");
    rec.upper("kernel.x_left_monogenic_same_chart", left, 1e-5, "FD left Dirac of J C_M(., y)");
  });
  if (cfg.inject_diagonal) {
    guarded(rec, "kernel.diagonal_request", 0.0, [&] {
      const ManifoldPoint x{1, Vec::unit(dn, 0) * (2.0 * M.r())};
      const KernelValue v = kernel_CM(M, x, x);
      rec.upper("kernel.diagonal_request", v.value.norm(), 0.0, "diagonal evaluation did not raise");
    });
  }
}

// ----------------------------------------------------------------- cauchy --

Vec padded(std::vector<double> v, int n) {
  v.resize(static_cast<std::size_t>(n), 0.0);
  return Vec(std::move(v));
}

CliffordField germ(const Vec& pole, int n) { return g_translate(pole, n, n + 1); }

struct Experiment {
  SurfaceSpec surface;
  ManifoldPoint y;
  Vec pole;
};

Experiment experiment(const RunConfig& cfg, const std::string& name, const GluedManifold& M) {
  const int n = M.n();
  const double r = M.r();
  Experiment e;
  if (name == "same") {
    e.surface.center = {1.5 * r, 0.25 * r, 0.1 * r};
    e.surface.radius = 0.4 * r;
    e.y = {1, padded({1.55 * r, 0.2 * r}, n)};
    e.pole = padded({-1.5 * r, 0.25 * r}, n);
  } else if (name == "cross") {
    e.surface.center = {0.0, 0.0, 0.0};
    e.surface.radius = 1.5 * r;
    e.y = {2, padded({1.25 * r, 0.5 * r}, n)};
    e.pole = padded({3.0 * r, 0.5 * r}, n);
  } else if (name == "inner") {
    e.surface.center = {1.5 * r, 0.0, 0.0};
    e.surface.radius = 0.25 * r;
    e.y = {1, padded({1.5 * r, 0.05 * r}, n)};
    e.pole = padded({-1.5 * r, 0.25 * r}, n);
  } else if (name == "outer") {
    e.surface.center = {1.0 * r, 0.0, 0.0};
    e.surface.radius = 0.8 * r;
  } else {  // hardy
    e.surface.center = {1.5 * r, 0.0};
    e.surface.radius = 0.5 * r;
    e.pole = padded({2.0 * r + 0.05, 0.0}, n);
  }
  e.surface.center.resize(static_cast<std::size_t>(n));
  e.surface = read_surface(cfg.geometry, name, e.surface);
  if (cfg.geometry.has(name + ".y")) e.y = parse_point(cfg.geometry.get(name + ".y", ""), n);
  e.pole = Vec(cfg.geometry.get_doubles(name + ".pole", std::vector<double>(e.pole.components().begin(),
                                                                           e.pole.components().end())));
  if (e.pole.dim() != 0 && e.pole.dim() != static_cast<std::size_t>(n))
    throw ConfigError(name + ".pole: expected n coordinates");
  return e;
}

/// Error table against f(y) over doubling orders up to `top`.
std::vector<ConvergenceRow> convergence(const GluedManifold& M, const Hypersurface& S, const Section& f,
                                        const ManifoldPoint& y, int top, bool flip) {
  const Multivector exact = f(y);
  std::vector<ConvergenceRow> rows;
  for (int order = 8; order <= top; order *= 2) {
    CauchyOptions opt{order, flip};
    const QuadratureReport q = cauchy_integral(M, S, f, y, opt);
    rows.push_back({order, (q.value - exact).norm(), q.estimated_error});
  }
  if (rows.empty() || rows.back().order != top) {
    const QuadratureReport q = cauchy_integral(M, S, f, y, CauchyOptions{top, flip});
    rows.push_back({top, (q.value - exact).norm(), q.estimated_error});
  }
  return rows;
}

/// 0 when the errors decrease until they reach the rounding plateau.
double monotone_violation(const std::vector<ConvergenceRow>& rows, double plateau) {
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].error > rows[i - 1].error && rows[i].error > plateau)
      worst = std::max(worst, rows[i].error - rows[i - 1].error);
  return worst;
}

void cauchy_checks(const RunConfig& cfg, Recorder& rec, SuiteReport& report) {
  for (int n : {2, 3}) {
    const std::string name = "cauchy.constant_n" + std::to_string(n);
    guarded(rec, name, 1e-8, [&] {
      RunConfig c = cfg;
      c.n = n;
      const GluedManifold M = c.manifold();
      const Experiment e = experiment(c, "same", M);
      const Hypersurface S = build_surface(M, e.surface, n == 2 ? 64 : 32);
      const Section one = section_from_germ(M, constant_field(Multivector::scalar(n, 1.0), n));
      const QuadratureReport q = cauchy_integral(M, S, one, e.y, CauchyOptions{{}, cfg.inject_normal_flip});
      rec.upper(name, (q.value - one(e.y)).norm() / one(e.y).norm(), 1e-8, "relative");
    });
  }
  const GluedManifold M = cfg.manifold();
  const int n = M.n();
  const int same_order = cfg.order.value_or(n == 2 ? 512 : 48);
  const int cross_order = cfg.order.value_or(n == 2 ? 256 : 48);
  guarded(rec, "cauchy.same_chart", 1e-6, [&] {
    const Experiment e = experiment(cfg, "same", M);
    const Hypersurface S = build_surface(M, e.surface, same_order);
    const Section f = section_from_germ(M, germ(e.pole, n));
    auto rows = convergence(M, S, f, e.y, same_order, cfg.inject_normal_flip);
    const double scale = f(e.y).norm();
    rec.upper("cauchy.same_chart", rows.back().error / scale, 1e-6,
              "relative, order " + std::to_string(same_order));
    rec.upper("cauchy.same_chart_monotone", monotone_violation(rows, 1e-12 * (1.0 + scale)), 0.0);
    // Euclidean Cauchy integral of the germ in the chart plane.
    const std::vector<SurfaceNode> nodes = surface_nodes(M, S, same_order);
    const CliffordField F = germ(e.pole, n);
    const int k = M.algebra_dim();
    const Vec v = e.y.coord.finite();
    std::vector<Multivector> terms;
    for (const SurfaceNode& x : nodes) {
      const Vec u = x.point.coord.finite();
      terms.push_back(cauchy_kernel_G(Multivector::vector(k, u - v), n) * Multivector::vector(k, x.plane_normal) *
                      F(u).lifted(k) * x.plane_weight);
    }
    const Multivector plane = pairwise_sum(terms) * (-1.0 / omega(n));
    const Vec ys = M.embed(e.y);
    const Multivector oracle = M.embedding_inverse(e.y.chart).conformal_weight(ys) * plane;
    const QuadratureReport q = cauchy_integral(M, S, f, e.y, CauchyOptions{same_order, cfg.inject_normal_flip});
    rec.upper("cauchy.same_chart_plane_oracle", (q.value - oracle).norm(),
              std::max(2.0 * q.estimated_error, 1e-12 * (1.0 + scale)));
    report.tables["cauchy.same_chart"] = std::move(rows);
  });
  guarded(rec, "cauchy.cross_glue", 1e-4, [&] {
    const Experiment e = experiment(cfg, "cross", M);
    const Hypersurface S = build_surface(M, e.surface, cross_order);
    const Section f = section_from_germ(M, germ(e.pole, n));
    auto rows = convergence(M, S, f, e.y, cross_order, cfg.inject_normal_flip);
    const double scale = f(e.y).norm();
    rec.upper("cauchy.cross_glue", rows.back().error / scale, 1e-4,
              "relative, order " + std::to_string(cross_order));
    rec.upper("cauchy.cross_glue_monotone", monotone_violation(rows, 1e-12 * (1.0 + scale)), 0.0);
    report.tables["cauchy.cross_glue"] = std::move(rows);
  });
  guarded(rec, "cauchy.contour_independence", 0.0, [&] {
    const Experiment inner = experiment(cfg, "inner", M);
    const Experiment outer = experiment(cfg, "outer", M);
    const int order = cfg.order.value_or(n == 2 ? 128 : 32);
    const Hypersurface A = build_surface(M, inner.surface, order);
    const Hypersurface B = build_surface(M, outer.surface, order);
    const Section f = section_from_germ(M, germ(inner.pole, n));
    const CauchyOptions opt{{}, cfg.inject_normal_flip};
    const QuadratureReport qa = cauchy_integral(M, A, f, inner.y, opt);
    const QuadratureReport qb = cauchy_integral(M, B, f, inner.y, opt);
    rec.upper("cauchy.contour_independence", (qa.value - qb.value).norm(),
              2.0 * (qa.estimated_error + qb.estimated_error),
              std::to_string(A.patches.size()) + " and " + std::to_string(B.patches.size()) + " patches");
  });
}

// ------------------------------------------------------------------ hardy --

double sup_norm(const std::vector<Multivector>& v) {
  double m = 0.0;
  for (const Multivector& x : v) m = std::max(m, x.norm());
  return m;
}

void hardy_checks(const RunConfig& cfg, Recorder& rec, SuiteReport& report) {
  if (cfg.n != 2) {
    rec.error("hardy.minus_sup", 1e-3, "the Plemelj probe runs on closed curves (n = 2)");
    return;
  }
  const GluedManifold M = cfg.manifold();
  const Experiment e = experiment(cfg, "hardy", M);
  const Hypersurface S = build_surface(M, e.surface, 64);
  const int N = cfg.order.value_or(512);
  const double flip = cfg.inject_normal_flip ? -1.0 : 1.0;
  const auto sample = [&](int count, const std::function<Multivector(const SurfaceNode&)>& g) {
    BoundaryData data = sample_boundary(M, S, count, g);
    for (SurfaceNode& node : data.nodes) node.normal *= flip;
    return data;
  };
  const Section inside = section_from_germ(M, germ(e.pole, 2));
  const auto trace = [&](const SurfaceNode& x) { return inside(x.point); };

  guarded(rec, "hardy.minus_sup", 1e-3, [&] {
    std::vector<ConvergenceRow> rows;
    for (int count = 64; count <= std::max(1024, N); count *= 2) {
      const BoundaryData g = sample(count, trace);
      rows.push_back({count, sup_norm(plemelj_projections(M, S, g).minus), 0.0});
    }
    const BoundaryData g = sample(N, trace);
    const PlemeljResult p = plemelj_projections(M, S, g);
    rec.upper("hardy.minus_sup", sup_norm(p.minus) / sup_norm(g.values), 1e-3,
              "monogenic trace, " + std::to_string(N) + " nodes");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < g.values.size(); ++i)
      if (!(p.plus[i] + p.minus[i] == g.values[i])) ++mismatches;
    rec.upper("hardy.exact_split", static_cast<double>(mismatches), 0.0, "nodes where plus + minus != g");
    const BoundaryData half = sample(N / 2, trace);
    const double ratio = sup_norm(plemelj_projections(M, S, half).minus) / sup_norm(p.minus);
    rec.lower("hardy.defect_halving", ratio, 2.0, "defect(N/2) / defect(N)");
    report.tables["hardy.minus_sup"] = std::move(rows);
  });
  guarded(rec, "hardy.constant", 1e-10, [&] {
    const Section one = section_from_germ(M, constant_field(Multivector::scalar(2, 1.0), 2));
    const BoundaryData g = sample(N, [&](const SurfaceNode& x) { return one(x.point); });
    rec.upper("hardy.constant", sup_norm(plemelj_projections(M, S, g).minus), 1e-10);
  });
  guarded(rec, "hardy.idempotence", 0.0, [&] {
    // Interior-monogenic part plus a part monogenic outside (pole inside S).
    const Vec c(e.surface.center);
    const Section outside = section_from_germ(M, germ(c + Vec{0.1 * e.surface.radius, 0.05}, 2));
    const BoundaryData g = sample(N, [&](const SurfaceNode& x) { return inside(x.point) + outside(x.point); });
    const BoundaryData h = sample(N, trace);
    const PlemeljResult once = plemelj_projections(M, S, g);
    BoundaryData again = g;
    again.values = once.plus;
    const PlemeljResult twice = plemelj_projections(M, S, again);
    double change = 0.0, single = 0.0;
    const PlemeljResult ph = plemelj_projections(M, S, h);
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      change = std::max(change, (twice.plus[i] - once.plus[i]).norm());
      single = std::max(single, (ph.plus[i] - h.values[i]).norm());
    }
    const double floor = 1e-12 * sup_norm(g.values);
    rec.upper("hardy.idempotence", change, 2.0 * std::max(single, floor), "|P+ P+ g - P+ g|");
  });
  guarded(rec, "hardy.extension_trace", 1e-3, [&] {
    // g = interior part + exterior part. The interior Cauchy extension of g is
    // evaluated from a fine Gauss-Legendre rule at distances d, d/2, d/4
    // along the inward plane normal and extrapolated quadratically to S; the
    // limit must match g_plus from the discrete projection.
    const Vec c(e.surface.center);
    const double rho = e.surface.radius;
    const Section in2 = section_from_germ(M, germ(c + Vec{1.6 * rho, 0.3 * rho}, 2));
    const Section outside = section_from_germ(M, germ(c + Vec{0.1 * rho, 0.05 * rho}, 2));
    const auto mixed = [&](const SurfaceNode& x) { return in2(x.point) + outside(x.point); };
    const BoundaryData g = sample(N, mixed);
    const PlemeljResult p = plemelj_projections(M, S, g);
    std::vector<SurfaceNode> fine = surface_nodes(M, S, 2048);
    for (SurfaceNode& node : fine) node.normal *= flip;
    std::vector<Multivector> fine_values;
    for (const SurfaceNode& node : fine) fine_values.push_back(mixed(node));
    const double d = 0.05 * rho;
    double worst = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); i += std::max<std::size_t>(1, g.nodes.size() / 8)) {
      const SurfaceNode& x = g.nodes[i];
      Multivector v[3] = {Multivector(3), Multivector(3), Multivector(3)};
      for (int j = 0; j < 3; ++j) {
        const ManifoldPoint y{x.point.chart, x.point.coord.finite() - x.plane_normal * (d / std::pow(2.0, j))};
        v[j] = cauchy_transform(M, fine, fine_values, y);
      }
      const Multivector limit = (v[0] - v[1] * 6.0 + v[2] * 8.0) / 3.0;
      worst = std::max(worst, (limit - p.plus[i]).norm() / sup_norm(g.values));
    }
    rec.upper("hardy.extension_trace", worst, 1e-3, "relative, extrapolated from d = " + fmt(d));
  });
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.verdict == "pass"; });
}

SuiteReport cmd_verify_algebra(const RunConfig& cfg) {
  SuiteReport report{"verify-algebra", {}, {}};
  Recorder rec(report, cfg);
  Rng rng(cfg.seed);
  guarded(rec, "algebra", 1e-10, [&] { algebra_laws(cfg, rng, rec); });
  covariance(cfg, rng, rec);
  pullbacks(cfg, rng, rec);
  return report;
}

SuiteReport cmd_verify_kernel(const RunConfig& cfg) {
  SuiteReport report{"verify-kernel", {}, {}};
  Recorder rec(report, cfg);
  Rng rng(cfg.seed);
  guarded(rec, "kernel", 0.0, [&] { kernel_checks(cfg, rng, rec); });
  return report;
}

SuiteReport cmd_verify_cauchy(const RunConfig& cfg) {
  SuiteReport report{"verify-cauchy", {}, {}};
  Recorder rec(report, cfg);
  guarded(rec, "cauchy", 0.0, [&] { cauchy_checks(cfg, rec, report); });
  return report;
}

SuiteReport cmd_hardy(const RunConfig& cfg) {
  SuiteReport report{"hardy", {}, {}};
  Recorder rec(report, cfg);
  guarded(rec, "hardy", 0.0, [&] { hardy_checks(cfg, rec, report); });
  return report;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "verify-algebra") return cmd_verify_algebra(cfg);
  if (name == "verify-kernel") return cmd_verify_kernel(cfg);
  if (name == "verify-cauchy") return cmd_verify_cauchy(cfg);
  if (name == "hardy") return cmd_hardy(cfg);
  throw ConfigError("unknown suite '" + name + "'");
}

std::string report_json(const SuiteReport& report, const RunConfig& cfg) {
  using json = nlohmann::ordered_json;
  json j;
  j["suite"] = report.suite;
  j["manifold"] = {{"kind", cfg.kind == ManifoldKind::TwoSphere ? "two-sphere" : "plane-sphere"},
                   {"n", cfg.n},
                   {"r", cfg.r},
                   {"scales", cfg.chart_scales}};
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  if (cfg.order) j["order"] = *cfg.order;
  json checks = json::array();
  for (const CheckRecord& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"residual", std::isfinite(c.residual) ? json(c.residual) : json(nullptr)},
                      {"threshold", c.threshold},
                      {"comparison", c.comparison},
                      {"verdict", c.verdict},
                      {"detail", c.detail}});
  j["checks"] = checks;
  json tables = json::object();
  for (const auto& [name, rows] : report.tables) {
    json t = json::array();
    for (const ConvergenceRow& r : rows)
      t.push_back({{"order", r.order}, {"error", r.error}, {"estimated_error", r.estimated_error}});
    tables[name] = t;
  }
  j["tables"] = tables;
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

std::string report_csv(const SuiteReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "table,order,error,estimated_error\n";
  for (const auto& [name, rows] : report.tables)
    for (const ConvergenceRow& r : rows) os << name << ',' << r.order << ',' << r.error << ',' << r.estimated_error << '\n';
  return os.str();
}

}  // namespace cfm

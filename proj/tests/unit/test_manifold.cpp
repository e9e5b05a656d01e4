#include <doctest.h>

#include <random>

#include "cfm/errors.hpp"
#include "cfm/manifold.hpp"

using namespace cfm;

namespace {

const GluedManifold M(ManifoldKind::TwoSphere, 2, 2.0);

double dist(const Vec& a, const Vec& b) { return (a - b).norm(); }

ManifoldPoint random_neck(std::mt19937_64& g, const GluedManifold& m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double rho = std::exp(u(g) * std::log(m.r()) * 0.999);
  const double t = 3.14159 * u(g);
  Vec v(static_cast<std::size_t>(m.n()));
  v[0] = rho * std::cos(t);
  v[1] = rho * std::sin(t);
  return {1 + static_cast<int>(g() % 2), v};
}

}  // namespace

TEST_CASE("classification") {
  CHECK(M.classify({1, Vec{3.0, 0.0}}) == Region::Body);
  CHECK(M.classify({1, Vec{1.0, 0.0}}) == Region::Neck);
  CHECK(M.classify({1, Vec{0.3, 0.0}}) == Region::Inadmissible);
  CHECK(M.classify({2, ExtendedPoint::infinity(2)}) == Region::Body);
  CHECK(M.classify({1, Vec{2.0, 0.0}}) == Region::Body);  // the tie goes to the body
  CHECK(M.classify({1, Vec{0.5, 0.0}}) == Region::Inadmissible);
  CHECK_THROWS(M.classify({3, Vec{1.0, 0.0}}));
  CHECK_THROWS(GluedManifold(ManifoldKind::TwoSphere, 2, 1.0));
}

TEST_CASE("transition and continuation") {
  const VahlenMap psi = M.transition_psi12();
  CHECK(dist(psi.apply(Vec{1.0, 0.0, 0.0}), Vec{1.0, 0.0, 0.0}) <= 1e-15);
  const Vec img = psi.apply(Vec{1.5, 0.0, 0.0});
  CHECK(dist(img, Vec{2.0 / 3.0, 0.0, 0.0}) <= 1e-15);
  const Continuation cont = M.continuation_Psi12();
  CHECK(cont.admits(Vec{0.25, 0.0, 0.0}));
  CHECK_FALSE(cont.admits(Vec{2.5, 0.0, 0.0}));
  CHECK(dist(cont.map.apply(Vec{0.25, 0.0, 0.0}), Vec{4.0, 0.0, 0.0}) <= 1e-14);
  CHECK(cont.map.apply(ExtendedPoint(Vec{0.0, 0.0, 0.0})).is_infinite());
  std::mt19937_64 g(9);
  for (int i = 0; i < 100; ++i) {
    const ManifoldPoint p = random_neck(g, M);
    const Vec x = p.coord.finite().resized(3);
    CHECK(dist(psi.apply(psi.apply(x)), x) <= 1e-12);
    CHECK(psi.apply(x).norm() == doctest::Approx(1.0 / x.norm()).epsilon(1e-14));
    const ExtendedPoint back = M.continued_coordinate({2, M.continued_coordinate({1, p.coord}, 2)}, 1);
    CHECK(dist(back.finite(), p.coord.finite()) <= 1e-12);
  }
  // Chart transitions compose to the identity matrix.
  const VahlenMap id = compose(M.chart_transition(2, 1), M.chart_transition(1, 2));
  CHECK((id.a() - Multivector::scalar(3, 1.0)).norm() <= 1e-15);
  CHECK((id.d() - Multivector::scalar(3, 1.0)).norm() <= 1e-15);
}

TEST_CASE("equivalence and canonical form") {
  CHECK(M.equivalent({1, Vec{1.0, 0.0}}, {2, Vec{1.0, 0.0}}));
  CHECK(M.equivalent({1, Vec{1.5, 0.0}}, {2, Vec{2.0 / 3.0, 0.0}}));
  CHECK_FALSE(M.equivalent({1, Vec{3.0, 0.0}}, {2, Vec{-1.0 / 3.0, 0.0}}));
  CHECK_FALSE(M.equivalent({1, Vec{3.0, 0.0}}, {2, Vec{3.0, 0.0}}));
  const ManifoldPoint c = M.canonical({2, Vec{1.0, 0.0}});
  CHECK(c.chart == 1);
  CHECK(dist(c.coord.finite(), Vec{1.0, 0.0}) <= 1e-15);
  const ManifoldPoint body = M.canonical({1, Vec{3.0, 0.0}});
  CHECK(body.chart == 1);
  CHECK(body.coord == ExtendedPoint(Vec{3.0, 0.0}));
  CHECK_THROWS_AS(M.canonical({1, Vec{0.1, 0.0}}), DomainViolation);
  std::mt19937_64 g(10);
  for (int i = 0; i < 100; ++i) {
    const ManifoldPoint p = random_neck(g, M);
    const ManifoldPoint q = M.canonical(p);
    CHECK(M.equivalent(p, q));
    const ManifoldPoint qq = M.canonical(q);
    CHECK(qq.chart == q.chart);
    CHECK(qq.coord == q.coord);
    CHECK(M.classify(q) == M.classify(p));
  }
}

TEST_CASE("sphere embeddings") {
  CHECK(dist(M.to_sphere({1, Vec{0.0, 0.0}}).components(), Vec{0.0, 0.0, -1.0}) <= 1e-15);
  CHECK(dist(M.to_sphere({1, ExtendedPoint::infinity(2)}).components(), Vec{0.0, 0.0, 1.0}) <= 1e-15);
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const ManifoldPoint p{1 + static_cast<int>(g() % 2), Vec{u(g), u(g)}};
    CHECK(std::abs(M.to_sphere(p).components().norm() - 1.0) <= 1e-12);
    const ExtendedPoint back = M.chart_coordinate(p.chart, M.embed(p));
    CHECK(dist(back.finite(), p.coord.finite()) <= 1e-10 * (1.0 + p.coord.finite().norm()));
  }
  // The two sphere images of a neck point are related by the sphere-level transfer.
  for (int i = 0; i < 100; ++i) {
    const ManifoldPoint p = random_neck(g, M);
    const int other = 3 - p.chart;
    const ManifoldPoint q{other, M.continued_coordinate(p, other)};
    CHECK(dist(M.transfer(p.chart, other).apply(M.embed(p)), M.embed(q)) <= 1e-12);
  }
}

TEST_CASE("plane-sphere manifold") {
  const GluedManifold P(ManifoldKind::PlaneSphere, 2, 2.0);
  CHECK_FALSE(P.has_sphere(1));
  CHECK(P.has_sphere(2));
  CHECK_THROWS_AS(P.to_sphere({1, Vec{3.0, 0.0}}), DomainViolation);
  CHECK(P.classify({1, ExtendedPoint::infinity(2)}) == Region::Inadmissible);
  CHECK(P.classify({1, Vec{100.0, 0.0}}) == Region::Body);
  CHECK(dist(P.embed({1, Vec{3.0, 1.0}}), Vec{3.0, 1.0, 0.0}) == 0.0);
}

TEST_CASE("chart scales") {
  GluedManifold::Options opt;
  opt.chart_scales = {1.0, 2.5};
  const GluedManifold S(ManifoldKind::TwoSphere, 3, 1.5, opt);
  CHECK(S.chart(2).scale == 2.5);
  CHECK(S.embed({2, Vec{0.3, 0.1, -0.2}}).norm() == doctest::Approx(2.5));
  CHECK(S.to_sphere({2, Vec{0.3, 0.1, -0.2}}).components().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(SpherePoint(Vec{1.0, 1.0}), DomainViolation);
}

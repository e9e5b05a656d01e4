#include "cfm/manifold.hpp"

#include <cmath>
#include <string>

#include "cfm/errors.hpp"

namespace cfm {

SpherePoint::SpherePoint(Vec components) : v_(std::move(components)) {
  if (std::abs(v_.norm() - 1.0) > 1e-12)
    throw DomainViolation("SpherePoint: components must have unit norm");
}

bool Continuation::admits(const ExtendedPoint& x) const {
  return !x.is_infinite() && x.finite().norm() < domain_radius;
}

namespace {

ExtendedPoint padded(const ExtendedPoint& p, std::size_t dim) {
  if (p.is_infinite()) return ExtendedPoint::infinity(dim);
  return p.finite().resized(dim);
}

}  // namespace

GluedManifold::GluedManifold(ManifoldKind kind, int n, double r)
    : GluedManifold(kind, n, r, Options{}) {}

GluedManifold::GluedManifold(ManifoldKind kind, int n, double r, Options options)
    : kind_(kind), n_(n), r_(r), m_(options.weight_exponent == 0 ? n : options.weight_exponent) {
  if (n < 1 || n + 1 > Multivector::kMaxDim)
    throw std::invalid_argument("GluedManifold: unsupported dimension");
  if (!(r > 1.0)) throw std::invalid_argument("GluedManifold: gluing radius must exceed 1");
  if (m_ < 1) throw std::invalid_argument("GluedManifold: weight exponent must be positive");
  std::vector<double> scales = options.chart_scales;
  scales.resize(2, 1.0);
  for (int id = 1; id <= 2; ++id) {
    ChartRecord rec;
    rec.scale = scales[static_cast<std::size_t>(id - 1)];
    if (!(rec.scale > 0.0)) throw std::invalid_argument("GluedManifold: chart scale must be positive");
    rec.neck_inner = 1.0 / r;
    rec.neck_outer = r;
    const bool plane = kind == ManifoldKind::PlaneSphere && id == 1;
    rec.admits_infinity = !plane;
    VahlenMap emb = VahlenMap::identity(n + 1, m_);
    if (!plane) {
      emb = compose(VahlenMap::dilation(rec.scale, n + 1, m_), VahlenMap::cayley(n).with_kernel_exponent(m_));
      rec.cayley = emb;
    }
    embedding_inverses_.push_back(inverse(emb));
    embeddings_.push_back(std::move(emb));
    charts_.push_back(std::move(rec));
  }
}

void GluedManifold::check_chart(int id) const {
  if (id < 1 || id > static_cast<int>(charts_.size()))
    throw std::out_of_range("GluedManifold: no chart " + std::to_string(id));
}

const ChartRecord& GluedManifold::chart(int id) const {
  check_chart(id);
  return charts_[static_cast<std::size_t>(id - 1)];
}

Region GluedManifold::classify(const ManifoldPoint& p) const {
  const ChartRecord& rec = chart(p.chart);
  if (p.coord.is_infinite()) return rec.admits_infinity ? Region::Body : Region::Inadmissible;
  const double rad = p.coord.finite().norm();
  if (rad >= rec.neck_outer) return Region::Body;
  if (rad > rec.neck_inner) return Region::Neck;
  return Region::Inadmissible;
}

VahlenMap GluedManifold::transition_psi12() const { return VahlenMap::neck_inversion(n_ + 1, m_); }

Continuation GluedManifold::continuation_Psi12() const { return {transition_psi12(), r_}; }

VahlenMap GluedManifold::chart_transition(int from, int to) const {
  check_chart(from);
  check_chart(to);
  if (from == to) return VahlenMap::identity(n_ + 1, m_);
  const VahlenMap psi = transition_psi12();
  return from == 1 ? psi : inverse(psi);
}

ExtendedPoint GluedManifold::continued_coordinate(const ManifoldPoint& p, int to) const {
  if (p.chart == to) return p.coord;
  const auto k = static_cast<std::size_t>(n_ + 1);
  const ExtendedPoint image = chart_transition(p.chart, to).apply(padded(p.coord, k));
  return padded(image, static_cast<std::size_t>(n_));
}

bool GluedManifold::equivalent(const ManifoldPoint& p, const ManifoldPoint& q, double tol) const {
  if (!admissible(p) || !admissible(q)) return false;
  const auto close = [tol](const ExtendedPoint& a, const ExtendedPoint& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    return (a.finite() - b.finite()).norm() <= tol * (1.0 + a.finite().norm());
  };
  if (p.chart == q.chart) return close(p.coord, q.coord);
  if (classify(p) != Region::Neck || classify(q) != Region::Neck) return false;
  return close(continued_coordinate(p, q.chart), q.coord);
}

ManifoldPoint GluedManifold::canonical(const ManifoldPoint& p) const {
  const Region region = classify(p);
  if (region == Region::Inadmissible) throw DomainViolation("canonical: inadmissible point");
  if (region == Region::Neck && p.chart != 1) return {1, continued_coordinate(p, 1)};
  return p;
}

VahlenMap GluedManifold::embedding(int id) const {
  check_chart(id);
  return embeddings_[static_cast<std::size_t>(id - 1)];
}

VahlenMap GluedManifold::embedding_inverse(int id) const {
  check_chart(id);
  return embedding_inverses_[static_cast<std::size_t>(id - 1)];
}

VahlenMap GluedManifold::transfer(int from, int to) const {
  return compose(embedding(to), compose(chart_transition(from, to), embedding_inverse(from)));
}

Vec GluedManifold::embed(const ManifoldPoint& p) const {
  const auto k = static_cast<std::size_t>(n_ + 1);
  const ExtendedPoint image = embedding(p.chart).apply(padded(p.coord, k));
  if (image.is_infinite()) throw SingularPoint("embed: point at infinity of a plane chart");
  return image.finite();
}

SpherePoint GluedManifold::to_sphere(const ManifoldPoint& p) const {
  if (!has_sphere(p.chart)) throw DomainViolation("to_sphere: no sphere embedding for a plane chart");
  Vec v = embed(p);
  v *= 1.0 / chart(p.chart).scale;
  return SpherePoint(std::move(v));
}

ExtendedPoint GluedManifold::chart_coordinate(int id, const Vec& embedded) const {
  const ExtendedPoint pre = embedding_inverse(id).apply(ExtendedPoint{embedded});
  return padded(pre, static_cast<std::size_t>(n_));
}

}  // namespace cfm

#pragma once

// Smooth strictly convex bodies, their stereographic projections, the
// circumball side predicate, K-Delaunay triangulations, and inscribed
// polytopes built from Delaunay data.
//
// Convention: the projection center is the boundary point on the positive
// last axis ("north pole"); the image plane is the tangent hyperplane at the
// opposite point, parametrized by its first m-1 coordinates. For the unit
// ball this is the plane x_m = -1 and the inverse map is
//   (4a, |a|^2 - 4) / (|a|^2 + 4).
// The unit ball is handled exactly; ellipsoids and even p-norm balls use
// long double arithmetic with an explicit tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "inscribe/combinatorics.hpp"
#include "inscribe/errors.hpp"
#include "inscribe/exact_core.hpp"
#include "inscribe/hull_complex.hpp"
#include "inscribe/triangulation.hpp"

namespace inscribe {

using NumericPoint = std::vector<long double>;

class KBody {
 public:
  enum class Kind { UnitBall, Ellipsoid, PNormBall };

  static KBody unit_ball(int dim) {
    if (dim < 2) throw DimensionMismatch("body dimension must be at least 2");
    KBody b;
    b.kind_ = Kind::UnitBall;
    b.dim_ = dim;
    return b;
  }

  /// { x : x^T Q x <= 1 } for a symmetric positive-definite rational Q (row-major, dim*dim).
  static KBody ellipsoid(int dim, std::vector<Rational> form, Rational tolerance) {
    if (dim < 2) throw DimensionMismatch("body dimension must be at least 2");
    const std::size_t m = static_cast<std::size_t>(dim);
    if (form.size() != m * m) throw DimensionMismatch("ellipsoid form must be dim x dim");
    Matrix q(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) q[i][j] = form[i * m + j];
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (q[i][j] != q[j][i]) throw SchemaError("ellipsoid form must be symmetric");
      }
    }
    // Sylvester's criterion: all leading principal minors positive.
    for (std::size_t k = 1; k <= m; ++k) {
      Matrix minor(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) minor[i][j] = q[i][j];
      }
      if (determinant(minor) <= 0) throw SchemaError("ellipsoid form must be positive definite");
    }
    if (tolerance < 0) throw SchemaError("tolerance must be nonnegative");
    KBody b;
    b.kind_ = Kind::Ellipsoid;
    b.dim_ = dim;
    b.form_ = std::move(form);
    b.tolerance_ = std::move(tolerance);
    return b;
  }

  /// Axis-aligned ellipsoid with the given semi-axes.
  static KBody axis_ellipsoid(const std::vector<Rational>& semi_axes, Rational tolerance) {
    const std::size_t m = semi_axes.size();
    std::vector<Rational> form(m * m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (semi_axes[i] <= 0) throw SchemaError("semi-axes must be positive");
      form[i * m + i] = 1 / (semi_axes[i] * semi_axes[i]);
    }
    return ellipsoid(static_cast<int>(m), std::move(form), std::move(tolerance));
  }

  /// { x : sum x_i^p <= 1 } for an even p >= 4.
  static KBody p_norm_ball(int dim, int p, Rational tolerance) {
    if (dim < 2) throw DimensionMismatch("body dimension must be at least 2");
    if (p < 4 || p % 2 != 0) throw SchemaError("p-norm ball needs an even p >= 4");
    if (tolerance < 0) throw SchemaError("tolerance must be nonnegative");
    KBody b;
    b.kind_ = Kind::PNormBall;
    b.dim_ = dim;
    b.p_ = p;
    b.tolerance_ = std::move(tolerance);
    return b;
  }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool exact() const { return kind_ == Kind::UnitBall; }
  int p() const { return p_; }
  const std::vector<Rational>& form() const { return form_; }
  const Rational& tolerance() const { return tolerance_; }

  /// Gauge value g(x); the boundary is g = 1.
  long double gauge(const NumericPoint& x) const {
    long double s = 0;
    const std::size_t m = x.size();
    switch (kind_) {
      case Kind::UnitBall:
        for (auto v : x) s += v * v;
        return s;
      case Kind::Ellipsoid:
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) s += x[i] * static_cast<long double>(form_[i * m + j].get_d()) * x[j];
        }
        return s;
      case Kind::PNormBall:
        for (auto v : x) s += std::pow(v, static_cast<long double>(p_));
        return s;
    }
    return s;
  }

  bool on_boundary(const Point& x) const {
    if (x.size() != static_cast<std::size_t>(dim_)) return false;
    if (exact()) return squared_norm(x) == 1;
    NumericPoint v;
    for (const auto& c : x) v.push_back(static_cast<long double>(c.get_d()));
    return std::fabs(gauge(v) - 1) <= static_cast<long double>(tolerance_.get_d());
  }

  friend bool operator==(const KBody&, const KBody&) = default;

 private:
  KBody() = default;

  Kind kind_ = Kind::UnitBall;
  int dim_ = 2;
  std::vector<Rational> form_;
  int p_ = 2;
  Rational tolerance_ = 0;
};

// ---------------------------------------------------------------------------
// Exact unit-ball maps.

/// Inverse stereographic map R^d -> unit sphere in R^{d+1}.
inline Point inverse_stereo(const Point& a) {
  const Rational n2 = squared_norm(a);
  const Rational den = n2 + 4;
  Point x;
  x.reserve(a.size() + 1);
  for (const auto& c : a) x.push_back(4 * c / den);
  x.push_back((n2 - 4) / den);
  return x;
}

inline Point north_pole(int ambient_dim) {
  Point c(static_cast<std::size_t>(ambient_dim), Rational(0));
  c.back() = 1;
  return c;
}

/// Stereographic map from the unit sphere minus the north pole to R^{m-1}.
inline Point stereo(const Point& x) {
  if (x.size() < 2) throw DimensionMismatch("stereo: point must have dimension at least 2");
  if (squared_norm(x) != 1) throw DegenerateInput("stereo: point is not on the unit sphere");
  if (x.back() == 1) throw DegenerateInput("stereo: point is the projection center");
  const Rational t = 2 / (1 - x.back());
  Point a(x.begin(), x.end() - 1);
  for (auto& c : a) c *= t;
  return a;
}

// ---------------------------------------------------------------------------
// Numeric helpers.

namespace detail {

inline NumericPoint to_numeric(const Point& p) {
  NumericPoint v;
  v.reserve(p.size());
  for (const auto& c : p) v.push_back(static_cast<long double>(c.get_d()));
  return v;
}

inline long double dot(const NumericPoint& a, const NumericPoint& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Sign of det[x_1 - x_0, ..., x_k - x_0] with a relative tolerance against
/// the Hadamard bound. Throws NumericUndecided inside the band.
inline int numeric_orientation(const std::vector<NumericPoint>& pts, long double tolerance) {
  const std::size_t k = pts.size() - 1;
  std::vector<NumericPoint> m(k);
  long double bound = 1;
  for (std::size_t i = 0; i < k; ++i) {
    m[i].resize(k);
    long double row = 0;
    for (std::size_t j = 0; j < k; ++j) {
      m[i][j] = pts[i + 1][j] - pts[0][j];
      row += m[i][j] * m[i][j];
    }
    bound *= std::sqrt(row);
  }
  long double det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    }
    if (m[piv][c] == 0) {
      det = 0;
      break;
    }
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      const long double f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < k; ++j) m[r][j] -= f * m[c][j];
    }
  }
  if (std::fabs(det) <= tolerance * bound) throw NumericUndecided("orientation is within tolerance of zero");
  return det > 0 ? 1 : -1;
}

}  // namespace detail

/// A K-stereographic projection with the fixed north-pole convention.
class KProjection {
 public:
  explicit KProjection(KBody body) : body_(std::move(body)) {
    const std::size_t m = static_cast<std::size_t>(body_.dim());
    center_.assign(m, 0.0L);
    normal_.assign(m, 0.0L);
    switch (body_.kind()) {
      case KBody::Kind::UnitBall:
      case KBody::Kind::PNormBall:
        center_[m - 1] = 1;
        normal_[m - 1] = 1;
        break;
      case KBody::Kind::Ellipsoid: {
        const auto& q = body_.form();
        center_[m - 1] = 1 / std::sqrt(static_cast<long double>(q[m * m - 1].get_d()));
        for (std::size_t i = 0; i < m; ++i) {
          normal_[i] = static_cast<long double>(q[i * m + m - 1].get_d()) * center_[m - 1];
        }
        break;
      }
    }
    // Both supported numeric bodies are centrally symmetric: the tangent plane
    // opposite the center touches at -center.
    offset_ = -detail::dot(normal_, center_);
  }

  const KBody& body() const { return body_; }
  int image_dim() const { return body_.dim() - 1; }
  bool exact() const { return body_.exact(); }
  const NumericPoint& center() const { return center_; }

  /// Point of the image plane with the given first m-1 coordinates.
  NumericPoint plane_point(const NumericPoint& y) const {
    const std::size_t m = center_.size();
    NumericPoint h(y.begin(), y.end());
    long double s = offset_;
    for (std::size_t i = 0; i + 1 < m; ++i) s -= normal_[i] * y[i];
    h.push_back(s / normal_[m - 1]);
    return h;
  }

  /// Ray parameter t > 0 with c + t (h(y) - c) on the boundary.
  long double ray_parameter(const NumericPoint& y) const {
    const NumericPoint h = plane_point(y);
    const std::size_t m = h.size();
    NumericPoint u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = h[i] - center_[i];
    switch (body_.kind()) {
      case KBody::Kind::UnitBall:
        return -2 * detail::dot(center_, u) / detail::dot(u, u);
      case KBody::Kind::Ellipsoid: {
        const auto& q = body_.form();
        long double cqu = 0;
        long double uqu = 0;
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) {
            const long double qij = static_cast<long double>(q[i * m + j].get_d());
            cqu += center_[i] * qij * u[j];
            uqu += u[i] * qij * u[j];
          }
        }
        return -2 * cqu / uqu;
      }
      case KBody::Kind::PNormBall: {
        // f(t) = g(c + t u) - 1 is convex with f(0) = 0, f'(0) < 0 and f(1) >= 0,
        // so Newton from t = 1 decreases monotonically to the positive root.
        const long double p = static_cast<long double>(body_.p());
        long double t = 1;
        for (int it = 0; it < 200; ++it) {
          long double f = -1;
          long double df = 0;
          for (std::size_t i = 0; i < m; ++i) {
            const long double x = center_[i] + t * u[i];
            f += std::pow(x, p);
            df += p * std::pow(x, p - 1) * u[i];
          }
          if (df == 0) break;
          const long double step = f / df;
          t -= step;
          if (std::fabs(step) <= 1e-18L * std::max(1.0L, t)) break;
        }
        return t;
      }
    }
    return 0;
  }

  /// Inverse projection image plane -> boundary.
  NumericPoint lift(const NumericPoint& y) const {
    if (y.size() + 1 != center_.size()) throw DimensionMismatch("lift: point has wrong dimension");
    const NumericPoint h = plane_point(y);
    const long double t = ray_parameter(y);
    NumericPoint x(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) x[i] = center_[i] + t * (h[i] - center_[i]);
    return x;
  }

  /// Projection boundary minus center -> image plane coordinates.
  NumericPoint project(const NumericPoint& x) const {
    if (x.size() != center_.size()) throw DimensionMismatch("project: point has wrong dimension");
    const long double tol = static_cast<long double>(body_.tolerance().get_d());
    if (std::fabs(body_.gauge(x) - 1) > std::max(tol, 1e-15L)) {
      throw DegenerateInput("project: point is not on the boundary");
    }
    NumericPoint d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - center_[i];
    const long double nd = detail::dot(normal_, d);
    if (nd == 0) throw DegenerateInput("project: point is the projection center");
    const long double t = (offset_ - detail::dot(normal_, center_)) / nd;
    NumericPoint y(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) y[i] = center_[i] + t * d[i];
    return y;
  }

  /// Exact inverse projection (unit ball only).
  Point lift_exact(const Point& a) const {
    require_exact();
    if (a.size() + 1 != static_cast<std::size_t>(body_.dim())) throw DimensionMismatch("lift: wrong dimension");
    return inverse_stereo(a);
  }

  /// Exact projection (unit ball only).
  Point project_exact(const Point& x) const {
    require_exact();
    return stereo(x);
  }

  /// Height whose lower envelope over the image plane is the K-Delaunay
  /// subdivision: the reciprocal of the ray parameter. Exact for the ball,
  /// where it is (|a|^2 + 4) / 4.
  Rational regularity_height(const Point& a) const {
    if (exact()) return (squared_norm(a) + 4) / 4;
    return from_double(static_cast<double>(1 / ray_parameter(detail::to_numeric(a))));
  }

 private:
  void require_exact() const {
    if (!exact()) throw std::logic_error("exact projection requested for a numeric body");
  }

  KBody body_;
  NumericPoint center_;
  NumericPoint normal_;
  long double offset_ = 0;
};

/// Side of `query` relative to the K-circumball spanned by D+1 points in R^D
/// (body in R^{D+1}): lift everything to the boundary, orient the spanned
/// hyperplane so the center is on its negative side, and read off the side of
/// the lifted query (positive = inside).
inline Side k_circumball_side(std::span<const Point> spanning, const Point& query, const KProjection& proj) {
  const std::size_t dim = query.size();
  if (dim + 1 != static_cast<std::size_t>(proj.body().dim())) {
    throw DimensionMismatch("k_circumball_side: body dimension must be one more than the points'");
  }
  if (spanning.size() != dim + 1) throw DimensionMismatch("k_circumball_side: need D+1 spanning points in R^D");
  for (const auto& s : spanning) {
    if (s.size() != dim) throw DimensionMismatch("k_circumball_side: dimension mismatch");
  }
  if (orientation(spanning) == 0) throw DegenerateInput("k_circumball_side: spanning points are affinely dependent");

  if (proj.exact()) {
    std::vector<Point> lifted;
    lifted.reserve(dim + 3);
    for (const auto& s : spanning) lifted.push_back(proj.lift_exact(s));
    lifted.push_back(north_pole(proj.body().dim()));
    const int center_side = orientation(lifted);
    if (center_side == 0) throw DegenerateInput("k_circumball_side: spanned hyperplane contains the center");
    lifted.back() = proj.lift_exact(query);
    const int q = orientation(lifted);
    if (q == 0) return Side::On;
    return q == center_side ? Side::Outside : Side::Inside;
  }

  for (const auto& s : spanning) {
    if (s == query) return Side::On;
  }
  const long double tol = static_cast<long double>(proj.body().tolerance().get_d());
  std::vector<NumericPoint> lifted;
  for (const auto& s : spanning) lifted.push_back(proj.lift(detail::to_numeric(s)));
  lifted.push_back(proj.center());
  const int center_side = detail::numeric_orientation(lifted, tol);
  lifted.back() = proj.lift(detail::to_numeric(query));
  const int q = detail::numeric_orientation(lifted, tol);
  return q == center_side ? Side::Outside : Side::Inside;
}

struct KDelaunayResult {
  Triangulation triangulation;
  /// Heights whose lower envelope reproduces the triangulation (regularity certificate).
  std::map<Label, Rational> heights;
};

/// K-Delaunay triangulation. For the exact ball the candidate cells come from
/// the lower envelope of the regularity lift and are then checked cell by
/// cell; numeric bodies scan every (d+1)-subset. Both routes reject
/// configurations where some point lies on (or within tolerance of) a
/// K-circumsphere of d+1 others.
inline KDelaunayResult k_delaunay(const PointConfiguration& config, const KProjection& proj) {
  if (config.dim() + 1 != proj.body().dim()) throw DimensionMismatch("k_delaunay: body dimension must be d+1");
  require_hull_input(config, "k_delaunay");
  const std::size_t k = static_cast<std::size_t>(config.dim()) + 1;

  KDelaunayResult out;
  for (const auto& p : config.points()) out.heights[p.label] = proj.regularity_height(p.coords);

  auto empty_ball = [&](const LabelSet& cell) {
    const auto pts = config.coords_of(cell);
    bool empty = true;
    for (const auto& p : config.points()) {
      if (std::binary_search(cell.begin(), cell.end(), p.label)) continue;
      const Side s = k_circumball_side(pts, p.coords, proj);
      if (s == Side::On) throw DegenerateInput("k_delaunay: d+2 points lie on a common K-sphere");
      if (s == Side::Inside) empty = false;
    }
    return empty;
  };

  std::vector<LabelSet> cells;
  if (proj.exact()) {
    if (config.size() == k) {
      cells.push_back(config.labels());
    } else {
      const PointConfiguration lifted = lifted_by(config, out.heights);
      if (!is_general_position(lifted)) throw DegenerateInput("k_delaunay: d+2 points lie on a common K-sphere");
      cells = lower_envelope(lifted).cells;
    }
    for (const auto& c : cells) {
      if (!empty_ball(c)) throw InvariantViolation("k_delaunay: lower-envelope cell fails the empty K-ball test");
    }
  } else {
    for (auto& cell : subsets_of(config.labels(), k)) {
      if (empty_ball(cell)) cells.push_back(std::move(cell));
    }
  }
  out.triangulation = Triangulation(config.dim(), config.max_label(), std::move(cells));
  return out;
}

/// A polytope whose vertices lie on the boundary of `body`.
struct InscribedRealization {
  PointConfiguration vertices;
  KBody body = KBody::unit_ball(2);
  FacetSet facets;
  /// Label of the projection center among the vertices, 0 when there is none.
  Label pole_label = 0;

  friend bool operator==(const InscribedRealization&, const InscribedRealization&) = default;
};

/// conv({north pole} union inverse_stereo(config)) in the unit ball. The pole
/// gets `pole_label`, by default one more than the largest label. The
/// configuration need not be in general position, but the polytope must come
/// out simplicial (d+2 points on an empty sphere make it fail).
inline InscribedRealization brown_polytope(const PointConfiguration& config, std::optional<Label> pole_label = {}) {
  if (config.size() < static_cast<std::size_t>(config.dim()) + 1) {
    throw DegenerateInput("brown_polytope: need at least d+1 points");
  }
  const Label pole = pole_label.value_or(config.max_label() + 1);
  if (config.index_of(pole)) throw SchemaError("brown_polytope: pole label collides with a point label");
  std::vector<LabeledPoint> verts;
  for (const auto& p : config.points()) verts.push_back({p.label, inverse_stereo(p.coords)});
  verts.push_back({pole, north_pole(config.dim() + 1)});
  InscribedRealization r;
  r.vertices = PointConfiguration(config.dim() + 1, std::move(verts));
  r.body = KBody::unit_ball(config.dim() + 1);
  r.facets = simplicial_hull(r.vertices);
  r.pole_label = pole;
  return r;
}

/// Every vertex lies on the body boundary, every vertex is used, and the
/// exact hull has the expected labeled facets.
inline bool verify_inscribed(const InscribedRealization& r, const FacetSet& expected) {
  if (r.vertices.dim() != r.body.dim()) return false;
  for (const auto& v : r.vertices.points()) {
    if (!r.body.on_boundary(v.coords)) return false;
  }
  FacetSet hull;
  try {
    hull = simplicial_hull(r.vertices);
  } catch (const DegenerateInput&) {
    return false;
  }
  if (hull.vertices() != r.vertices.labels()) return false;
  return same_labeled_type(hull, expected);
}

}  // namespace inscribe

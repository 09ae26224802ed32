#pragma once

// Exact points, labeled configurations and the sign predicates built on them.
// Everything here is a pure function of its arguments; no floating point.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inscribe/combinatorics.hpp"
#include "inscribe/errors.hpp"
#include "inscribe/rational.hpp"

namespace inscribe {

using Point = std::vector<Rational>;
using Matrix = std::vector<std::vector<Rational>>;

enum class Side { Inside, On, Outside };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::Inside: return "inside";
    case Side::On: return "on";
    case Side::Outside: return "outside";
  }
  return "?";
}

/// Determinant of a square rational matrix. Each row is first scaled by the
/// lcm of its denominators, then fraction-free (Bareiss) elimination runs on
/// the integer matrix, so every intermediate division is exact.
inline Rational determinant(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw DimensionMismatch("determinant: matrix is not square");
    Integer l = 1;
    for (const auto& x : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
    scale *= l;
  }

  int swaps = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Rational(0);
      std::swap(a[k], a[p]);
      swaps = -swaps;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  Rational det(a[n - 1][n - 1] * swaps, scale);
  det.canonicalize();
  return det;
}

inline int determinant_sign(const Matrix& m) { return sgn(determinant(m)); }

inline Rational squared_norm(const Point& p) {
  Rational s = 0;
  for (const auto& x : p) s += x * x;
  return s;
}

inline Point operator-(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DimensionMismatch("point difference: dimension mismatch");
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Point operator+(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DimensionMismatch("point sum: dimension mismatch");
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// Signed volume times d! of the simplex (p_0, ..., p_d): det[p_1 - p_0, ..., p_d - p_0].
/// Equals det of the rows (1, p_i).
inline Rational signed_volume(std::span<const Point> points) {
  if (points.empty()) throw DimensionMismatch("signed_volume: no points");
  const std::size_t d = points[0].size();
  if (points.size() != d + 1) throw DimensionMismatch("signed_volume: need d+1 points in R^d");
  Matrix m;
  m.reserve(d);
  for (std::size_t i = 1; i <= d; ++i) {
    if (points[i].size() != d) throw DimensionMismatch("signed_volume: dimension mismatch");
    m.push_back(points[i] - points[0]);
  }
  return determinant(m);
}

/// Orientation of d+1 points in R^d: +1, 0 or -1.
inline int orientation(std::span<const Point> points) { return sgn(signed_volume(points)); }

inline int orientation(std::initializer_list<Point> points) {
  return orientation(std::span<const Point>(points.begin(), points.size()));
}

/// Position of `query` relative to the sphere through the d+1 spanning points.
/// Independent of the order of `spanning`.
inline Side in_sphere(std::span<const Point> spanning, const Point& query) {
  if (spanning.empty()) throw DimensionMismatch("in_sphere: no spanning points");
  const std::size_t d = query.size();
  if (spanning.size() != d + 1) throw DimensionMismatch("in_sphere: need d+1 spanning points in R^d");
  const int o = orientation(spanning);
  if (o == 0) throw DegenerateInput("in_sphere: spanning points are affinely dependent");
  Matrix m;
  m.reserve(d + 1);
  for (const auto& s : spanning) {
    Point row = s - query;
    row.push_back(squared_norm(row));
    m.push_back(std::move(row));
  }
  const int lifted = determinant_sign(m);
  if (lifted == 0) return Side::On;
  const int parity = (d % 2 == 0) ? 1 : -1;
  return lifted * o * parity > 0 ? Side::Inside : Side::Outside;
}

struct LabeledPoint {
  Label label = 0;
  Point coords;

  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

/// Labeled points in R^dim, kept sorted by label. Label order is the
/// insertion order for placing triangulations and lexicographic liftings.
class PointConfiguration {
 public:
  PointConfiguration() = default;

  PointConfiguration(int dim, std::vector<LabeledPoint> points) : dim_(dim), points_(std::move(points)) {
    if (dim_ < 1) throw DimensionMismatch("configuration dimension must be positive");
    std::sort(points_.begin(), points_.end(),
              [](const LabeledPoint& a, const LabeledPoint& b) { return a.label < b.label; });
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].label < 1) throw SchemaError("labels must be positive integers");
      if (i > 0 && points_[i].label == points_[i - 1].label) {
        throw SchemaError("duplicate label " + std::to_string(points_[i].label));
      }
      if (points_[i].coords.size() != static_cast<std::size_t>(dim_)) {
        throw DimensionMismatch("point " + std::to_string(points_[i].label) + " has wrong dimension");
      }
    }
  }

  /// Points labeled 1..n in the given order.
  static PointConfiguration from_points(int dim, const std::vector<Point>& pts) {
    std::vector<LabeledPoint> lp;
    lp.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) lp.push_back({static_cast<Label>(i + 1), pts[i]});
    return PointConfiguration(dim, std::move(lp));
  }

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<LabeledPoint>& points() const { return points_; }
  const Point& point(std::size_t i) const { return points_[i].coords; }
  Label label(std::size_t i) const { return points_[i].label; }

  std::optional<std::size_t> index_of(Label l) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), l,
                               [](const LabeledPoint& p, Label v) { return p.label < v; });
    if (it == points_.end() || it->label != l) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
  }

  const Point& at(Label l) const {
    auto i = index_of(l);
    if (!i) throw SchemaError("unknown label " + std::to_string(l));
    return points_[*i].coords;
  }

  LabelSet labels() const {
    LabelSet out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.label);
    return out;
  }

  Label max_label() const { return points_.empty() ? 0 : points_.back().label; }

  std::vector<Point> coords_of(const LabelSet& labels) const {
    std::vector<Point> out;
    out.reserve(labels.size());
    for (Label l : labels) out.push_back(at(l));
    return out;
  }

  PointConfiguration subset(const LabelSet& labels) const {
    std::vector<LabeledPoint> lp;
    for (Label l : labels) lp.push_back({l, at(l)});
    return PointConfiguration(dim_, std::move(lp));
  }

  PointConfiguration without(Label l) const {
    std::vector<LabeledPoint> lp;
    for (const auto& p : points_) {
      if (p.label != l) lp.push_back(p);
    }
    return PointConfiguration(dim_, std::move(lp));
  }

  PointConfiguration with_point(Label l, Point p) const {
    std::vector<LabeledPoint> lp = points_;
    lp.push_back({l, std::move(p)});
    return PointConfiguration(dim_, std::move(lp));
  }

  /// Label l becomes map.at(l); the map must be a bijection on the labels.
  PointConfiguration relabeled(const std::map<Label, Label>& map) const {
    std::vector<LabeledPoint> lp;
    lp.reserve(points_.size());
    for (const auto& p : points_) lp.push_back({map.at(p.label), p.coords});
    return PointConfiguration(dim_, std::move(lp));
  }

  friend bool operator==(const PointConfiguration&, const PointConfiguration&) = default;

 private:
  int dim_ = 1;
  std::vector<LabeledPoint> points_;
};

/// Orientation signs of every (d+1)-subset of labels (taken in increasing label order).
struct Chirotope {
  int dim = 0;
  std::size_t n = 0;
  std::map<LabelSet, int> signs;

  friend bool operator==(const Chirotope&, const Chirotope&) = default;
};

inline Chirotope chirotope_of(const PointConfiguration& config) {
  const std::size_t k = static_cast<std::size_t>(config.dim()) + 1;
  if (config.size() < k) throw DegenerateInput("chirotope_of: need at least d+1 points");
  Chirotope chi{config.dim(), config.size(), {}};
  std::vector<Point> pts(k);
  for_each_subset(config.size(), k, [&](const std::vector<std::size_t>& idx) {
    LabelSet s;
    for (std::size_t j = 0; j < k; ++j) {
      s.push_back(config.label(idx[j]));
      pts[j] = config.point(idx[j]);
    }
    chi.signs.emplace(std::move(s), orientation(pts));
    return true;
  });
  return chi;
}

/// No d+1 points on a common hyperplane.
inline bool is_general_position(const PointConfiguration& config) {
  const std::size_t k = static_cast<std::size_t>(config.dim()) + 1;
  std::vector<Point> pts(k);
  return for_each_subset(config.size(), k, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t j = 0; j < k; ++j) pts[j] = config.point(idx[j]);
    return orientation(pts) != 0;
  });
}

/// Appends one coordinate per point: label l gets height heights.at(l).
inline PointConfiguration lifted_by(const PointConfiguration& config, const std::map<Label, Rational>& heights) {
  std::vector<LabeledPoint> lp;
  lp.reserve(config.size());
  for (const auto& p : config.points()) {
    Point q = p.coords;
    q.push_back(heights.at(p.label));
    lp.push_back({p.label, std::move(q)});
  }
  return PointConfiguration(config.dim() + 1, std::move(lp));
}

/// Drops the last coordinate of every point.
inline PointConfiguration projected(const PointConfiguration& config) {
  if (config.dim() < 2) throw DimensionMismatch("cannot project a 1-dimensional configuration");
  std::vector<LabeledPoint> lp;
  lp.reserve(config.size());
  for (const auto& p : config.points()) {
    Point q(p.coords.begin(), p.coords.end() - 1);
    lp.push_back({p.label, std::move(q)});
  }
  return PointConfiguration(config.dim() - 1, std::move(lp));
}

}  // namespace inscribe

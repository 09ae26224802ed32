#pragma once

// Lexicographic liftings and K-liftings.
//
// A lifting appends one height per point. The first d+1 points (in label
// order) sit at height 0; every later point is pushed strictly above (or
// below, per its sign) every hyperplane spanned by d+1 earlier lifted points.
// A K-lifting additionally keeps each point from the (d+3)-rd on outside
// every K-circumball of d+2 earlier lifted points.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "inscribe/combinatorics.hpp"
#include "inscribe/errors.hpp"
#include "inscribe/exact_core.hpp"
#include "inscribe/hull_complex.hpp"
#include "inscribe/kbody_inscribe.hpp"
#include "inscribe/triangulation.hpp"

namespace inscribe {

/// Sign (+1 / -1) per constrained label, i.e. per label at position >= d+2 in label order.
using SignVector = std::map<Label, int>;

struct Lifting {
  PointConfiguration base;
  SignVector signs;
  std::map<Label, Rational> heights;
  PointConfiguration lifted;

  bool positive() const {
    for (const auto& [l, h] : heights) {
      if (h < 0) return false;
    }
    return true;
  }

  friend bool operator==(const Lifting&, const Lifting&) = default;
};

/// How |h_i| is chosen once the required bound is known.
struct HeightPolicy {
  enum class Mode {
    Auto,            // BoundPlusMargin while the subset count is at most 10^6, Doubling beyond
    BoundPlusMargin, // exact bound over all spanned hyperplanes, plus `margin`
    Doubling,        // 1, 2, 4, ... until every hyperplane test passes
  };
  Mode mode = Mode::Auto;
  Rational margin = 1;
};

inline constexpr std::uint64_t kExactBoundSubsetLimit = 1000000;

/// All labels at position >= d+2 get sign +1.
inline SignVector positive_signs(const PointConfiguration& base) {
  SignVector s;
  for (std::size_t i = static_cast<std::size_t>(base.dim()) + 1; i < base.size(); ++i) s[base.label(i)] = 1;
  return s;
}

namespace detail {

/// Height at which the vertical line through `x` meets the hyperplane spanned
/// by d+1 lifted points. The determinant of rows (1, s_j) and (1, x, h) is
/// affine in h, so two evaluations pin down its root.
inline Rational hyperplane_height(const std::vector<Point>& spanning, const Point& x) {
  std::vector<Point> pts = spanning;
  Point q = x;
  q.push_back(0);
  pts.push_back(q);
  const Rational at0 = signed_volume(pts);
  pts.back().back() = 1;
  const Rational at1 = signed_volume(pts);
  if (at1 == at0) throw DegenerateInput("lifting: spanned hyperplane is vertical");
  return -at0 / (at1 - at0);
}

/// +1 when p is strictly above the hyperplane spanned by the lifted points,
/// -1 strictly below, 0 on it. "Above" is read off by comparing with a point
/// straight above one of the spanning points.
inline int vertical_side(const std::vector<Point>& spanning, const Point& p) {
  std::vector<Point> pts = spanning;
  pts.push_back(p);
  const int s = orientation(pts);
  if (s == 0) return 0;
  Point up = spanning.front();
  up.back() += 1;
  pts.back() = up;
  const int ref = orientation(pts);
  if (ref == 0) throw DegenerateInput("lifting: spanned hyperplane is vertical");
  return s == ref ? 1 : -1;
}

/// Does the lifted point at `pos` (with candidate height h) satisfy the
/// hyperplane condition against every (d+1)-subset of earlier points?
inline bool clears_hyperplanes(const std::vector<Point>& lifted_prefix, const Point& candidate, int sign,
                               std::size_t d) {
  std::vector<Point> spanning(d + 1);
  return for_each_subset(lifted_prefix.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t j = 0; j <= d; ++j) spanning[j] = lifted_prefix[idx[j]];
    return vertical_side(spanning, candidate) == sign;
  });
}

/// Is the candidate strictly outside every K-circumball of (d+2)-subsets of earlier points?
inline bool clears_circumballs(const std::vector<Point>& lifted_prefix, const Point& candidate, std::size_t d,
                               const KProjection& proj) {
  std::vector<Point> spanning(d + 2);
  return for_each_subset(lifted_prefix.size(), d + 2, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t j = 0; j < d + 2; ++j) spanning[j] = lifted_prefix[idx[j]];
    if (orientation(spanning) == 0) return true;  // spans no K-sphere
    return k_circumball_side(spanning, candidate, proj) == Side::Outside;
  });
}

inline void check_lift_input(const PointConfiguration& base, const SignVector& signs) {
  const std::size_t d = static_cast<std::size_t>(base.dim());
  if (base.size() < d + 2) throw DegenerateInput("lifting: need at least d+2 points");
  if (!is_general_position(base)) throw DegenerateInput("lifting: base is not in general position");
  for (std::size_t i = d + 1; i < base.size(); ++i) {
    auto it = signs.find(base.label(i));
    if (it == signs.end()) throw SchemaError("lifting: missing sign for label " + std::to_string(base.label(i)));
    if (it->second != 1 && it->second != -1) throw SchemaError("lifting: signs must be +1 or -1");
  }
  if (signs.size() != base.size() - d - 1) throw SchemaError("lifting: signs given for unconstrained labels");
}

inline Point with_height(const Point& p, const Rational& h) {
  Point q = p;
  q.push_back(h);
  return q;
}

inline Lifting assemble(const PointConfiguration& base, const SignVector& signs, std::map<Label, Rational> heights) {
  Lifting l;
  l.base = base;
  l.signs = signs;
  l.lifted = lifted_by(base, heights);
  l.heights = std::move(heights);
  return l;
}

}  // namespace detail

/// Checks the lifting conditions directly with orientation predicates. With a
/// body (dimension d+2) also checks the K-circumball condition.
inline bool verify_lift(const Lifting& l, const std::optional<KBody>& body = std::nullopt) {
  const std::size_t d = static_cast<std::size_t>(l.base.dim());
  const std::size_t n = l.base.size();
  if (n < d + 2 || l.lifted.dim() != l.base.dim() + 1 || l.lifted.size() != n) return false;
  if (l.heights.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Label lab = l.base.label(i);
    auto h = l.heights.find(lab);
    if (h == l.heights.end() || l.lifted.label(i) != lab) return false;
    if (l.lifted.point(i) != detail::with_height(l.base.point(i), h->second)) return false;
  }
  std::optional<KProjection> proj;
  if (body) {
    if (body->dim() != l.base.dim() + 2) return false;
    proj.emplace(*body);
  }
  std::vector<Point> prefix;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = l.lifted.point(i);
    if (i > d) {
      auto s = l.signs.find(l.base.label(i));
      if (s == l.signs.end()) return false;
      if (sgn(l.heights.at(l.base.label(i))) != s->second) return false;
      if (!detail::clears_hyperplanes(prefix, p, s->second, d)) return false;
      if (proj && i > d + 1 && !detail::clears_circumballs(prefix, p, d, *proj)) return false;
    }
    prefix.push_back(p);
  }
  return true;
}

/// Lexicographic lifting with the given signs (positions >= d+2) and height policy.
inline Lifting lex_lift(const PointConfiguration& base, const SignVector& signs, HeightPolicy policy = {}) {
  detail::check_lift_input(base, signs);
  const std::size_t d = static_cast<std::size_t>(base.dim());
  std::map<Label, Rational> heights;
  std::vector<Point> prefix;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Label lab = base.label(i);
    Rational h = 0;
    if (i > d) {
      const int s = signs.at(lab);
      HeightPolicy::Mode mode = policy.mode;
      if (mode == HeightPolicy::Mode::Auto) {
        mode = binomial(i, d + 1) <= kExactBoundSubsetLimit ? HeightPolicy::Mode::BoundPlusMargin
                                                            : HeightPolicy::Mode::Doubling;
      }
      if (mode == HeightPolicy::Mode::BoundPlusMargin) {
        std::optional<Rational> bound;
        std::vector<Point> spanning(d + 1);
        for_each_subset(prefix.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
          for (std::size_t j = 0; j <= d; ++j) spanning[j] = prefix[idx[j]];
          const Rational b = detail::hyperplane_height(spanning, base.point(i));
          if (!bound || (s > 0 ? b > *bound : b < *bound)) bound = b;
          return true;
        });
        Rational edge = bound.value_or(0);
        if (s > 0) {
          if (edge < 0) edge = 0;
          h = edge + policy.margin;
        } else {
          if (edge > 0) edge = 0;
          h = edge - policy.margin;
        }
      } else {
        h = s;
        while (!detail::clears_hyperplanes(prefix, detail::with_height(base.point(i), h), s, d)) h *= 2;
      }
    }
    heights[lab] = h;
    prefix.push_back(detail::with_height(base.point(i), h));
  }
  Lifting l = detail::assemble(base, signs, std::move(heights));
  if (!verify_lift(l)) throw InvariantViolation("lex_lift: produced heights fail the lifting conditions");
  return l;
}

inline Lifting lex_lift(const PointConfiguration& base) { return lex_lift(base, positive_signs(base)); }

/// K-lifting: a lexicographic lifting whose heights are doubled until each
/// point also clears every K-circumball of earlier points. Numeric bodies may
/// throw NumericUndecided.
inline Lifting k_lift(const PointConfiguration& base, const SignVector& signs, const KBody& body,
                      int max_doublings = 4096) {
  detail::check_lift_input(base, signs);
  if (body.dim() != base.dim() + 2) throw DimensionMismatch("k_lift: body dimension must be d+2");
  const KProjection proj(body);
  const std::size_t d = static_cast<std::size_t>(base.dim());
  std::map<Label, Rational> heights;
  std::vector<Point> prefix;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Label lab = base.label(i);
    Rational h = 0;
    if (i > d) {
      const int s = signs.at(lab);
      std::optional<Rational> bound;
      std::vector<Point> spanning(d + 1);
      for_each_subset(prefix.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t j = 0; j <= d; ++j) spanning[j] = prefix[idx[j]];
        const Rational b = detail::hyperplane_height(spanning, base.point(i));
        if (!bound || (s > 0 ? b > *bound : b < *bound)) bound = b;
        return true;
      });
      Rational edge = bound.value_or(0);
      if (s > 0) {
        h = (edge < 0 ? Rational(0) : edge) + 1;
      } else {
        h = (edge > 0 ? Rational(0) : edge) - 1;
      }
      if (i > d + 1) {
        int rounds = 0;
        while (!detail::clears_circumballs(prefix, detail::with_height(base.point(i), h), d, proj)) {
          if (++rounds > max_doublings) throw InvariantViolation("k_lift: height doubling did not terminate");
          h *= 2;
        }
      }
    }
    heights[lab] = h;
    prefix.push_back(detail::with_height(base.point(i), h));
  }
  Lifting l = detail::assemble(base, signs, std::move(heights));
  if (!verify_lift(l, body)) throw InvariantViolation("k_lift: produced heights fail the K-lifting conditions");
  return l;
}

/// Faces of conv(config) that admit a supporting hyperplane with a vertical
/// normal (zero last coordinate). Read off the facet normals: the normal cone
/// of a face is spanned by the normals of the facets containing it, and its
/// relative interior meets the horizontal hyperplane iff those normals have
/// last coordinates of both signs or all vanish.
inline std::set<LabelSet> equatorial_faces(const PointConfiguration& config) {
  require_hull_input(config, "equatorial_faces");
  IncrementalHull hull(config);
  hull.insert_all();
  struct NormalSigns {
    bool up = false;
    bool down = false;
  };
  std::map<LabelSet, NormalSigns> seen;
  for (const auto& f : hull.facets()) {
    Point below = config.at(f.labels.front());
    below.back() -= 1;
    const int s = hull.side(f, below);  // +1: normal points down, -1: up, 0: vertical
    for (std::size_t k = 1; k <= f.labels.size(); ++k) {
      for (auto& face : subsets_of(f.labels, k)) {
        auto& e = seen[face];
        e.down = e.down || s > 0;
        e.up = e.up || s < 0;
      }
    }
  }
  std::set<LabelSet> out;
  for (const auto& [face, e] : seen) {
    if (e.up == e.down) out.insert(face);
  }
  return out;
}

/// Every equatorial face of conv(lifted minus its last point) is visible from the last lifted point.
inline bool equatorial_faces_visible(const Lifting& l) {
  const Label last = l.lifted.max_label();
  const PointConfiguration rest = l.lifted.without(last);
  const FacetSet hull = convex_hull(rest);
  const auto visible = visible_faces(hull, rest, l.lifted.at(last));
  for (const auto& face : equatorial_faces(rest)) {
    if (!visible.count(face)) return false;
  }
  return true;
}

}  // namespace inscribe

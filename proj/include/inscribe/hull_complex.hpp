#pragma once

// Convex hulls of configurations in general position, face queries and the
// combinatorial checks that run on simplicial facet lists.
//
// Faces are label sets. A simplicial polytope is fully described by its
// facets, so FacetSet equality is labeled combinatorial equivalence.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "inscribe/combinatorics.hpp"
#include "inscribe/errors.hpp"
#include "inscribe/exact_core.hpp"

namespace inscribe {

struct FacetSet {
  int dim = 0;
  int n = 0;
  std::vector<LabelSet> facets;  // canonical: each sorted, list sorted, no duplicates

  FacetSet() = default;
  FacetSet(int d, int count, std::vector<LabelSet> f) : dim(d), n(count), facets(std::move(f)) {
    canonicalize(facets);
  }

  LabelSet vertices() const {
    std::set<Label> v;
    for (const auto& f : facets) v.insert(f.begin(), f.end());
    return {v.begin(), v.end()};
  }

  friend bool operator==(const FacetSet&, const FacetSet&) = default;
};

/// A hull facet with the data needed to decide which side a point is on.
struct OrientedFacet {
  LabelSet labels;
  /// Orientation of (facet vertices in label order, interior witness). The
  /// witness itself is held by the owning hull.
  int interior_sign = 0;
};

/// Beneath-beyond convex hull, inserting points in label order. The same
/// engine drives convex_hull, placing_triangulation and lower_envelope.
class IncrementalHull {
 public:
  /// Seeds the hull with the first dim+1 points (they must be affinely independent).
  explicit IncrementalHull(const PointConfiguration& config) : config_(&config) {
    const std::size_t d = static_cast<std::size_t>(config.dim());
    if (config.size() < d + 1) throw DegenerateInput("hull: need at least d+1 points");
    std::vector<Point> seed;
    for (std::size_t i = 0; i <= d; ++i) seed.push_back(config.point(i));
    if (orientation(seed) == 0) throw DegenerateInput("hull: first d+1 points are affinely dependent");

    witness_ = Point(d, Rational(0));
    for (const auto& p : seed) witness_ = witness_ + p;
    for (auto& x : witness_) x /= static_cast<long>(d + 1);

    LabelSet first;
    for (std::size_t i = 0; i <= d; ++i) first.push_back(config.label(i));
    for (std::size_t skip = 0; skip <= d; ++skip) {
      LabelSet f;
      for (std::size_t i = 0; i <= d; ++i) {
        if (i != skip) f.push_back(first[i]);
      }
      add_facet(std::move(f));
    }
    next_ = d + 1;
  }

  bool done() const { return next_ >= config_->size(); }
  std::size_t next_index() const { return next_; }
  const std::vector<OrientedFacet>& facets() const { return facets_; }
  const Point& interior_witness() const { return witness_; }

  /// +1 when p is strictly beyond the facet (facet visible), -1 when strictly
  /// beneath, 0 when p lies on the facet hyperplane.
  int side(const OrientedFacet& f, const Point& p) const {
    std::vector<Point> pts = config_->coords_of(f.labels);
    pts.push_back(p);
    const int s = orientation(pts);
    if (s == 0) return 0;
    return s == f.interior_sign ? -1 : 1;
  }

  /// Facets visible from p. Throws when p lies on some facet hyperplane.
  std::vector<LabelSet> visible_from(const Point& p) const {
    std::vector<LabelSet> out;
    for (const auto& f : facets_) {
      const int s = side(f, p);
      if (s == 0) throw DegenerateInput("hull: point lies on a facet hyperplane");
      if (s > 0) out.push_back(f.labels);
    }
    return out;
  }

  /// Inserts the next point in label order. Returns the facets that were
  /// visible from it (empty when the point is interior and nothing changes).
  std::vector<LabelSet> insert_next() {
    const std::size_t idx = next_++;
    const Label l = config_->label(idx);
    const Point& p = config_->point(idx);
    std::vector<LabelSet> visible = visible_from(p);
    if (visible.empty()) return visible;

    std::map<LabelSet, int> ridge_count;
    for (const auto& f : visible) {
      for (std::size_t skip = 0; skip < f.size(); ++skip) {
        LabelSet r;
        for (std::size_t i = 0; i < f.size(); ++i) {
          if (i != skip) r.push_back(f[i]);
        }
        ++ridge_count[r];
      }
    }
    std::set<LabelSet> gone(visible.begin(), visible.end());
    std::erase_if(facets_, [&](const OrientedFacet& f) { return gone.count(f.labels) > 0; });
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;
      LabelSet f = ridge;
      f.push_back(l);
      std::sort(f.begin(), f.end());
      add_facet(std::move(f));
    }
    return visible;
  }

  void insert_all() {
    while (!done()) insert_next();
  }

  FacetSet facet_set() const {
    std::vector<LabelSet> f;
    f.reserve(facets_.size());
    for (const auto& x : facets_) f.push_back(x.labels);
    return FacetSet(config_->dim(), config_->max_label(), std::move(f));
  }

 private:
  void add_facet(LabelSet labels) {
    std::vector<Point> pts = config_->coords_of(labels);
    pts.push_back(witness_);
    const int s = orientation(pts);
    if (s == 0) throw DegenerateInput("hull: facet hyperplane through the interior witness");
    facets_.push_back({std::move(labels), s});
  }

  const PointConfiguration* config_;
  Point witness_;
  std::vector<OrientedFacet> facets_;
  std::size_t next_ = 0;
};

inline void require_hull_input(const PointConfiguration& config, const char* who) {
  if (config.size() < static_cast<std::size_t>(config.dim()) + 1) {
    throw DegenerateInput(std::string(who) + ": need at least d+1 points");
  }
  if (!is_general_position(config)) {
    throw DegenerateInput(std::string(who) + ": configuration is not in general position");
  }
}

inline FacetSet convex_hull(const PointConfiguration& config) {
  require_hull_input(config, "convex_hull");
  IncrementalHull hull(config);
  hull.insert_all();
  return hull.facet_set();
}

/// Hull of a configuration that need not be in general position, provided the
/// hull is simplicial and the first d+1 points are affinely independent.
/// Throws DegenerateInput as soon as a point lies on the hyperplane of a facet
/// built so far, which covers every non-simplicial hull.
inline FacetSet simplicial_hull(const PointConfiguration& config) {
  if (config.size() < static_cast<std::size_t>(config.dim()) + 1) {
    throw DegenerateInput("simplicial_hull: need at least d+1 points");
  }
  IncrementalHull hull(config);
  hull.insert_all();
  return hull.facet_set();
}

/// Every nonempty subset of every facet.
inline std::set<LabelSet> all_faces(const FacetSet& fs) {
  std::set<LabelSet> faces;
  for (const auto& f : fs.facets) {
    for (std::size_t k = 1; k <= f.size(); ++k) {
      for (auto& s : subsets_of(f, k)) faces.insert(std::move(s));
    }
  }
  return faces;
}

/// All faces of the polytope visible from `viewpoint` (facets included).
inline std::set<LabelSet> visible_faces(const FacetSet& facets, const PointConfiguration& config,
                                        const Point& viewpoint) {
  if (viewpoint.size() != static_cast<std::size_t>(config.dim())) {
    throw DimensionMismatch("visible_faces: viewpoint has wrong dimension");
  }
  const LabelSet verts = facets.vertices();
  if (verts.empty()) return {};
  Point centroid(static_cast<std::size_t>(config.dim()), Rational(0));
  for (Label l : verts) centroid = centroid + config.at(l);
  for (auto& x : centroid) x /= static_cast<long>(verts.size());

  FacetSet visible;
  visible.dim = facets.dim;
  for (const auto& f : facets.facets) {
    std::vector<Point> pts = config.coords_of(f);
    pts.push_back(viewpoint);
    const int s = orientation(pts);
    if (s == 0) throw DegenerateInput("visible_faces: viewpoint lies on a facet hyperplane");
    pts.back() = centroid;
    const int inner = orientation(pts);
    if (s == -inner) visible.facets.push_back(f);
  }
  return all_faces(visible);
}

/// Every k-subset of the vertices lies in some facet.
inline bool is_k_neighborly(const FacetSet& facets, int k) {
  if (k < 0 || k > facets.dim) throw std::invalid_argument("is_k_neighborly: k must lie in [0, d]");
  if (k == 0) return true;
  const LabelSet verts = facets.vertices();
  std::set<LabelSet> faces;
  for (const auto& f : facets.facets) {
    for (auto& s : subsets_of(f, static_cast<std::size_t>(k))) faces.insert(std::move(s));
  }
  return faces.size() == binomial(verts.size(), static_cast<std::uint64_t>(k));
}

/// Facets of the cyclic polytope C(n, d) by Gale's evenness criterion.
inline FacetSet gale_evenness_facets(int n, int d) {
  if (d < 1 || n < d + 1) throw std::invalid_argument("gale_evenness_facets: need n >= d+1 >= 2");
  LabelSet all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  std::vector<LabelSet> facets;
  for (auto& f : subsets_of(all, static_cast<std::size_t>(d))) {
    std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
    for (Label l : f) in[static_cast<std::size_t>(l)] = 1;
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) {
      if (in[static_cast<std::size_t>(i)]) continue;
      for (int j = i + 1; j <= n && ok; ++j) {
        if (in[static_cast<std::size_t>(j)]) continue;
        int between = 0;
        for (int m = i + 1; m < j; ++m) between += in[static_cast<std::size_t>(m)];
        ok = between % 2 == 0;
      }
    }
    if (ok) facets.push_back(std::move(f));
  }
  return FacetSet(d, n, std::move(facets));
}

/// (f_0, ..., f_{d-1}) of a simplicial polytope given by its facets.
inline std::vector<long> f_vector(const FacetSet& facets) {
  std::vector<long> f;
  for (int i = 0; i < facets.dim; ++i) {
    std::set<LabelSet> faces;
    for (const auto& fc : facets.facets) {
      for (auto& s : subsets_of(fc, static_cast<std::size_t>(i + 1))) faces.insert(std::move(s));
    }
    f.push_back(static_cast<long>(faces.size()));
  }
  return f;
}

inline bool same_labeled_type(const FacetSet& a, const FacetSet& b) {
  return a.dim == b.dim && a.facets == b.facets;
}

}  // namespace inscribe

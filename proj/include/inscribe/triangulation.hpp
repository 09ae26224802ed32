#pragma once

// Triangulations of point configurations as label-set complexes: placing
// triangulations, lower envelopes, Euclidean Delaunay, and the checks that
// certify a cell list is a genuine triangulation.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "inscribe/combinatorics.hpp"
#include "inscribe/errors.hpp"
#include "inscribe/exact_core.hpp"
#include "inscribe/hull_complex.hpp"

namespace inscribe {

struct Triangulation {
  int dim = 0;
  int n = 0;
  std::vector<LabelSet> cells;  // canonical, each of size dim+1
  LabelSet unused;              // labels of the configuration not used by any cell

  Triangulation() = default;
  Triangulation(int d, int count, std::vector<LabelSet> c, LabelSet u = {})
      : dim(d), n(count), cells(std::move(c)), unused(std::move(u)) {
    canonicalize(cells);
    std::sort(unused.begin(), unused.end());
  }

  LabelSet used_labels() const {
    std::set<Label> s;
    for (const auto& c : cells) s.insert(c.begin(), c.end());
    return {s.begin(), s.end()};
  }

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.dim == b.dim && a.cells == b.cells;
  }
};

inline bool triangulations_equal(const Triangulation& a, const Triangulation& b) { return a == b; }

namespace detail {

inline LabelSet labels_not_in(const PointConfiguration& config, const std::vector<LabelSet>& cells) {
  std::set<Label> used;
  for (const auto& c : cells) used.insert(c.begin(), c.end());
  LabelSet out;
  for (Label l : config.labels()) {
    if (!used.count(l)) out.push_back(l);
  }
  return out;
}

/// +1 when the facet's outer normal points down (a lower facet), -1 when it
/// points up, 0 when the facet is vertical.
inline int vertical_normal_sign(const IncrementalHull& hull, const OrientedFacet& f,
                                const PointConfiguration& config) {
  Point below = config.at(f.labels.front());
  below.back() -= 1;
  return hull.side(f, below);
}

}  // namespace detail

/// Inserts points in label order; each new point is coned over every hull
/// facet visible from it. Interior points are reported as unused.
inline Triangulation placing_triangulation(const PointConfiguration& config) {
  require_hull_input(config, "placing_triangulation");
  IncrementalHull hull(config);
  const std::size_t d = static_cast<std::size_t>(config.dim());
  std::vector<LabelSet> cells;
  LabelSet first;
  for (std::size_t i = 0; i <= d; ++i) first.push_back(config.label(i));
  cells.push_back(first);
  LabelSet unused;
  while (!hull.done()) {
    const Label l = config.label(hull.next_index());
    auto visible = hull.insert_next();
    if (visible.empty()) unused.push_back(l);
    for (auto& f : visible) {
      f.push_back(l);
      cells.push_back(std::move(f));
    }
  }
  return Triangulation(config.dim(), config.max_label(), std::move(cells), std::move(unused));
}

/// Hull facets whose outer normal has a negative last coordinate, as a
/// triangulation of the configuration with the last coordinate dropped.
inline Triangulation lower_envelope(const PointConfiguration& config) {
  if (config.dim() < 2) throw DimensionMismatch("lower_envelope: need dimension at least 2");
  require_hull_input(config, "lower_envelope");
  IncrementalHull hull(config);
  hull.insert_all();
  std::vector<LabelSet> cells;
  for (const auto& f : hull.facets()) {
    if (detail::vertical_normal_sign(hull, f, config) > 0) cells.push_back(f.labels);
  }
  LabelSet unused = detail::labels_not_in(config, cells);
  return Triangulation(config.dim() - 1, config.max_label(), std::move(cells), std::move(unused));
}

/// Configuration with heights |a|^2 appended.
inline PointConfiguration paraboloid_lift(const PointConfiguration& config) {
  std::map<Label, Rational> h;
  for (const auto& p : config.points()) h[p.label] = squared_norm(p.coords);
  return lifted_by(config, h);
}

/// Euclidean Delaunay triangulation, as the lower envelope of the paraboloid lift.
/// Rejects d+1 points on a hyperplane and d+2 points on a common sphere.
inline Triangulation delaunay_triangulation(const PointConfiguration& config) {
  require_hull_input(config, "delaunay_triangulation");
  const PointConfiguration lifted = paraboloid_lift(config);
  if (config.size() >= static_cast<std::size_t>(config.dim()) + 2 && !is_general_position(lifted)) {
    throw DegenerateInput("delaunay_triangulation: d+2 points lie on a common sphere");
  }
  if (config.size() == static_cast<std::size_t>(config.dim()) + 1) {
    return Triangulation(config.dim(), config.max_label(), {config.labels()});
  }
  return lower_envelope(lifted);
}

/// Definitional Delaunay check: every cell's circumsphere has all other points strictly outside.
inline bool satisfies_empty_sphere(const Triangulation& t, const PointConfiguration& config) {
  for (const auto& cell : t.cells) {
    const auto pts = config.coords_of(cell);
    for (const auto& p : config.points()) {
      if (std::binary_search(cell.begin(), cell.end(), p.label)) continue;
      if (in_sphere(pts, p.coords) != Side::Outside) return false;
    }
  }
  return true;
}

/// Every floor((dim+1)/2)-subset of the used labels lies in some cell.
inline bool is_neighborly_triangulation(const Triangulation& t) {
  const std::size_t k = static_cast<std::size_t>((t.dim + 1) / 2);
  const LabelSet used = t.used_labels();
  std::set<LabelSet> covered;
  for (const auto& c : t.cells) {
    for (auto& s : subsets_of(c, k)) covered.insert(std::move(s));
  }
  return covered.size() == binomial(used.size(), k);
}

struct DualGraph {
  std::vector<LabelSet> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(nodes.size(), 0);
    for (auto [a, b] : edges) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }

  bool connected() const {
    if (nodes.empty()) return true;
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<char> seen(nodes.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == nodes.size();
  }

  /// Connected, acyclic, maximum degree two.
  bool is_path() const {
    if (nodes.empty()) return false;
    if (edges.size() + 1 != nodes.size() || !connected()) return false;
    for (auto deg : degrees()) {
      if (deg > 2) return false;
    }
    return true;
  }
};

/// Cells are nodes; two cells are adjacent when they share dim labels.
inline DualGraph dual_graph(const Triangulation& t) {
  DualGraph g{t.cells, {}};
  std::map<LabelSet, std::vector<std::size_t>> by_ridge;
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    for (auto& r : subsets_of(t.cells[i], static_cast<std::size_t>(t.dim))) by_ridge[r].push_back(i);
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [ridge, cells] : by_ridge) {
    for (std::size_t a = 0; a < cells.size(); ++a) {
      for (std::size_t b = a + 1; b < cells.size(); ++b) edges.insert({cells[a], cells[b]});
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

/// d! times the volume of conv(config), via cones from an interior point over
/// the hull facets. The hull must be simplicial.
inline Rational hull_volume(const PointConfiguration& config) {
  const FacetSet hull = simplicial_hull(config);
  const LabelSet verts = hull.vertices();
  Point c(static_cast<std::size_t>(config.dim()), Rational(0));
  for (Label l : verts) c = c + config.at(l);
  for (auto& x : c) x /= static_cast<long>(verts.size());
  Rational total = 0;
  for (const auto& f : hull.facets) {
    auto pts = config.coords_of(f);
    pts.push_back(c);
    total += abs(signed_volume(pts));
  }
  return total;
}

/// Certifies that `t` triangulates the points it uses: cells are full-dimensional
/// simplices, each ridge lies in at most two cells (on opposite sides), ridges
/// in a single cell lie on the hull boundary, and the cell volumes sum to the
/// hull volume exactly.
inline bool is_triangulation_of(const Triangulation& t, const PointConfiguration& config) {
  if (t.cells.empty()) return false;
  const std::size_t d = static_cast<std::size_t>(config.dim());
  if (t.dim != config.dim()) return false;
  Rational volume = 0;
  std::map<LabelSet, std::vector<std::pair<Label, int>>> ridges;
  for (const auto& cell : t.cells) {
    if (cell.size() != d + 1) return false;
    const auto pts = config.coords_of(cell);
    const Rational v = signed_volume(pts);
    if (v == 0) return false;
    volume += abs(v);
    for (std::size_t skip = 0; skip <= d; ++skip) {
      LabelSet r;
      for (std::size_t i = 0; i <= d; ++i) {
        if (i != skip) r.push_back(cell[i]);
      }
      auto rp = config.coords_of(r);
      rp.push_back(pts[skip]);
      ridges[r].push_back({cell[skip], orientation(rp)});
    }
  }
  const PointConfiguration used = config.subset(t.used_labels());
  FacetSet hull;
  try {
    hull = simplicial_hull(used);
  } catch (const DegenerateInput&) {
    return false;
  }
  const std::set<LabelSet> boundary(hull.facets.begin(), hull.facets.end());
  for (const auto& [r, opposite] : ridges) {
    if (opposite.size() > 2) return false;
    if (opposite.size() == 2 && opposite[0].second == opposite[1].second) return false;
    if (opposite.size() == 1 && !boundary.count(r)) return false;
  }
  return volume == hull_volume(used);
}

}  // namespace inscribe

#pragma once

// Iterated double liftings that build neighborly polytopes two dimensions at
// a time, their inscribed realizations, type counting by enumeration, the
// product lower bound, and a family of inscribed stacked polytopes.
//
// One iteration on a configuration A of m points in R^k:
//   relabel A by sigma (label j becomes sigma(j); this fixes the lift order),
//   B = A + a_{m+1}, B^ = lex_lift(B, signs),
//   C = B^ + a^_{m+2}, A' = positive lex_lift(C),
//   relabel A' by sigma^{-1} (the two new points keep m+1 and m+2).

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "inscribe/combinatorics.hpp"
#include "inscribe/errors.hpp"
#include "inscribe/exact_core.hpp"
#include "inscribe/hull_complex.hpp"
#include "inscribe/kbody_inscribe.hpp"
#include "inscribe/lifting.hpp"
#include "inscribe/triangulation.hpp"

namespace inscribe {

/// Choices for one iteration. Empty sigma means the identity, empty signs
/// means all positive, and missing added points are drawn from the seed.
struct IterationSpec {
  std::vector<Label> sigma;
  /// Signs of the first lift for lift-order labels k+2 .. m+1 (k = current dimension).
  std::vector<int> signs;
  std::optional<Point> added_point;         // in R^k
  std::optional<Point> added_lifted_point;  // in R^{k+1}

  friend bool operator==(const IterationSpec&, const IterationSpec&) = default;
};

struct PipelineSpec {
  int d = 4;
  int n = 6;
  std::uint64_t seed = 1;
  /// n0 = n - 2*floor((d-2)/2) points in dimension d0 = d - 2*floor((d-2)/2).
  /// Missing: rational points on the unit circle / sphere in cyclic order.
  std::optional<PointConfiguration> base;
  /// Either empty (all defaults) or exactly floor((d-2)/2) entries.
  std::vector<IterationSpec> iterations;

  int iteration_count() const { return d >= 2 ? (d - 2) / 2 : 0; }
  int base_dim() const { return d - 2 * iteration_count(); }
  int base_size() const { return n - 2 * iteration_count(); }

  friend bool operator==(const PipelineSpec&, const PipelineSpec&) = default;
};

/// One iteration as carried out, in lift-order labels.
struct Stage {
  std::vector<Label> sigma;  // sigma[j-1] = lift-order label of point j
  Lifting first;             // lex lift of B (base = B)
  Lifting second;            // positive lex lift of C
  friend bool operator==(const Stage&, const Stage&) = default;
};

struct ConstructionCertificate {
  PipelineSpec spec;
  PointConfiguration base;
  std::vector<Stage> stages;
  PointConfiguration final_config;
  FacetSet facets;
  int neighborliness_checked = 0;
  friend bool operator==(const ConstructionCertificate&, const ConstructionCertificate&) = default;
};

// ---------------------------------------------------------------------------
// Default and random inputs.

namespace detail {

/// Seeded integer source; std distributions are avoided so results do not
/// depend on the standard library.
class SeededInts {
 public:
  explicit SeededInts(std::uint64_t seed) : engine_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational rational(std::int64_t max_num, std::int64_t max_den) {
    Rational r(uniform(-max_num, max_num), uniform(1, max_den));
    r.canonicalize();
    return r;
  }
  Point point(int dim, std::int64_t max_num, std::int64_t max_den) {
    Point p;
    for (int i = 0; i < dim; ++i) p.push_back(rational(max_num, max_den));
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::map<Label, Label> permutation_map(const std::vector<Label>& sigma) {
  std::map<Label, Label> m;
  for (std::size_t j = 0; j < sigma.size(); ++j) m[static_cast<Label>(j + 1)] = sigma[j];
  return m;
}

inline bool is_permutation_of_range(const std::vector<Label>& sigma) {
  std::vector<Label> s = sigma;
  std::sort(s.begin(), s.end());
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] != static_cast<Label>(j + 1)) return false;
  }
  return true;
}

}  // namespace detail

/// n points on the unit circle (dim 2) or sphere (dim 3) in convex and general
/// position: inverse stereographic images of t = 1..n on a line (dim 2) or of
/// (t, t^2) on a parabola (dim 3).
inline PointConfiguration default_base(int dim, int n) {
  if (dim != 2 && dim != 3) throw DimensionMismatch("default_base: dimension must be 2 or 3");
  std::vector<Point> pts;
  for (int t = 1; t <= n; ++t) {
    if (dim == 2) pts.push_back(inverse_stereo(Point{Rational(t)}));
    else pts.push_back(inverse_stereo(Point{Rational(t), Rational(t * t)}));
  }
  return PointConfiguration::from_points(dim, pts);
}

/// n random rational points on the unit circle or sphere, in general position.
inline PointConfiguration random_base(int dim, int n, std::uint64_t seed) {
  if (dim != 2 && dim != 3) throw DimensionMismatch("random_base: dimension must be 2 or 3");
  detail::SeededInts rng(detail::mix_seed(seed, 0xba5e));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Point> pts;
    std::set<Point> seen;
    while (pts.size() < static_cast<std::size_t>(n)) {
      Point a = rng.point(dim - 1, 12, 5);
      if (seen.insert(a).second) pts.push_back(inverse_stereo(a));
    }
    auto c = PointConfiguration::from_points(dim, pts);
    if (is_general_position(c)) return c;
  }
  throw DegenerateInput("random_base: could not draw a generic configuration");
}

/// Seeded random spec: random base on the circle/sphere, random permutations and signs.
inline PipelineSpec random_spec(int d, int n, std::uint64_t seed) {
  PipelineSpec s;
  s.d = d;
  s.n = n;
  s.seed = seed;
  s.base = random_base(s.base_dim(), s.base_size(), seed);
  detail::SeededInts rng(detail::mix_seed(seed, 0x5eed));
  int m = s.base_size();
  int k = s.base_dim();
  for (int i = 0; i < s.iteration_count(); ++i) {
    IterationSpec it;
    it.sigma.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) it.sigma[static_cast<std::size_t>(j)] = j + 1;
    for (int j = m - 1; j > 0; --j) std::swap(it.sigma[static_cast<std::size_t>(j)], it.sigma[static_cast<std::size_t>(rng.uniform(0, j))]);
    for (int l = k + 2; l <= m + 1; ++l) it.signs.push_back(rng.uniform(0, 1) ? 1 : -1);
    s.iterations.push_back(std::move(it));
    m += 2;
    k += 2;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Construction.

namespace detail {

inline void validate_spec(const PipelineSpec& spec, const PointConfiguration& base) {
  if (spec.d < 2) throw SchemaError("pipeline: d must be at least 2");
  if (spec.n < spec.d + 1) throw SchemaError("pipeline: need n >= d+1");
  if (spec.iteration_count() > 0 && spec.n < spec.d + 2) throw SchemaError("pipeline: need n >= d+2 when lifting");
  if (base.dim() != spec.base_dim()) throw DimensionMismatch("pipeline: base has the wrong dimension");
  if (base.size() != static_cast<std::size_t>(spec.base_size())) throw SchemaError("pipeline: base has the wrong number of points");
  LabelSet expected(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) expected[i] = static_cast<Label>(i + 1);
  if (base.labels() != expected) throw SchemaError("pipeline: base labels must be 1..n0");
  if (!is_general_position(base)) throw DegenerateInput("pipeline: base is not in general position");
  if (convex_hull(base).vertices() != expected) throw DegenerateInput("pipeline: base is not in convex position");
  if (!spec.iterations.empty() && spec.iterations.size() != static_cast<std::size_t>(spec.iteration_count())) {
    throw SchemaError("pipeline: expected " + std::to_string(spec.iteration_count()) + " iterations");
  }
}

/// Appends the given point, or a seeded random one, checking general position.
inline PointConfiguration append_generic(const PointConfiguration& c, Label label, const std::optional<Point>& given,
                                         std::uint64_t seed, const char* what) {
  if (given) {
    if (given->size() != static_cast<std::size_t>(c.dim())) {
      throw DimensionMismatch(std::string("pipeline: ") + what + " has the wrong dimension");
    }
    PointConfiguration out = c.with_point(label, *given);
    if (!is_general_position(out)) throw DegenerateInput(std::string("pipeline: ") + what + " is not generic");
    return out;
  }
  SeededInts rng(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    PointConfiguration out = c.with_point(label, rng.point(c.dim(), 16, 7));
    if (is_general_position(out)) return out;
  }
  throw DegenerateInput(std::string("pipeline: could not draw a generic ") + what);
}

inline std::vector<Label> resolved_sigma(const IterationSpec& it, int m) {
  if (it.sigma.empty()) {
    std::vector<Label> id(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) id[static_cast<std::size_t>(j)] = j + 1;
    return id;
  }
  if (it.sigma.size() != static_cast<std::size_t>(m) || !is_permutation_of_range(it.sigma)) {
    throw SchemaError("pipeline: sigma must be a permutation of 1.." + std::to_string(m));
  }
  return it.sigma;
}

inline SignVector resolved_signs(const IterationSpec& it, int k, int m) {
  SignVector s;
  const int count = m + 1 - (k + 1);
  if (!it.signs.empty() && it.signs.size() != static_cast<std::size_t>(count)) {
    throw SchemaError("pipeline: expected " + std::to_string(count) + " signs");
  }
  for (int i = 0; i < count; ++i) {
    const int v = it.signs.empty() ? 1 : it.signs[static_cast<std::size_t>(i)];
    if (v != 1 && v != -1) throw SchemaError("pipeline: signs must be +1 or -1");
    s[k + 2 + i] = v;
  }
  return s;
}

}  // namespace detail

/// Runs the iterations and checks the result: exact hull, exactly n vertices,
/// floor(d/2)-neighborly. A failed check is an InvariantViolation.
inline ConstructionCertificate construct_neighborly(const PipelineSpec& spec) {
  ConstructionCertificate cert;
  cert.spec = spec;
  cert.base = spec.base ? *spec.base : default_base(spec.base_dim(), spec.base_size());
  detail::validate_spec(spec, cert.base);

  PointConfiguration a = cert.base;
  for (int i = 0; i < spec.iteration_count(); ++i) {
    const IterationSpec it = spec.iterations.empty() ? IterationSpec{} : spec.iterations[static_cast<std::size_t>(i)];
    const int m = static_cast<int>(a.size());
    const int k = a.dim();
    Stage st;
    st.sigma = detail::resolved_sigma(it, m);
    const SignVector signs = detail::resolved_signs(it, k, m);

    const PointConfiguration relabeled = a.relabeled(detail::permutation_map(st.sigma));
    const PointConfiguration b = detail::append_generic(relabeled, m + 1, it.added_point,
                                                        detail::mix_seed(spec.seed, 2 * static_cast<std::uint64_t>(i)), "added point");
    st.first = lex_lift(b, signs);
    const PointConfiguration c =
        detail::append_generic(st.first.lifted, m + 2, it.added_lifted_point,
                               detail::mix_seed(spec.seed, 2 * static_cast<std::uint64_t>(i) + 1), "added lifted point");
    st.second = lex_lift(c, positive_signs(c));

    std::map<Label, Label> back;
    for (int j = 0; j < m; ++j) back[st.sigma[static_cast<std::size_t>(j)]] = j + 1;
    back[m + 1] = m + 1;
    back[m + 2] = m + 2;
    a = st.second.lifted.relabeled(back);
    cert.stages.push_back(std::move(st));
  }

  cert.final_config = a;
  cert.facets = convex_hull(a);
  if (cert.facets.vertices() != a.labels()) throw InvariantViolation("construct_neighborly: some point is not a vertex");
  cert.neighborliness_checked = spec.d / 2;
  if (!is_k_neighborly(cert.facets, cert.neighborliness_checked)) {
    throw InvariantViolation("construct_neighborly: result is not neighborly");
  }
  return cert;
}

/// The final iteration's first lift redone as a K-lifting for the unit ball,
/// with the same configuration, order and signs.
inline Lifting k_lifted_stage(const ConstructionCertificate& cert) {
  if (cert.stages.empty()) throw DegenerateInput("k_lifted_stage: construction has no lifting stage");
  const Lifting& first = cert.stages.back().first;
  return k_lift(first.base, first.signs, KBody::unit_ball(first.base.dim() + 2));
}

namespace detail {

/// Cyclic vertex order of a polygon from its edge list, starting at the smallest label.
inline std::vector<Label> polygon_cycle(const FacetSet& edges) {
  std::map<Label, std::vector<Label>> adj;
  for (const auto& e : edges.facets) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::vector<Label> cycle{adj.begin()->first};
  Label prev = 0;
  while (cycle.size() < adj.size()) {
    const auto& nb = adj[cycle.back()];
    const Label next = nb[0] != prev ? nb[0] : nb[1];
    prev = cycle.back();
    cycle.push_back(next);
  }
  return cycle;
}

}  // namespace detail

/// Inscribed realization of the certificate's polytope in the unit sphere.
/// With lifting stages: brown_polytope of the K-lifted last stage, the pole
/// taking the last label, then labels mapped back. Without stages (d = 2, 3):
/// the base itself when it lies on the sphere; a polygon is otherwise placed
/// on the circle in its cyclic order.
inline InscribedRealization inscribed_realization(const ConstructionCertificate& cert) {
  InscribedRealization r;
  if (cert.stages.empty()) {
    const PointConfiguration& base = cert.final_config;
    bool on_sphere = true;
    for (const auto& p : base.points()) on_sphere = on_sphere && squared_norm(p.coords) == 1;
    if (on_sphere) {
      r.vertices = base;
      r.body = KBody::unit_ball(base.dim());
    } else if (base.dim() == 2) {
      // Brown polygon of points 1..n-1 on a line: the last label in cyclic order becomes the pole.
      std::vector<Label> cycle = detail::polygon_cycle(cert.facets);
      std::rotate(cycle.begin(), std::find(cycle.begin(), cycle.end(), base.max_label()) + 1, cycle.end());
      std::vector<LabeledPoint> pts;
      for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
        pts.push_back({cycle[i], inverse_stereo(Point{Rational(static_cast<long>(i))})});
      }
      pts.push_back({cycle.back(), north_pole(2)});
      r.vertices = PointConfiguration(2, std::move(pts));
      r.body = KBody::unit_ball(2);
      r.pole_label = cycle.back();
    } else {
      throw DegenerateInput("inscribed_realization: a 3-dimensional base must already lie on the unit sphere");
    }
    r.facets = convex_hull(r.vertices);
  } else {
    const Stage& last = cert.stages.back();
    const Lifting k = k_lifted_stage(cert);
    const Label pole = static_cast<Label>(k.base.size()) + 1;
    const InscribedRealization b = brown_polytope(k.lifted, pole);
    const int m = static_cast<int>(last.sigma.size());
    std::map<Label, Label> back;
    for (int j = 0; j < m; ++j) back[last.sigma[static_cast<std::size_t>(j)]] = j + 1;
    back[m + 1] = m + 1;
    back[m + 2] = m + 2;
    r.vertices = b.vertices.relabeled(back);
    r.body = b.body;
    r.facets = convex_hull(r.vertices);
    r.pole_label = pole;
  }
  if (!verify_inscribed(r, cert.facets)) {
    throw InvariantViolation("inscribed_realization: realized facets differ from the certificate");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Counting.

/// prod_{i=1}^{d/2} (n-d-1+2i)! / (2i)!, exactly.
inline Integer lower_bound(int n, int d) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("lower_bound: d must be even and at least 2");
  if (n <= d + 1) throw std::invalid_argument("lower_bound: need n > d+1");
  Integer out = 1;
  for (int i = 1; i <= d / 2; ++i) {
    Integer num, den;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(n - d - 1 + 2 * i));
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(2 * i));
    out *= num;
    out /= den;  // exact: each factor (n-d-1+2i)!/(2i)! is an integer since n-d-1 >= 1
  }
  return out;
}

/// ((n-1)/e^{3/2})^{d(n-d-1)/2} as a double, for display.
inline double closed_form_floor(int n, int d) {
  return std::pow((n - 1) / std::exp(1.5), d * (n - d - 1) / 2.0);
}

/// An integer that is at least ceil(((n-1)/e^{3/2})^{d(n-d-1)/2}), computed
/// with MPFR rounding away from the true value at every step.
inline Integer closed_form_ceiling_upper(int n, int d) {
  if (d < 2 || d % 2 != 0 || n <= d + 1) throw std::invalid_argument("closed_form_ceiling_upper: invalid n, d");
  const unsigned long exponent = static_cast<unsigned long>(d) * static_cast<unsigned long>(n - d - 1) / 2;
  mpfr_t e, q, p;
  mpfr_inits2(256, e, q, p, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(e, 3, MPFR_RNDD);
  mpfr_div_ui(e, e, 2, MPFR_RNDD);  // exact
  mpfr_exp(e, e, MPFR_RNDD);        // e^{3/2}, rounded down
  mpfr_ui_div(q, static_cast<unsigned long>(n - 1), e, MPFR_RNDU);
  mpfr_pow_ui(p, q, exponent, MPFR_RNDU);
  mpfr_ceil(p, p);
  Integer out;
  mpfr_get_z(out.get_mpz_t(), p, MPFR_RNDU);
  mpfr_clears(e, q, p, static_cast<mpfr_ptr>(nullptr));
  return out;
}

struct CountResult {
  std::size_t count = 0;
  /// One witness per type: index into the enumeration (lowest index wins) and the type.
  std::vector<std::pair<std::size_t, FacetSet>> witnesses;
  /// Specs that failed, with the error message.
  std::vector<std::pair<std::size_t, std::string>> errors;
};

/// Constructs every spec and counts distinct labeled types. Specs are spread
/// over `jobs` threads; the result does not depend on scheduling.
inline CountResult count_labeled_types(const std::vector<PipelineSpec>& specs, unsigned jobs = 1) {
  std::vector<std::optional<FacetSet>> types(specs.size());
  std::vector<std::string> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        types[i] = construct_neighborly(specs[i]).facets;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, specs.size()))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CountResult out;
  std::set<std::vector<LabelSet>> seen;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!types[i]) {
      out.errors.push_back({i, errors[i]});
      continue;
    }
    if (seen.insert(types[i]->facets).second) out.witnesses.push_back({i, *types[i]});
  }
  out.count = out.witnesses.size();
  return out;
}

/// Maximum enumeration size, from INSCRIBE_ENUM_CAP (default 100000).
inline std::size_t enumeration_cap() {
  if (const char* v = std::getenv("INSCRIBE_ENUM_CAP")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0') return static_cast<std::size_t>(cap);
  }
  return 100000;
}

/// Specs varying one permutation over `perms`: the base labels when there are
/// no iterations, otherwise sigma of the last iteration (earlier ones identity).
/// `sign_vectors` lists the first-lift signs of the last iteration; empty means all positive.
inline std::vector<PipelineSpec> relabeling_enumeration(const PipelineSpec& proto, const std::vector<std::vector<Label>>& perms,
                                                        const std::vector<std::vector<int>>& sign_vectors = {}) {
  const PointConfiguration base = proto.base ? *proto.base : default_base(proto.base_dim(), proto.base_size());
  const std::vector<std::vector<int>> signs = sign_vectors.empty() ? std::vector<std::vector<int>>{{}} : sign_vectors;
  std::vector<PipelineSpec> out;
  for (const auto& perm : perms) {
    for (const auto& sv : signs) {
      PipelineSpec s = proto;
      if (proto.iteration_count() == 0) {
        s.base = base.relabeled(detail::permutation_map(perm));
      } else {
        s.base = base;
        if (s.iterations.empty()) s.iterations.resize(static_cast<std::size_t>(proto.iteration_count()));
        s.iterations.back().sigma = perm;
        s.iterations.back().signs = sv;
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stacked family.

struct StackedResult {
  PointConfiguration config;
  InscribedRealization realization;
  Triangulation stacking;  // the stacked triangulation of the realization
};

/// Triangulation of a stacked polytope without interior faces of low
/// dimension, found by repeatedly cutting off a vertex of degree D (D = dim).
/// Returns nullopt when the facets are not those of a stacked polytope.
inline std::optional<Triangulation> stacking_triangulation(const FacetSet& fs) {
  const std::size_t D = static_cast<std::size_t>(fs.dim);
  std::set<LabelSet> facets(fs.facets.begin(), fs.facets.end());
  std::vector<LabelSet> cells;
  while (true) {
    std::map<Label, std::vector<LabelSet>> star;
    for (const auto& f : facets) {
      for (Label l : f) star[l].push_back(f);
    }
    if (star.size() == D + 1) {
      if (facets.size() != D + 1) return std::nullopt;
      LabelSet cell;
      for (const auto& [l, s] : star) cell.push_back(l);
      cells.push_back(cell);
      break;
    }
    bool cut = false;
    for (const auto& [v, s] : star) {
      if (s.size() != D) continue;
      std::set<Label> link;
      for (const auto& f : s) {
        for (Label l : f) {
          if (l != v) link.insert(l);
        }
      }
      if (link.size() != D) continue;
      LabelSet base(link.begin(), link.end());
      if (facets.count(base)) continue;  // would leave a doubled facet
      for (const auto& f : s) facets.erase(f);
      facets.insert(base);
      base.push_back(v);
      std::sort(base.begin(), base.end());
      cells.push_back(base);
      cut = true;
      break;
    }
    if (!cut) return std::nullopt;
  }
  return Triangulation(fs.dim, fs.n, std::move(cells));
}

/// {e_1, ..., e_{d-1}, -sum e_i, a_1 e_d, ..., a_m e_d} with a_1 = 1 and each
/// a_k doubled from 2 a_{k-1} until the prefix gives a stacked inscribed
/// polytope with d k + 2 facets whose stacked triangulation has a path as dual graph.
inline StackedResult stacked_universal(int d, int m, int max_doublings = 256) {
  if (d < 2 || m < 1) throw std::invalid_argument("stacked_universal: need d >= 2 and m >= 1");
  std::vector<Point> pts;
  for (int i = 0; i < d - 1; ++i) {
    Point e(static_cast<std::size_t>(d), Rational(0));
    e[static_cast<std::size_t>(i)] = 1;
    pts.push_back(e);
  }
  Point s(static_cast<std::size_t>(d), Rational(0));
  for (int i = 0; i < d - 1; ++i) s[static_cast<std::size_t>(i)] = -1;
  pts.push_back(s);

  auto attempt = [&](const std::vector<Point>& p, int k) -> std::optional<StackedResult> {
    const auto c = PointConfiguration::from_points(d, p);
    InscribedRealization r;
    try {
      r = brown_polytope(c);
    } catch (const DegenerateInput&) {
      return std::nullopt;
    }
    if (r.facets.facets.size() != static_cast<std::size_t>(d * k + 2)) return std::nullopt;
    auto t = stacking_triangulation(r.facets);
    if (!t || !dual_graph(*t).is_path()) return std::nullopt;
    return StackedResult{c, std::move(r), std::move(*t)};
  };

  Rational a = 1;
  std::optional<StackedResult> result;
  for (int k = 1; k <= m; ++k) {
    if (k > 1) a *= 2;
    int rounds = 0;
    while (true) {
      Point q(static_cast<std::size_t>(d), Rational(0));
      q.back() = a;
      std::vector<Point> trial = pts;
      trial.push_back(q);
      result = attempt(trial, k);
      if (result) {
        pts = std::move(trial);
        break;
      }
      if (++rounds > max_doublings) throw InvariantViolation("stacked_universal: doubling did not terminate");
      a *= 2;
    }
  }
  return std::move(*result);
}

}  // namespace inscribe

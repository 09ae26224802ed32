#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <numeric>

#include "inscribe/pipeline.hpp"
#include "test_support.hpp"

using namespace inscribe;
using inscribe::testing::pt;

namespace {

PipelineSpec spec(int d, int n) {
  PipelineSpec s;
  s.d = d;
  s.n = n;
  return s;
}

std::vector<std::vector<Label>> all_permutations(int m) {
  std::vector<Label> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<Label>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Labeled pentagons counted directly: cyclic orders of 1..5 up to rotation and reflection.
std::size_t labeled_polygons(int n) {
  std::set<std::vector<LabelSet>> types;
  for (const auto& p : all_permutations(n)) {
    std::vector<LabelSet> edges;
    for (int i = 0; i < n; ++i) {
      LabelSet e{p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>((i + 1) % n)]};
      std::sort(e.begin(), e.end());
      edges.push_back(e);
    }
    canonicalize(edges);
    types.insert(edges);
  }
  return types.size();
}

}  // namespace

TEST(DefaultBase, OnSphereAndCyclic) {
  for (int n = 4; n <= 8; ++n) {
    for (int dim : {2, 3}) {
      const auto b = default_base(dim, n);
      for (const auto& p : b.points()) EXPECT_EQ(squared_norm(p.coords), 1);
      EXPECT_TRUE(same_labeled_type(convex_hull(b), gale_evenness_facets(n, dim)));
    }
  }
}

TEST(Construct, ZeroIterationsReturnsTheBase) {
  const auto c = construct_neighborly(spec(2, 5));
  EXPECT_TRUE(c.stages.empty());
  EXPECT_EQ(c.facets, gale_evenness_facets(5, 2));
  EXPECT_EQ(c.final_config, default_base(2, 5));
}

TEST(Construct, IdentityPositiveGivesCyclicPolytopes) {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{4, 6}, {4, 7}, {4, 9}, {5, 8}, {6, 9}}) {
    const auto c = construct_neighborly(spec(d, n));
    EXPECT_EQ(c.facets, gale_evenness_facets(n, d)) << d << " " << n;
  }
}

TEST(Construct, TranspositionOnSquare) {
  PipelineSpec s = spec(4, 6);
  s.iterations.push_back({{1, 3, 2, 4}, {}, {}, {}});
  const auto c = construct_neighborly(s);
  EXPECT_EQ(c.final_config.size(), 6u);
  EXPECT_TRUE(is_k_neighborly(c.facets, 2));
  EXPECT_EQ(c.stages.size(), 1u);
  EXPECT_EQ(c.stages[0].sigma, (std::vector<Label>{1, 3, 2, 4}));
}

TEST(Construct, RejectsBadSpecs) {
  PipelineSpec s = spec(4, 7);
  s.iterations.push_back({{1, 1, 2, 3, 4}, {}, {}, {}});
  EXPECT_THROW(construct_neighborly(s), SchemaError);
  s.iterations[0].sigma = {};
  s.iterations[0].signs = {1, 1};
  EXPECT_THROW(construct_neighborly(s), SchemaError);
  s.iterations[0].signs = {};
  s.iterations[0].added_point = pt({0, 0, 0});
  EXPECT_THROW(construct_neighborly(s), DimensionMismatch);
  PipelineSpec t = spec(4, 7);
  t.base = PointConfiguration::from_points(2, {pt({0, 0}), pt({4, 0}), pt({4, 4}), pt({0, 4}), pt({1, 2})});
  EXPECT_THROW(construct_neighborly(t), DegenerateInput);  // interior base point
  PipelineSpec u = spec(4, 5);
  EXPECT_THROW(construct_neighborly(u), SchemaError);
}

TEST(Construct, GivenAddedPointsAreUsed) {
  PipelineSpec s = spec(4, 7);
  s.iterations.push_back({{}, {}, Point{Rational(7, 3), Rational(-11, 5)}, {}});
  const auto c = construct_neighborly(s);
  EXPECT_EQ(c.stages[0].first.base.at(6), (Point{Rational(7, 3), Rational(-11, 5)}));
  EXPECT_EQ(c.facets, gale_evenness_facets(7, 4));
}

TEST(Construct, RandomSpecsAreNeighborlyWithCyclicFVector) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int d = seed % 2 ? 4 : 6;
    const int n = d + 3 + static_cast<int>(seed % 2);
    const auto c = construct_neighborly(random_spec(d, n, seed));
    EXPECT_TRUE(is_k_neighborly(c.facets, d / 2));
    EXPECT_EQ(f_vector(c.facets), f_vector(gale_evenness_facets(n, d)));
    EXPECT_EQ(c.final_config.labels().size(), static_cast<std::size_t>(n));
  }
}

TEST(Construct, Deterministic) {
  EXPECT_EQ(construct_neighborly(random_spec(6, 10, 42)), construct_neighborly(random_spec(6, 10, 42)));
  EXPECT_EQ(random_spec(4, 8, 3), random_spec(4, 8, 3));
  EXPECT_NE(random_spec(4, 8, 3), random_spec(4, 8, 4));
}

TEST(Inscribed, CyclicOnTheSphere) {
  const auto c = construct_neighborly(spec(4, 7));
  const auto r = inscribed_realization(c);
  EXPECT_EQ(r.vertices.size(), 7u);
  for (const auto& p : r.vertices.points()) EXPECT_EQ(squared_norm(p.coords), 1);
  EXPECT_EQ(r.facets, gale_evenness_facets(7, 4));
  EXPECT_EQ(r.pole_label, 7);
}

TEST(Inscribed, RandomSpecs) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const int d = seed % 2 ? 4 : 6;
    const auto c = construct_neighborly(random_spec(d, d + 3, seed));
    const auto r = inscribed_realization(c);
    EXPECT_TRUE(verify_inscribed(r, c.facets));
  }
}

TEST(Inscribed, LowDimensions) {
  // A pentagon off the circle still gets an inscribed realization.
  PipelineSpec s = spec(2, 5);
  s.base = inscribe::testing::moment_curve(5, 2);
  const auto c = construct_neighborly(s);
  const auto r = inscribed_realization(c);
  EXPECT_EQ(r.facets, c.facets);
  for (const auto& p : r.vertices.points()) EXPECT_EQ(squared_norm(p.coords), 1);

  const auto c3 = construct_neighborly(spec(3, 6));
  EXPECT_EQ(inscribed_realization(c3).facets, gale_evenness_facets(6, 3));
  PipelineSpec off = spec(3, 6);
  off.base = inscribe::testing::moment_curve(6, 3);
  EXPECT_THROW(inscribed_realization(construct_neighborly(off)), DegenerateInput);
}

TEST(Inscribed, DelaunayOfKLiftedStageIsNeighborly) {
  for (std::uint64_t seed = 7; seed < 11; ++seed) {
    const int d = seed % 2 ? 4 : 6;
    const auto c = construct_neighborly(random_spec(d, d + 3, seed));
    const Lifting k = k_lifted_stage(c);
    const auto t = k_delaunay(k.lifted, KProjection(KBody::unit_ball(k.lifted.dim() + 1)));
    EXPECT_TRUE(is_neighborly_triangulation(t.triangulation));
    EXPECT_EQ(t.triangulation, placing_triangulation(k.lifted));
  }
}

TEST(LowerBound, Values) {
  EXPECT_EQ(lower_bound(5, 2), 12);
  EXPECT_EQ(lower_bound(6, 4), 15);
  EXPECT_EQ(lower_bound(8, 4), 12600);
  EXPECT_THROW(lower_bound(5, 3), std::invalid_argument);
  EXPECT_THROW(lower_bound(5, 4), std::invalid_argument);
}

TEST(LowerBound, DominatesClosedForm) {
  for (int d = 4; d <= 38; d += 2) {
    for (int n = d + 2; n <= 40; ++n) {
      EXPECT_GE(lower_bound(n, d), closed_form_ceiling_upper(n, d)) << n << " " << d;
    }
  }
  // The upper estimate agrees with the double evaluation to rounding.
  EXPECT_GE(closed_form_ceiling_upper(20, 6).get_d(), closed_form_floor(20, 6) * (1 - 1e-12));
}

TEST(Count, PentagonRelabelings) {
  EXPECT_EQ(labeled_polygons(5), 12u);
  const auto specs = relabeling_enumeration(spec(2, 5), all_permutations(5));
  EXPECT_EQ(specs.size(), 120u);
  const CountResult r = count_labeled_types(specs, 3);
  EXPECT_EQ(r.count, 12u);
  EXPECT_TRUE(r.errors.empty());
  EXPECT_EQ(r.witnesses.front().first, 0u);
  EXPECT_EQ(count_labeled_types({spec(4, 7)}).count, 1u);
}

TEST(Count, SquareBaseAllSigma) {
  const auto specs = relabeling_enumeration(spec(4, 6), all_permutations(4));
  const CountResult a = count_labeled_types(specs, 1);
  const CountResult b = count_labeled_types(specs, 4);
  EXPECT_EQ(a.count, b.count);
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    EXPECT_EQ(a.witnesses[i].first, b.witnesses[i].first);
    EXPECT_EQ(a.witnesses[i].second, b.witnesses[i].second);
  }
  // The first three lifted points all sit at height zero, so only the label
  // lifted fourth can influence the result.
  std::map<Label, FacetSet> by_last;
  for (const auto& s : specs) {
    const auto& sigma = s.iterations.back().sigma;
    const Label last = static_cast<Label>(std::find(sigma.begin(), sigma.end(), 4) - sigma.begin()) + 1;
    const FacetSet f = construct_neighborly(s).facets;
    auto [it, fresh] = by_last.emplace(last, f);
    if (!fresh) {
      EXPECT_EQ(it->second, f);
    }
  }
  EXPECT_LE(a.count, by_last.size());
  EXPECT_GE(a.count, 2u);
}

TEST(Count, RelabelingsAloneGiveTwoPerOrderOfTheLastPoints) {
  // Over sigma alone, m base points in the plane give 2 * m! / 4! types.
  EXPECT_EQ(count_labeled_types(relabeling_enumeration(spec(4, 6), all_permutations(4)), 2).count, 2u);
  EXPECT_EQ(count_labeled_types(relabeling_enumeration(spec(4, 7), all_permutations(5)), 2).count, 10u);
}

TEST(Count, ErrorsAreCollected) {
  PipelineSpec bad = spec(4, 7);
  bad.iterations.push_back({{1, 2}, {}, {}, {}});
  const CountResult r = count_labeled_types({spec(4, 7), bad}, 2);
  EXPECT_EQ(r.count, 1u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].first, 1u);
}

TEST(Stacked, Family) {
  for (auto [d, m] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 4}, {3, 3}}) {
    const StackedResult s = stacked_universal(d, m);
    EXPECT_EQ(s.realization.facets.facets.size(), static_cast<std::size_t>(d * m + 2));
    for (const auto& p : s.realization.vertices.points()) EXPECT_EQ(squared_norm(p.coords), 1);
    EXPECT_TRUE(dual_graph(s.stacking).is_path());
    EXPECT_EQ(s.stacking.cells.size(), static_cast<std::size_t>(m));
    EXPECT_TRUE(is_triangulation_of(s.stacking, s.realization.vertices));
  }
}

TEST(Stacked, TriangulationOfNonStackedIsRejected) {
  // The octahedron is simplicial but not stacked.
  const FacetSet oct(3, 6, {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 2, 5}, {2, 3, 6}, {3, 4, 6}, {4, 5, 6}, {2, 5, 6}});
  EXPECT_FALSE(stacking_triangulation(oct).has_value());
}

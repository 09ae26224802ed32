#include <gtest/gtest.h>

#include "inscribe/exact_core.hpp"
#include "inscribe/rational.hpp"
#include "test_support.hpp"

using namespace inscribe;
using inscribe::testing::pt;
using inscribe::testing::Rng;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(parse_rational("10/5")), "2");
  EXPECT_EQ(to_string(Rational(-1, 3)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), SchemaError);
  EXPECT_THROW(parse_rational("1.5"), SchemaError);
  EXPECT_THROW(parse_rational(""), SchemaError);
  EXPECT_THROW(parse_rational("1/-2"), SchemaError);
}

TEST(Rational, Decimal) {
  EXPECT_EQ(to_decimal(Rational(1, 3), 4), "0.3333");
  EXPECT_EQ(to_decimal(Rational(2, 3), 2), "0.67");
  EXPECT_EQ(to_decimal(Rational(-1, 8), 2), "-0.13");
  EXPECT_EQ(to_decimal(Rational(5), 0), "5");
}

TEST(Determinant, MatchesLaplaceOnRandomMatrices) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng.uniform(1, 5));
    Matrix m;
    for (int i = 0; i < n; ++i) m.push_back(rng.point(n, 9, 5));
    if (trial % 7 == 0 && n > 1) m[1] = m[0];
    EXPECT_EQ(determinant(m), inscribe::testing::laplace_det(m));
  }
}

TEST(Orientation, SmallExamples) {
  EXPECT_EQ(orientation({pt({0, 0}), pt({1, 0}), pt({0, 1})}), 1);
  EXPECT_EQ(orientation({pt({0, 0}), pt({0, 1}), pt({1, 0})}), -1);
  EXPECT_EQ(orientation({pt({0, 0}), pt({1, 1}), pt({2, 2})}), 0);
  EXPECT_EQ(orientation({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})}), 1);
  EXPECT_EQ(orientation({pt({0}), pt({3})}), 1);
  EXPECT_THROW(orientation({pt({0, 0}), pt({1, 0})}), DimensionMismatch);
}

TEST(Orientation, AntisymmetricUnderSwap) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = static_cast<int>(rng.uniform(1, 4));
    std::vector<Point> pts;
    for (int i = 0; i <= d; ++i) pts.push_back(rng.point(d));
    const int s = orientation(pts);
    const auto i = static_cast<std::size_t>(rng.uniform(0, d));
    const auto j = (i + 1) % pts.size();
    std::swap(pts[i], pts[j]);
    EXPECT_EQ(orientation(pts), -s);
  }
}

TEST(InSphere, UnitCircleExamples) {
  std::vector<Point> tri{pt({1, 0}), pt({0, 1}), pt({-1, 0})};
  EXPECT_EQ(in_sphere(tri, pt({0, 0})), Side::Inside);
  EXPECT_EQ(in_sphere(tri, pt({0, -1})), Side::On);
  EXPECT_EQ(in_sphere(tri, pt({2, 2})), Side::Outside);
  // Reversing the orientation of the spanning simplex does not change the answer.
  std::vector<Point> rev{pt({-1, 0}), pt({0, 1}), pt({1, 0})};
  EXPECT_EQ(in_sphere(rev, pt({0, 0})), Side::Inside);
  EXPECT_EQ(in_sphere(rev, pt({2, 2})), Side::Outside);
}

TEST(InSphere, OneDimensional) {
  std::vector<Point> seg{pt({0}), pt({4})};
  EXPECT_EQ(in_sphere(seg, pt({1})), Side::Inside);
  EXPECT_EQ(in_sphere(seg, pt({5})), Side::Outside);
  EXPECT_EQ(in_sphere(seg, pt({4})), Side::On);
}

TEST(InSphere, MatchesCircumcenterOracle) {
  Rng rng(2024);
  int inside = 0, outside = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int d = static_cast<int>(rng.uniform(1, 4));
    std::vector<Point> pts;
    for (int i = 0; i <= d; ++i) pts.push_back(rng.point(d, 6, 3));
    if (orientation(pts) == 0) continue;
    const Point q = rng.point(d, 6, 3);
    const Side expected = inscribe::testing::circumsphere_side(pts, q);
    EXPECT_EQ(in_sphere(pts, q), expected);
    inside += expected == Side::Inside;
    outside += expected == Side::Outside;
  }
  EXPECT_GT(inside, 20);
  EXPECT_GT(outside, 20);
}

TEST(InSphere, CospherialPointIsOn) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(rng.point(2));
    if (orientation(pts) == 0) continue;
    auto [c, r2] = inscribe::testing::circumsphere(pts);
    // Reflect a vertex through the centre: still on the circle.
    Point q{2 * c[0] - pts[0][0], 2 * c[1] - pts[0][1]};
    if (q == pts[1] || q == pts[2]) continue;
    EXPECT_EQ(in_sphere(pts, q), Side::On);
  }
}

TEST(Configuration, ValidatesLabelsAndDimensions) {
  EXPECT_THROW(PointConfiguration(2, {{1, pt({0, 0})}, {1, pt({1, 0})}}), std::invalid_argument);
  EXPECT_THROW(PointConfiguration(2, {{0, pt({0, 0})}}), std::invalid_argument);
  EXPECT_THROW(PointConfiguration(2, {{1, pt({0, 0, 0})}}), DimensionMismatch);
  PointConfiguration c(2, {{5, pt({1, 1})}, {2, pt({0, 0})}});
  EXPECT_EQ(c.labels(), (LabelSet{2, 5}));
  EXPECT_EQ(c.at(5), pt({1, 1}));
  EXPECT_EQ(c.max_label(), 5);
}

TEST(Chirotope, SquareIsAllPositive) {
  auto c = PointConfiguration::from_points(2, {pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})});
  const Chirotope chi = chirotope_of(c);
  EXPECT_EQ(chi.signs.size(), 4u);
  for (const auto& [s, v] : chi.signs) EXPECT_EQ(v, 1) << s[0] << s[1] << s[2];
}

TEST(Chirotope, InvariantUnderTranslationAndPositiveLinearMaps) {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = static_cast<int>(rng.uniform(2, 3));
    const int n = d + 3;
    auto c = inscribe::testing::random_general_config(rng, d, n);
    Matrix a;
    do {
      a.clear();
      for (int i = 0; i < d; ++i) a.push_back(rng.point(d, 5, 3));
    } while (sgn(inscribe::testing::laplace_det(a)) <= 0);
    const Point t = rng.point(d);
    std::vector<LabeledPoint> moved;
    for (const auto& p : c.points()) {
      Point q(static_cast<std::size_t>(d), Rational(0));
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) q[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * p.coords[static_cast<std::size_t>(j)];
      }
      moved.push_back({p.label, q + t});
    }
    EXPECT_EQ(chirotope_of(c).signs, chirotope_of(PointConfiguration(d, moved)).signs);
  }
}

TEST(GeneralPosition, Examples) {
  auto square = PointConfiguration::from_points(2, {pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})});
  EXPECT_TRUE(is_general_position(square));
  auto collinear = PointConfiguration::from_points(2, {pt({0, 0}), pt({1, 1}), pt({2, 2}), pt({0, 1})});
  EXPECT_FALSE(is_general_position(collinear));
  EXPECT_TRUE(is_general_position(inscribe::testing::moment_curve(6, 4)));
  EXPECT_TRUE(is_general_position(inscribe::testing::moment_curve(9, 6)));
}

TEST(Lifting, LiftAndProjectRoundTrip) {
  auto c = inscribe::testing::moment_curve(5, 2);
  std::map<Label, Rational> h;
  for (Label l : c.labels()) h[l] = Rational(l, 3);
  auto lifted = lifted_by(c, h);
  EXPECT_EQ(lifted.dim(), 3);
  EXPECT_EQ(lifted.at(4).back(), Rational(4, 3));
  EXPECT_EQ(projected(lifted), c);
}

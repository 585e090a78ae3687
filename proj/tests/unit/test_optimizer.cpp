#include <probo/error.hpp>
#include <probo/optimizer.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace probo {
namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p(i++) = x;
  return p;
}

BatchObjective sq_distance_to(Point target) {
  return batched([target](PointView x) { return (to_point(x) - target).squaredNorm(); });
}

TEST(BoxBounds, RejectsDegenerateBoxes) {
  EXPECT_THROW(BoxBounds(pt({0.0}), pt({0.0})), InvalidArgument);
  EXPECT_THROW(BoxBounds(pt({1.0}), pt({0.0})), InvalidArgument);
  EXPECT_THROW(BoxBounds(pt({0.0, 0.0}), pt({1.0})), DimensionError);
}

TEST(BoxBounds, UnitMapsRoundTrip) {
  const BoxBounds b(pt({-5.0, 2.0}), pt({10.0, 3.0}));
  const Point x = pt({1.0, 2.25});
  const Point u = b.to_unit(view(x));
  EXPECT_NEAR(u(0), 0.4, 1e-15);
  EXPECT_NEAR(u(1), 0.25, 1e-15);
  EXPECT_TRUE(b.from_unit(view(u)).isApprox(x, 1e-15));
  EXPECT_TRUE(b.contains(view(b.upper())));
  EXPECT_FALSE(b.contains(view(pt({10.5, 2.5}))));
}

TEST(LatinHypercube, EveryProjectionIsStratified) {
  const BoxBounds b(pt({-1.0, 0.0, 10.0}), pt({1.0, 5.0, 11.0}));
  for (std::size_t n : {1u, 2u, 5u, 10u, 50u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Design D = latin_hypercube(n, b, seed);
      ASSERT_EQ(D.rows(), static_cast<Eigen::Index>(n));
      for (Eigen::Index d = 0; d < D.cols(); ++d) {
        std::vector<int> hits(n, 0);
        for (Eigen::Index i = 0; i < D.rows(); ++i) {
          const double u = (D(i, d) - b.lower()(d)) / (b.upper()(d) - b.lower()(d));
          const auto k = std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
          ++hits[k];
        }
        EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }))
            << "n=" << n << " seed=" << seed << " dim=" << d;
      }
      for (Eigen::Index i = 0; i < D.rows(); ++i) EXPECT_TRUE(b.contains(row_view(D, i)));
    }
  }
}

TEST(LatinHypercube, SortedCoordinatesFallInConsecutiveStrata) {
  const Design D = latin_hypercube(10, BoxBounds::unit(1), 42);
  std::vector<double> s(D.data(), D.data() + D.size());
  std::sort(s.begin(), s.end());
  for (int k = 0; k < 10; ++k) {
    EXPECT_GE(s[k], k / 10.0);
    EXPECT_LT(s[k], (k + 1) / 10.0);
  }
}

TEST(LatinHypercube, DeterministicUnderSeed) {
  const auto b = BoxBounds::unit(4);
  EXPECT_EQ(latin_hypercube(20, b, 9), latin_hypercube(20, b, 9));
  EXPECT_NE(latin_hypercube(20, b, 9), latin_hypercube(20, b, 10));
  EXPECT_THROW(latin_hypercube(0, b, 1), InvalidArgument);
}

TEST(FocusSearch, FindsInteriorOptimumWithDefaults) {
  for (std::size_t dim : {1u, 2u}) {
    const Point target = Point::Constant(static_cast<Eigen::Index>(dim), 0.3141);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto r = focus_search(sq_distance_to(target), BoxBounds::unit(dim), {}, seed);
      EXPECT_LT((r.point - target).norm(), 1e-3) << "dim=" << dim << " seed=" << seed;
    }
  }
}

TEST(FocusSearch, CountsEvaluationsExactly) {
  std::size_t calls = 0;
  const BatchObjective f = [&](const Design& Q) {
    calls += static_cast<std::size_t>(Q.rows());
    return Eigen::VectorXd(Q.rowwise().squaredNorm());
  };
  const FocusSearchConfig cfg{37, 3, 4, 0.6};
  const auto r = focus_search(f, BoxBounds::unit(3), cfg, 5);
  EXPECT_EQ(calls, 37u * 3u * 4u);
  EXPECT_EQ(r.evaluations, calls);
}

TEST(FocusSearch, SingleRoundSingleRestartIsRandomSearch) {
  const auto f = sq_distance_to(pt({0.2, 0.9}));
  const BoxBounds b(pt({-1.0, 0.0}), pt({1.0, 2.0}));
  const auto fs = focus_search(f, b, {1000, 1, 1, 0.5}, 77);
  const auto rs = random_search(f, b, 1000, 77);
  EXPECT_EQ(fs.point, rs.point);
  EXPECT_EQ(fs.score, rs.score);
}

TEST(FocusSearch, ReturnsArgminOfEverythingEvaluated) {
  double best_seen = std::numeric_limits<double>::infinity();
  double first_round_best = std::numeric_limits<double>::infinity();
  int batch = 0;
  const BatchObjective f = [&](const Design& Q) {
    Eigen::VectorXd s(Q.rows());
    for (Eigen::Index i = 0; i < Q.rows(); ++i) s(i) = std::sin(12.0 * Q(i, 0)) + Q(i, 1) * Q(i, 1);
    best_seen = std::min(best_seen, s.minCoeff());
    if (batch++ == 0) first_round_best = s.minCoeff();
    return s;
  };
  const BoxBounds b = BoxBounds::unit(2);
  const auto r = focus_search(f, b, {200, 4, 3, 0.5}, 8);
  EXPECT_EQ(r.score, best_seen);
  EXPECT_LE(r.score, first_round_best);
  EXPECT_TRUE(b.contains(view(r.point)));
}

TEST(FocusSearch, IgnoresNonFiniteScoresAndFailsWhenAllAre) {
  const BatchObjective partly = [](const Design& Q) {
    Eigen::VectorXd s(Q.rows());
    for (Eigen::Index i = 0; i < Q.rows(); ++i) {
      s(i) = Q(i, 0) < 0.5 ? std::numeric_limits<double>::quiet_NaN() : Q(i, 0);
    }
    return s;
  };
  const auto r = focus_search(partly, BoxBounds::unit(1), {100, 3, 2, 0.5}, 1);
  EXPECT_GE(r.point(0), 0.5);
  EXPECT_TRUE(std::isfinite(r.score));

  const BatchObjective none = [](const Design& Q) {
    return Eigen::VectorXd::Constant(Q.rows(), std::numeric_limits<double>::infinity()).eval();
  };
  EXPECT_THROW(focus_search(none, BoxBounds::unit(1), {10, 2, 2, 0.5}, 1), Error);
}

TEST(FocusSearch, RejectsInvalidConfig) {
  const auto f = sq_distance_to(pt({0.5}));
  for (const FocusSearchConfig& cfg : {FocusSearchConfig{0, 5, 5, 0.5}, FocusSearchConfig{10, 0, 5, 0.5},
                                       FocusSearchConfig{10, 5, 0, 0.5}, FocusSearchConfig{10, 5, 5, 1.0},
                                       FocusSearchConfig{10, 5, 5, 0.0}}) {
    EXPECT_THROW(focus_search(f, BoxBounds::unit(1), cfg, 1), InvalidArgument);
  }
}

TEST(RandomSearch, SingleEvaluationAndConstantObjective) {
  const BoxBounds b = BoxBounds::unit(2);
  const auto one = random_search(sq_distance_to(pt({0.0, 0.0})), b, 1, 3);
  EXPECT_EQ(one.evaluations, 1u);
  EXPECT_EQ(one.score, one.point.squaredNorm());

  const auto flat = random_search(batched([](PointView) { return 4.25; }), b, 500, 3);
  EXPECT_EQ(flat.score, 4.25);
}

TEST(RandomSearch, BestScoreNonincreasingInBudget) {
  const auto f = sq_distance_to(pt({0.77, 0.1, 0.5}));
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t n : {1u, 10u, 100u, 1023u, 1024u, 1025u, 5000u}) {
    const auto r = random_search(f, BoxBounds::unit(3), n, 11);
    EXPECT_LE(r.score, prev) << n;
    prev = r.score;
  }
}

TEST(GridSearch, IncludesEndpointsAndBreaksTiesLexicographically) {
  const auto lin = grid_search(batched([](PointView x) { return x[0]; }), BoxBounds::unit(1), 11);
  EXPECT_EQ(lin.point(0), 0.0);
  EXPECT_EQ(lin.score, 0.0);
  EXPECT_EQ(lin.evaluations, 11u);

  const auto top = grid_search(batched([](PointView x) { return -x[0]; }), BoxBounds(pt({-2.0}), pt({3.0})), 7);
  EXPECT_EQ(top.point(0), 3.0);

  // Two equal minima at x = +-0.5.
  const auto tie = grid_search(batched([](PointView x) { return (x[0] * x[0] - 0.25) * (x[0] * x[0] - 0.25); }),
                               BoxBounds(pt({-1.0}), pt({1.0})), 5);
  EXPECT_EQ(tie.point(0), -0.5);

  const auto tie2 = grid_search(batched([](PointView x) { return std::abs(x[0] - x[1]); }), BoxBounds::unit(2), 3);
  EXPECT_EQ(tie2.point, pt({0.0, 0.0}));
}

TEST(GridSearch, AgreesWithRandomSearchOnConvexFunction) {
  const auto f = sq_distance_to(pt({0.637}));
  const auto g = grid_search(f, BoxBounds::unit(1), 101);
  const auto r = random_search(f, BoxBounds::unit(1), 5000, 2);
  EXPECT_NEAR(g.point(0), r.point(0), 0.01);
}

TEST(GridSearch, EnforcesLimits) {
  const auto f = batched([](PointView) { return 0.0; });
  EXPECT_THROW(grid_search(f, BoxBounds::unit(1), 1), InvalidArgument);
  EXPECT_THROW(grid_search(f, BoxBounds::unit(8), 10), InvalidArgument);
}

TEST(Optimizers, DeterministicUnderSeed) {
  const auto f = sq_distance_to(pt({0.1, 0.2}));
  const auto b = BoxBounds::unit(2);
  const auto a = focus_search(f, b, {300, 3, 2, 0.5}, 4);
  const auto c = focus_search(f, b, {300, 3, 2, 0.5}, 4);
  EXPECT_EQ(a.point, c.point);
  EXPECT_EQ(a.score, c.score);
  EXPECT_EQ(random_search(f, b, 999, 4).point, random_search(f, b, 999, 4).point);
}

}  // namespace
}  // namespace probo

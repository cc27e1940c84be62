#include <gtest/gtest.h>

#include <cmath>

#include "kcmedian/errors.hpp"
#include "kcmedian/metrics.hpp"
#include "kcmedian/oracle.hpp"
#include "support.hpp"

namespace kcmedian {
namespace {

using testing::random_pointset;
using testing::random_trajectory;

TEST(DiscreteFrechet, Examples) {
  const Trajectory a({{0, 0}, {1, 0}, {2, 0}});
  EXPECT_EQ(discrete_frechet(a, a), 0.0);
  const Trajectory b({{0, 1}, {2, 1}});
  EXPECT_DOUBLE_EQ(discrete_frechet(a, b), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(discrete_frechet(Trajectory({{0, 0}}), Trajectory({{3, 4}})), 5.0);
}

TEST(DiscreteFrechet, DimensionMismatchThrows) {
  EXPECT_THROW(discrete_frechet(Trajectory({{0, 0}}), Trajectory({{0, 0, 0}})), InputError);
}

TEST(DiscreteFrechet, OrderMatters) {
  const Trajectory a({{0, 0}, {1, 0}});
  const Trajectory b({{1, 0}, {0, 0}});
  EXPECT_DOUBLE_EQ(discrete_frechet(a, b), 1.0);
}

TEST(DiscreteFrechet, MatchesCouplingEnumeration) {
  RandomStream rng(21);
  for (int i = 0; i < 150; ++i) {
    const Trajectory a = random_trajectory(rng, 6);
    const Trajectory b = random_trajectory(rng, 6);
    EXPECT_NEAR(discrete_frechet(a, b), oracle::brute_frechet(a, b), 1e-9);
  }
}

TEST(DiscreteFrechet, RepeatingLastPointChangesNothing) {
  RandomStream rng(22);
  for (int i = 0; i < 200; ++i) {
    const Trajectory a = random_trajectory(rng, 8);
    const Trajectory b = random_trajectory(rng, 8);
    std::vector<Point> longer = a.points();
    longer.push_back(longer.back());
    EXPECT_EQ(discrete_frechet(Trajectory(longer), b), discrete_frechet(a, b));
    std::vector<Point> other = b.points();
    other.push_back(other.back());
    EXPECT_EQ(discrete_frechet(a, Trajectory(other)), discrete_frechet(a, b));
  }
}

TEST(Hausdorff, Examples) {
  const PointSet a({{0, 0}, {1, 0}});
  EXPECT_EQ(hausdorff(a, a), 0.0);
  EXPECT_DOUBLE_EQ(hausdorff(a, PointSet({{0, 0}})), 1.0);
  EXPECT_DOUBLE_EQ(hausdorff(PointSet({{0, 0}, {4, 0}}), PointSet({{1, 0}, {2, 0}})), 2.0);
}

TEST(Hausdorff, DimensionMismatchThrows) {
  EXPECT_THROW(hausdorff(PointSet({{0, 0}}), PointSet(std::vector<Point>{Point{0.0}})), InputError);
}

TEST(Hausdorff, MatchesCorrespondenceEnumeration) {
  RandomStream rng(23);
  for (int i = 0; i < 150; ++i) {
    const PointSet a = random_pointset(rng, 4);
    const PointSet b = random_pointset(rng, 4);
    EXPECT_NEAR(hausdorff(a, b), oracle::brute_hausdorff(a, b), 1e-9);
  }
}

template <class E, class Gen, class Dist>
void check_metric_axioms(Gen gen, Dist dist) {
  RandomStream rng(24);
  for (int i = 0; i < 1000; ++i) {
    const E x = gen(rng);
    const E y = gen(rng);
    const E z = gen(rng);
    ASSERT_EQ(dist(x, x), 0.0);
    ASSERT_EQ(dist(x, y), dist(y, x));
    ASSERT_LE(dist(x, z), dist(x, y) + dist(y, z) + 1e-9);
  }
}

TEST(Metrics, FrechetSatisfiesMetricAxioms) {
  check_metric_axioms<Trajectory>([](RandomStream& r) { return random_trajectory(r, 7); },
                                  [](const Trajectory& a, const Trajectory& b) { return discrete_frechet(a, b); });
}

TEST(Metrics, HausdorffSatisfiesMetricAxioms) {
  check_metric_axioms<PointSet>([](RandomStream& r) { return random_pointset(r, 7); },
                                [](const PointSet& a, const PointSet& b) { return hausdorff(a, b); });
}

TEST(Elements, ValidateOnConstruction) {
  EXPECT_THROW(Trajectory(std::vector<Point>{}), InputError);
  EXPECT_THROW(Trajectory({Point{0, 0}, Point{0, 0, 0}}), InputError);
  EXPECT_THROW(PointSet(std::vector<Point>{}), InputError);
}

TEST(PointSet, DropsNearDuplicates) {
  const PointSet s({{0, 0}, {1, 0}, {0, 1e-12}, {1, 0}});
  EXPECT_EQ(s.size(), 2U);
  EXPECT_EQ(s.points()[0], Point({0, 0}));
}

TEST(Trajectory, KeepsOrderAndRepeats) {
  const Trajectory t({{1, 0}, {0, 0}, {0, 0}});
  EXPECT_EQ(t.size(), 3U);
  EXPECT_EQ(t.points()[0], Point({1, 0}));
}

}  // namespace
}  // namespace kcmedian

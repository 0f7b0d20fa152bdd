#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lipaste/geometry.hpp"
#include "lipaste/locality.hpp"
#include "support.hpp"

using namespace lipaste;

namespace {

Cover trivial_cover(const SubsetPair& pair)
{
    return Cover({pair.union_set()}, pair.space_size());
}

/// Open square path (0,0) - (1,0) - (1,1) - (0,1).
FiniteMetricSpace square_path()
{
    PointCloud pts(2);
    pts.add({0, 0});
    pts.add({1, 0});
    pts.add({1, 1});
    pts.add({0, 1});
    return euclidean_space_from_points(pts);
}

} // namespace

TEST(LocalLpConstants, TrivialCoverReproducesDirectK)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        const auto s = random_metric(20, seed);
        const auto pair = support::overlapping_pair(20, rng);
        const auto ks = local_lp_constants(s, pair, trivial_cover(pair));
        ASSERT_EQ(ks.size(), 1u);
        EXPECT_EQ(ks[0], *lp_constant(s, pair).k);
        EXPECT_EQ(complement_constant(s, pair, trivial_cover(pair)), 0.0);
    }
}

TEST(LocalLpConstants, EquilateralSingleRegion)
{
    const SubsetPair pair({0, 2}, {1, 2}, 3);
    const auto ks = local_lp_constants(support::equilateral(), pair, Cover({{0, 1, 2}}, 3));
    ASSERT_EQ(ks.size(), 1u);
    EXPECT_EQ(ks[0], 2.0);
}

TEST(LocalLpConstants, TransverseLinesSplitAtOrigin)
{
    const auto sample = transverse_lines_sample(33);
    const auto sp = realize(sample);
    const auto pts = support::coordinates(sample.points);
    std::vector<Index> lower, upper;
    for (Index i : sp.pair.union_set()) {
        const double sum = pts[i][0] + pts[i][1];
        if (sum <= 0)
            lower.push_back(i);
        if (sum >= 0)
            upper.push_back(i);
    }
    const Cover cover({lower, upper}, sp.space.size());
    const auto ks = local_lp_constants(sp.space, sp.pair, cover);
    ASSERT_EQ(ks.size(), 2u);
    for (std::size_t r = 0; r < 2; ++r) {
        // per-region brute force from coordinates
        const auto& region = cover.regions()[r];
        std::vector<Index> a, b;
        for (Index i : region) {
            if (contains(sp.pair.a(), i))
                a.push_back(i);
            if (contains(sp.pair.b(), i))
                b.push_back(i);
        }
        EXPECT_NEAR(ks[r], oracle::lp_from_points(pts, a, b, oracle::euclid), 1e-12);
        EXPECT_LE(ks[r], std::numbers::sqrt2 + 1e-9);
    }
}

TEST(LocalLpConstants, RejectsInvalidCovers)
{
    const auto s = random_metric(6, 1);
    const SubsetPair pair({0, 1, 2}, {2, 3}, 6);
    EXPECT_THROW(local_lp_constants(s, pair, Cover({{0, 1}}, 6)), InputError);       // misses A n B
    EXPECT_THROW(local_lp_constants(s, pair, Cover({{2, 5}}, 6)), InputError);       // outside A u B
    EXPECT_THROW(local_lp_constants(s, pair, Cover({{2}, {0, 1}}, 6)), InputError);  // region without A n B
    EXPECT_THROW(Cover({{0, 9}}, 6), InputError);
    EXPECT_THROW(Cover({}, 6), InputError);
}

TEST(ComplementConstant, SquarePathTwoRegions)
{
    // A = {0,1,2}, B = {1,2,3}, A n B = {1,2}; regions {0,1} and {2,3}.
    // C = {(0,2), (0,3), (1,2), (1,3), (2,1)}; the worst is (0,3): (1 + sqrt 2) / 1.
    const auto s = square_path();
    const SubsetPair pair({0, 1, 2}, {1, 2, 3}, 4);
    const Cover cover({{0, 1}, {2, 3}}, 4);
    const auto c = complement_constant_detail(s, pair, cover);
    EXPECT_EQ(c.size, 5u);
    EXPECT_NEAR(c.k, 1.0 + std::numbers::sqrt2, 1e-15);

    const auto r = global_bound_from_cover(s, pair, cover);
    EXPECT_EQ(r.local_ks, (std::vector<double>{1.0, 1.0}));
    EXPECT_EQ(r.global_bound, c.k);
    EXPECT_EQ(r.sum_bound, c.k + 1.0);
    EXPECT_EQ(r.direct_k, c.k);
    EXPECT_TRUE(r.bound_holds);
}

TEST(ComplementConstant, BoundedByDiameterOverSeparation)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        const std::size_t n = 4 + rng.below(20);
        const auto s = random_metric(n, seed);
        const auto pair = support::overlapping_pair(n, rng);
        const Cover cover = support::random_cover(pair, rng);
        const double kc = complement_constant(s, pair, cover);
        double min_c = 1e300;
        for (Index a : pair.a())
            for (Index b : pair.b())
                if (!cover.in_delta(a, b))
                    min_c = std::min(min_c, s(a, b));
        if (min_c == 1e300) {
            EXPECT_EQ(kc, 0.0);
            continue;
        }
        double diam = 0.0;
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                diam = std::max(diam, s(i, j));
        EXPECT_LE(kc, 2.0 * diam / min_c);
    }
}

TEST(GlobalBoundFromCover, TrivialCoverIsExact)
{
    const auto r = global_bound_from_cover(support::equilateral(), SubsetPair({0, 2}, {1, 2}, 3), Cover({{0, 1, 2}}, 3));
    EXPECT_EQ(r.global_bound, 2.0);
    EXPECT_EQ(r.direct_k, 2.0);
    EXPECT_EQ(r.complement_size, 0u);
}

TEST(GlobalBoundFromCover, RandomCoversBoundDirectK)
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Rng rng(seed);
        const std::size_t n = 3 + rng.below(25);
        const auto s = random_metric(n, seed);
        const auto pair = support::overlapping_pair(n, rng);
        const auto r = global_bound_from_cover(s, pair, support::random_cover(pair, rng));
        EXPECT_LE(r.direct_k, r.global_bound) << "seed " << seed;
        EXPECT_LE(r.global_bound, r.sum_bound);
        EXPECT_TRUE(r.bound_holds);
    }
}

TEST(BallCover, LargeRadiusGivesFullRegions)
{
    const auto s = random_metric(12, 9);
    const SubsetPair pair({0, 1, 2, 3, 4}, {3, 4, 5, 6}, 12);
    const auto cover = ball_cover(s, pair, 2.0 * s.scale());
    ASSERT_EQ(cover.size(), 2u);
    for (const auto& r : cover.regions())
        EXPECT_EQ(r, pair.union_set());
}

TEST(BallCover, TinyRadiusGivesSingletons)
{
    const auto s = random_metric(12, 9);
    const SubsetPair pair({0, 1, 2, 3, 4}, {3, 4, 5, 6}, 12);
    const auto cover = ball_cover(s, pair, 1e-9);
    EXPECT_EQ(cover.regions(), (std::vector<IndexSet>{{3}, {4}}));
    EXPECT_NO_THROW(cover.validate(s, pair));
    EXPECT_THROW(ball_cover(s, pair, 0.0), InputError);
}

TEST(BallCover, TransverseLinesNearOrigin)
{
    const auto sample = transverse_lines_sample(41);
    const auto sp = realize(sample);
    const auto cover = ball_cover(sp.space, sp.pair, 0.1);
    ASSERT_EQ(cover.size(), 1u);
    for (Index i : cover.regions()[0])
        EXPECT_LT(detail::norm(sample.points.point(i)), 0.1);
    EXPECT_GT(cover.regions()[0].size(), 1u);
    const auto ks = local_lp_constants(sp.space, sp.pair, cover);
    EXPECT_LE(ks[0], std::numbers::sqrt2 + 1e-9);
}

TEST(LocalLpConstants, ShrinkingRoutingSetNeverLowersARatio)
{
    // With the cross pairs held fixed, routing through fewer intersection
    // points can only lengthen the detour.
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        const std::size_t n = 4 + rng.below(20);
        const auto s = random_metric(n, seed);
        const auto pair = support::overlapping_pair(n, rng);
        const auto& both = pair.intersection();
        IndexSet fewer{both[rng.below(both.size())]};
        for (Index a : pair.a())
            for (Index b : pair.b())
                if (a != b) {
                    EXPECT_GE(detail::shortest_route(s, a, b, fewer).length,
                              detail::shortest_route(s, a, b, both).length);
                }
    }
}

TEST(LocalLpConstants, SplittingARegionCanLowerItsConstant)
{
    // Shrinking a region removes cross pairs as well as routing points, so the
    // local constant is not monotone under refinement.
    const SubsetPair pair({0, 2}, {1, 2}, 3);
    const auto whole = local_lp_constants(support::equilateral(), pair, Cover({{0, 1, 2}}, 3));
    const auto split = local_lp_constants(support::equilateral(), pair, Cover({{0, 2}, {1, 2}}, 3));
    EXPECT_EQ(whole[0], 2.0);
    EXPECT_EQ(split, (std::vector<double>{1.0, 1.0}));
}

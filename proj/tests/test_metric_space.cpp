#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lipaste/metric_space.hpp"
#include "support.hpp"

using namespace lipaste;
using support::space;

TEST(VerifyMetric, TwoPointSpaceIsValid)
{
    EXPECT_TRUE(verify_metric(space({{0, 1}, {1, 0}})).empty());
}

TEST(VerifyMetric, ReportsTriangleViolationWithWitness)
{
    // d(p,q) = 5 > d(p,r) + d(r,q) = 2
    const auto v = verify_metric(space({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}}));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, MetricAxiom::triangle);
    EXPECT_EQ(v[0].witness, (std::vector<Index>{0, 1, 2}));
    EXPECT_DOUBLE_EQ(v[0].magnitude, 3.0);
}

TEST(VerifyMetric, ReportsDiagonalSymmetryAndPositivity)
{
    const auto v = verify_metric(space({{0.5, 1, 2}, {1, 0, 0}, {2.5, 0, 0}}), 1e-9);
    std::vector<MetricAxiom> kinds;
    for (const auto& r : v)
        kinds.push_back(r.kind);
    ASSERT_GE(v.size(), 3u);
    EXPECT_EQ(v[0].kind, MetricAxiom::diagonal);
    EXPECT_EQ(v[0].witness, (std::vector<Index>{0}));
    EXPECT_EQ(v[1].kind, MetricAxiom::symmetry);
    EXPECT_EQ(v[1].witness, (std::vector<Index>{0, 2}));
    EXPECT_DOUBLE_EQ(v[1].magnitude, 0.5);
    EXPECT_EQ(v[2].kind, MetricAxiom::positivity);
    EXPECT_EQ(v[2].witness, (std::vector<Index>{1, 2}));
    EXPECT_TRUE(std::is_sorted(kinds.begin(), kinds.end()));
}

TEST(VerifyMetric, ToleranceIsRelativeToScale)
{
    // Excess of 1e-7 on a scale of 1000 is 1e-10 relative.
    auto d = space({{0, 1000 + 1e-7, 500}, {1000 + 1e-7, 0, 500}, {500, 500, 0}});
    EXPECT_TRUE(verify_metric(d, 1e-9).empty());
    EXPECT_EQ(verify_metric(d, 0.0).size(), 1u);
}

TEST(VerifyMetric, CapsAndOrdersViolations)
{
    // All off-diagonal zero: every pair is a positivity violation.
    const std::size_t n = 20;
    const auto v = verify_metric(FiniteMetricSpace(DistanceMatrix(n, std::vector<double>(n * n, 0.0))), 1e-9, 100);
    ASSERT_EQ(v.size(), 100u);
    for (std::size_t i = 1; i < v.size(); ++i)
        EXPECT_LT(v[i - 1].witness, v[i].witness);
}

TEST(VerifyMetric, AgreesWithNaiveCheckOnPerturbedMatrices)
{
    Rng rng(11);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto base = random_metric(2 + seed % 9, seed);
        auto m = support::rows(base);
        if (rng.coin(0.7)) {
            const Index i = rng.below(m.size()), j = rng.below(m.size());
            if (i != j)
                m[i][j] = m[j][i] = m[i][j] * rng.uniform(0.0, 4.0);
        }
        const auto s = space(m);
        const bool naive = oracle::is_metric(m, 1e-9 * s.scale());
        EXPECT_EQ(verify_metric(s).empty(), naive) << "seed " << seed;
    }
}

TEST(DistanceMatrix, RejectsMalformedInput)
{
    EXPECT_THROW(DistanceMatrix::from_rows({{0, 1}, {1}}), InputError);
    EXPECT_THROW(space({{0, std::nan("")}, {1, 0}}), InputError);
    EXPECT_THROW(space({{0, -1}, {-1, 0}}), InputError);
    EXPECT_THROW(space({{0, std::numeric_limits<double>::infinity()}, {1, 0}}), InputError);
    EXPECT_THROW(FiniteMetricSpace({"a"}, DistanceMatrix::from_rows({{0, 1}, {1, 0}})), InputError);
    EXPECT_THROW(DistanceMatrix(3, std::vector<double>(8, 0.0)), InputError);
}

TEST(ShortestPathCompletion, RelaxesThroughIntermediatePoint)
{
    const auto c = shortest_path_completion(DistanceMatrix::from_rows({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}}));
    EXPECT_EQ(c(0, 1), 2.0);
    EXPECT_EQ(c(1, 0), 2.0);
    EXPECT_EQ(c(0, 2), 1.0);
}

TEST(ShortestPathCompletion, MetricInputIsFixedPoint)
{
    const auto m = DistanceMatrix::from_rows({{0, 3, 4, 5}, {3, 0, 5, 4}, {4, 5, 0, 3}, {5, 4, 3, 0}});
    EXPECT_EQ(shortest_path_completion(m).dist(), m);
}

TEST(ShortestPathCompletion, RandomMatricesBecomeExactMetrics)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        const std::size_t n = 2 + rng.below(30);
        std::vector<double> w(n * n, 0.0);
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
                w[i * n + j] = w[j * n + i] = rng.uniform(0.01, 10.0);
        const DistanceMatrix input(n, w);
        const auto c = shortest_path_completion(input);
        EXPECT_TRUE(verify_metric(c, 0.0).empty()) << "seed " << seed;
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                EXPECT_LE(c(i, j), input(i, j));
        // idempotent
        EXPECT_EQ(shortest_path_completion(c.dist()).dist(), c.dist());
    }
}

TEST(ShortestPathCompletion, FiftyPointSeed42PassesExactCheck)
{
    Rng rng(42);
    const std::size_t n = 50;
    std::vector<double> w(n * n, 0.0);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            w[i * n + j] = w[j * n + i] = rng.uniform(0.1, 100.0);
    EXPECT_TRUE(verify_metric(shortest_path_completion(DistanceMatrix(n, w)), 0.0).empty());
}

TEST(ShortestPathCompletion, RejectsInvalidWeights)
{
    EXPECT_THROW(shortest_path_completion(DistanceMatrix::from_rows({{0, 1}, {2, 0}})), InputError);
    EXPECT_THROW(shortest_path_completion(DistanceMatrix::from_rows({{1, 1}, {1, 0}})), InputError);
    EXPECT_THROW(shortest_path_completion(DistanceMatrix::from_rows({{0, 0}, {0, 0}})), InputError);
}

TEST(Restrict, FullIndexSetIsIdentity)
{
    const auto s = random_metric(12, 3);
    std::vector<Index> all(12);
    for (Index i = 0; i < 12; ++i)
        all[i] = i;
    EXPECT_EQ(restrict(s, all), s);
}

TEST(Restrict, EquilateralToTwoPoints)
{
    const auto r = restrict(support::equilateral(), {1, 0});
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r(0, 1), 1.0);
    EXPECT_EQ(r.labels(), (std::vector<std::string>{"p", "q"}));
}

TEST(Restrict, ComposesByIntersection)
{
    const auto s = random_metric(15, 8);
    const IndexSet first{1, 3, 4, 7, 9, 12};
    // Positions 1, 2, 4 of `first` are original indices 3, 4, 9.
    const auto twice = restrict(restrict(s, first), {1, 2, 4});
    EXPECT_EQ(twice, restrict(s, {3, 4, 9}));
}

TEST(Restrict, RestrictionOfCompletionIsMetric)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = random_metric(25, seed);
        Rng rng(seed);
        std::vector<Index> subset;
        for (Index i = 0; i < s.size(); ++i)
            if (rng.coin())
                subset.push_back(i);
        if (subset.empty())
            subset.push_back(0);
        EXPECT_TRUE(verify_metric(restrict(s, subset), 0.0).empty());
    }
}

TEST(Restrict, RejectsEmptyOrOutOfRange)
{
    const auto s = support::equilateral();
    EXPECT_THROW(restrict(s, {}), InputError);
    EXPECT_THROW(restrict(s, {0, 3}), InputError);
}

TEST(RandomMetric, DeterministicAndValid)
{
    const auto a = random_metric(30, 5);
    const auto b = random_metric(30, 5);
    EXPECT_EQ(a, b);
    EXPECT_NE(random_metric(30, 6).dist(), a.dist());
    EXPECT_TRUE(verify_metric(random_metric(100, 7)).empty());
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto two = random_metric(2, s);
        EXPECT_TRUE(verify_metric(two).empty());
    }
    EXPECT_THROW(random_metric(1, 0), InputError);
}

TEST(RandomMetric, OffDiagonalEntriesSpanAFactorOfTen)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto s = random_metric(3 + seed % 40, seed);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (Index i = 0; i < s.size(); ++i)
            for (Index j = i + 1; j < s.size(); ++j) {
                lo = std::min(lo, s(i, j));
                hi = std::max(hi, s(i, j));
            }
        EXPECT_GE(hi / lo, 10.0) << "seed " << seed;
    }
}

TEST(SubsetPair, IntersectionIsExactIndexSetEquality)
{
    const SubsetPair p({4, 1, 1, 2}, {2, 3, 4}, 5);
    EXPECT_EQ(p.a(), (IndexSet{1, 2, 4}));
    EXPECT_EQ(p.intersection(), (IndexSet{2, 4}));
    EXPECT_EQ(p.union_set(), (IndexSet{1, 2, 3, 4}));
    const SubsetPair local = p.relative_to_union();
    EXPECT_EQ(local.a(), (IndexSet{0, 1, 3}));
    EXPECT_EQ(local.b(), (IndexSet{1, 2, 3}));
    EXPECT_THROW(SubsetPair({}, {1}, 3), InputError);
    EXPECT_THROW(SubsetPair({0}, {3}, 3), InputError);
}

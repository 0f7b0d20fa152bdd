#pragma once

// Shared fixtures and random instance generators for the test suites.

#include <cstdint>
#include <memory>
#include <vector>

#include "lipaste/lipaste.hpp"
#include "oracles.hpp"

namespace support {

using lipaste::FiniteMetricSpace;
using lipaste::Index;

inline FiniteMetricSpace space(const std::vector<std::vector<double>>& rows)
{
    return FiniteMetricSpace(lipaste::DistanceMatrix::from_rows(rows));
}

/// Points p, q, r at mutual distance 1.
inline FiniteMetricSpace equilateral()
{
    return FiniteMetricSpace({"p", "q", "r"}, lipaste::DistanceMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
}

inline oracle::Matrix rows(const FiniteMetricSpace& s)
{
    oracle::Matrix m(s.size(), std::vector<double>(s.size()));
    for (Index i = 0; i < s.size(); ++i)
        for (Index j = 0; j < s.size(); ++j)
            m[i][j] = s(i, j);
    return m;
}

/// Random A, B over n points with at least one shared index.
inline lipaste::SubsetPair overlapping_pair(std::size_t n, lipaste::Rng& rng)
{
    std::vector<Index> a, b;
    const Index shared = rng.below(n);
    a.push_back(shared);
    b.push_back(shared);
    for (Index i = 0; i < n; ++i) {
        if (rng.coin(0.5))
            a.push_back(i);
        if (rng.coin(0.5))
            b.push_back(i);
    }
    return lipaste::SubsetPair(a, b, n);
}

/// Random nonempty disjoint A, B over n >= 2 points.
inline lipaste::SubsetPair disjoint_pair(std::size_t n, lipaste::Rng& rng)
{
    std::vector<Index> a{0}, b{n - 1};
    for (Index i = 1; i + 1 < n; ++i) {
        const double u = rng.uniform();
        if (u < 0.4)
            a.push_back(i);
        else if (u < 0.8)
            b.push_back(i);
    }
    return lipaste::SubsetPair(a, b, n);
}

inline lipaste::MappedFunction random_function(std::shared_ptr<const FiniteMetricSpace> domain,
                                               std::size_t codomain_points, std::uint64_t seed)
{
    auto codomain = std::make_shared<const FiniteMetricSpace>(lipaste::random_metric(codomain_points, seed));
    lipaste::Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Index> assignment(domain->size());
    for (auto& v : assignment)
        v = rng.below(codomain_points);
    return lipaste::MappedFunction(std::move(domain), std::move(codomain), std::move(assignment));
}

/// Random valid cover: every intersection point seeds a region, plus random extras.
inline lipaste::Cover random_cover(const lipaste::SubsetPair& pair, lipaste::Rng& rng)
{
    std::vector<std::vector<Index>> regions;
    const auto& both = pair.intersection();
    for (Index y : both) {
        if (!regions.empty() && rng.coin(0.4)) {
            regions[rng.below(regions.size())].push_back(y);
            continue;
        }
        std::vector<Index> r{y};
        for (Index i : pair.union_set())
            if (rng.coin(0.3))
                r.push_back(i);
        regions.push_back(std::move(r));
    }
    return lipaste::Cover(std::move(regions), pair.space_size());
}

inline std::vector<std::vector<double>> coordinates(const lipaste::PointCloud& cloud)
{
    std::vector<std::vector<double>> out;
    for (Index i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        out.emplace_back(p.begin(), p.end());
    }
    return out;
}

} // namespace support

#pragma once

/**
 * @file locality.hpp
 *
 * LP constants assembled region by region. A cover is a finite family of
 * index sets over A u B whose union contains A n B. Every cross pair either
 * lies together in some region (the diagonal neighbourhood Delta) or falls
 * in the complement C = (A x B) \ Delta, so the direct constant is bounded
 * by the larger of the per-region constants and the complement constant.
 */

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "metric_space.hpp"
#include "pasting.hpp"

namespace lipaste {

class Cover {
public:
    Cover() = default;

    /// Regions are normalised (sorted, deduplicated) against a space of size n.
    Cover(std::vector<std::vector<Index>> regions, std::size_t n)
    {
        if (regions.empty())
            throw InputError("cover has no regions");
        regions_.reserve(regions.size());
        for (std::size_t r = 0; r < regions.size(); ++r)
            regions_.push_back(make_index_set(std::move(regions[r]), n, "cover region " + std::to_string(r)));
        membership_.assign(n, {});
        for (std::size_t r = 0; r < regions_.size(); ++r)
            for (Index i : regions_[r])
                membership_[i].push_back(r);
    }

    const std::vector<IndexSet>& regions() const noexcept { return regions_; }
    std::size_t size() const noexcept { return regions_.size(); }

    /// True when some region contains both a and b.
    bool in_delta(Index a, Index b) const
    {
        const auto& ra = membership_[a];
        const auto& rb = membership_[b];
        auto ia = ra.begin();
        auto ib = rb.begin();
        while (ia != ra.end() && ib != rb.end()) {
            if (*ia == *ib)
                return true;
            *ia < *ib ? ++ia : ++ib;
        }
        return false;
    }

    /// Throws InputError unless every region lies in A u B and meets A n B,
    /// and every point of A n B is in some region.
    void validate(const FiniteMetricSpace& space, const SubsetPair& pair) const
    {
        detail::check_pair(space, pair);
        if (membership_.size() != space.size())
            throw InputError("cover was built for a space of " + std::to_string(membership_.size())
                             + " points, not " + std::to_string(space.size()));
        if (pair.disjoint())
            throw InputError("a cover of A n B needs A and B to intersect");
        for (std::size_t r = 0; r < regions_.size(); ++r) {
            if (!is_subset(regions_[r], pair.union_set()))
                throw InputError("cover region " + std::to_string(r) + " contains points outside A u B");
            if (set_intersection(regions_[r], pair.intersection()).empty())
                throw InputError("cover region " + std::to_string(r) + " does not meet A n B");
        }
        for (Index y : pair.intersection())
            if (membership_[y].empty())
                throw InputError("intersection point " + std::to_string(y) + " is not covered by any region");
    }

private:
    std::vector<IndexSet> regions_;
    std::vector<std::vector<std::size_t>> membership_;
};

/// Per-region LP constants, routing only through A n B n U_i. Regions with no
/// cross pair a != b get 1.
inline std::vector<double> local_lp_constants(const FiniteMetricSpace& space, const SubsetPair& pair,
                                              const Cover& cover)
{
    cover.validate(space, pair);
    std::vector<double> ks;
    ks.reserve(cover.size());
    for (const IndexSet& region : cover.regions()) {
        const IndexSet a = set_intersection(pair.a(), region);
        const IndexSet b = set_intersection(pair.b(), region);
        const IndexSet through = set_intersection(pair.intersection(), region);
        double k = 1.0;
        bool any = false;
        for (Index i : a)
            for (Index j : b) {
                if (i == j)
                    continue;
                const double ratio = detail::shortest_route(space, i, j, through).length / space(i, j);
                k = any ? std::max(k, ratio) : ratio;
                any = true;
            }
        ks.push_back(k);
    }
    return ks;
}

struct ComplementConstant {
    double k = 0.0;          ///< 0 when the complement is empty
    std::size_t size = 0;    ///< number of pairs in C
};

/// Largest cross ratio (global routing) over pairs that share no region.
inline ComplementConstant complement_constant_detail(const FiniteMetricSpace& space, const SubsetPair& pair,
                                                     const Cover& cover)
{
    cover.validate(space, pair);
    ComplementConstant c;
    for (Index a : pair.a())
        for (Index b : pair.b()) {
            if (cover.in_delta(a, b))
                continue;
            ++c.size;
            const double ratio = detail::shortest_route(space, a, b, pair.intersection()).length / space(a, b);
            c.k = std::max(c.k, ratio);
        }
    return c;
}

inline double complement_constant(const FiniteMetricSpace& space, const SubsetPair& pair, const Cover& cover)
{
    return complement_constant_detail(space, pair, cover).k;
}

struct LocalityReport {
    std::vector<double> local_ks;
    double complement_k = 0.0;
    std::size_t complement_size = 0;
    double max_local_k = 0.0;
    double global_bound = 0.0; ///< max(complement_k, max_local_k)
    double sum_bound = 0.0;    ///< complement_k + max_local_k
    double direct_k = 0.0;
    double tolerance = kDefaultMetricTol;
    bool bound_holds = false;  ///< direct_k <= global_bound within tolerance
};

inline LocalityReport global_bound_from_cover(const FiniteMetricSpace& space, const SubsetPair& pair,
                                              const Cover& cover, double tol = kDefaultMetricTol)
{
    LocalityReport r;
    r.tolerance = tol;
    r.local_ks = local_lp_constants(space, pair, cover);
    const ComplementConstant c = complement_constant_detail(space, pair, cover);
    r.complement_k = c.k;
    r.complement_size = c.size;
    r.max_local_k = *std::max_element(r.local_ks.begin(), r.local_ks.end());
    r.global_bound = std::max(r.complement_k, r.max_local_k);
    r.sum_bound = r.complement_k + r.max_local_k;
    r.direct_k = *lp_constant(space, pair).k;
    r.bound_holds = r.direct_k <= r.global_bound * (1.0 + tol);
    return r;
}

/// One region per intersection point y: every point of A u B strictly closer than @p radius.
inline Cover ball_cover(const FiniteMetricSpace& space, const SubsetPair& pair, double radius)
{
    detail::check_pair(space, pair);
    if (!(radius > 0.0))
        throw InputError("ball radius must be positive");
    if (pair.disjoint())
        throw InputError("ball cover needs A and B to intersect");
    std::vector<std::vector<Index>> regions;
    regions.reserve(pair.intersection().size());
    for (Index y : pair.intersection()) {
        std::vector<Index> region;
        for (Index i : pair.union_set())
            if (i == y || space(i, y) < radius)
                region.push_back(i);
        regions.push_back(std::move(region));
    }
    return Cover(std::move(regions), space.size());
}

} // namespace lipaste

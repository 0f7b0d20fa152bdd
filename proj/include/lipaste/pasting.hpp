#pragma once

/**
 * @file pasting.hpp
 *
 * The LP constant of a pair of subsets, the glued metric that is d inside A
 * and inside B and routes through A n B across, and the converse witness
 * showing the identity into the glued metric has Lipschitz constant exactly k.
 */

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lipschitz.hpp"
#include "lp_report.hpp"
#include "metric_space.hpp"

namespace lipaste {

namespace detail {

inline void check_pair(const FiniteMetricSpace& space, const SubsetPair& pair)
{
    if (pair.space_size() != space.size())
        throw InputError("pair refers to a space of " + std::to_string(pair.space_size()) + " points but the space has "
                         + std::to_string(space.size()));
}

struct Routed {
    double length;
    Index via;
};

/// min over x in @p through of d(a, x) + d(x, b), with the smallest attaining x.
inline Routed shortest_route(const FiniteMetricSpace& space, Index a, Index b, const IndexSet& through)
{
    const auto row_a = space.dist().row(a);
    const auto row_b = space.dist().row(b);
    Routed best{std::numeric_limits<double>::infinity(), 0};
    for (Index x : through) {
        // d(x, b) read as d(b, x); symmetric matrices make these identical.
        const double len = row_a[x] + row_b[x];
        if (len < best.length)
            best = {len, x};
    }
    return best;
}

} // namespace detail

/**
 * Ratio of the shortest route from a to b through A n B to d(a, b). Always
 * >= 1 on a metric space.
 */
inline double cross_ratio(const FiniteMetricSpace& space, const SubsetPair& pair, Index a, Index b)
{
    detail::check_pair(space, pair);
    if (!contains(pair.a(), a) || !contains(pair.b(), b))
        throw InputError("cross_ratio needs a in A and b in B");
    if (a == b)
        throw InputError("cross_ratio is undefined for a == b");
    if (pair.disjoint())
        throw InputError("cross_ratio needs a nonempty intersection");
    return detail::shortest_route(space, a, b, pair.intersection()).length / space(a, b);
}

/**
 * Optimal LP constant: the largest cross ratio over a in A, b in B, a != b.
 *
 * O(|A| |B| |A n B|). When the only cross pair is (p, p), i.e. A = B = {p},
 * k is 1 with no witness. Disjoint pairs report their separation instead.
 */
inline LpReport lp_constant(const FiniteMetricSpace& space, const SubsetPair& pair)
{
    detail::check_pair(space, pair);
    LpReport report;
    if (pair.disjoint()) {
        report.disjoint = true;
        double sep = std::numeric_limits<double>::infinity();
        for (Index a : pair.a())
            for (Index b : pair.b())
                sep = std::min(sep, space(a, b));
        report.separation = sep;
        return report;
    }

    double k = -1.0;
    for (Index a : pair.a())
        for (Index b : pair.b()) {
            if (a == b)
                continue;
            const detail::Routed route = detail::shortest_route(space, a, b, pair.intersection());
            const double ratio = route.length / space(a, b);
            if (ratio > k) {
                k = ratio;
                report.witness_pair = std::make_pair(a, b);
                report.witness_x = route.via;
            }
        }
    report.k = report.witness_pair ? k : 1.0;
    return report;
}

/**
 * Glued metric on A u B. `base` is the restriction of the input space to
 * A u B, `glued` carries the glued distances on the same points, and `pair`
 * is the input pair re-indexed into A u B.
 */
struct GluedMetricSpace {
    FiniteMetricSpace base;
    FiniteMetricSpace glued;
    SubsetPair pair;
    IndexSet source_indices; ///< glued index i is source_indices[i] in the input space

    double operator()(Index i, Index j) const noexcept { return glued(i, j); }
};

/**
 * Builds the glued metric: d(i, j) when i and j lie together in A or in B,
 * otherwise the shortest route through A n B. The result is checked with
 * verify_metric at @p tol before returning; MetricError if it fails (which
 * only happens when the input itself is not a metric).
 */
inline GluedMetricSpace glued_metric(const FiniteMetricSpace& space, const SubsetPair& pair,
                                     double tol = kDefaultMetricTol)
{
    detail::check_pair(space, pair);
    if (pair.disjoint())
        throw InputError("glued metric needs A and B to intersect; across a disjoint pair it would be infinite");

    FiniteMetricSpace base = restrict(space, pair.union_set());
    SubsetPair local = pair.relative_to_union();
    const std::size_t n = base.size();

    std::vector<char> in_a(n, 0), in_b(n, 0);
    for (Index i : local.a())
        in_a[i] = 1;
    for (Index i : local.b())
        in_b[i] = 1;

    std::vector<double> delta(base.dist().data().begin(), base.dist().data().end());
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            const bool same_side = (in_a[i] && in_a[j]) || (in_b[i] && in_b[j]);
            if (same_side)
                continue;
            const double via = detail::shortest_route(base, i, j, local.intersection()).length;
            delta[i * n + j] = delta[j * n + i] = via;
        }

    FiniteMetricSpace glued(base.labels(), DistanceMatrix(n, std::move(delta)));
    if (auto violations = verify_metric(glued, tol, 1); !violations.empty()) {
        const auto& v = violations.front();
        std::string witness;
        for (Index i : v.witness)
            witness += (witness.empty() ? "" : ",") + std::to_string(pair.union_set()[i]);
        throw MetricError(std::string("glued distances violate the ") + to_string(v.kind) + " axiom at (" + witness
                          + "); is the input a metric?");
    }
    return {std::move(base), std::move(glued), std::move(local), pair.union_set()};
}

struct ConverseReport {
    double k = 0.0;            ///< from lp_constant
    double lip_identity = 0.0; ///< Lip of the identity (A u B, d) -> (A u B, glued)
    double lip_on_a = 0.0;
    double lip_on_b = 0.0;
    double tolerance = kDefaultMetricTol;
    bool agrees = false;       ///< lip_on_a = lip_on_b = 1 and lip_identity = k within tolerance
};

/**
 * Identity map from (A u B, d) into the glued metric. Its restrictions to A and
 * to B are isometries, and its Lipschitz constant equals the LP constant; the
 * two numbers are computed along independent code paths.
 */
inline ConverseReport converse_witness(const FiniteMetricSpace& space, const SubsetPair& pair,
                                       double tol = kDefaultMetricTol)
{
    detail::check_pair(space, pair);
    if (pair.union_set().size() < 2)
        throw InputError("converse witness needs at least one cross pair a != b");
    GluedMetricSpace g = glued_metric(space, pair, tol);
    auto domain = std::make_shared<const FiniteMetricSpace>(std::move(g.base));
    auto codomain = std::make_shared<const FiniteMetricSpace>(std::move(g.glued));
    const MappedFunction id = MappedFunction::identity(domain, codomain);

    ConverseReport r;
    r.tolerance = tol;
    r.k = *lp_constant(space, pair).k;
    r.lip_identity = lipschitz_constant(id).value;
    // A single point has no pairs; the identity there is trivially an isometry.
    r.lip_on_a = g.pair.a().size() > 1 ? lipschitz_constant(restrict_function(id, g.pair.a())).value : 1.0;
    r.lip_on_b = g.pair.b().size() > 1 ? lipschitz_constant(restrict_function(id, g.pair.b())).value : 1.0;
    auto close = [tol](double x, double y) { return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y)); };
    r.agrees = close(r.lip_on_a, 1.0) && close(r.lip_on_b, 1.0) && close(r.lip_identity, r.k);
    return r;
}

} // namespace lipaste

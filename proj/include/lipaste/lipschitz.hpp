#pragma once

/**
 * @file lipschitz.hpp
 *
 * Lipschitz constants of maps between finite metric spaces and the bound
 * check for functions that are separately Lipschitz on two subsets.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lp_report.hpp"
#include "metric_space.hpp"

namespace lipaste {

/// A map between finite spaces, stored as one codomain index per domain point.
class MappedFunction {
public:
    MappedFunction(std::shared_ptr<const FiniteMetricSpace> domain,
                   std::shared_ptr<const FiniteMetricSpace> codomain, std::vector<Index> assignment)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), assignment_(std::move(assignment))
    {
        if (!domain_ || !codomain_)
            throw InputError("function needs both a domain and a codomain");
        if (assignment_.size() != domain_->size())
            throw InputError("assignment has " + std::to_string(assignment_.size()) + " entries but the domain has "
                             + std::to_string(domain_->size()) + " points");
        for (std::size_t i = 0; i < assignment_.size(); ++i)
            if (assignment_[i] >= codomain_->size())
                throw InputError("assignment[" + std::to_string(i) + "] = " + std::to_string(assignment_[i])
                                 + " is not a codomain index (codomain has " + std::to_string(codomain_->size())
                                 + " points)");
    }

    /// The identity map of a point set from one metric to another on the same points.
    static MappedFunction identity(std::shared_ptr<const FiniteMetricSpace> domain,
                                   std::shared_ptr<const FiniteMetricSpace> codomain)
    {
        std::vector<Index> assignment(domain ? domain->size() : 0);
        for (std::size_t i = 0; i < assignment.size(); ++i)
            assignment[i] = i;
        return MappedFunction(std::move(domain), std::move(codomain), std::move(assignment));
    }

    const FiniteMetricSpace& domain() const noexcept { return *domain_; }
    const FiniteMetricSpace& codomain() const noexcept { return *codomain_; }
    const std::shared_ptr<const FiniteMetricSpace>& domain_ptr() const noexcept { return domain_; }
    const std::shared_ptr<const FiniteMetricSpace>& codomain_ptr() const noexcept { return codomain_; }
    const std::vector<Index>& assignment() const noexcept { return assignment_; }
    Index operator()(Index i) const noexcept { return assignment_[i]; }

private:
    std::shared_ptr<const FiniteMetricSpace> domain_;
    std::shared_ptr<const FiniteMetricSpace> codomain_;
    std::vector<Index> assignment_;
};

struct LipschitzReport {
    double value = 0.0;
    /// Lexicographically smallest (i, j), i < j, attaining value. Absent when value is 0.
    std::optional<std::pair<Index, Index>> witness;
};

/// Largest ratio codomain-distance / domain-distance over distinct domain points.
inline LipschitzReport lipschitz_constant(const MappedFunction& f)
{
    const FiniteMetricSpace& d = f.domain();
    const FiniteMetricSpace& delta = f.codomain();
    LipschitzReport report;
    for (Index i = 0; i < d.size(); ++i)
        for (Index j = i + 1; j < d.size(); ++j) {
            const double ratio = delta(f(i), f(j)) / d(i, j);
            if (ratio > report.value) {
                report.value = ratio;
                report.witness = std::make_pair(i, j);
            }
        }
    return report;
}

inline MappedFunction restrict_function(const MappedFunction& f, std::vector<Index> indices)
{
    const IndexSet set = make_index_set(std::move(indices), f.domain().size(), "function restriction index set");
    std::vector<Index> assignment;
    assignment.reserve(set.size());
    for (Index i : set)
        assignment.push_back(f(i));
    return MappedFunction(std::make_shared<const FiniteMetricSpace>(restrict(f.domain(), set)), f.codomain_ptr(),
                          std::move(assignment));
}

/// Outcome of checking Lip(f) <= max(L0 * k, L0) for a function that is
/// separately Lipschitz on A and on B.
struct BoundCheckReport {
    double lip_a = 0.0;
    double lip_b = 0.0;
    double l0 = 0.0;        ///< max(lip_a, lip_b)
    double k = 0.0;         ///< LP constant of the pair
    double l = 0.0;         ///< l0 * k
    double bound = 0.0;     ///< max(l, l0)
    double lip = 0.0;       ///< Lip(f) on A u B, computed directly
    double tolerance = kDefaultMetricTol;
    bool verdict = false;   ///< lip <= bound * (1 + tolerance)
    bool tight = false;     ///< |lip - bound| <= bound * tolerance
};

namespace detail {

inline MappedFunction restrict_to_union(const MappedFunction& f, const SubsetPair& pair)
{
    if (pair.space_size() != f.domain().size())
        throw InputError("pair refers to a space of " + std::to_string(pair.space_size())
                         + " points but the function domain has " + std::to_string(f.domain().size()));
    if (pair.union_set().size() == f.domain().size())
        return f;
    return restrict_function(f, pair.union_set());
}

} // namespace detail

/**
 * Compares the directly computed Lip(f) on A u B with the bound assembled
 * from the restrictions: Lip(f) <= max(max(Lip f|A, Lip f|B) * k, ...).
 *
 * @p lp must be the report for the same pair over f's domain. Disjoint pairs
 * have no k; use separated_bound_check for them.
 */
inline BoundCheckReport pasting_bound_check(const MappedFunction& f, const SubsetPair& pair, const LpReport& lp,
                                            double tol = kDefaultMetricTol)
{
    if (pair.disjoint() || lp.disjoint || !lp.k)
        throw InputError("A and B are disjoint, so there is no LP constant to paste with; "
                         "use separated_bound_check (the separation-based bound) instead");
    BoundCheckReport r;
    r.tolerance = tol;
    r.lip_a = lipschitz_constant(restrict_function(f, pair.a())).value;
    r.lip_b = lipschitz_constant(restrict_function(f, pair.b())).value;
    r.l0 = std::max(r.lip_a, r.lip_b);
    r.k = *lp.k;
    r.l = r.l0 * r.k;
    r.bound = std::max(r.l, r.l0);
    r.lip = lipschitz_constant(detail::restrict_to_union(f, pair)).value;
    r.verdict = r.lip <= r.bound * (1.0 + tol);
    r.tight = std::abs(r.lip - r.bound) <= r.bound * tol;
    return r;
}

/// Finite form of "compact disjoint sets are a positive distance apart".
struct SeparatedBoundReport {
    double l0 = 0.0;
    double separation = 0.0;     ///< min over A x B of d(a, b)
    double image_diameter = 0.0; ///< codomain diameter over f(A u B)
    double bound = 0.0;          ///< max(l0, image_diameter / separation)
    double lip = 0.0;
    double tolerance = kDefaultMetricTol;
    bool verdict = false;
};

inline SeparatedBoundReport separated_bound_check(const MappedFunction& f, const SubsetPair& pair,
                                                  double tol = kDefaultMetricTol)
{
    if (!pair.disjoint())
        throw InputError("separated_bound_check needs disjoint subsets; use pasting_bound_check for overlapping ones");
    if (pair.space_size() != f.domain().size())
        throw InputError("pair does not match the function domain");
    SeparatedBoundReport r;
    r.tolerance = tol;
    const FiniteMetricSpace& d = f.domain();
    r.l0 = std::max(lipschitz_constant(restrict_function(f, pair.a())).value,
                    lipschitz_constant(restrict_function(f, pair.b())).value);
    r.separation = std::numeric_limits<double>::infinity();
    for (Index a : pair.a())
        for (Index b : pair.b())
            r.separation = std::min(r.separation, d(a, b));
    const IndexSet& all = pair.union_set();
    for (std::size_t p = 0; p < all.size(); ++p)
        for (std::size_t q = p + 1; q < all.size(); ++q)
            r.image_diameter = std::max(r.image_diameter, f.codomain()(f(all[p]), f(all[q])));
    r.bound = std::max(r.l0, r.image_diameter / r.separation);
    r.lip = lipschitz_constant(detail::restrict_to_union(f, pair)).value;
    r.verdict = r.lip <= r.bound * (1.0 + tol);
    return r;
}

} // namespace lipaste

#pragma once

/**
 * @file metric_space.hpp
 *
 * Finite metric spaces stored as dense distance matrices, index-set
 * utilities, exhaustive axiom verification and random generators.
 *
 * Point identity is by index. Labels are carried along as metadata and never
 * participate in set operations.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lipaste {

using Index = std::size_t;

/// Sorted, duplicate-free list of point indices.
using IndexSet = std::vector<Index>;

/// Relative tolerance used by every metric comparison unless overridden.
inline constexpr double kDefaultMetricTol = 1e-9;

/// Default cap on the number of violations returned by verify_metric.
inline constexpr std::size_t kDefaultViolationCap = 100;

// ---------------------------------------------------------------------------
// Index sets
// ---------------------------------------------------------------------------

/// Sorts and deduplicates @p indices, rejecting empty sets and indices >= n.
inline IndexSet make_index_set(std::vector<Index> indices, std::size_t n, const std::string& what = "index set")
{
    if (indices.empty())
        throw InputError(what + " is empty");
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (indices.back() >= n)
        throw InputError(what + " contains index " + std::to_string(indices.back()) + " but the space has only "
                         + std::to_string(n) + " points");
    return indices;
}

inline bool contains(const IndexSet& set, Index i)
{
    return std::binary_search(set.begin(), set.end(), i);
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b)
{
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b)
{
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const IndexSet& inner, const IndexSet& outer)
{
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

// ---------------------------------------------------------------------------
// Dense matrices and spaces
// ---------------------------------------------------------------------------

/**
 * Square row-major matrix of non-negative finite reals.
 *
 * Construction checks structure only (shape, finiteness, sign). Whether the
 * entries form a metric is a separate question answered by verify_metric.
 */
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    DistanceMatrix(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data))
    {
        if (data_.size() != n_ * n_)
            throw InputError("distance matrix has " + std::to_string(data_.size()) + " entries, expected "
                             + std::to_string(n_ * n_));
        for (std::size_t k = 0; k < data_.size(); ++k) {
            const double v = data_[k];
            if (std::isnan(v))
                throw InputError("distance matrix entry (" + std::to_string(k / n_) + "," + std::to_string(k % n_)
                                 + ") is NaN");
            if (!std::isfinite(v))
                throw InputError("distance matrix entry (" + std::to_string(k / n_) + "," + std::to_string(k % n_)
                                 + ") is not finite");
            if (v < 0.0)
                throw InputError("distance matrix entry (" + std::to_string(k / n_) + "," + std::to_string(k % n_)
                                 + ") is negative");
        }
    }

    /// Builds from nested rows; every row must have exactly rows.size() entries.
    static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows)
    {
        const std::size_t n = rows.size();
        std::vector<double> data;
        data.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n)
                throw InputError("distance matrix is not square: row " + std::to_string(i) + " has "
                                 + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
            data.insert(data.end(), rows[i].begin(), rows[i].end());
        }
        return DistanceMatrix(n, std::move(data));
    }

    std::size_t size() const noexcept { return n_; }
    double operator()(Index i, Index j) const noexcept { return data_[i * n_ + j]; }
    std::span<const double> row(Index i) const noexcept { return {data_.data() + i * n_, n_}; }
    std::span<const double> data() const noexcept { return data_; }

    /// Largest entry; the reference scale for relative tolerances.
    double max_entry() const noexcept
    {
        return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
    }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

inline std::vector<std::string> index_labels(std::size_t n)
{
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    return labels;
}

/// Labeled point set with a dense distance matrix.
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;

    FiniteMetricSpace(std::vector<std::string> labels, DistanceMatrix dist)
        : labels_(std::move(labels)), dist_(std::move(dist))
    {
        if (labels_.size() != dist_.size())
            throw InputError("space has " + std::to_string(labels_.size()) + " labels but a "
                             + std::to_string(dist_.size()) + "x" + std::to_string(dist_.size()) + " matrix");
        if (dist_.size() == 0)
            throw InputError("space has no points");
    }

    explicit FiniteMetricSpace(DistanceMatrix dist)
        : FiniteMetricSpace(index_labels(dist.size()), std::move(dist))
    {}

    std::size_t size() const noexcept { return dist_.size(); }
    double operator()(Index i, Index j) const noexcept { return dist_(i, j); }
    const DistanceMatrix& dist() const noexcept { return dist_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    double scale() const noexcept { return dist_.max_entry(); }

    friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;

private:
    std::vector<std::string> labels_;
    DistanceMatrix dist_;
};

/// Two index sets over one space together with their exact intersection.
class SubsetPair {
public:
    SubsetPair(std::vector<Index> a, std::vector<Index> b, std::size_t n)
        : n_(n), a_(make_index_set(std::move(a), n, "subset A")), b_(make_index_set(std::move(b), n, "subset B")),
          intersection_(lipaste::set_intersection(a_, b_)), union_(lipaste::set_union(a_, b_))
    {}

    const IndexSet& a() const noexcept { return a_; }
    const IndexSet& b() const noexcept { return b_; }
    const IndexSet& intersection() const noexcept { return intersection_; }
    const IndexSet& union_set() const noexcept { return union_; }
    bool disjoint() const noexcept { return intersection_.empty(); }

    /// Size of the space the indices refer to.
    std::size_t space_size() const noexcept { return n_; }

    SubsetPair swapped() const { return SubsetPair(b_, a_, n_); }

    /// Re-expresses the pair in the coordinates of restrict(space, union_set()).
    SubsetPair relative_to_union() const
    {
        auto relabel = [this](const IndexSet& s) {
            std::vector<Index> out;
            out.reserve(s.size());
            for (Index i : s)
                out.push_back(static_cast<Index>(std::lower_bound(union_.begin(), union_.end(), i) - union_.begin()));
            return out;
        };
        return SubsetPair(relabel(a_), relabel(b_), union_.size());
    }

    friend bool operator==(const SubsetPair&, const SubsetPair&) = default;

private:
    std::size_t n_;
    IndexSet a_;
    IndexSet b_;
    IndexSet intersection_;
    IndexSet union_;
};

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

enum class MetricAxiom { diagonal, symmetry, positivity, triangle };

inline const char* to_string(MetricAxiom axiom)
{
    switch (axiom) {
    case MetricAxiom::diagonal: return "diagonal";
    case MetricAxiom::symmetry: return "symmetry";
    case MetricAxiom::positivity: return "positivity";
    case MetricAxiom::triangle: return "triangle";
    }
    return "unknown";
}

struct ViolationReport {
    MetricAxiom kind;
    std::vector<Index> witness;
    double magnitude;

    friend bool operator==(const ViolationReport&, const ViolationReport&) = default;
};

/**
 * Exhaustive check of the four metric axioms.
 *
 * A comparison fails when it is off by more than tol * scale, scale being the
 * largest matrix entry. Witnesses:
 *   - diagonal   (i)        magnitude |d(i,i)|
 *   - symmetry   (i, j)     i < j, magnitude |d(i,j) - d(j,i)|
 *   - positivity (i, j)     i < j with d(i,j) <= tol * scale; magnitude is the
 *                           shortfall tol * scale - d(i,j)
 *   - triangle   (i, j, k)  i < j, k distinct, magnitude d(i,j) - d(i,k) - d(k,j)
 *
 * The triangle scan is O(n^3). Violations come back ordered by axiom, then
 * lexicographically by witness, truncated to @p cap.
 */
inline std::vector<ViolationReport> verify_metric(const FiniteMetricSpace& space, double tol = kDefaultMetricTol,
                                                  std::size_t cap = kDefaultViolationCap)
{
    const std::size_t n = space.size();
    const DistanceMatrix& d = space.dist();
    const double slack = tol * space.scale();
    std::vector<ViolationReport> out;
    auto full = [&] { return out.size() >= cap; };

    for (Index i = 0; i < n && !full(); ++i)
        if (d(i, i) > slack)
            out.push_back({MetricAxiom::diagonal, {i}, d(i, i)});

    for (Index i = 0; i < n && !full(); ++i)
        for (Index j = i + 1; j < n && !full(); ++j) {
            const double gap = std::abs(d(i, j) - d(j, i));
            if (gap > slack)
                out.push_back({MetricAxiom::symmetry, {i, j}, gap});
        }

    for (Index i = 0; i < n && !full(); ++i)
        for (Index j = i + 1; j < n && !full(); ++j)
            if (d(i, j) <= slack)
                out.push_back({MetricAxiom::positivity, {i, j}, slack - d(i, j)});

    for (Index i = 0; i < n && !full(); ++i) {
        const auto row_i = d.row(i);
        for (Index j = i + 1; j < n && !full(); ++j) {
            const double dij = row_i[j];
            for (Index k = 0; k < n && !full(); ++k) {
                if (k == i || k == j)
                    continue;
                const double excess = dij - (row_i[k] + d(k, j));
                if (excess > slack)
                    out.push_back({MetricAxiom::triangle, {i, j, k}, excess});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

namespace detail {

/// In-place all-pairs shortest paths, repeated until an exact floating-point
/// fixed point so that the result is closed under one more relaxation.
inline void floyd_warshall_fixpoint(std::vector<double>& d, std::size_t n)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < n; ++k) {
            const double* row_k = d.data() + k * n;
            for (std::size_t i = 0; i < n; ++i) {
                double* row_i = d.data() + i * n;
                const double dik = row_i[k];
                if (dik == std::numeric_limits<double>::infinity())
                    continue;
                for (std::size_t j = 0; j < n; ++j) {
                    const double via = dik + row_k[j];
                    if (via < row_i[j]) {
                        row_i[j] = via;
                        changed = true;
                    }
                }
            }
        }
    }
}

} // namespace detail

/**
 * All-pairs shortest-path closure of a symmetric positive weight matrix.
 *
 * The result satisfies every metric axiom exactly (tol = 0) and is entrywise
 * no larger than the input. Completing an already complete matrix is a no-op.
 */
inline FiniteMetricSpace shortest_path_completion(const DistanceMatrix& weights, std::vector<std::string> labels = {})
{
    const std::size_t n = weights.size();
    if (n == 0)
        throw InputError("weight matrix is empty");
    for (Index i = 0; i < n; ++i) {
        if (weights(i, i) != 0.0)
            throw InputError("weight matrix diagonal entry " + std::to_string(i) + " is not zero");
        for (Index j = i + 1; j < n; ++j) {
            if (weights(i, j) != weights(j, i))
                throw InputError("weight matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j)
                                 + ")");
            if (weights(i, j) <= 0.0)
                throw InputError("weight matrix off-diagonal entry (" + std::to_string(i) + "," + std::to_string(j)
                                 + ") is not positive");
        }
    }
    std::vector<double> d(weights.data().begin(), weights.data().end());
    detail::floyd_warshall_fixpoint(d, n);
    if (labels.empty())
        labels = index_labels(n);
    return FiniteMetricSpace(std::move(labels), DistanceMatrix(n, std::move(d)));
}

/// Submatrix space on @p indices (sorted, deduplicated). Label order follows
/// index order. The restriction of a metric is a metric, but a restriction of
/// a shortest-path closure is generally not itself a shortest-path closure of
/// its own entries' graph.
inline FiniteMetricSpace restrict(const FiniteMetricSpace& space, std::vector<Index> indices)
{
    const IndexSet set = make_index_set(std::move(indices), space.size(), "restriction index set");
    const std::size_t m = set.size();
    std::vector<double> data;
    data.reserve(m * m);
    std::vector<std::string> labels;
    labels.reserve(m);
    for (Index i : set) {
        labels.push_back(space.labels()[i]);
        for (Index j : set)
            data.push_back(space(i, j));
    }
    return FiniteMetricSpace(std::move(labels), DistanceMatrix(m, std::move(data)));
}

/// Deterministic random source. Draws are built from raw engine output so the
/// stream is identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n)
    {
        const std::size_t r = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return r < n ? r : n - 1;
    }

    bool coin(double p = 0.5) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

/**
 * Random metric on n points: log-uniform weights on [1, 100), one randomly
 * chosen pair planted below a tenth of every other weight, then shortest-path
 * closure. For n >= 3 the off-diagonal entries span more than a factor of 10.
 */
inline FiniteMetricSpace random_metric(std::size_t n, std::uint64_t seed)
{
    if (n < 2)
        throw InputError("random_metric needs at least 2 points, got " + std::to_string(n));
    Rng rng(seed);
    std::vector<double> w(n * n, 0.0);
    double smallest = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            const double v = std::pow(10.0, 2.0 * rng.uniform());
            w[i * n + j] = w[j * n + i] = v;
            smallest = std::min(smallest, v);
        }
    if (n >= 3) {
        const Index p = rng.below(n);
        Index q = rng.below(n - 1);
        if (q >= p)
            ++q;
        const double planted = 0.1 * smallest * (0.5 + 0.5 * rng.uniform());
        w[p * n + q] = w[q * n + p] = planted;
    }
    return shortest_path_completion(DistanceMatrix(n, std::move(w)));
}

} // namespace lipaste

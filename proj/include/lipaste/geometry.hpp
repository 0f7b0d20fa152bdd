#pragma once

/**
 * @file geometry.hpp
 *
 * Sampled pairs of embedded curves and subspaces: transverse lines, linear
 * coordinate-subspace models, great circles on the unit sphere, and a
 * parabola tangent to a line. Each sampler returns the point cloud with its
 * A/B tags plus the realised finite metric space.
 *
 * Intersection points are constructed once and tagged in both subsets; they
 * are never recovered by distance thresholding.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "metric_space.hpp"
#include "pasting.hpp"

namespace lipaste {

/// Points in R^dim, stored row-major.
class PointCloud {
public:
    PointCloud() = default;
    explicit PointCloud(std::size_t dim) : dim_(dim)
    {
        if (dim_ == 0)
            throw InputError("point cloud dimension must be positive");
    }

    PointCloud(std::size_t dim, std::vector<double> coords) : PointCloud(dim)
    {
        if (coords.size() % dim_ != 0)
            throw InputError("coordinate count is not a multiple of the dimension");
        coords_ = std::move(coords);
    }

    Index add(std::span<const double> p)
    {
        if (p.size() != dim_)
            throw InputError("point has dimension " + std::to_string(p.size()) + ", expected " + std::to_string(dim_));
        coords_.insert(coords_.end(), p.begin(), p.end());
        return size() - 1;
    }
    Index add(std::initializer_list<double> p) { return add(std::span<const double>(p.begin(), p.size())); }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::span<const double> point(Index i) const noexcept { return {coords_.data() + i * dim_, dim_}; }
    const std::vector<double>& coords() const noexcept { return coords_; }

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

enum class MetricMode { euclidean, sphere_intrinsic, graph_geodesic };

inline const char* to_string(MetricMode mode)
{
    switch (mode) {
    case MetricMode::euclidean: return "euclidean";
    case MetricMode::sphere_intrinsic: return "sphere_intrinsic";
    case MetricMode::graph_geodesic: return "graph_geodesic";
    }
    return "unknown";
}

struct MetricChoice {
    MetricMode mode = MetricMode::euclidean;
    std::size_t k_neighbors = 0; ///< graph_geodesic only
};

struct EmbeddedSample {
    PointCloud points;
    IndexSet a;
    IndexSet b;
    MetricChoice metric;
};

struct SampledPair {
    FiniteMetricSpace space;
    SubsetPair pair;
};

// ---------------------------------------------------------------------------
// Metrics on point clouds
// ---------------------------------------------------------------------------

inline constexpr double kDuplicateTol = 1e-12;
inline constexpr double kUnitNormTol = 1e-12;

namespace detail {

inline double euclidean(std::span<const double> x, std::span<const double> y)
{
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double diff = x[k] - y[k];
        s += diff * diff;
    }
    return std::sqrt(s);
}

inline double norm(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

/// Great-circle distance between unit vectors, 2 atan2(|x - y|, |x + y|).
/// Well conditioned at both small and near-antipodal separations.
inline double great_circle(std::span<const double> x, std::span<const double> y)
{
    double minus = 0.0, plus = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        minus += (x[k] - y[k]) * (x[k] - y[k]);
        plus += (x[k] + y[k]) * (x[k] + y[k]);
    }
    return 2.0 * std::atan2(std::sqrt(minus), std::sqrt(plus));
}

template <typename Distance>
FiniteMetricSpace pairwise_space(const PointCloud& points, Distance&& distance)
{
    const std::size_t n = points.size();
    if (n < 2)
        throw InputError("need at least 2 points, got " + std::to_string(n));
    std::vector<double> d(n * n, 0.0);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            const double v = distance(points.point(i), points.point(j));
            if (v <= kDuplicateTol)
                throw InputError("points " + std::to_string(i) + " and " + std::to_string(j)
                                 + " coincide (distance " + std::to_string(v) + ")");
            d[i * n + j] = d[j * n + i] = v;
        }
    return FiniteMetricSpace(DistanceMatrix(n, std::move(d)));
}

} // namespace detail

/// Pairwise Euclidean distances. Points closer than 1e-12 are rejected.
inline FiniteMetricSpace euclidean_space_from_points(const PointCloud& points)
{
    return detail::pairwise_space(points, detail::euclidean);
}

/// Intrinsic (great-circle) distances on the unit sphere. Points within 1e-12
/// of unit norm are renormalised; others are rejected.
inline FiniteMetricSpace sphere_space_from_points(const PointCloud& points)
{
    PointCloud unit(points.dim());
    std::vector<double> p(points.dim());
    for (Index i = 0; i < points.size(); ++i) {
        const auto x = points.point(i);
        const double r = detail::norm(x);
        if (std::abs(r - 1.0) > kUnitNormTol)
            throw InputError("point " + std::to_string(i) + " is not on the unit sphere (norm " + std::to_string(r)
                             + ")");
        for (std::size_t k = 0; k < x.size(); ++k)
            p[k] = x[k] / r;
        unit.add(p);
    }
    return detail::pairwise_space(unit, detail::great_circle);
}

/**
 * Shortest-path distances on the symmetrised k-nearest-neighbour graph with
 * Euclidean edge lengths. Throws InputError naming the components when the
 * graph is disconnected.
 */
inline FiniteMetricSpace graph_geodesic_metric(const PointCloud& points, std::size_t k_neighbors)
{
    const std::size_t n = points.size();
    if (k_neighbors < 2)
        throw InputError("graph geodesics need k_neighbors >= 2");
    if (n < 2)
        throw InputError("need at least 2 points, got " + std::to_string(n));
    const FiniteMetricSpace straight = euclidean_space_from_points(points);
    const std::size_t k = std::min(k_neighbors, n - 1);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> w(n * n, inf);
    std::vector<std::vector<Index>> adjacency(n);
    std::vector<Index> order(n);
    for (Index i = 0; i < n; ++i) {
        w[i * n + i] = 0.0;
        for (Index j = 0; j < n; ++j)
            order[j] = j;
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k + 1), order.end(),
                          [&](Index p, Index q) {
                              const double dp = straight(i, p), dq = straight(i, q);
                              return dp != dq ? dp < dq : p < q;
                          });
        for (std::size_t r = 0; r <= k; ++r) {
            const Index j = order[r];
            if (j == i)
                continue;
            if (w[i * n + j] == inf) {
                adjacency[i].push_back(j);
                adjacency[j].push_back(i);
            }
            w[i * n + j] = w[j * n + i] = straight(i, j);
        }
    }

    std::vector<std::size_t> component(n, n);
    std::vector<std::vector<Index>> components;
    for (Index s = 0; s < n; ++s) {
        if (component[s] != n)
            continue;
        components.emplace_back();
        std::queue<Index> frontier;
        frontier.push(s);
        component[s] = components.size() - 1;
        while (!frontier.empty()) {
            const Index u = frontier.front();
            frontier.pop();
            components.back().push_back(u);
            for (Index v : adjacency[u])
                if (component[v] == n) {
                    component[v] = components.size() - 1;
                    frontier.push(v);
                }
        }
    }
    if (components.size() > 1) {
        std::string msg = "k-nearest-neighbour graph (k=" + std::to_string(k_neighbors) + ") is disconnected: "
                          + std::to_string(components.size()) + " components";
        for (auto& c : components) {
            std::sort(c.begin(), c.end());
            msg += " {";
            for (std::size_t t = 0; t < c.size() && t < 8; ++t)
                msg += (t ? "," : "") + std::to_string(c[t]);
            if (c.size() > 8)
                msg += ",... (" + std::to_string(c.size()) + " points)";
            msg += "}";
        }
        throw InputError(msg);
    }

    detail::floyd_warshall_fixpoint(w, n);
    return FiniteMetricSpace(DistanceMatrix(n, std::move(w)));
}

inline FiniteMetricSpace realize_metric(const PointCloud& points, const MetricChoice& metric)
{
    switch (metric.mode) {
    case MetricMode::euclidean: return euclidean_space_from_points(points);
    case MetricMode::sphere_intrinsic: return sphere_space_from_points(points);
    case MetricMode::graph_geodesic: return graph_geodesic_metric(points, metric.k_neighbors);
    }
    throw InputError("unknown metric mode");
}

inline SampledPair realize(const EmbeddedSample& sample)
{
    FiniteMetricSpace space = realize_metric(sample.points, sample.metric);
    SubsetPair pair(sample.a, sample.b, space.size());
    return {std::move(space), std::move(pair)};
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

namespace detail {

/// m points from lo to hi inclusive; a single point is {lo}.
inline std::vector<double> linspace(double lo, double hi, std::size_t m)
{
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j)
        out[j] = m == 1 ? lo : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(m - 1);
    if (m > 1)
        out.back() = hi;
    return out;
}

/// m points on [-1, 1] with v[m-1-j] == -v[j] exactly.
inline std::vector<double> symmetric_grid(std::size_t m)
{
    if (m < 2)
        throw InputError("symmetric grid needs at least 2 points");
    std::vector<double> out(m);
    const double denom = static_cast<double>(m - 1);
    for (std::size_t j = 0; j < m; ++j)
        out[j] = (2.0 * static_cast<double>(j) - denom) / denom;
    return out;
}

} // namespace detail

/**
 * Line y = 0 and the parabola y = x^2, tangent at the origin. Both are
 * sampled at t = 0 plus n_per_curve - 1 evenly spaced parameters on
 * [t_min, 1]. The origin is the only shared point. The LP constant grows
 * like 2 / t_min.
 */
inline EmbeddedSample tangential_parabola_sample(std::size_t n_per_curve, double t_min)
{
    if (n_per_curve < 2)
        throw InputError("tangential parabola needs n_per_curve >= 2");
    if (!(t_min > 0.0) || t_min > 1.0)
        throw InputError("tangential parabola needs 0 < t_min < 1");
    if (t_min == 1.0 && n_per_curve != 2)
        throw InputError("t_min = 1 leaves room for a single nonzero parameter (n_per_curve = 2)");
    EmbeddedSample s{PointCloud(2), {}, {}, {}};
    const Index origin = s.points.add({0.0, 0.0});
    s.a.push_back(origin);
    s.b.push_back(origin);
    const auto ts = detail::linspace(t_min, 1.0, n_per_curve - 1);
    for (double t : ts)
        s.a.push_back(s.points.add({t, 0.0}));
    for (double t : ts)
        s.b.push_back(s.points.add({t, t * t}));
    return s;
}

inline SampledPair sample_tangential_parabola(std::size_t n_per_curve, double t_min)
{
    return realize(tangential_parabola_sample(n_per_curve, t_min));
}

/// x-axis and y-axis, each sampled on an even grid of [-1, 1] plus the shared origin.
inline EmbeddedSample transverse_lines_sample(std::size_t n_per_line)
{
    if (n_per_line < 2)
        throw InputError("transverse lines need n_per_line >= 2");
    EmbeddedSample s{PointCloud(2), {}, {}, {}};
    const Index origin = s.points.add({0.0, 0.0});
    s.a.push_back(origin);
    s.b.push_back(origin);
    const auto grid = detail::symmetric_grid(n_per_line);
    for (double t : grid)
        if (t != 0.0)
            s.a.push_back(s.points.add({t, 0.0}));
    for (double t : grid)
        if (t != 0.0)
            s.b.push_back(s.points.add({0.0, t}));
    return s;
}

inline SampledPair sample_transverse_lines(std::size_t n_per_line)
{
    return realize(transverse_lines_sample(n_per_line));
}

/**
 * Two great circles on S^2 through the antipodal points (+-1, 0, 0), one in
 * the xy-plane and one tilted about the x-axis by @p angle. Intrinsic
 * great-circle distances. Parameters 2 pi j / n, with pi added when n is odd.
 */
inline EmbeddedSample great_circles_sample(std::size_t n_per_circle, double angle)
{
    if (n_per_circle < 4)
        throw InputError("great circles need n_per_circle >= 4");
    if (!(angle > 0.0 && angle < std::numbers::pi))
        throw InputError("great circle angle must lie in (0, pi); 0 and pi give the same circle");
    EmbeddedSample s{PointCloud(3), {}, {}, {MetricMode::sphere_intrinsic, 0}};
    const Index east = s.points.add({1.0, 0.0, 0.0});
    const Index west = s.points.add({-1.0, 0.0, 0.0});
    s.a = {east, west};
    s.b = {east, west};

    std::vector<double> thetas;
    for (std::size_t j = 1; j < n_per_circle; ++j) {
        // j / n == 1 / 2 is the shared antipode, already present.
        if (2 * j == n_per_circle)
            continue;
        thetas.push_back(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_per_circle));
    }
    const double ca = std::cos(angle), sa = std::sin(angle);
    std::vector<double> p(3);
    auto add_unit = [&](double x, double y, double z) {
        const double r = std::sqrt(x * x + y * y + z * z);
        p = {x / r, y / r, z / r};
        return s.points.add(p);
    };
    for (double t : thetas)
        s.a.push_back(add_unit(std::cos(t), std::sin(t), 0.0));
    for (double t : thetas)
        s.b.push_back(add_unit(std::cos(t), std::sin(t) * ca, std::sin(t) * sa));
    std::sort(s.a.begin(), s.a.end());
    std::sort(s.b.begin(), s.b.end());
    return s;
}

inline SampledPair sample_great_circles(std::size_t n_per_circle, double angle)
{
    return realize(great_circles_sample(n_per_circle, angle));
}

/// Split of R^n into coordinates (u, v, w); A is {u = 0}, B is {v = 0}.
struct LinearChart {
    std::size_t du = 1;
    std::size_t dv = 1;
    std::size_t dw = 0;

    std::size_t dim() const noexcept { return du + dv + dw; }

    void validate() const
    {
        if (du < 1 || dv < 1)
            throw InputError("linear chart needs du >= 1 and dv >= 1");
    }
};

namespace detail {

/// All tuples of length @p len over @p axis, in lexicographic order.
inline std::vector<std::vector<double>> grid_tuples(const std::vector<double>& axis, std::size_t len)
{
    std::vector<std::vector<double>> out{{}};
    for (std::size_t d = 0; d < len; ++d) {
        std::vector<std::vector<double>> next;
        next.reserve(out.size() * axis.size());
        for (const auto& prefix : out)
            for (double v : axis) {
                auto t = prefix;
                t.push_back(v);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

inline bool all_zero(const std::vector<double>& t)
{
    return std::all_of(t.begin(), t.end(), [](double v) { return v == 0.0; });
}

} // namespace detail

/**
 * Linear model of a transverse intersection in R^(du+dv+dw), all coordinates
 * on an even grid of [-1, 1]:
 *   A n B = {(0, 0, w)},  A = A n B + {(0, v, w) : v != 0},  B = A n B + {(u, 0, w) : u != 0}.
 * The shared points (0, 0, w) come first in index order.
 */
inline EmbeddedSample linear_transverse_sample(const LinearChart& chart, std::size_t grid)
{
    chart.validate();
    if (grid < 2)
        throw InputError("linear transverse sample needs grid >= 2");
    const auto axis = detail::symmetric_grid(grid);
    const auto ws = detail::grid_tuples(axis, chart.dw);
    auto us = detail::grid_tuples(axis, chart.du);
    auto vs = detail::grid_tuples(axis, chart.dv);
    std::erase_if(us, detail::all_zero);
    std::erase_if(vs, detail::all_zero);

    EmbeddedSample s{PointCloud(chart.dim()), {}, {}, {}};
    std::vector<double> p;
    auto emit = [&](const std::vector<double>& u, const std::vector<double>& v, const std::vector<double>& w) {
        p.clear();
        p.insert(p.end(), u.begin(), u.end());
        p.insert(p.end(), v.begin(), v.end());
        p.insert(p.end(), w.begin(), w.end());
        return s.points.add(p);
    };
    const std::vector<double> zero_u(chart.du, 0.0), zero_v(chart.dv, 0.0);
    for (const auto& w : ws) {
        const Index i = emit(zero_u, zero_v, w);
        s.a.push_back(i);
        s.b.push_back(i);
    }
    for (const auto& v : vs)
        for (const auto& w : ws)
            s.a.push_back(emit(zero_u, v, w));
    for (const auto& u : us)
        for (const auto& w : ws)
            s.b.push_back(emit(u, zero_v, w));
    return s;
}

inline SampledPair sample_linear_transverse(const LinearChart& chart, std::size_t grid)
{
    return realize(linear_transverse_sample(chart, grid));
}

// ---------------------------------------------------------------------------
// Refinement sweeps
// ---------------------------------------------------------------------------

enum class FamilyKind { tangential_parabola, transverse_lines, great_circles, linear };

struct SweepFamily {
    FamilyKind kind = FamilyKind::transverse_lines;
    double angle = std::numbers::pi / 2; ///< great_circles only
    LinearChart chart{};                 ///< linear only
};

struct SweepRecord {
    double h = 0.0;
    std::size_t n_points = 0;
    double k = 0.0;
    double k_times_h = 0.0;
};

/**
 * Sample of @p family at refinement h:
 *   tangential_parabola  t_min = h, parameter spacing h on [h, 1]
 *   transverse_lines     grid spacing h on [-1, 1]
 *   great_circles        round(2 pi / h) parameters per circle (at least 4)
 *   linear               grid spacing h on [-1, 1] per axis
 */
inline EmbeddedSample family_sample(const SweepFamily& family, double h)
{
    if (!(h > 0.0) || !std::isfinite(h))
        throw InputError("refinement parameter h must be positive and finite");
    auto count = [](double x) { return static_cast<std::size_t>(std::lround(x)); };
    switch (family.kind) {
    case FamilyKind::tangential_parabola:
        if (h > 1.0)
            throw InputError("tangential parabola sweep needs h <= 1");
        return tangential_parabola_sample(count(1.0 / h) + 1, h);
    case FamilyKind::transverse_lines: return transverse_lines_sample(std::max<std::size_t>(2, count(2.0 / h) + 1));
    case FamilyKind::great_circles:
        return great_circles_sample(std::max<std::size_t>(4, count(2.0 * std::numbers::pi / h)), family.angle);
    case FamilyKind::linear: return linear_transverse_sample(family.chart, std::max<std::size_t>(2, count(2.0 / h) + 1));
    }
    throw InputError("unknown sweep family");
}

/// One record per h, in the given (strictly decreasing) order.
inline std::vector<SweepRecord> density_sweep(const SweepFamily& family, const std::vector<double>& h_values)
{
    if (h_values.empty())
        throw InputError("sweep needs at least one h value");
    for (std::size_t i = 0; i < h_values.size(); ++i) {
        if (!(h_values[i] > 0.0) || !std::isfinite(h_values[i]))
            throw InputError("h values must be positive and finite");
        if (i > 0 && !(h_values[i] < h_values[i - 1]))
            throw InputError("h values must be strictly decreasing");
    }
    std::vector<SweepRecord> records;
    records.reserve(h_values.size());
    for (double h : h_values) {
        const SampledPair sp = realize(family_sample(family, h));
        const double k = *lp_constant(sp.space, sp.pair).k;
        records.push_back({h, sp.space.size(), k, k * h});
    }
    return records;
}

} // namespace lipaste

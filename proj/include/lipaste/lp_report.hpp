#pragma once

#include <optional>
#include <utility>

#include "metric_space.hpp"

namespace lipaste {

/**
 * Optimal constant k such that every cross pair (a, b) in A x B can be routed
 * through some intersection point at total length <= k * d(a, b).
 *
 * Disjoint pairs carry the separation instead of k. On finite spaces the pair
 * is always Lipschitz paste-able, so `lp` is true; the informative quantity is
 * the size of k.
 */
struct LpReport {
    bool lp = true;
    bool disjoint = false;
    std::optional<double> k;
    std::optional<double> separation;
    /// Lexicographically smallest cross pair (a, b), a != b, attaining k.
    std::optional<std::pair<Index, Index>> witness_pair;
    /// Smallest intersection index attaining the inner minimum for witness_pair.
    std::optional<Index> witness_x;
};

} // namespace lipaste

#pragma once

#include <stdexcept>
#include <string>

namespace lipaste {

/// Malformed or out-of-contract input: bad matrix shape, NaN entries,
/// invalid index sets, unparseable documents.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A constructed object failed a mathematical check it is required to pass
/// (e.g. a glued matrix that does not verify as a metric).
class MetricError : public std::runtime_error {
public:
    explicit MetricError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lipaste

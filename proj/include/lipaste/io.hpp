#pragma once

/**
 * @file io.hpp
 *
 * JSON documents for spaces, pairs, functions and covers, JSON renderings of
 * every report, and the sweep CSV. Built on nlohmann/json.
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "geometry.hpp"
#include "lipschitz.hpp"
#include "locality.hpp"
#include "metric_space.hpp"
#include "pasting.hpp"

namespace lipaste::io {

using json = nlohmann::json;

inline json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

namespace detail {

inline const json& field(const json& doc, const char* key, const char* what)
{
    if (!doc.is_object())
        throw InputError(std::string(what) + " document must be a JSON object");
    auto it = doc.find(key);
    if (it == doc.end())
        throw InputError(std::string(what) + " document is missing \"" + key + "\"");
    return *it;
}

inline std::vector<Index> indices(const json& arr, const std::string& what)
{
    if (!arr.is_array())
        throw InputError(what + " must be an array of indices");
    std::vector<Index> out;
    out.reserve(arr.size());
    for (const json& v : arr) {
        if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0))
            throw InputError(what + " must contain non-negative integers, found " + v.dump());
        out.push_back(v.get<Index>());
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Input documents
// ---------------------------------------------------------------------------

/// {"labels": [string...], "dist": [[number...]...]}
inline FiniteMetricSpace space_from_json(const json& doc)
{
    const json& labels = detail::field(doc, "labels", "space");
    const json& dist = detail::field(doc, "dist", "space");
    if (!labels.is_array() || !dist.is_array())
        throw InputError("space \"labels\" and \"dist\" must be arrays");
    std::vector<std::string> names;
    for (const json& l : labels) {
        if (!l.is_string())
            throw InputError("space labels must be strings");
        names.push_back(l.get<std::string>());
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(dist.size());
    for (const json& row : dist) {
        if (!row.is_array())
            throw InputError("space \"dist\" must be an array of rows");
        std::vector<double> r;
        r.reserve(row.size());
        for (const json& v : row) {
            if (!v.is_number())
                throw InputError("distance entries must be numbers, found " + v.dump());
            r.push_back(v.get<double>());
        }
        rows.push_back(std::move(r));
    }
    return FiniteMetricSpace(std::move(names), DistanceMatrix::from_rows(rows));
}

inline json space_to_json(const FiniteMetricSpace& space)
{
    json dist = json::array();
    for (Index i = 0; i < space.size(); ++i) {
        const auto row = space.dist().row(i);
        dist.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return {{"labels", space.labels()}, {"dist", std::move(dist)}};
}

/// {"A": [int...], "B": [int...]}
inline SubsetPair pair_from_json(const json& doc, std::size_t n)
{
    return SubsetPair(detail::indices(detail::field(doc, "A", "pair"), "pair A"),
                      detail::indices(detail::field(doc, "B", "pair"), "pair B"), n);
}

inline json pair_to_json(const SubsetPair& pair)
{
    return {{"A", pair.a()}, {"B", pair.b()}};
}

/// {"regions": [[int...]...]}
inline Cover cover_from_json(const json& doc, std::size_t n)
{
    const json& regions = detail::field(doc, "regions", "cover");
    if (!regions.is_array())
        throw InputError("cover \"regions\" must be an array");
    std::vector<std::vector<Index>> out;
    for (std::size_t r = 0; r < regions.size(); ++r)
        out.push_back(detail::indices(regions[r], "cover region " + std::to_string(r)));
    return Cover(std::move(out), n);
}

inline json cover_to_json(const Cover& cover)
{
    return {{"regions", cover.regions()}};
}

/// A space given inline as an object or by a path relative to @p base_dir.
inline FiniteMetricSpace space_ref_from_json(const json& ref, const std::filesystem::path& base_dir)
{
    if (ref.is_string()) {
        std::filesystem::path p = ref.get<std::string>();
        if (p.is_relative())
            p = base_dir / p;
        return space_from_json(read_json_file(p));
    }
    return space_from_json(ref);
}

/**
 * {"domain": <space or path>, "codomain": <space or path>, "assignment": [int...]}
 *
 * "domain" may be omitted when @p default_domain is supplied; when present
 * alongside a default it must be the same space.
 */
inline MappedFunction function_from_json(const json& doc, const std::filesystem::path& base_dir,
                                         const FiniteMetricSpace* default_domain = nullptr)
{
    if (!doc.is_object())
        throw InputError("function document must be a JSON object");
    std::shared_ptr<const FiniteMetricSpace> domain;
    if (auto it = doc.find("domain"); it != doc.end()) {
        domain = std::make_shared<const FiniteMetricSpace>(space_ref_from_json(*it, base_dir));
        if (default_domain && !(domain->dist() == default_domain->dist()))
            throw InputError("function domain does not match the given space");
    } else if (default_domain) {
        domain = std::make_shared<const FiniteMetricSpace>(*default_domain);
    } else {
        throw InputError("function document is missing \"domain\"");
    }
    auto codomain =
        std::make_shared<const FiniteMetricSpace>(space_ref_from_json(detail::field(doc, "codomain", "function"), base_dir));
    return MappedFunction(std::move(domain), std::move(codomain),
                          detail::indices(detail::field(doc, "assignment", "function"), "function assignment"));
}

inline json function_to_json(const MappedFunction& f)
{
    return {{"domain", space_to_json(f.domain())},
            {"codomain", space_to_json(f.codomain())},
            {"assignment", f.assignment()}};
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace detail {

template <typename T>
json optional_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

inline json optional_pair(const std::optional<std::pair<Index, Index>>& p)
{
    return p ? json::array({p->first, p->second}) : json(nullptr);
}

} // namespace detail

inline json violations_to_json(const std::vector<ViolationReport>& violations)
{
    json out = json::array();
    for (const auto& v : violations)
        out.push_back({{"kind", to_string(v.kind)}, {"witness", v.witness}, {"magnitude", v.magnitude}});
    return out;
}

inline json to_json(const LpReport& r)
{
    return {{"lp", r.lp},
            {"disjoint", r.disjoint},
            {"k", r.k ? json(*r.k) : json("undefined")},
            {"separation", detail::optional_json(r.separation)},
            {"witness_pair", detail::optional_pair(r.witness_pair)},
            {"witness_x", detail::optional_json(r.witness_x)}};
}

inline json to_json(const LipschitzReport& r)
{
    return {{"value", r.value}, {"witness", detail::optional_pair(r.witness)}};
}

inline json to_json(const BoundCheckReport& r)
{
    return {{"lip_a", r.lip_a}, {"lip_b", r.lip_b}, {"l0", r.l0},       {"k", r.k},
            {"l", r.l},         {"bound", r.bound}, {"lip", r.lip},     {"tolerance", r.tolerance},
            {"verdict", r.verdict}, {"tight", r.tight}};
}

inline json to_json(const SeparatedBoundReport& r)
{
    return {{"l0", r.l0},     {"separation", r.separation}, {"image_diameter", r.image_diameter},
            {"bound", r.bound}, {"lip", r.lip},             {"tolerance", r.tolerance},
            {"verdict", r.verdict}};
}

inline json to_json(const ConverseReport& r)
{
    return {{"k", r.k},           {"lip_identity", r.lip_identity}, {"lip_on_a", r.lip_on_a},
            {"lip_on_b", r.lip_on_b}, {"tolerance", r.tolerance},   {"agrees", r.agrees}};
}

inline json to_json(const LocalityReport& r)
{
    return {{"local_ks", r.local_ks},
            {"max_local_k", r.max_local_k},
            {"complement_k", r.complement_k},
            {"complement_size", r.complement_size},
            {"global_bound", r.global_bound},
            {"sum_bound", r.sum_bound},
            {"direct_k", r.direct_k},
            {"tolerance", r.tolerance},
            {"bound_holds", r.bound_holds}};
}

/// Glued space as a loadable space document plus provenance.
inline json to_json(const GluedMetricSpace& g)
{
    json doc = space_to_json(g.glued);
    doc["source_indices"] = g.source_indices;
    doc["A"] = g.pair.a();
    doc["B"] = g.pair.b();
    return doc;
}

/// {"dim": int, "points": [[number...]...], "A": [int...], "B": [int...]}
inline json point_cloud_to_json(const EmbeddedSample& s)
{
    json points = json::array();
    for (Index i = 0; i < s.points.size(); ++i) {
        const auto p = s.points.point(i);
        points.push_back(std::vector<double>(p.begin(), p.end()));
    }
    return {{"dim", s.points.dim()}, {"points", std::move(points)}, {"A", s.a}, {"B", s.b}};
}

inline EmbeddedSample point_cloud_from_json(const json& doc)
{
    const json& dim = detail::field(doc, "dim", "point cloud");
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0)
        throw InputError("point cloud \"dim\" must be a positive integer");
    EmbeddedSample s{PointCloud(dim.get<std::size_t>()), {}, {}, {}};
    const json& points = detail::field(doc, "points", "point cloud");
    if (!points.is_array())
        throw InputError("point cloud \"points\" must be an array");
    for (const json& p : points) {
        if (!p.is_array())
            throw InputError("each point must be an array of numbers");
        std::vector<double> xs;
        for (const json& v : p) {
            if (!v.is_number())
                throw InputError("point coordinates must be numbers");
            xs.push_back(v.get<double>());
        }
        s.points.add(xs);
    }
    s.a = make_index_set(detail::indices(detail::field(doc, "A", "point cloud"), "point cloud A"), s.points.size(), "A");
    s.b = make_index_set(detail::indices(detail::field(doc, "B", "point cloud"), "point cloud B"), s.points.size(), "B");
    return s;
}

inline json to_json(const std::vector<SweepRecord>& records)
{
    json out = json::array();
    for (const auto& r : records)
        out.push_back({{"h", r.h}, {"n_points", r.n_points}, {"k", r.k}, {"k_times_h", r.k_times_h}});
    return out;
}

/// 17 significant digits, so every double round-trips.
inline std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Header `h,n_points,k,k_times_h`, one row per record.
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records)
{
    out << "h,n_points,k,k_times_h\n";
    for (const auto& r : records)
        out << format_real(r.h) << ',' << r.n_points << ',' << format_real(r.k) << ',' << format_real(r.k_times_h)
            << '\n';
}

inline std::string sweep_csv(const std::vector<SweepRecord>& records)
{
    std::ostringstream out;
    write_sweep_csv(out, records);
    return out.str();
}

} // namespace lipaste::io

#pragma once

/**
 * @file json_io.hpp
 * @brief JSON serialization of the library's value types and the on-disk
 *        enumeration cache.
 *
 * Exact rationals are emitted as numerator/denominator strings together with
 * a 12-significant-digit decimal rendering; the decimal is presentation only.
 * Cache files are one JSON document per (model, r, antideg, selfint) key with
 * a schema-version field, written atomically via a temp-file rename.
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpfib/arith.hpp"
#include "dpfib/cones.hpp"
#include "dpfib/counting.hpp"
#include "dpfib/lattice.hpp"
#include "dpfib/monoid.hpp"

namespace dpfib {

inline constexpr int kCacheSchemaVersion = 1;

inline std::string model_name(SurfaceModel m) {
    return m == SurfaceModel::QuadricSurface ? "QuadricSurface" : "BlowUpOfPlane";
}

inline nlohmann::json rational_json(const Rational& x) {
    return {{"numerator", boost::multiprecision::numerator(x).str()},
            {"denominator", boost::multiprecision::denominator(x).str()},
            {"decimal", decimal_string(x)}};
}

inline nlohmann::json lattice_json(const PicardLattice& lat) {
    return {{"model", model_name(lat.model())}, {"r", lat.r()}};
}

inline nlohmann::json class_json(const ClassVector& c) { return {{"coords", c}}; }

inline nlohmann::json classes_json(const std::vector<ClassVector>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : v) arr.push_back(class_json(c));
    return arr;
}

/// Parses {"model": ..., "r": ...} back into a lattice.
inline PicardLattice lattice_from_json(const nlohmann::json& j) {
    const std::string model = j.at("model").get<std::string>();
    if (model == "QuadricSurface") return PicardLattice::quadric_surface();
    if (model == "BlowUpOfPlane")
        return PicardLattice::blow_up_of_plane(j.at("r").get<int>());
    throw std::invalid_argument("unknown surface model: " + model);
}

inline nlohmann::json alpha_json(const AlphaResult& a) {
    return {{"alpha", rational_json(a.alpha)},
            {"rho", a.rho},
            {"polytope_volume", rational_json(a.polytope_volume)}};
}

inline nlohmann::json cone_json(const RationalCone& cone) {
    auto vecs = [](const std::vector<RatVec>& vs) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& v : vs) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& x : v) row.push_back(rational_json(x));
            arr.push_back(std::move(row));
        }
        return arr;
    };
    return {{"ambient_rank", cone.ambient_rank},
            {"generators", vecs(cone.generators)},
            {"facets", vecs(cone.facets)}};
}

inline nlohmann::json convergence_json(const ConvergenceReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rep.rows)
        rows.push_back({{"d", row.d},
                        {"N", rational_json(row.N)},
                        {"ratio", rational_json(row.ratio)},
                        {"target", rational_json(row.target)}});
    return {{"rows", std::move(rows)}, {"truncated", rep.truncated}};
}

inline nlohmann::json saturation_json(const SaturationReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rep.rows)
        rows.push_back({{"class", class_json(row.total_class)},
                        {"fiber_size", row.fiber_size}});
    return {{"rows", std::move(rows)}, {"all_singleton", rep.all_singleton}};
}

/// Cache file name for one enumeration key.
inline std::filesystem::path cache_path(const std::filesystem::path& dir,
                                        const PicardLattice& lat, long long antideg,
                                        long long selfint) {
    return dir / ("enum-" + model_name(lat.model()) + "-r" + std::to_string(lat.r()) + "-a" +
                  std::to_string(antideg) + "-s" + std::to_string(selfint) + ".json");
}

/// Returns the cached class list when a file with the current schema exists.
inline std::optional<std::vector<ClassVector>> load_cached_enumeration(
    const std::filesystem::path& dir, const PicardLattice& lat, long long antideg,
    long long selfint) {
    const auto path = cache_path(dir, lat, antideg, selfint);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("schema_version").get<int>() != kCacheSchemaVersion) return std::nullopt;
        std::vector<ClassVector> out;
        for (const auto& e : j.at("classes"))
            out.push_back(e.at("coords").get<ClassVector>());
        return out;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // stale or corrupt cache entries are recomputed
    }
}

/// Writes a cache entry atomically (temp file in the same directory, renamed
/// over the target).
inline void store_cached_enumeration(const std::filesystem::path& dir, const PicardLattice& lat,
                                     long long antideg, long long selfint,
                                     const std::vector<ClassVector>& classes) {
    std::filesystem::create_directories(dir);
    const nlohmann::json j{{"schema_version", kCacheSchemaVersion},
                           {"model", model_name(lat.model())},
                           {"r", lat.r()},
                           {"antideg", antideg},
                           {"selfint", selfint},
                           {"classes", classes_json(classes)}};
    const auto target = cache_path(dir, lat, antideg, selfint);
    const auto tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp);
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, target);
}

/// Cached wrapper around enumerate_classes; an empty directory disables
/// caching.
inline std::vector<ClassVector> enumerate_classes_cached(const std::filesystem::path& dir,
                                                         const PicardLattice& lat,
                                                         long long antideg, long long selfint) {
    if (dir.empty()) return enumerate_classes(lat, antideg, selfint);
    if (auto hit = load_cached_enumeration(dir, lat, antideg, selfint)) return *hit;
    auto fresh = enumerate_classes(lat, antideg, selfint);
    store_cached_enumeration(dir, lat, antideg, selfint, fresh);
    return fresh;
}

}  // namespace dpfib

#pragma once

/**
 * @file bundles.hpp
 * @brief Numerical calculus of line bundles and rank-2 bundles on a smooth
 *        projective genus-g curve: Riemann-Roch, vanishing thresholds, slope
 *        gap validation, and the freeness/point-count predicates for section
 *        normal bundles.
 *
 * Every predicate here encodes a one-directional implication; when the
 * hypotheses of a statement are not met the answer is Unknown, never a guess.
 */

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace dpfib {

/// Three-valued answer for numerical predicates that cannot always decide.
enum class Tri { Yes, No, Unknown };

enum class BundleStructure {
    SemiStable,             ///< no destabilizing subbundle
    UnstableIndecomposable, ///< destabilized by a maximal-slope line subbundle
    Split,                  ///< direct sum of two line bundles
};

/**
 * @brief Numerical descriptor of a section's normal bundle (rank 1 or 2).
 *
 * For rank 2, `deg_L2` is the degree of the maximal-slope subbundle and
 * `deg_L1` the degree of the quotient; they must sum to `total_degree`.
 * `generic` records whether cohomology of the pieces is that of a general
 * bundle of the given degree; special bundles must state their h^0 through
 * `h0_override`.
 */
struct NormalBundleDescriptor {
    int genus = 0;
    int rank = 1;
    long long total_degree = 0;
    BundleStructure structure = BundleStructure::SemiStable;
    std::optional<long long> deg_L2;  ///< maximal-slope subbundle degree
    std::optional<long long> deg_L1;  ///< quotient line bundle degree
    bool generic = true;
    std::optional<long long> h0_override;  ///< h^0 of a stated special bundle
};

/// Thrown when a descriptor violates the slope-gap constraints.
class DescriptorError : public std::invalid_argument {
public:
    explicit DescriptorError(const std::string& what) : std::invalid_argument(what) {}
};

/// Euler characteristic chi = degree + rank(1 - genus).
inline long long riemann_roch_chi(int rank, long long degree, int genus) {
    if (rank != 1 && rank != 2) throw std::invalid_argument("rank must be 1 or 2");
    return degree + static_cast<long long>(rank) * (1 - genus);
}

/**
 * @brief Validates a descriptor's slope-gap constraints.
 *
 * Rank-2 constraints: an unstable indecomposable bundle satisfies
 * 0 < deg_L2 - deg_L1 <= 2g - 2; a semistable bundle with a recorded
 * decomposition satisfies 0 <= deg_L2 - deg_L1 <= g.
 * @throws DescriptorError naming the violated constraint.
 */
inline void validate_descriptor(const NormalBundleDescriptor& b) {
    if (b.genus < 0) throw DescriptorError("genus must be non-negative");
    if (b.rank != 1 && b.rank != 2) throw DescriptorError("rank must be 1 or 2");
    if (b.rank == 1) return;
    const bool have = b.deg_L1.has_value() && b.deg_L2.has_value();
    if (have && *b.deg_L1 + *b.deg_L2 != b.total_degree)
        throw DescriptorError("deg_L1 + deg_L2 must equal total_degree");
    const long long gap = have ? *b.deg_L2 - *b.deg_L1 : 0;
    switch (b.structure) {
        case BundleStructure::UnstableIndecomposable:
            if (!have) throw DescriptorError("unstable descriptor needs deg_L1, deg_L2");
            if (gap <= 0)
                throw DescriptorError("unstable bundle needs a positive slope gap");
            if (gap > 2LL * b.genus - 2)
                throw DescriptorError("unstable indecomposable slope gap exceeds 2g - 2");
            break;
        case BundleStructure::SemiStable:
            if (have) {
                if (gap < 0) throw DescriptorError("semistable gap must be >= 0");
                if (gap > b.genus)
                    throw DescriptorError("semistable decomposition gap exceeds g");
            }
            break;
        case BundleStructure::Split:
            if (!have) throw DescriptorError("split descriptor needs deg_L1, deg_L2");
            break;
    }
}

namespace detail {

/// Vanishing of h^1 for a single line bundle of the given degree.
inline Tri line_bundle_h1_vanishes(int g, long long deg, bool generic) {
    if (deg >= 2LL * g - 1) return Tri::Yes;
    if (generic && deg >= g) return Tri::Yes;
    // Forced failure: h^0 >= 0 gives h^1 >= g - 1 - deg, positive when deg <= g - 2.
    if (deg <= g - 2) return Tri::No;
    return Tri::Unknown;
}

}  // namespace detail

/**
 * @brief Does h^1 of the bundle vanish?
 *
 * Thresholds: rank 1 at degree 2g-1 (generically g); unstable indecomposable
 * rank 2 at total degree 6g-4; semistable at 5g-2; split when both summands
 * clear the rank-1 threshold. No is returned only when h^1 > 0 is forced for
 * every bundle of the given numerical shape (negative Euler characteristic,
 * or a summand of degree <= g-2).
 */
inline Tri h1_vanishes(const NormalBundleDescriptor& b) {
    validate_descriptor(b);
    const int g = b.genus;
    if (b.rank == 1) return detail::line_bundle_h1_vanishes(g, b.total_degree, b.generic);

    // Forced failure independent of structure: chi < 0 means h^1 >= -chi > 0.
    const long long chi = riemann_roch_chi(2, b.total_degree, g);

    switch (b.structure) {
        case BundleStructure::UnstableIndecomposable:
            if (b.total_degree >= 6LL * g - 4) return Tri::Yes;
            break;
        case BundleStructure::SemiStable:
            if (b.total_degree >= 5LL * g - 2) return Tri::Yes;
            break;
        case BundleStructure::Split: {
            const Tri t1 = detail::line_bundle_h1_vanishes(g, *b.deg_L1, b.generic);
            const Tri t2 = detail::line_bundle_h1_vanishes(g, *b.deg_L2, b.generic);
            if (t1 == Tri::Yes && t2 == Tri::Yes) return Tri::Yes;
            if (t1 == Tri::No || t2 == Tri::No) return Tri::No;
            break;
        }
    }
    if (chi < 0) return Tri::No;
    return Tri::Unknown;
}

/**
 * @brief Largest number of general points that deformations of the section
 *        are guaranteed to pass through.
 *
 * Requires h1_vanishes = Yes, total degree >= 4g-4 for unstable/split data and
 * >= 6g-2 for semistable data (relative dimension 2). Relative dimension 1
 * uses h^0 of the bundle itself; relative dimension 2 uses h^0 of the
 * quotient line bundle for unstable/split data and floor(h^0/2) for
 * semistable data. Returns std::nullopt (Unknown) when hypotheses fail.
 */
inline std::optional<long long> max_general_points(const NormalBundleDescriptor& b,
                                                   int relative_dim) {
    validate_descriptor(b);
    if (relative_dim != 1 && relative_dim != 2)
        throw std::invalid_argument("relative dimension must be 1 or 2");
    if (h1_vanishes(b) != Tri::Yes) return std::nullopt;
    const int g = b.genus;

    if (relative_dim == 1) {
        // h^0 = chi once h^1 vanishes.
        return riemann_roch_chi(b.rank, b.total_degree, g);
    }
    if (b.rank != 2) return std::nullopt;
    switch (b.structure) {
        case BundleStructure::UnstableIndecomposable:
        case BundleStructure::Split: {
            if (b.total_degree < 4LL * g - 4) return std::nullopt;
            return *b.deg_L1 + 1 - g;  // h^0 of the quotient line bundle
        }
        case BundleStructure::SemiStable: {
            if (b.total_degree < 6LL * g - 2) return std::nullopt;
            const long long h0 = b.total_degree + 2LL * (1 - g);
            return h0 / 2;
        }
    }
    return std::nullopt;
}

/**
 * @brief Relative freeness certificate: Yes when the quotient line bundle has
 *        h^0 >= g+1 (unstable/split) or the bundle has h^0 >= 4g+1
 *        (semistable); otherwise Unknown.
 */
inline Tri is_relatively_free(const NormalBundleDescriptor& b) {
    validate_descriptor(b);
    const int g = b.genus;
    if (b.rank != 2) return Tri::Unknown;
    switch (b.structure) {
        case BundleStructure::UnstableIndecomposable:
        case BundleStructure::Split: {
            const long long h0_L1 = *b.deg_L1 + 1 - g;  // valid once h^1(L1) = 0
            if (detail::line_bundle_h1_vanishes(g, *b.deg_L1, b.generic) == Tri::Yes &&
                h0_L1 >= g + 1)
                return Tri::Yes;
            return Tri::Unknown;
        }
        case BundleStructure::SemiStable: {
            if (h1_vanishes(b) == Tri::Yes && b.total_degree + 2LL * (1 - g) >= 4LL * g + 1)
                return Tri::Yes;
            return Tri::Unknown;
        }
    }
    return Tri::Unknown;
}

/**
 * @brief Freeness of a section of a relative-dimension-1 fibration: Yes when
 *        deformations pass through g+1 general points or the height is at
 *        least 2g; otherwise Unknown.
 */
inline Tri surface_freeness(int genus, long long degree, long long points_through) {
    if (points_through >= genus + 1) return Tri::Yes;
    if (degree >= 2LL * genus) return Tri::Yes;
    return Tri::Unknown;
}

}  // namespace dpfib

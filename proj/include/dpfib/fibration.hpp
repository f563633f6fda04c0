#pragma once

/**
 * @file fibration.hpp
 * @brief Numerical descriptor of a del Pezzo fibration over a genus-g curve
 *        and the explicit height thresholds governing its spaces of sections.
 *
 * Everything here is exact integer/rational arithmetic: each threshold is a
 * maximum of explicit affine expressions in the descriptor's invariants, and
 * each is spelled out term by term so reports can itemize the formula.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpfib/arith.hpp"

namespace dpfib {

/**
 * @brief Table of the maximum dimension of any component of the section space
 *        at each height, with an optional default beyond a stated horizon.
 */
struct MaxDefTable {
    std::map<long long, long long> entries;         ///< height -> max component dimension
    std::optional<long long> horizon;               ///< heights above this use the default
    std::optional<long long> default_beyond = 0;    ///< value past the horizon; nullopt = error

    /// max{0, max over heights <= q of the table}. Errors when q exceeds the
    /// horizon and no default applies.
    long long max_up_to(long long q) const {
        if (horizon && q > *horizon && !default_beyond)
            throw std::out_of_range("max-dimension table queried beyond its horizon (" +
                                    std::to_string(*horizon) + ") at " + std::to_string(q));
        long long best = 0;
        for (const auto& [h, v] : entries) {
            if (h > q) break;
            best = std::max(best, v);
        }
        if (horizon && q > *horizon) best = std::max(best, *default_beyond);
        return best;
    }
};

/**
 * @brief Numerical invariants of a del Pezzo fibration X -> B.
 *
 * `neg` is the minimum height of any section; `m_xb` bounds the vertical
 * intersection any section is forced into; `profile_count` is the number of
 * intersection profiles over the reducible fibers; `brauer_order` and
 * `lattice_index` are the arithmetic scalars entering the counting constant.
 */
struct FibrationDescriptor {
    int fiber_degree = 9;       ///< anticanonical degree of the generic fiber, 1..9
    int base_genus = 0;         ///< g(B)
    long long neg = 0;          ///< minimum section height
    long long m_xb = 0;         ///< forced vertical intersection bound
    MaxDefTable maxdef;         ///< per-height component dimension bounds
    long long profile_count = 1;
    long long brauer_order = 1;
    long long lattice_index = 1;
};

inline void validate_descriptor(const FibrationDescriptor& f) {
    if (f.fiber_degree < 1 || f.fiber_degree > 9)
        throw std::invalid_argument("fiber degree must be in [1, 9]");
    if (f.base_genus < 0) throw std::invalid_argument("base genus must be >= 0");
    if (f.m_xb < 0) throw std::invalid_argument("m(X/B) must be >= 0");
    if (f.profile_count < 1) throw std::invalid_argument("profile count must be >= 1");
    if (f.brauer_order < 1) throw std::invalid_argument("Brauer order must be >= 1");
    if (f.lattice_index < 1) throw std::invalid_argument("lattice index must be >= 1");
}

/**
 * @brief Height threshold above which sections deform too much to break:
 *        max{3g+1, -2 neg + 6g - 2, 2g - 1 + 2 max{4g - 2, 3g - 1 - neg}}.
 */
inline long long threshold_C(const FibrationDescriptor& f) {
    validate_descriptor(f);
    const long long g = f.base_genus, neg = f.neg;
    return std::max({3 * g + 1, -2 * neg + 6 * g - 2,
                     2 * g - 1 + 2 * std::max(4 * g - 2, 3 * g - 1 - neg)});
}

/**
 * @brief Height threshold above which every dominant family of sections is
 *        relatively free:
 *        max{6g - 2 + m, -2 neg + 12g - 2, 8g + 2 max{4g - 2, 5g - 1 - neg}}.
 */
inline long long threshold_nonfree(const FibrationDescriptor& f) {
    validate_descriptor(f);
    const long long g = f.base_genus, neg = f.neg, m = f.m_xb;
    return std::max({6 * g - 2 + m, -2 * neg + 12 * g - 2,
                     8 * g + 2 * std::max(4 * g - 2, 5 * g - 1 - neg)});
}

/**
 * @brief Height threshold for the movable bend-and-break property of
 *        relatively free sections:
 *        max{10g + 3,
 *            3 maxdef(<= 6g) + 6g + 3 + 2 max{0, -neg},
 *            -2 neg + 12g + 5,
 *            -2 neg + 21g - 3,
 *            3 maxdef(<= 8g - neg) - neg + 6g + 1}.
 */
inline long long threshold_Q(const FibrationDescriptor& f) {
    validate_descriptor(f);
    const long long g = f.base_genus, neg = f.neg;
    const long long md6 = f.maxdef.max_up_to(6 * g);
    const long long md8 = f.maxdef.max_up_to(8 * g - neg);
    return std::max({10 * g + 3,
                     3 * md6 + 6 * g + 3 + 2 * std::max(0LL, -neg),
                     -2 * neg + 12 * g + 5,
                     -2 * neg + 21 * g - 3,
                     3 * md8 - neg + 6 * g + 1});
}

/// Movable bend-and-break threshold for a ruled surface over a genus-g base:
/// max{2, 2g + 1, 4g + 1 - neg_F}.
inline long long surface_mbb_threshold(int genus, long long neg_F) {
    const long long g = genus;
    return std::max({2LL, 2 * g + 1, 4 * g + 1 - neg_F});
}

/**
 * @brief Breaking offset s for a section of height -K.C on a ruled surface:
 *        s = -(1/2)(-K.C) + (1/2) neg_F + max{4g - 2, 2g - neg_F},
 *        as an exact rational (possibly a half-integer).
 */
inline Rational totalbreaking_s_rational(int genus, long long neg_F, long long minus_K_dot_C) {
    const long long g = genus;
    const long long mx = std::max(4 * g - 2, 2 * g - neg_F);
    return Rational(-minus_K_dot_C, 2) + Rational(neg_F, 2) + Rational(mx);
}

/**
 * @brief Integer-valued variant of the breaking offset; requires -K.C and
 *        neg_F to have the same parity so the result is integral.
 * @throws std::invalid_argument on a parity mismatch.
 */
inline long long totalbreaking_s(int genus, long long neg_F, long long minus_K_dot_C) {
    if (((minus_K_dot_C - neg_F) % 2 + 2) % 2 != 0)
        throw std::invalid_argument(
            "breaking offset is a half-integer: -K.C and neg_F have different parities");
    const Rational s = totalbreaking_s_rational(genus, neg_F, minus_K_dot_C);
    return floor_rational(s).convert_to<long long>();
}

/**
 * @brief Height lower bound d + 3n - (3/2) maxdef(d) for sections through n
 *        general points avoiding a dimension-maxdef component at height d.
 * @pre n >= maxdef_d.
 */
inline Rational maxdef_height_bound(long long d, long long n, long long maxdef_d) {
    if (n < maxdef_d)
        throw std::invalid_argument("point count must be at least the component dimension bound");
    return Rational(d) + Rational(3 * n) - Rational(3 * maxdef_d, 2);
}

enum class HeightParity { Even, Odd };

/**
 * @brief Number of general points certifying movability at a given height
 *        parity: ceil((3/2) maxdef(<= 6g)) + 2g + 2 + max{0, -neg} for even
 *        heights, and the same minus 2 for odd heights.
 */
inline long long points_threshold(int genus, long long neg, long long maxdef_6g,
                                  HeightParity parity) {
    const long long g = genus;
    const long long c = ceil_rational(Rational(3 * maxdef_6g, 2)).convert_to<long long>();
    const long long shared = c + 2 * g + std::max(0LL, -neg);
    return parity == HeightParity::Even ? shared + 2 : shared;
}

/// Expected dimension of a family of sections with r fixed points:
/// deg + (ambient_dim - 1)(1 - genus - r).
inline long long expected_dimension(long long deg, int genus, int ambient_dim, long long r) {
    if (ambient_dim != 2 && ambient_dim != 3)
        throw std::invalid_argument("ambient dimension must be 2 or 3");
    return deg + static_cast<long long>(ambient_dim - 1) * (1 - genus - r);
}

/**
 * @brief Dimension bound deg + 2 - genus + m for a dominant non-free family.
 * @pre deg >= 6g - 2 + m.
 */
inline long long nonfree_dim_bound(long long deg, int genus, long long m_xb) {
    if (deg < 6LL * genus - 2 + m_xb)
        throw std::invalid_argument("height below the dominant-family hypothesis 6g - 2 + m");
    return deg + 2 - genus + m_xb;
}

/// Maximum number of general points a dominant non-free family can pass
/// through: the base genus (vacuous at genus 0, where no such family exists).
inline long long nonfree_max_points(int genus) { return genus; }

/// Universal upper bound for the minimal section height defect of a ruled
/// surface over a genus-g curve; the matching lower bound is -g.
inline long long neg_ruled_bound(int genus) { return genus; }

}  // namespace dpfib

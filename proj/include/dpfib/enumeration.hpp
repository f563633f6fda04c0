#pragma once

/**
 * @file enumeration.hpp
 * @brief Enumeration and classification of special curve classes on a del
 *        Pezzo surface: (-1)-curves, anticanonical conics, systems of lines,
 *        and decompositions of line-system members.
 *
 * Enumeration is exhaustive and exact. On the blow-up model, a class
 * c = aH + sum_i c_i E_i with (-K).c = D and c.c = S satisfies
 * 3a + sum c_i = D and a^2 - sum c_i^2 = S; the Cauchy-Schwarz inequality
 * (sum c_i)^2 <= r * (sum c_i^2) bounds a, and the same inequality applied to
 * suffixes prunes the coordinate recursion. Results are sorted
 * lexicographically on coordinates so golden outputs are stable.
 */

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpfib/lattice.hpp"

namespace dpfib {

/// Thrown when a class fails the constraints of conic classification.
class ClassificationError : public std::domain_error {
public:
    explicit ClassificationError(const std::string& what) : std::domain_error(what) {}
};

namespace detail {

/// True when a suffix of m coordinates can realize sum = t and sum of squares = q.
inline bool suffix_feasible(long long t, long long q, int m) {
    if (q < 0) return false;
    if (m == 0) return t == 0 && q == 0;
    // Cauchy-Schwarz: t^2 <= m * q.
    return checked_mul(t, t) <= checked_mul(m, q);
}

inline void enumerate_suffix(long long t, long long q, int m, ClassVector& prefix,
                             std::vector<ClassVector>& out) {
    if (m == 0) {
        if (t == 0 && q == 0) out.push_back(prefix);
        return;
    }
    if (!suffix_feasible(t, q, m)) return;
    // Bounds for the next coordinate x: x^2 <= q, refined per-candidate by the
    // feasibility of the remaining suffix.
    long long bound = static_cast<long long>(std::sqrt(static_cast<double>(q))) + 1;
    for (long long x = -bound; x <= bound; ++x) {
        long long x2 = checked_mul(x, x);
        if (x2 > q) continue;
        if (!suffix_feasible(t - x, q - x2, m - 1)) continue;
        prefix.push_back(x);
        enumerate_suffix(t - x, q - x2, m - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

/**
 * @brief All integral classes c with (-K).c = antideg and c.c = selfint.
 *
 * Deterministic: the result is sorted lexicographically on coordinates.
 * Returns an empty list when no solutions exist.
 * @pre antideg >= 1.
 */
inline std::vector<ClassVector> enumerate_classes(const PicardLattice& lat, long long antideg,
                                                  long long selfint) {
    if (antideg < 1)
        throw std::invalid_argument("anticanonical degree must be >= 1");
    std::vector<ClassVector> out;

    if (lat.model() == SurfaceModel::QuadricSurface) {
        // c = (x, y): (-K).c = 2(x+y), c.c = 2xy.
        if (antideg % 2 != 0 || selfint % 2 != 0) return out;
        long long s = antideg / 2, p = selfint / 2;
        // x + y = s, x*y = p: x solves x^2 - s x + p = 0.
        long long disc = checked_sub(checked_mul(s, s), checked_mul(4, p));
        if (disc < 0) return out;
        long long root = static_cast<long long>(std::sqrt(static_cast<double>(disc)));
        while (root * root > disc) --root;
        while ((root + 1) * (root + 1) <= disc) ++root;
        if (root * root != disc) return out;
        for (long long x : {(s - root) / 2, (s + root) / 2}) {
            long long y = s - x;
            if (x + y == s && x * y == p) out.push_back({x, y});
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    const int r = lat.r();
    if (r == 0) {
        // c = aH: 3a = antideg, a^2 = selfint.
        if (antideg % 3 == 0) {
            long long a = antideg / 3;
            if (checked_mul(a, a) == selfint) out.push_back({a});
        }
        return out;
    }

    // Range of a from (9-r) a^2 - 6 D a + D^2 + r S <= 0 (Cauchy-Schwarz).
    const long long D = antideg, S = selfint;
    const long long lead = 9 - r;
    const double disc = 36.0 * static_cast<double>(D) * static_cast<double>(D) -
                        4.0 * static_cast<double>(lead) *
                            (static_cast<double>(D) * static_cast<double>(D) +
                             static_cast<double>(r) * static_cast<double>(S));
    if (disc < 0) return out;
    const double sq = std::sqrt(disc);
    const long long alo = static_cast<long long>(std::floor((6.0 * D - sq) / (2.0 * lead))) - 1;
    const long long ahi = static_cast<long long>(std::ceil((6.0 * D + sq) / (2.0 * lead))) + 1;

    for (long long a = alo; a <= ahi; ++a) {
        // Exact re-check of the feasibility window for this a.
        const long long t = checked_sub(D, checked_mul(3, a));           // sum of c_i
        const long long q = checked_sub(checked_mul(a, a), S);           // sum of c_i^2
        if (!detail::suffix_feasible(t, q, r)) continue;
        ClassVector prefix{a};
        detail::enumerate_suffix(t, q, r, prefix, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The (-1)-classes: (-K).c = 1, c.c = -1.
inline std::vector<ClassVector> lines(const PicardLattice& lat) {
    return enumerate_classes(lat, 1, -1);
}

/// Conic-fibration classes: (-K).c = 2, c.c = 0.
inline std::vector<ClassVector> conic_classes(const PicardLattice& lat) {
    return enumerate_classes(lat, 2, 0);
}

/// Systems of lines: (-K).L = 3, L.L = 1.
inline std::vector<ClassVector> line_systems(const PicardLattice& lat) {
    return enumerate_classes(lat, 3, 1);
}

enum class ConicKind {
    ConicFibrationMember,                   ///< c^2 = 0; smooth member of a conic fibration
    Degree2Anticanonical,                   ///< degree-2 surface, c = -K; one node
    Degree1PullbackOfDegree2Anticanonical,  ///< degree-1 surface, c^2 = 2; one node
    Degree1TwiceAnticanonical,              ///< degree-1 surface, c = -2K; two nodes
};

struct ConicCase {
    ConicKind kind;
    int generic_node_count;  ///< nodes of a generic member: 0, 1, or 2
};

/**
 * @brief Classifies a class of anticanonical degree 2 into one of the four
 *        conic cases.
 *
 * Constraints checked, each with a named error: (-K).c = 2; c.c even and
 * >= 0 (adjunction); degree * c.c - 4 <= 0 (Hodge index).
 */
inline ConicCase classify_anticanonical_conic(const PicardLattice& lat, const ClassVector& c) {
    const long long deg = lat.anticanonical_degree(c);
    if (deg != 2)
        throw ClassificationError("constraint (-K).c = 2 violated: got " + std::to_string(deg));
    const long long c2 = lat.self_intersection(c);
    if (c2 < 0)
        throw ClassificationError("constraint c.c >= 0 violated: got " + std::to_string(c2));
    if (c2 % 2 != 0)
        throw ClassificationError("constraint c.c even (adjunction) violated: got " +
                                  std::to_string(c2));
    const long long d = lat.degree();
    if (checked_mul(d, c2) - 4 > 0)
        throw ClassificationError("constraint d*c.c - 4 <= 0 (Hodge index) violated: d = " +
                                  std::to_string(d) + ", c.c = " + std::to_string(c2));

    if (c2 == 0) return {ConicKind::ConicFibrationMember, 0};
    if (d == 2 && c2 == 2) {
        if (c != lat.anticanonical_class())
            throw ClassificationError("degree-2 class with c.c = 2 must equal -K");
        return {ConicKind::Degree2Anticanonical, 1};
    }
    if (d == 1 && c2 == 2) {
        // Witness: c + K must be a (-1)-class.
        const ClassVector w = add_classes(c, lat.canonical_class());
        if (lat.self_intersection(w) != -1 || lat.anticanonical_degree(w) != 1)
            throw ClassificationError(
                "degree-1 class with c.c = 2 rejected: c + K is not a (-1)-class");
        return {ConicKind::Degree1PullbackOfDegree2Anticanonical, 1};
    }
    if (d == 1 && c2 == 4) {
        if (c != scale_class(2, lat.anticanonical_class()))
            throw ClassificationError("degree-1 class with c.c = 4 must equal -2K");
        return {ConicKind::Degree1TwiceAnticanonical, 2};
    }
    throw ClassificationError("no conic case matches degree " + std::to_string(d) +
                              " with c.c = " + std::to_string(c2));
}

enum class DecompositionShape {
    SmoothCubic,       ///< the class itself, irreducible
    LinePlusConic,     ///< E + Q with E a line, Q a conic, E.Q = 1
    ChainOfThreeLines  ///< E1 + E2 + E3 with E1.E2 = E2.E3 = 1, E1.E3 = 0
};

struct LineSystemDecomposition {
    DecompositionShape shape;
    std::vector<ClassVector> parts;  ///< parts sum to the input class
};

/**
 * @brief All decompositions of a line-system class into line/conic/cubic
 *        pieces.
 *
 * Returns the singleton (SmoothCubic), every line+conic pair, and every chain
 * of three lines (up to reversal). Asserts that no decomposition falls
 * outside the three shapes: every line+conic pair summing to L meets in one
 * point, and every line triple summing to L is a chain under some ordering.
 * @pre (-K).L = 3 and L.L = 1.
 */
inline std::vector<LineSystemDecomposition> decompose_line_system(const PicardLattice& lat,
                                                                  const ClassVector& L) {
    if (lat.anticanonical_degree(L) != 3 || lat.self_intersection(L) != 1)
        throw std::invalid_argument("class is not a system of lines ((-K).L = 3, L.L = 1)");

    std::vector<LineSystemDecomposition> out;
    out.push_back({DecompositionShape::SmoothCubic, {L}});

    const auto line_list = lines(lat);
    const auto conic_list = conic_classes(lat);

    for (const auto& e : line_list) {
        const ClassVector q = subtract_classes(L, e);
        if (!std::binary_search(conic_list.begin(), conic_list.end(), q)) continue;
        const long long m = lat.pairing(e, q);
        if (m != 1)
            throw std::logic_error("line + conic decomposition with E.Q = " + std::to_string(m) +
                                   " falls outside the expected shapes");
        out.push_back({DecompositionShape::LinePlusConic, {e, q}});
    }

    // Line triples (unordered, with repetition allowed in class terms).
    const size_t n = line_list.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            for (size_t k = j; k < n; ++k) {
                const ClassVector sum =
                    add_classes(add_classes(line_list[i], line_list[j]), line_list[k]);
                if (sum != L) continue;
                // Find an ordering making a chain: middle meets both ends once,
                // ends disjoint.
                const std::array<std::array<size_t, 3>, 3> orders = {
                    {{i, j, k}, {j, i, k}, {i, k, j}}};
                bool found = false;
                for (const auto& ord : orders) {
                    const auto& a = line_list[ord[0]];
                    const auto& b = line_list[ord[1]];
                    const auto& c = line_list[ord[2]];
                    if (lat.pairing(a, b) == 1 && lat.pairing(b, c) == 1 &&
                        lat.pairing(a, c) == 0) {
                        // Canonical orientation: smaller end first (mod reversal).
                        out.push_back({DecompositionShape::ChainOfThreeLines,
                                       a <= c ? std::vector<ClassVector>{a, b, c}
                                              : std::vector<ClassVector>{c, b, a}});
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw std::logic_error(
                        "line triple summing to L is not a chain under any ordering");
            }
    return out;
}

/// Position of a vertical curve class relative to the critical Fujita value.
enum class VerticalCurveClass {
    AInvariantGreater,  ///< lines; the anticanonical class in degree 1
    AInvariantEqual,    ///< conic-fibration members and the low-degree special cases
    AInvariantLess,     ///< everything else (general movable classes)
};

/**
 * @brief Classifies a vertical curve class by whether its ambient surface has
 *        Fujita invariant above, at, or below the fibration's.
 *
 * Multiples k*Q (k >= 1) of a conic-fibration class count as fibration
 * members, mirroring the formal multiples of the gluing monoid.
 */
inline VerticalCurveClass classify_vertical_curve_class(const PicardLattice& lat,
                                                        const ClassVector& c) {
    const long long deg = lat.anticanonical_degree(c);
    const long long c2 = lat.self_intersection(c);
    const int d = lat.degree();
    const ClassVector antik = lat.anticanonical_class();

    if (deg == 1 && c2 == -1) return VerticalCurveClass::AInvariantGreater;
    if (d == 1 && c == antik) return VerticalCurveClass::AInvariantGreater;

    // Multiples of conic-fibration classes: c = k*Q with Q a conic class.
    if (c2 == 0 && deg >= 2 && deg % 2 == 0) {
        const long long k = deg / 2;
        bool divisible = true;
        ClassVector base(c.size());
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] % k != 0) { divisible = false; break; }
            base[i] = c[i] / k;
        }
        if (divisible) {
            const auto conics = conic_classes(lat);
            if (std::binary_search(conics.begin(), conics.end(), base))
                return VerticalCurveClass::AInvariantEqual;
        }
    }
    if (d == 2 && c == antik) return VerticalCurveClass::AInvariantEqual;
    if (d == 1 && c == scale_class(2, antik)) return VerticalCurveClass::AInvariantEqual;
    if (d == 1 && deg == 2 && c2 == 2) {
        // Pullback of a degree-2 anticanonical member: witnessed by c + K.
        const ClassVector w = add_classes(c, lat.canonical_class());
        if (lat.self_intersection(w) == -1 && lat.anticanonical_degree(w) == 1)
            return VerticalCurveClass::AInvariantEqual;
    }
    return VerticalCurveClass::AInvariantLess;
}

}  // namespace dpfib

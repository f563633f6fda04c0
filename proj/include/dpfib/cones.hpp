#pragma once

/**
 * @file cones.hpp
 * @brief Exact polyhedral cone computations for del Pezzo lattices: effective
 *        cone, nef cone of curves, Fujita invariant, alpha constant, and
 *        lattice-point counting in truncated nef cones.
 *
 * The workhorse is an incremental double description method over exact
 * rationals: given covectors a_1..a_m, it returns the extremal rays of
 * {y : a_i . y >= 0 for all i}. Rays are canonicalized to primitive integer
 * vectors, so all cone data is reproducible and exact. Volumes are computed
 * by simplicial triangulation with rational determinants; the standard basis
 * of class coordinates is declared unimodular, which fixes the lattice
 * normalization of every volume below.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpfib/arith.hpp"
#include "dpfib/enumeration.hpp"
#include "dpfib/lattice.hpp"

namespace dpfib {

using RatVec = std::vector<Rational>;

/// Thrown for cones that are neither pointed nor full-dimensional where the
/// algorithm requires them to be.
class DegenerateConeError : public std::domain_error {
public:
    explicit DegenerateConeError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when a computation would exceed its configured ray budget.
class RayBudgetExceeded : public std::runtime_error {
public:
    explicit RayBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/**
 * @brief A rational polyhedral cone given by both extremal rays and inward
 *        facet normals, all primitive integer vectors.
 */
struct RationalCone {
    int ambient_rank = 0;
    std::vector<RatVec> generators;  ///< extremal rays (or a generating set)
    std::vector<RatVec> facets;      ///< inward facet normals under the standard dot product
};

namespace detail {

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Scales a rational vector to the primitive integer vector on its ray.
inline void canonicalize_ray(RatVec& v) {
    Int l(1);
    for (const auto& x : v) {
        Int d = boost::multiprecision::denominator(x);
        l = boost::multiprecision::lcm(l, d);
    }
    Int g(0);
    std::vector<Int> ints(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        ints[i] = boost::multiprecision::numerator(v[i] * Rational(l));
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(ints[i]));
    }
    if (g == 0) return;  // zero vector stays zero
    for (size_t i = 0; i < v.size(); ++i) v[i] = Rational(ints[i] / g);
}

/// Rank of a set of rational row vectors (destructive Gaussian elimination on a copy).
inline int matrix_rank(std::vector<RatVec> rows) {
    if (rows.empty()) return 0;
    const size_t n = rows[0].size();
    int rank = 0;
    size_t col = 0;
    for (size_t row = 0; row < rows.size() && col < n; ++col) {
        size_t piv = row;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[row], rows[piv]);
        for (size_t j = 0; j < rows.size(); ++j) {
            if (j == row || rows[j][col] == 0) continue;
            Rational f = rows[j][col] / rows[row][col];
            for (size_t k = col; k < n; ++k) rows[j][k] -= f * rows[row][k];
        }
        ++row;
        ++rank;
    }
    return rank;
}

/// Exact determinant of a square rational matrix by Gaussian elimination.
inline Rational determinant(std::vector<RatVec> m) {
    const size_t n = m.size();
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
        det *= m[col][col];
        for (size_t j = col + 1; j < n; ++j) {
            if (m[j][col] == 0) continue;
            Rational f = m[j][col] / m[col][col];
            for (size_t k = col; k < n; ++k) m[j][k] -= f * m[col][k];
        }
    }
    return det;
}

/**
 * @brief Solves A x = b exactly for an n x k system of full column rank.
 * @throws std::logic_error when the system is inconsistent.
 */
inline RatVec solve_exact(const std::vector<RatVec>& columns, const RatVec& b) {
    const size_t k = columns.size();
    const size_t n = b.size();
    // Augmented row-echelon reduction of [columns | b].
    std::vector<RatVec> aug(n, RatVec(k + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) aug[i][j] = columns[j][i];
        aug[i][k] = b[i];
    }
    std::vector<long long> pivot_of_col(k, -1);
    size_t row = 0;
    for (size_t col = 0; col < k && row < n; ++col) {
        size_t piv = row;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(aug[row], aug[piv]);
        for (size_t j = 0; j < n; ++j) {
            if (j == row || aug[j][col] == 0) continue;
            Rational f = aug[j][col] / aug[row][col];
            for (size_t t = col; t <= k; ++t) aug[j][t] -= f * aug[row][t];
        }
        pivot_of_col[col] = static_cast<long long>(row);
        ++row;
    }
    RatVec x(k, Rational(0));
    for (size_t col = 0; col < k; ++col) {
        if (pivot_of_col[col] < 0) continue;
        const auto& r = aug[static_cast<size_t>(pivot_of_col[col])];
        x[col] = r[k] / r[col];
    }
    // Consistency check.
    for (size_t i = 0; i < n; ++i) {
        Rational s(0);
        for (size_t j = 0; j < k; ++j) s += columns[j][i] * x[j];
        if (s != b[i]) throw std::logic_error("inconsistent linear system");
    }
    return x;
}

using Bitset = std::vector<std::uint64_t>;

inline void bitset_set(Bitset& b, size_t i) { b[i / 64] |= (std::uint64_t(1) << (i % 64)); }

inline Bitset bitset_and(const Bitset& a, const Bitset& b) {
    Bitset out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
    return out;
}

inline bool bitset_subset(const Bitset& a, const Bitset& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

}  // namespace detail

/**
 * @brief Extremal rays of the polar cone {y : a . y >= 0 for every row a},
 *        by the incremental double description method.
 *
 * @param n ambient dimension.
 * @param rows covectors cutting out the cone; they must span R^n (otherwise
 *        the polar has a lineality space and DegenerateConeError is thrown).
 * @param max_rays hard budget on intermediate ray counts; exceeding it throws
 *        RayBudgetExceeded instead of hanging.
 * @return primitive integer extremal rays, sorted.
 */
inline std::vector<RatVec> polar_rays(int n, const std::vector<RatVec>& rows,
                                      size_t max_rays = 100000) {
    using namespace detail;
    if (n <= 0) throw std::invalid_argument("ambient dimension must be positive");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n)
            throw DimensionMismatch("covector length does not match ambient dimension");

    // Select n linearly independent rows for the initial simplicial cone.
    std::vector<size_t> base;
    {
        std::vector<RatVec> chosen;
        for (size_t i = 0; i < rows.size() && static_cast<int>(base.size()) < n; ++i) {
            chosen.push_back(rows[i]);
            if (matrix_rank(chosen) == static_cast<int>(chosen.size()))
                base.push_back(i);
            else
                chosen.pop_back();
        }
        if (static_cast<int>(base.size()) < n)
            throw DegenerateConeError(
                "covectors do not span the ambient space; the polar cone is not pointed");
    }

    // Initial rays: columns of the inverse of the base-row matrix, so ray_j
    // pairs to delta_ij with the base rows.
    std::vector<RatVec> rays;
    {
        std::vector<RatVec> aug(static_cast<size_t>(n), RatVec(2 * static_cast<size_t>(n), Rational(0)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = rows[base[static_cast<size_t>(i)]][static_cast<size_t>(j)];
            aug[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
        }
        for (int col = 0; col < n; ++col) {
            int piv = col;
            while (aug[static_cast<size_t>(piv)][static_cast<size_t>(col)] == 0) ++piv;
            std::swap(aug[static_cast<size_t>(piv)], aug[static_cast<size_t>(col)]);
            Rational p = aug[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int k = 0; k < 2 * n; ++k) aug[static_cast<size_t>(col)][static_cast<size_t>(k)] /= p;
            for (int j = 0; j < n; ++j) {
                if (j == col || aug[static_cast<size_t>(j)][static_cast<size_t>(col)] == 0) continue;
                Rational f = aug[static_cast<size_t>(j)][static_cast<size_t>(col)];
                for (int k = 0; k < 2 * n; ++k)
                    aug[static_cast<size_t>(j)][static_cast<size_t>(k)] -= f * aug[static_cast<size_t>(col)][static_cast<size_t>(k)];
            }
        }
        for (int j = 0; j < n; ++j) {
            RatVec ray(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) ray[static_cast<size_t>(i)] = aug[static_cast<size_t>(i)][static_cast<size_t>(n + j)];
            canonicalize_ray(ray);
            rays.push_back(std::move(ray));
        }
    }

    // Incrementally impose the remaining halfspaces.
    std::vector<size_t> processed(base);
    const size_t words = (rows.size() + 63) / 64;
    auto zero_set = [&](const RatVec& ray) {
        Bitset z(words, 0);
        for (size_t idx : processed)
            if (dot(rows[idx], ray) == 0) bitset_set(z, idx);
        return z;
    };

    for (size_t idx = 0; idx < rows.size(); ++idx) {
        if (std::find(base.begin(), base.end(), idx) != base.end()) continue;
        const RatVec& a = rows[idx];
        std::vector<Rational> s(rays.size());
        bool any_neg = false;
        for (size_t j = 0; j < rays.size(); ++j) {
            s[j] = dot(a, rays[j]);
            if (s[j] < 0) any_neg = true;
        }
        if (!any_neg) {
            processed.push_back(idx);
            continue;
        }
        std::vector<Bitset> zsets(rays.size());
        for (size_t j = 0; j < rays.size(); ++j) zsets[j] = zero_set(rays[j]);

        std::vector<RatVec> next;
        std::vector<Bitset> next_z_placeholder;  // recomputed lazily next round
        for (size_t j = 0; j < rays.size(); ++j)
            if (s[j] >= 0) next.push_back(rays[j]);

        for (size_t p = 0; p < rays.size(); ++p) {
            if (s[p] <= 0) continue;
            for (size_t m = 0; m < rays.size(); ++m) {
                if (s[m] >= 0) continue;
                // Combinatorial adjacency: no third ray's zero set contains
                // the common zero set of p and m.
                Bitset common = bitset_and(zsets[p], zsets[m]);
                bool adjacent = true;
                for (size_t t = 0; t < rays.size() && adjacent; ++t) {
                    if (t == p || t == m) continue;
                    if (bitset_subset(common, zsets[t])) adjacent = false;
                }
                if (!adjacent) continue;
                RatVec nr(static_cast<size_t>(n));
                for (int k = 0; k < n; ++k)
                    nr[static_cast<size_t>(k)] =
                        s[p] * rays[m][static_cast<size_t>(k)] - s[m] * rays[p][static_cast<size_t>(k)];
                canonicalize_ray(nr);
                next.push_back(std::move(nr));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() > max_rays)
            throw RayBudgetExceeded("double description exceeded the ray budget (" +
                                    std::to_string(max_rays) + ")");
        rays = std::move(next);
        processed.push_back(idx);
    }
    std::sort(rays.begin(), rays.end());
    return rays;
}

/// Builds a cone from generators, computing its facet normals exactly.
inline RationalCone cone_from_generators(int n, std::vector<RatVec> gens,
                                         size_t max_rays = 100000) {
    for (auto& g : gens) detail::canonicalize_ray(g);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    RationalCone c;
    c.ambient_rank = n;
    c.facets = polar_rays(n, gens, max_rays);
    c.generators = std::move(gens);
    return c;
}

/**
 * @brief Polar dual of a cone: generators and facets swap roles.
 * @throws DegenerateConeError when the input is neither pointed nor
 *         full-dimensional.
 */
inline RationalCone dual_cone(const RationalCone& c, size_t max_rays = 100000) {
    RationalCone d;
    d.ambient_rank = c.ambient_rank;
    d.generators = polar_rays(c.ambient_rank, c.generators, max_rays);
    d.facets = c.generators;
    for (auto& f : d.facets) detail::canonicalize_ray(f);
    std::sort(d.facets.begin(), d.facets.end());
    return d;
}

/**
 * @brief A generating set of the effective cone of divisors.
 *
 * Degree <= 7 blow-up models: the (-1)-classes. r = 1: {E1, H - E1}.
 * r = 0: {H}. Quadric: the two rulings.
 */
inline std::vector<ClassVector> effective_generators(const PicardLattice& lat) {
    if (lat.model() == SurfaceModel::QuadricSurface) return {{1, 0}, {0, 1}};
    if (lat.r() == 0) return {{1}};
    if (lat.r() == 1) return {{0, 1}, {1, -1}};
    return lines(lat);
}

namespace detail {

inline RatVec to_ratvec(const ClassVector& c) {
    RatVec v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = Rational(c[i]);
    return v;
}

inline std::vector<long long> to_intvec(const RatVec& v) {
    std::vector<long long> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (boost::multiprecision::denominator(v[i]) != 1)
            throw std::logic_error("expected an integer vector");
        out[i] = boost::multiprecision::numerator(v[i]).convert_to<long long>();
    }
    return out;
}

}  // namespace detail

/**
 * @brief The nef cone of curves: classes pairing >= 0 with every effective
 *        divisor, as an explicit cone with extremal rays and facet normals
 *        (facet normals are the Gram images of the effective generators,
 *        reduced to the extremal ones).
 */
inline RationalCone nef_curve_cone(const PicardLattice& lat, size_t max_rays = 100000) {
    std::vector<RatVec> covs;
    for (const auto& g : effective_generators(lat))
        covs.push_back(detail::to_ratvec(lat.gram_apply(g)));
    if (lat.rank() == 1) {
        // Rank one: the cone is the single ray of the generator itself.
        RationalCone c;
        c.ambient_rank = 1;
        c.generators = {{Rational(1)}};
        c.facets = {{Rational(1)}};
        return c;
    }
    RationalCone c;
    c.ambient_rank = lat.rank();
    c.generators = polar_rays(lat.rank(), covs, max_rays);
    c.facets = polar_rays(lat.rank(), c.generators, max_rays);
    return c;
}

/**
 * @brief Fujita invariant of a nef class L: the least t with K + t L
 *        effective; std::nullopt encodes plus infinity (L nef but not big).
 *
 * Computed exactly as the maximum over facet normals F of the effective cone
 * of (F . (-K)) / (F . L); L big guarantees F . L > 0 on every facet.
 * @throws std::invalid_argument when L is not nef.
 */
inline std::optional<Rational> a_invariant(const PicardLattice& lat, const ClassVector& L,
                                           size_t max_rays = 100000) {
    const auto gens = effective_generators(lat);
    for (const auto& g : gens)
        if (lat.pairing(L, g) < 0)
            throw std::invalid_argument("class is not nef: negative pairing with an effective class");
    if (lat.self_intersection(L) == 0) return std::nullopt;  // nef but not big

    std::vector<RatVec> gen_vecs;
    for (const auto& g : gens) gen_vecs.push_back(detail::to_ratvec(g));
    std::vector<RatVec> facets;
    if (lat.rank() == 1)
        facets = {{Rational(1)}};
    else
        facets = polar_rays(lat.rank(), gen_vecs, max_rays);

    const RatVec k = detail::to_ratvec(lat.canonical_class());
    const RatVec l = detail::to_ratvec(L);
    std::optional<Rational> best;
    for (const auto& f : facets) {
        const Rational fl = detail::dot(f, l);
        const Rational fk = detail::dot(f, k);
        if (fl == 0) {
            if (fk < 0)
                throw std::logic_error("big nef class with a degenerate facet ratio");
            continue;
        }
        const Rational t = -fk / fl;
        if (!best || t > *best) best = t;
    }
    if (!best) throw std::logic_error("effective cone has no facets");
    return best;
}

/**
 * @brief Simplicial triangulation of a pointed cone given by extremal rays:
 *        returns index sets, each of size equal to the cone's dimension.
 *
 * Recursive: a non-simplicial cone is split by coning its first ray over the
 * triangulations of the facets that do not contain it.
 */
inline std::vector<std::vector<size_t>> triangulate_cone_rays(const std::vector<RatVec>& rays) {
    using namespace detail;
    if (rays.empty()) return {};
    const int k = matrix_rank(rays);
    if (static_cast<int>(rays.size()) == k) {
        std::vector<size_t> all(rays.size());
        std::iota(all.begin(), all.end(), size_t(0));
        return {all};
    }
    // Restrict to a basis of the span so the facet computation is full-dimensional.
    std::vector<RatVec> basis;
    for (const auto& r : rays) {
        basis.push_back(r);
        if (matrix_rank(basis) < static_cast<int>(basis.size())) basis.pop_back();
        if (static_cast<int>(basis.size()) == k) break;
    }
    std::vector<RatVec> coords;  // each ray in basis coordinates (length k)
    std::vector<RatVec> columns(basis.size());
    for (size_t j = 0; j < basis.size(); ++j) columns[j] = basis[j];
    for (const auto& r : rays) coords.push_back(solve_exact(columns, r));

    const auto facets = polar_rays(k, coords);
    std::vector<std::vector<size_t>> out;
    const RatVec& head = coords[0];
    for (const auto& f : facets) {
        if (dot(f, head) == 0) continue;  // facet contains the head ray
        std::vector<size_t> on_facet;
        for (size_t i = 0; i < rays.size(); ++i)
            if (dot(f, coords[i]) == 0) on_facet.push_back(i);
        std::vector<RatVec> sub;
        for (size_t i : on_facet) sub.push_back(rays[i]);
        for (const auto& simplex : triangulate_cone_rays(sub)) {
            std::vector<size_t> lifted{0};
            for (size_t s : simplex) lifted.push_back(on_facet[s]);
            out.push_back(std::move(lifted));
        }
    }
    return out;
}

/// Exact alpha constant data: rank times the volume of the degree <= 1 slice
/// of the nef cone of curves.
struct AlphaResult {
    Rational alpha;
    int rho = 0;
    Rational polytope_volume;
};

/**
 * @brief The alpha constant: rho times the exact lattice-normalized volume of
 *        {gamma in Nef_1 : (-K) . gamma <= 1}.
 *
 * The polytope is the cone over the cross-section at anticanonical degree 1;
 * its volume is the sum over a simplicial triangulation of
 * |det(scaled rays)| / rho!.
 * @throws RayBudgetExceeded (reported as an unsupported degree) when the nef
 *         cone's ray count exceeds the budget.
 */
inline AlphaResult alpha_constant(const PicardLattice& lat, size_t max_rays = 100000) {
    RationalCone nef;
    try {
        nef = nef_curve_cone(lat, max_rays);
    } catch (const RayBudgetExceeded&) {
        throw RayBudgetExceeded("unsupported degree " + std::to_string(lat.degree()) +
                                ": nef cone ray budget exceeded");
    }
    const int rho = lat.rank();
    const RatVec antik = detail::to_ratvec(lat.anticanonical_class());
    const RatVec antik_cov = detail::to_ratvec(lat.gram_apply(lat.anticanonical_class()));

    // Scale each extremal ray to anticanonical degree one.
    std::vector<RatVec> scaled;
    for (const auto& ray : nef.generators) {
        const Rational deg = detail::dot(antik_cov, ray);
        if (deg <= 0) throw std::logic_error("nef ray with non-positive anticanonical degree");
        RatVec v(ray.size());
        for (size_t i = 0; i < ray.size(); ++i) v[i] = ray[i] / deg;
        scaled.push_back(std::move(v));
    }

    Rational volume(0);
    Rational factorial(1);
    for (int i = 2; i <= rho; ++i) factorial *= i;
    if (rho == 1) {
        volume = scaled[0][0] < 0 ? -scaled[0][0] : scaled[0][0];
    } else {
        for (const auto& simplex : triangulate_cone_rays(nef.generators)) {
            std::vector<RatVec> m;
            for (size_t idx : simplex) m.push_back(scaled[idx]);
            Rational det = detail::determinant(m);
            if (det < 0) det = -det;
            volume += det / factorial;
        }
    }
    AlphaResult res;
    res.rho = rho;
    res.polytope_volume = volume;
    res.alpha = Rational(rho) * volume;
    return res;
}

/**
 * @brief Visits every integral class gamma with gamma - offset in the nef
 *        cone of curves and anticanonical degree between 1 and d, calling
 *        visit(coords, degree) for each.
 *
 * Enumeration runs over a per-coordinate bounding box derived from the
 * polytope's vertices (apex at the offset plus rays scaled to degree d), with
 * interval pruning from each facet constraint.
 */
template <typename Callback>
inline void scan_nef_points(const PicardLattice& lat, const ClassVector& offset, long long d,
                            Callback&& visit, size_t max_rays = 100000) {
    if (d < 0) throw std::invalid_argument("degree bound must be >= 0");
    if (d == 0) return;
    const RationalCone nef = nef_curve_cone(lat, max_rays);
    const int n = lat.rank();

    const long long deg0 = lat.anticanonical_degree(offset);
    if (deg0 > d) return;

    // Integer facet covectors and their offset constants: f . x >= f . offset.
    std::vector<std::vector<long long>> facet(nef.facets.size());
    std::vector<long long> facet_rhs(nef.facets.size());
    const RatVec off = detail::to_ratvec(offset);
    for (size_t i = 0; i < nef.facets.size(); ++i) {
        facet[i] = detail::to_intvec(nef.facets[i]);
        facet_rhs[i] = detail::to_intvec({detail::dot(nef.facets[i], off)})[0];
    }
    // Degree covector.
    const std::vector<long long> degv = detail::to_intvec(
        detail::to_ratvec(lat.gram_apply(lat.anticanonical_class())));

    // Bounding box from polytope vertices: offset and offset + ray * (d - deg0)/deg(ray).
    std::vector<Rational> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) lo[static_cast<size_t>(k)] = hi[static_cast<size_t>(k)] = off[static_cast<size_t>(k)];
    for (const auto& ray : nef.generators) {
        Rational rdeg(0);
        for (int k = 0; k < n; ++k) rdeg += Rational(degv[static_cast<size_t>(k)]) * ray[static_cast<size_t>(k)];
        const Rational t = Rational(d - deg0) / rdeg;
        for (int k = 0; k < n; ++k) {
            const Rational v = off[static_cast<size_t>(k)] + t * ray[static_cast<size_t>(k)];
            if (v < lo[static_cast<size_t>(k)]) lo[static_cast<size_t>(k)] = v;
            if (v > hi[static_cast<size_t>(k)]) hi[static_cast<size_t>(k)] = v;
        }
    }
    std::vector<long long> box_lo(static_cast<size_t>(n)), box_hi(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        box_lo[static_cast<size_t>(k)] = ceil_rational(lo[static_cast<size_t>(k)]).convert_to<long long>();
        box_hi[static_cast<size_t>(k)] = floor_rational(hi[static_cast<size_t>(k)]).convert_to<long long>();
    }

    // Constraint rows: facets (>= rhs) and degree upper bound (-deg . x >= -d).
    struct Row { std::vector<long long> a; long long rhs; };
    std::vector<Row> rowsc;
    for (size_t i = 0; i < facet.size(); ++i) rowsc.push_back({facet[i], facet_rhs[i]});
    {
        std::vector<long long> neg(degv.size());
        for (size_t k = 0; k < degv.size(); ++k) neg[k] = -degv[k];
        rowsc.push_back({neg, -d});
    }

    // For pruning: per row and per coordinate position, the extreme possible
    // contribution of the remaining coordinates given the global box.
    const size_t m = rowsc.size();
    std::vector<std::vector<long long>> max_rest(m, std::vector<long long>(static_cast<size_t>(n) + 1, 0));
    for (size_t i = 0; i < m; ++i)
        for (int k = n - 1; k >= 0; --k) {
            const long long a = rowsc[i].a[static_cast<size_t>(k)];
            const long long best = a >= 0 ? checked_mul(a, box_hi[static_cast<size_t>(k)])
                                          : checked_mul(a, box_lo[static_cast<size_t>(k)]);
            max_rest[i][static_cast<size_t>(k)] = checked_add(max_rest[i][static_cast<size_t>(k) + 1], best);
        }

    std::vector<long long> x(static_cast<size_t>(n), 0);
    std::vector<long long> partial(m, 0);  // contribution of chosen coordinates per row

    auto recurse = [&](auto&& self, int k) -> void {
        if (k == n) {
            long long deg = 0;
            for (int t = 0; t < n; ++t) deg = checked_add(deg, checked_mul(degv[static_cast<size_t>(t)], x[static_cast<size_t>(t)]));
            if (deg >= 1 && deg <= d) visit(x, deg);
            return;
        }
        long long xlo = box_lo[static_cast<size_t>(k)], xhi = box_hi[static_cast<size_t>(k)];
        // Tighten [xlo, xhi] with every constraint row.
        for (size_t i = 0; i < m; ++i) {
            const long long a = rowsc[i].a[static_cast<size_t>(k)];
            // partial + a*x + max_rest(after k) >= rhs
            const long long slack = checked_sub(rowsc[i].rhs,
                                                checked_add(partial[i], max_rest[i][static_cast<size_t>(k) + 1]));
            if (a > 0) {
                // x >= ceil(slack / a)
                long long q = slack / a;
                if (q * a < slack) q += (slack > 0 ? 1 : 0);
                // Correct ceiling for negative slack handled by the division above.
                while (checked_mul(a, q) < slack) ++q;
                while (q > xlo && checked_mul(a, q - 1) >= slack) --q;
                if (q > xlo) xlo = q;
            } else if (a < 0) {
                long long q = slack / a;
                while (checked_mul(a, q) < slack) --q;
                while (q < xhi && checked_mul(a, q + 1) >= slack) ++q;
                if (q < xhi) xhi = q;
            } else if (slack > 0) {
                return;  // row infeasible regardless of x
            }
        }
        for (long long v = xlo; v <= xhi; ++v) {
            x[static_cast<size_t>(k)] = v;
            bool ok = true;
            for (size_t i = 0; i < m; ++i) {
                const long long np = checked_add(partial[i], checked_mul(rowsc[i].a[static_cast<size_t>(k)], v));
                partial[i] = np;
                if (checked_add(np, max_rest[i][static_cast<size_t>(k) + 1]) < rowsc[i].rhs) ok = false;
            }
            if (ok) self(self, k + 1);
            for (size_t i = 0; i < m; ++i)
                partial[i] = checked_sub(partial[i], checked_mul(rowsc[i].a[static_cast<size_t>(k)], v));
        }
    };
    recurse(recurse, 0);
}

/**
 * @brief Counts integral classes gamma with gamma - offset in the nef cone of
 *        curves and anticanonical degree i, for each 1 <= i <= d. Only
 *        degrees with a nonzero count appear in the result.
 */
inline std::map<long long, long long> count_nef_points(const PicardLattice& lat,
                                                       const ClassVector& offset, long long d,
                                                       size_t max_rays = 100000) {
    std::map<long long, long long> out;
    scan_nef_points(lat, offset, d,
                    [&](const std::vector<long long>&, long long deg) { ++out[deg]; }, max_rays);
    return out;
}

/// Lists the integral classes counted by count_nef_points, sorted.
inline std::vector<ClassVector> enumerate_nef_points(const PicardLattice& lat,
                                                     const ClassVector& offset, long long d,
                                                     size_t max_rays = 100000) {
    std::vector<ClassVector> out;
    scan_nef_points(lat, offset, d,
                    [&](const std::vector<long long>& x, long long) { out.push_back(x); },
                    max_rays);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dpfib

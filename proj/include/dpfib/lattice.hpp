#pragma once

/**
 * @file lattice.hpp
 * @brief Exact model of the Néron–Severi lattice of a del Pezzo surface:
 *        intersection form, canonical class, and basic pairings.
 *
 * Two models are supported. `BlowUpOfPlane(r)` (0 <= r <= 8) uses the basis
 * (H, E1, ..., Er) with Gram matrix diag(1, -1, ..., -1) and canonical class
 * (-3, 1, ..., 1); its degree is 9 - r. `QuadricSurface` uses the ruling
 * basis (F1, F2) with Gram matrix [[0,1],[1,0]] and canonical class (-2,-2);
 * its degree is 8. Index 0 of every coordinate vector is H (resp. F1); this
 * basis order is fixed for all serialization.
 *
 * All pairings are computed in checked 64-bit arithmetic; overflow is a hard
 * error, never a silent wrap.
 */

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpfib/arith.hpp"

namespace dpfib {

/// Coordinates of a numerical curve/divisor class against the fixed basis.
using ClassVector = std::vector<long long>;

/// Thrown when a class vector's length does not match the lattice rank.
class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

enum class SurfaceModel {
    BlowUpOfPlane,   ///< blow-up of the plane in r points, 0 <= r <= 8
    QuadricSurface,  ///< product of two lines (the smooth quadric)
};

/**
 * @brief Immutable description of a del Pezzo surface's numerical lattice.
 *
 * Instances are plain values: safe to copy, share and send between threads.
 */
class PicardLattice {
public:
    /// Blow-up of the plane in r points (r = 0 gives the plane itself).
    static PicardLattice blow_up_of_plane(int r) {
        if (r < 0 || r > 8)
            throw std::invalid_argument("blow-up point count must be in [0, 8], got " +
                                        std::to_string(r));
        return PicardLattice(SurfaceModel::BlowUpOfPlane, r);
    }

    /// The smooth quadric surface with its two rulings.
    static PicardLattice quadric_surface() {
        return PicardLattice(SurfaceModel::QuadricSurface, 0);
    }

    SurfaceModel model() const { return model_; }

    /// Number of blown-up points (only meaningful for BlowUpOfPlane).
    int r() const { return r_; }

    /// Rank of the lattice: r+1 for the blow-up model, 2 for the quadric.
    int rank() const { return model_ == SurfaceModel::QuadricSurface ? 2 : r_ + 1; }

    /// Anticanonical self-intersection: 9-r for the blow-up model, 8 for the quadric.
    int degree() const { return model_ == SurfaceModel::QuadricSurface ? 8 : 9 - r_; }

    /// Canonical class in basis coordinates.
    ClassVector canonical_class() const {
        if (model_ == SurfaceModel::QuadricSurface) return {-2, -2};
        ClassVector k(static_cast<size_t>(rank()), 1);
        k[0] = -3;
        return k;
    }

    /// Anticanonical class in basis coordinates.
    ClassVector anticanonical_class() const {
        ClassVector k = canonical_class();
        for (auto& c : k) c = -c;
        return k;
    }

    /// Gram matrix entry g(i, j) of the intersection form.
    long long gram(int i, int j) const {
        if (model_ == SurfaceModel::QuadricSurface) return i == j ? 0 : 1;
        if (i != j) return 0;
        return i == 0 ? 1 : -1;
    }

    /**
     * @brief Intersection pairing a . b, exact.
     * @throws DimensionMismatch when an operand's length differs from rank().
     * @throws OverflowError if the checked 64-bit accumulation overflows.
     */
    long long pairing(const ClassVector& a, const ClassVector& b) const {
        check_dims(a);
        check_dims(b);
        if (model_ == SurfaceModel::QuadricSurface)
            return checked_add(checked_mul(a[0], b[1]), checked_mul(a[1], b[0]));
        long long acc = checked_mul(a[0], b[0]);
        for (int i = 1; i < rank(); ++i)
            acc = checked_sub(acc, checked_mul(a[static_cast<size_t>(i)],
                                               b[static_cast<size_t>(i)]));
        return acc;
    }

    /// Self-intersection c . c.
    long long self_intersection(const ClassVector& c) const { return pairing(c, c); }

    /// Anticanonical degree (-K) . c, the height of the class.
    long long anticanonical_degree(const ClassVector& c) const {
        return pairing(anticanonical_class(), c);
    }

    /// The zero class.
    ClassVector zero_class() const { return ClassVector(static_cast<size_t>(rank()), 0); }

    /// Apply the Gram matrix to a class, yielding the covector of pairing with it.
    ClassVector gram_apply(const ClassVector& c) const {
        check_dims(c);
        if (model_ == SurfaceModel::QuadricSurface) return {c[1], c[0]};
        ClassVector out = c;
        for (int i = 1; i < rank(); ++i)
            out[static_cast<size_t>(i)] = -out[static_cast<size_t>(i)];
        return out;
    }

    bool operator==(const PicardLattice& o) const {
        return model_ == o.model_ && r_ == o.r_;
    }

private:
    PicardLattice(SurfaceModel model, int r) : model_(model), r_(r) {}

    void check_dims(const ClassVector& c) const {
        if (static_cast<int>(c.size()) != rank())
            throw DimensionMismatch("class vector length " + std::to_string(c.size()) +
                                    " does not match lattice rank " + std::to_string(rank()));
    }

    SurfaceModel model_;
    int r_;
};

/// Componentwise sum of two class vectors.
inline ClassVector add_classes(const ClassVector& a, const ClassVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("cannot add class vectors of different lengths");
    ClassVector out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
    return out;
}

/// Componentwise difference of two class vectors.
inline ClassVector subtract_classes(const ClassVector& a, const ClassVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("cannot subtract class vectors of different lengths");
    ClassVector out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = checked_sub(a[i], b[i]);
    return out;
}

/// Integer scalar multiple of a class vector.
inline ClassVector scale_class(long long k, const ClassVector& a) {
    ClassVector out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = checked_mul(k, a[i]);
    return out;
}

inline bool is_zero_class(const ClassVector& a) {
    for (long long x : a)
        if (x != 0) return false;
    return true;
}

}  // namespace dpfib

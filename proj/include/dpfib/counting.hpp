#pragma once

/**
 * @file counting.hpp
 * @brief The section-counting function for a del Pezzo fibration: census of
 *        counted components, the Manin/accumulating classification, the
 *        predicted asymptotic constant, and convergence reports.
 *
 * The model census realizes the expectation that every integral class in the
 * translated nef cone carries exactly one relatively free family per element
 * of the Brauer group, each of the expected dimension. All sums are exact
 * rationals; decimal output is rendering only.
 */

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dpfib/arith.hpp"
#include "dpfib/bundles.hpp"
#include "dpfib/cones.hpp"
#include "dpfib/enumeration.hpp"
#include "dpfib/lattice.hpp"

namespace dpfib {

enum class ComponentKind { RelativelyFree, DominantNonFree, NonDominant };

enum class ComponentClass { Manin, Accumulating };

/**
 * @brief One component of the section space at a given height.
 *
 * Components that do not sweep the whole space carry the fiber class of the
 * surface they sweep, so the classification below can inspect it.
 */
struct ComponentCensusEntry {
    long long height = 1;
    long long dim = 0;
    ComponentKind kind = ComponentKind::RelativelyFree;
    std::optional<ClassVector> swept_fiber_class;  ///< required unless RelativelyFree
    bool fiber_picard_rank_one = false;
};

/**
 * @brief Is the component counted (Manin) or excluded (Accumulating)?
 *
 * Accumulating components are those sweeping a surface whose fiber class is a
 * line, and — only when the generic fiber has Picard rank one — those
 * sweeping a surface whose fiber class is a singular anticanonical conic
 * (the anticanonical, twice-anticanonical, or pullback cases).
 */
inline ComponentClass classify_component(const PicardLattice& lat,
                                         const ComponentCensusEntry& e) {
    if (e.kind == ComponentKind::RelativelyFree) return ComponentClass::Manin;
    if (!e.swept_fiber_class)
        throw std::invalid_argument("non-free census entry is missing its swept fiber class");
    const ClassVector& c = *e.swept_fiber_class;

    const bool is_line = lat.anticanonical_degree(c) == 1 && lat.self_intersection(c) == -1;
    if (is_line) return ComponentClass::Accumulating;

    if (e.fiber_picard_rank_one && lat.anticanonical_degree(c) == 2) {
        const ConicCase cc = classify_anticanonical_conic(lat, c);
        if (cc.kind == ConicKind::Degree2Anticanonical ||
            cc.kind == ConicKind::Degree1TwiceAnticanonical ||
            cc.kind == ConicKind::Degree1PullbackOfDegree2Anticanonical)
            return ComponentClass::Accumulating;
    }
    return ComponentClass::Manin;
}

/**
 * @brief The counting function: sum of q^dim over Manin components of height
 *        at most d, as an exact rational.
 */
inline Rational counting_function(const PicardLattice& lat,
                                  const std::vector<ComponentCensusEntry>& census,
                                  const Rational& q, long long d) {
    if (q <= 1) throw std::invalid_argument("q must be > 1");
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    Rational total(0);
    for (const auto& e : census) {
        if (e.height > d) continue;
        if (classify_component(lat, e) != ComponentClass::Manin) continue;
        if (e.dim < 0) throw std::invalid_argument("census dimension must be >= 0");
        total += pow_rational(q, static_cast<unsigned long>(e.dim));
    }
    return total;
}

/**
 * @brief Model of the counting problem: a fiber lattice, a base genus, the
 *        translate of the nef cone housing section classes, and the
 *        arithmetic scalars of the predicted constant.
 */
struct CountingModel {
    PicardLattice lattice = PicardLattice::blow_up_of_plane(0);
    int base_genus = 1;
    ClassVector offset = {0};
    Rational q = 2;
    long long brauer_order = 1;
    long long profile_count = 1;
    long long lattice_index = 1;
};

/**
 * @brief The model census: one relatively free entry per integral class in
 *        offset + Nef of height i <= d, of dimension i + 2(1 - g), repeated
 *        brauer_order times.
 */
inline std::vector<ComponentCensusEntry> model_census(const CountingModel& m, long long d) {
    std::vector<ComponentCensusEntry> out;
    const long long dim_shift = 2LL * (1 - m.base_genus);
    for (const auto& [deg, count] : count_nef_points(m.lattice, m.offset, d)) {
        if (deg + dim_shift < 0)
            throw std::invalid_argument("negative expected dimension in the model census");
        for (long long i = 0; i < count * m.brauer_order; ++i)
            out.push_back({deg, deg + dim_shift, ComponentKind::RelativelyFree, std::nullopt,
                           false});
    }
    return out;
}

/**
 * @brief The predicted constant of the counting asymptotic:
 *        profile_count * lattice_index * alpha * brauer_order * q/(q-1),
 *        times the dimension-offset factor q^{2(1-g)}.
 */
inline Rational asymptotic_constant(const CountingModel& m) {
    const AlphaResult a = alpha_constant(m.lattice);
    Rational c = Rational(m.profile_count) * Rational(m.lattice_index) * a.alpha *
                 Rational(m.brauer_order) * m.q / (m.q - 1);
    const long long e = 2LL * (1 - m.base_genus);
    if (e >= 0)
        c *= pow_rational(m.q, static_cast<unsigned long>(e));
    else
        c /= pow_rational(m.q, static_cast<unsigned long>(-e));
    return c;
}

/// One row of a convergence report; ratio = N / (q^d * d^{rho-1}).
struct ConvergenceRow {
    long long d = 0;
    Rational N;
    Rational ratio;
    Rational target;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool truncated = false;  ///< true when the point budget cut the table short
};

/**
 * @brief Tabulates N(d) and the normalized ratio against the predicted
 *        constant for d = stride, 2*stride, ..., d_max.
 *
 * Uses the model census implicitly: N(d) = brauer * q^{2(1-g)} *
 * sum_{i <= d} count(i) q^i with counts from the translated nef cone. When
 * the lattice-point budget is exceeded the table is truncated at the last
 * complete row and flagged.
 */
inline ConvergenceReport convergence_report(const CountingModel& m, long long d_max,
                                            long long stride,
                                            long long max_points = 200000000LL) {
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");
    ConvergenceReport rep;
    if (d_max < 1) return rep;

    std::map<long long, long long> counts;
    long long budget_d = d_max;
    {
        long long seen = 0;
        try {
            scan_nef_points(m.lattice, m.offset, d_max,
                            [&](const std::vector<long long>&, long long deg) {
                                ++counts[deg];
                                if (++seen > max_points) throw RayBudgetExceeded("point budget");
                            });
        } catch (const RayBudgetExceeded&) {
            rep.truncated = true;
            // Keep only degrees that are certainly complete: none, conservatively.
            counts.clear();
            budget_d = 0;
        }
    }

    const Rational target = asymptotic_constant(m);
    const long long e = 2LL * (1 - m.base_genus);
    Rational shift = e >= 0 ? pow_rational(m.q, static_cast<unsigned long>(e))
                            : Rational(1) / pow_rational(m.q, static_cast<unsigned long>(-e));
    const int rho = m.lattice.rank();

    Rational running(0);
    long long next_i = 1;
    for (long long d = stride; d <= budget_d; d += stride) {
        for (; next_i <= d; ++next_i) {
            auto it = counts.find(next_i);
            if (it == counts.end()) continue;
            running += Rational(it->second) * pow_rational(m.q, static_cast<unsigned long>(next_i));
        }
        ConvergenceRow row;
        row.d = d;
        row.N = Rational(m.brauer_order) * shift * running;
        Rational denom = pow_rational(m.q, static_cast<unsigned long>(d));
        for (int k = 1; k < rho; ++k) denom *= d;
        row.ratio = row.N / denom;
        row.target = target;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

/**
 * @brief Number of components of the section space of a ruled surface at
 *        twist degree d: the profile count once every twist of the defining
 *        rank-2 bundle by a degree-d divisor is globally generated with
 *        vanishing h^1, std::nullopt (unknown) below that threshold.
 *
 * The certificate: twisting shifts every Harder-Narasimhan degree by d, and
 * both global generation and vanishing hold once every piece has degree (or
 * slope, in the semistable case) at least 2g.
 */
inline std::optional<long long> ruled_component_count(const NormalBundleDescriptor& bundle,
                                                      long long profile_count, long long d) {
    validate_descriptor(bundle);
    if (bundle.rank != 2)
        throw std::invalid_argument("ruled-surface data requires a rank-2 bundle");
    const long long g = bundle.genus;
    bool certified = false;
    switch (bundle.structure) {
        case BundleStructure::Split:
        case BundleStructure::UnstableIndecomposable:
            certified = *bundle.deg_L1 + d >= 2 * g;
            break;
        case BundleStructure::SemiStable:
            // Any line subbundle has degree >= (total - g)/2; the shifted
            // bound must clear both the vanishing and generation thresholds.
            certified = bundle.total_degree + 2 * d >= std::max(5 * g - 2, 4 * g);
            break;
    }
    if (!certified) return std::nullopt;
    return profile_count;
}

}  // namespace dpfib

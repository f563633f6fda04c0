#pragma once

/**
 * @file monoid.hpp
 * @brief The commutative monoid of free-curve families on a del Pezzo
 *        surface, its module action on section-component labels, and the
 *        saturation check that detects when all labels over a common
 *        translate merge into a single class.
 *
 * Elements are indexed by integral nef classes, at most one element per class
 * (taken as an axiom of the model). Multiples k >= 2 of a conic-fibration
 * class are *formal* elements: the two curves being glued are fibers of the
 * same fibration and never meet, so their combination is bookkeeping only.
 * A formal multiple collapses to an honest class sum the first time it is
 * glued with an element its underlying class pairs positively with.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "dpfib/cones.hpp"
#include "dpfib/enumeration.hpp"
#include "dpfib/lattice.hpp"

namespace dpfib {

/**
 * @brief One element of the gluing monoid: a nef integral class, flagged when
 *        it is a formal multiple of a conic-fibration class.
 */
struct MonoidElement {
    ClassVector cls;   ///< total numerical class (all zero for the identity)
    bool formal = false;  ///< true for formal multiples k >= 2 of a conic class

    bool operator==(const MonoidElement& o) const { return cls == o.cls && formal == o.formal; }
    bool operator<(const MonoidElement& o) const {
        return std::tie(cls, formal) < std::tie(o.cls, o.formal);
    }
};

/// Label of a section component: which base family it came from and what has
/// been glued onto it.
struct ComponentLabel {
    int generator_index = 1;  ///< 1-based index of the base family
    MonoidElement element;

    bool operator==(const ComponentLabel& o) const {
        return generator_index == o.generator_index && element == o.element;
    }
    bool operator<(const ComponentLabel& o) const {
        return std::tie(generator_index, element) < std::tie(o.generator_index, o.element);
    }
};

/// Pairs of labels declared equal (same total class required).
struct RelationSet {
    std::vector<std::pair<ComponentLabel, ComponentLabel>> relations;
};

namespace detail {

/// If cls = k * Q for a conic-fibration class Q and k >= 1, returns (Q, k).
inline std::optional<std::pair<ClassVector, long long>> conic_multiple_of(
    const PicardLattice& lat, const ClassVector& cls) {
    if (is_zero_class(cls)) return std::nullopt;
    if (lat.self_intersection(cls) != 0) return std::nullopt;
    const long long deg = lat.anticanonical_degree(cls);
    if (deg < 2 || deg % 2 != 0) return std::nullopt;
    const long long k = deg / 2;
    ClassVector base(cls.size());
    for (size_t i = 0; i < cls.size(); ++i) {
        if (cls[i] % k != 0) return std::nullopt;
        base[i] = cls[i] / k;
    }
    const auto conics = conic_classes(lat);
    if (!std::binary_search(conics.begin(), conics.end(), base)) return std::nullopt;
    return std::make_pair(base, k);
}

inline void check_nef(const PicardLattice& lat, const ClassVector& cls) {
    for (const auto& g : effective_generators(lat))
        if (lat.pairing(cls, g) < 0)
            throw std::invalid_argument("monoid element class must be nef");
}

}  // namespace detail

/// The identity element.
inline MonoidElement monoid_zero(const PicardLattice& lat) {
    return {lat.zero_class(), false};
}

/**
 * @brief The unique monoid element with the given nef integral class:
 *        formal when the class is a multiple k >= 2 of a conic-fibration
 *        class, honest otherwise.
 */
inline MonoidElement monoid_element(const PicardLattice& lat, const ClassVector& cls) {
    detail::check_nef(lat, cls);
    const auto cm = detail::conic_multiple_of(lat, cls);
    return {cls, cm.has_value() && cm->second >= 2};
}

/**
 * @brief Glues two families: classes add. Multiples of the same conic class
 *        stay formal with multiplicities adding; a formal multiple collapses
 *        to the honest sum as soon as its class pairs positively with the
 *        other operand. Commutative and associative with monoid_zero as
 *        identity.
 */
inline MonoidElement glue(const PicardLattice& lat, const MonoidElement& a,
                          const MonoidElement& b) {
    if (is_zero_class(a.cls)) return b;
    if (is_zero_class(b.cls)) return a;
    const ClassVector total = add_classes(a.cls, b.cls);

    const auto ma = detail::conic_multiple_of(lat, a.cls);
    const auto mb = detail::conic_multiple_of(lat, b.cls);
    if (ma && mb && ma->first == mb->first) {
        // Fibers of one fibration never meet: the multiplicities add formally.
        return {total, true};
    }
    // Otherwise the classes pair positively (two nef classes with pairing zero
    // lie on a common self-intersection-zero ray) and the glued family is an
    // honest element of the class sum.
    if (lat.pairing(a.cls, b.cls) <= 0)
        throw std::logic_error("distinct-ray nef classes with non-positive pairing");
    return monoid_element(lat, total);
}

/// Module action on a component label: glue the element, keep the origin.
inline ComponentLabel act(const PicardLattice& lat, const ComponentLabel& label,
                          const MonoidElement& r) {
    return {label.generator_index, glue(lat, label.element, r)};
}

/// One row of a saturation report: a total class and the number of distinct
/// label classes mapping to it after the congruence quotient.
struct SaturationRow {
    ClassVector total_class;
    long long fiber_size = 0;
};

struct SaturationReport {
    std::vector<SaturationRow> rows;
    bool all_singleton = false;
};

namespace detail {

/// All monoid elements of anticanonical degree between 1 and d.
inline std::vector<MonoidElement> monoid_elements_up_to(const PicardLattice& lat, long long d) {
    std::vector<MonoidElement> out;
    for (const auto& cls : enumerate_nef_points(lat, lat.zero_class(), d))
        out.push_back(monoid_element(lat, cls));
    return out;
}

}  // namespace detail

/**
 * @brief Computes the congruence on component labels generated by the given
 *        relations under the module action, and reports the fiber size of
 *        the class map over every reachable total class up to the horizon.
 *
 * With relations, the reported domain is the translate of the first
 * relation's total class by the nef cone; without relations, it is every
 * reachable total class. The report flags success when every fiber is a
 * singleton.
 *
 * @param generator_classes base class of each of the s generators (index i+1
 *        labels generator_classes[i]).
 * @throws std::invalid_argument when a relation equates labels of different
 *         total classes.
 */
inline SaturationReport saturate_and_check(const std::vector<ClassVector>& generator_classes,
                                           const RelationSet& rels, const PicardLattice& lat,
                                           long long degree_horizon) {
    const int s = static_cast<int>(generator_classes.size());
    if (s < 1) throw std::invalid_argument("at least one generator is required");
    for (const auto& g : generator_classes) detail::check_nef(lat, g);

    auto total_class = [&](const ComponentLabel& l) {
        if (l.generator_index < 1 || l.generator_index > s)
            throw std::invalid_argument("label refers to an unregistered generator");
        return add_classes(generator_classes[static_cast<size_t>(l.generator_index - 1)],
                           l.element.cls);
    };
    for (const auto& [l1, l2] : rels.relations)
        if (total_class(l1) != total_class(l2))
            throw std::invalid_argument("relation equates labels of different total classes");

    // Label universe: every generator translated by every monoid element whose
    // total degree stays within the horizon (plus the bare generators).
    std::vector<ComponentLabel> labels;
    for (int i = 1; i <= s; ++i) {
        const long long base_deg =
            lat.anticanonical_degree(generator_classes[static_cast<size_t>(i - 1)]);
        if (base_deg > degree_horizon) continue;
        labels.push_back({i, monoid_zero(lat)});
        for (const auto& e : detail::monoid_elements_up_to(lat, degree_horizon - base_deg))
            labels.push_back({i, e});
    }
    std::sort(labels.begin(), labels.end());
    std::map<ComponentLabel, size_t> index;
    for (size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;

    // Union-find over labels.
    std::vector<size_t> parent(labels.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](size_t x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    };
    auto unite = [&](size_t a, size_t b) {
        a = find(a); b = find(b);
        if (a != b) parent[a] = b;
    };

    // Close each base relation under the module action: acting by any element
    // keeps the pair congruent; union-find supplies transitivity.
    const auto all_elements = detail::monoid_elements_up_to(lat, degree_horizon);
    for (const auto& [l1, l2] : rels.relations) {
        const long long used = lat.anticanonical_degree(total_class(l1));
        auto apply = [&](const MonoidElement& m) {
            const ComponentLabel a = act(lat, l1, m);
            const ComponentLabel b = act(lat, l2, m);
            const auto ia = index.find(a);
            const auto ib = index.find(b);
            if (ia != index.end() && ib != index.end()) unite(ia->second, ib->second);
        };
        apply(monoid_zero(lat));
        for (const auto& m : all_elements) {
            if (used + lat.anticanonical_degree(m.cls) > degree_horizon) continue;
            apply(m);
        }
    }

    // Reported domain.
    std::vector<ClassVector> domain;
    if (!rels.relations.empty()) {
        const ClassVector alpha = total_class(rels.relations.front().first);
        const long long adeg = lat.anticanonical_degree(alpha);
        domain.push_back(alpha);
        if (adeg <= degree_horizon)
            for (const auto& cls : enumerate_nef_points(lat, alpha, degree_horizon))
                if (cls != alpha) domain.push_back(cls);
    } else {
        std::vector<ClassVector> seen;
        for (const auto& l : labels) seen.push_back(total_class(l));
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        domain = std::move(seen);
    }
    std::sort(domain.begin(), domain.end());

    // Fiber sizes: distinct congruence classes among labels of each class.
    std::map<ClassVector, std::vector<size_t>> roots_by_class;
    for (size_t i = 0; i < labels.size(); ++i)
        roots_by_class[total_class(labels[i])].push_back(find(i));

    SaturationReport report;
    report.all_singleton = true;
    for (const auto& beta : domain) {
        auto it = roots_by_class.find(beta);
        long long size = 0;
        if (it != roots_by_class.end()) {
            auto roots = it->second;
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            size = static_cast<long long>(roots.size());
        }
        if (size != 1) report.all_singleton = false;
        report.rows.push_back({beta, size});
    }
    return report;
}

}  // namespace dpfib

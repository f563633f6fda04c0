#include <catch2/catch_amalgamated.hpp>

#include "dpfib/counting.hpp"

using namespace dpfib;

namespace {

ComponentCensusEntry free_entry(long long height, long long dim) {
    return {height, dim, ComponentKind::RelativelyFree, std::nullopt, false};
}

ComponentCensusEntry swept_entry(long long height, long long dim, ClassVector fiber,
                                 bool rank_one) {
    return {height, dim, ComponentKind::DominantNonFree, std::move(fiber), rank_one};
}

NormalBundleDescriptor split2(int g, long long l1, long long l2) {
    NormalBundleDescriptor b;
    b.genus = g;
    b.rank = 2;
    b.structure = BundleStructure::Split;
    b.deg_L1 = std::min(l1, l2);
    b.deg_L2 = std::max(l1, l2);
    b.total_degree = l1 + l2;
    return b;
}

NormalBundleDescriptor semistable2(int g, long long total) {
    NormalBundleDescriptor b;
    b.genus = g;
    b.rank = 2;
    b.structure = BundleStructure::SemiStable;
    b.total_degree = total;
    return b;
}

}  // namespace

TEST_CASE("component classification") {
    const auto lat = PicardLattice::blow_up_of_plane(1);
    // Relatively free components always count.
    CHECK(classify_component(lat, free_entry(3, 2)) == ComponentClass::Manin);
    // Sweeping a surface of line fibers never counts.
    CHECK(classify_component(lat, swept_entry(3, 4, {0, 1}, false)) ==
          ComponentClass::Accumulating);
    CHECK(classify_component(lat, swept_entry(3, 4, {0, 1}, true)) ==
          ComponentClass::Accumulating);
    // Conic-fibration fibers count: the swept surface is one of the counted
    // conic fibrations, whatever the generic Picard rank.
    CHECK(classify_component(lat, swept_entry(3, 4, {1, -1}, false)) == ComponentClass::Manin);
    CHECK(classify_component(lat, swept_entry(3, 4, {1, -1}, true)) == ComponentClass::Manin);
    // Missing fiber data is an input error.
    ComponentCensusEntry bad = free_entry(3, 2);
    bad.kind = ComponentKind::NonDominant;
    CHECK_THROWS_AS(classify_component(lat, bad), std::invalid_argument);
}

TEST_CASE("singular anticanonical conics accumulate only at fiber rank one") {
    const auto lat = PicardLattice::blow_up_of_plane(7);
    const ClassVector minus_k{3, -1, -1, -1, -1, -1, -1, -1};
    REQUIRE(lat.anticanonical_degree(minus_k) == 2);
    CHECK(classify_component(lat, swept_entry(5, 3, minus_k, true)) ==
          ComponentClass::Accumulating);
    CHECK(classify_component(lat, swept_entry(5, 3, minus_k, false)) == ComponentClass::Manin);
}

TEST_CASE("counting function on a hand census") {
    const auto lat = PicardLattice::blow_up_of_plane(1);
    const std::vector<ComponentCensusEntry> census{free_entry(1, 1), free_entry(2, 2),
                                                   free_entry(2, 2)};
    CHECK(counting_function(lat, census, 2, 2) == Rational(10));
    CHECK(counting_function(lat, census, 2, 1) == Rational(2));
    CHECK_THROWS_AS(counting_function(lat, census, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(counting_function(lat, census, 2, 0), std::invalid_argument);
}

TEST_CASE("accumulating entries are excluded from the count") {
    const auto lat = PicardLattice::blow_up_of_plane(1);
    const std::vector<ComponentCensusEntry> census{free_entry(1, 1),
                                                   swept_entry(1, 9, {0, 1}, false)};
    CHECK(counting_function(lat, census, 3, 1) == Rational(3));
}

TEST_CASE("model census shapes") {
    CountingModel m;
    m.lattice = PicardLattice::quadric_surface();
    m.base_genus = 1;
    m.offset = {0, 0};
    const auto census = model_census(m, 2);
    REQUIRE(census.size() == 2);
    for (const auto& e : census) {
        CHECK(e.height == 2);
        CHECK(e.dim == 2);
        CHECK(e.kind == ComponentKind::RelativelyFree);
    }

    CountingModel p2;
    p2.lattice = PicardLattice::blow_up_of_plane(0);
    p2.base_genus = 1;
    p2.offset = {0};
    const auto c2 = model_census(p2, 6);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0].height == 3);
    CHECK(c2[1].height == 6);

    p2.brauer_order = 3;
    CHECK(model_census(p2, 6).size() == 6);
}

TEST_CASE("predicted constant examples") {
    CountingModel m;
    m.lattice = PicardLattice::quadric_surface();
    m.base_genus = 1;
    m.offset = {0, 0};
    m.q = 2;
    CHECK(asymptotic_constant(m) == Rational(1, 2));

    // The constant scales linearly in the arithmetic multiplicities.
    m.brauer_order = 2;
    m.profile_count = 3;
    m.lattice_index = 5;
    CHECK(asymptotic_constant(m) == Rational(15));

    // q/(q-1) and the genus shift make the constant decrease with q at g >= 1.
    CountingModel a = m, b = m;
    a.q = 2;
    b.q = 3;
    CHECK(asymptotic_constant(a) > asymptotic_constant(b));
}

TEST_CASE("convergence report matches a brute-force double loop") {
    CountingModel m;
    m.lattice = PicardLattice::quadric_surface();
    m.base_genus = 1;
    m.offset = {0, 0};
    m.q = 2;
    m.brauer_order = 2;
    const long long d_max = 20;
    const auto rep = convergence_report(m, d_max, 5);
    REQUIRE(rep.rows.size() == 4);
    CHECK_FALSE(rep.truncated);

    for (const auto& row : rep.rows) {
        // Brute force over ruling bidegrees (a, b), height 2(a + b).
        Rational n(0);
        for (long long a = 0; a <= row.d; ++a)
            for (long long b = 0; b <= row.d; ++b) {
                const long long h = 2 * (a + b);
                if (h < 1 || h > row.d) continue;
                n += Rational(m.brauer_order) * pow_rational(m.q, static_cast<unsigned long>(h));
            }
        CHECK(row.N == n);
        Rational denom = pow_rational(m.q, static_cast<unsigned long>(row.d)) * row.d;
        CHECK(row.ratio == row.N / denom);
        CHECK(row.target == asymptotic_constant(m));
    }
}

TEST_CASE("report totals agree with counting the model census directly") {
    for (int r : {0, 1, 2}) {
        CountingModel m;
        m.lattice = PicardLattice::blow_up_of_plane(r);
        m.base_genus = 1;
        m.offset = ClassVector(static_cast<size_t>(m.lattice.rank()), 0);
        m.q = 3;
        const long long d = 8;
        const auto rep = convergence_report(m, d, d);
        REQUIRE(rep.rows.size() == 1);
        const auto census = model_census(m, d);
        CHECK(rep.rows.front().N == counting_function(m.lattice, census, m.q, d));
    }
}

TEST_CASE("point budget truncates the report") {
    CountingModel m;
    m.lattice = PicardLattice::quadric_surface();
    m.base_genus = 1;
    m.offset = {0, 0};
    const auto rep = convergence_report(m, 40, 10, /*max_points=*/5);
    CHECK(rep.truncated);
    CHECK(rep.rows.empty());
}

TEST_CASE("ruled-surface component counts") {
    CHECK(ruled_component_count(split2(1, 0, 0), 4, 2) == 4);
    CHECK_FALSE(ruled_component_count(split2(1, 0, 0), 4, 1).has_value());
    CHECK(ruled_component_count(semistable2(2, 0), 3, 4) == 3);
    CHECK_FALSE(ruled_component_count(semistable2(2, 0), 3, 3).has_value());

    NormalBundleDescriptor line;
    line.genus = 1;
    line.rank = 1;
    CHECK_THROWS_AS(ruled_component_count(line, 1, 5), std::invalid_argument);
}

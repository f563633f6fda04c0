#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dpfib/cones.hpp"
#include "oracles.hpp"

using namespace dpfib;

namespace {

RatVec rv(std::initializer_list<long long> xs) {
    RatVec v;
    for (long long x : xs) v.push_back(Rational(x));
    return v;
}

/// Rational bisection for the Fujita invariant: membership of K + tL in the
/// effective cone is tested against facet inequalities; the bracket is
/// narrowed until it pins a single value of the known denominator bound.
Rational bisect_a_invariant(const PicardLattice& lat, const ClassVector& L) {
    std::vector<RatVec> gens;
    for (const auto& g : effective_generators(lat)) gens.push_back(detail::to_ratvec(g));
    const auto facets = lat.rank() == 1 ? std::vector<RatVec>{{Rational(1)}}
                                        : polar_rays(lat.rank(), gens);
    const RatVec k = detail::to_ratvec(lat.canonical_class());
    const RatVec l = detail::to_ratvec(L);
    auto member = [&](const Rational& t) {
        for (const auto& f : facets)
            if (detail::dot(f, k) + t * detail::dot(f, l) < 0) return false;
        return true;
    };
    Rational lo(0), hi(1);
    while (!member(hi)) { lo = hi; hi *= 2; }
    // Denominators of the optimum divide some facet pairing with L; 2^40 of
    // bisection is far below that granularity for these lattices.
    for (int i = 0; i < 60; ++i) {
        const Rational mid = (lo + hi) / 2;
        if (member(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

}  // namespace

TEST_CASE("first orthant is self-dual") {
    const auto c = cone_from_generators(2, {rv({1, 0}), rv({0, 1})});
    const auto d = dual_cone(c);
    CHECK(d.generators == std::vector<RatVec>{rv({0, 1}), rv({1, 0})});
}

TEST_CASE("dual of the rank-two effective cone has two extremal rays") {
    // Generators E1 and H - E1 of the r = 1 model, paired through the Gram
    // matrix so duality is under the intersection form.
    const auto lat = PicardLattice::blow_up_of_plane(1);
    std::vector<RatVec> covs;
    for (const auto& g : effective_generators(lat))
        covs.push_back(detail::to_ratvec(lat.gram_apply(g)));
    const auto rays = polar_rays(2, covs);
    CHECK(rays.size() == 2);
    // Hand double description: {-b >= 0, a + b >= 0} has rays (1,0), (1,-1).
    CHECK(rays == std::vector<RatVec>{rv({1, -1}), rv({1, 0})});
}

TEST_CASE("double dual is the identity on random pointed cones") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long long> dist(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);  // ranks 2..4
        std::vector<RatVec> vecs;
        for (int i = 0; i < n + 2; ++i) {
            RatVec v(static_cast<size_t>(n));
            v[0] = Rational(1 + (rng() % 4));  // keep the cone pointed (x0 > 0)
            for (int k = 1; k < n; ++k) v[static_cast<size_t>(k)] = Rational(dist(rng));
            vecs.push_back(std::move(v));
        }
        RationalCone c;
        try {
            c = cone_from_generators(n, vecs);
        } catch (const DegenerateConeError&) {
            continue;  // degenerate draw
        }
        const auto dd = dual_cone(dual_cone(c));
        CHECK(dd.generators == polar_rays(n, c.facets));
        // Extremal rays of the double dual generate the same cone.
        for (const auto& ray : dd.generators)
            for (const auto& f : c.facets) CHECK(detail::dot(f, ray) >= 0);
    }
}

TEST_CASE("degenerate input errors out") {
    // A single covector in rank 2 cuts a halfplane: not pointed.
    CHECK_THROWS_AS(polar_rays(2, {rv({1, 0})}), DegenerateConeError);
}

TEST_CASE("effective generators per model") {
    CHECK(effective_generators(PicardLattice::blow_up_of_plane(0)) ==
          std::vector<ClassVector>{{1}});
    CHECK(effective_generators(PicardLattice::blow_up_of_plane(1)) ==
          std::vector<ClassVector>{{0, 1}, {1, -1}});
    CHECK(effective_generators(PicardLattice::blow_up_of_plane(2)).size() == 3);
    CHECK(effective_generators(PicardLattice::quadric_surface()) ==
          std::vector<ClassVector>{{1, 0}, {0, 1}});
}

TEST_CASE("low-degree effective classes are non-negative generator combinations") {
    // LP-style certificate at rank <= 3: every enumerated class of low degree
    // with negative self-intersection or fibration type pairs >= 0 with all
    // nef facets, which is exactly containment in the generated cone.
    for (int r = 1; r <= 2; ++r) {
        const auto lat = PicardLattice::blow_up_of_plane(r);
        const auto nef = nef_curve_cone(lat);
        for (long long deg = 1; deg <= 3; ++deg)
            for (long long self = -1; self <= 1; ++self)
                for (const auto& c : enumerate_classes(lat, deg, self)) {
                    if (lat.self_intersection(c) < -1) continue;
                    bool in_eff = true;
                    for (const auto& ray : nef.generators) {
                        Rational p(0);
                        const auto cov = detail::to_ratvec(lat.gram_apply(c));
                        p = detail::dot(cov, ray);
                        if (p < 0) in_eff = false;
                    }
                    CHECK(in_eff);
                }
    }
}

TEST_CASE("nef curve cone examples") {
    const auto p2 = nef_curve_cone(PicardLattice::blow_up_of_plane(0));
    CHECK(p2.generators == std::vector<RatVec>{rv({1})});

    const auto quad = nef_curve_cone(PicardLattice::quadric_surface());
    CHECK(quad.generators == std::vector<RatVec>{rv({0, 1}), rv({1, 0})});

    const auto r2 = nef_curve_cone(PicardLattice::blow_up_of_plane(2));
    CHECK(r2.generators.size() == 3);
}

TEST_CASE("anticanonical class is interior to the nef curve cone") {
    for (int r = 0; r <= 6; ++r) {
        const auto lat = PicardLattice::blow_up_of_plane(r);
        const auto nef = nef_curve_cone(lat);
        const auto kcov = detail::to_ratvec(lat.gram_apply(lat.anticanonical_class()));
        for (const auto& g : effective_generators(lat))
            CHECK(lat.pairing(lat.anticanonical_class(), g) > 0);
        for (const auto& ray : nef.generators) CHECK(detail::dot(kcov, ray) > 0);
    }
}

TEST_CASE("extremal nef rays are tight on enough effective generators") {
    for (int r = 2; r <= 4; ++r) {
        const auto lat = PicardLattice::blow_up_of_plane(r);
        const auto nef = nef_curve_cone(lat);
        for (const auto& ray : nef.generators) {
            std::vector<RatVec> tight;
            for (const auto& g : effective_generators(lat)) {
                const auto cov = detail::to_ratvec(lat.gram_apply(g));
                const Rational p = detail::dot(cov, ray);
                CHECK(p >= 0);
                if (p == 0) tight.push_back(cov);
            }
            CHECK(detail::matrix_rank(tight) == lat.rank() - 1);
        }
    }
}

TEST_CASE("Fujita invariant examples and oracle agreement") {
    for (int r = 0; r <= 6; ++r) {
        const auto lat = PicardLattice::blow_up_of_plane(r);
        const auto a = a_invariant(lat, lat.anticanonical_class());
        REQUIRE(a.has_value());
        CHECK(*a == 1);
    }
    const auto p2 = PicardLattice::blow_up_of_plane(0);
    CHECK(*a_invariant(p2, {1}) == 3);

    const auto r1 = PicardLattice::blow_up_of_plane(1);
    CHECK_FALSE(a_invariant(r1, {1, -1}).has_value());  // nef, not big
    CHECK_THROWS_AS(a_invariant(r1, {0, 1}), std::invalid_argument);  // not nef

    // Bisection cross-check on assorted nef-and-big classes.
    for (int r = 0; r <= 4; ++r) {
        const auto lat = PicardLattice::blow_up_of_plane(r);
        std::vector<ClassVector> picks = {lat.anticanonical_class(),
                                          scale_class(2, lat.anticanonical_class())};
        ClassVector h = lat.zero_class();
        h[0] = 1;
        picks.push_back(h);
        for (const auto& L : picks) {
            const auto exact = a_invariant(lat, L);
            REQUIRE(exact.has_value());
            const Rational approx = bisect_a_invariant(lat, L);
            CHECK(boost::multiprecision::abs(Rational(approx - *exact)) <=
                  Rational(1, 1LL << 40));
        }
    }
}

TEST_CASE("alpha constants for the reference models") {
    const auto p2 = alpha_constant(PicardLattice::blow_up_of_plane(0));
    CHECK(p2.alpha == Rational(1, 3));
    CHECK(p2.rho == 1);
    CHECK(p2.polytope_volume == Rational(1, 3));

    const auto quad = alpha_constant(PicardLattice::quadric_surface());
    CHECK(quad.alpha == Rational(1, 4));
    CHECK(quad.polytope_volume == Rational(1, 8));

    const auto r2 = alpha_constant(PicardLattice::blow_up_of_plane(2));
    CHECK(r2.alpha == Rational(1, 24));
    CHECK(r2.alpha == Rational(r2.rho) * r2.polytope_volume);
}

TEST_CASE("triangulation volume agrees with a Monte-Carlo estimate") {
    const auto lat = PicardLattice::blow_up_of_plane(2);
    const auto exact = alpha_constant(lat).polytope_volume;
    const Rational mc = oracle::monte_carlo_nef_slice_volume(lat, 200000, 99);
    const Rational dev = boost::multiprecision::abs(Rational(mc - exact)) / exact;
    CHECK(dev < Rational(1, 50));
}

TEST_CASE("alpha positivity and volume additivity across supported degrees") {
    for (int r = 0; r <= 4; ++r) {
        const auto a = alpha_constant(PicardLattice::blow_up_of_plane(r));
        CHECK(a.alpha > 0);
        CHECK(a.polytope_volume > 0);
        CHECK(a.alpha == Rational(a.rho) * a.polytope_volume);
    }
}

TEST_CASE("ray budget surfaces as an unsupported-degree error") {
    CHECK_THROWS_AS(alpha_constant(PicardLattice::blow_up_of_plane(6), 3),
                    RayBudgetExceeded);
}

TEST_CASE("nef point counts: reference values") {
    const auto p2 = PicardLattice::blow_up_of_plane(0);
    const auto m = count_nef_points(p2, p2.zero_class(), 3);
    REQUIRE(m.size() == 1);
    CHECK(m.at(3) == 1);

    const auto quad = PicardLattice::quadric_surface();
    const auto mq = count_nef_points(quad, quad.zero_class(), 4);
    REQUIRE(mq.size() == 2);
    CHECK(mq.at(2) == 2);
    CHECK(mq.at(4) == 3);

    // Offset pushing the region above the bound: empty.
    CHECK(count_nef_points(p2, {5}, 3).empty());
}

TEST_CASE("nef point counts agree with brute force") {
    const auto r2 = PicardLattice::blow_up_of_plane(2);
    for (long long d : {5LL, 17LL, 40LL}) {
        const auto fast = count_nef_points(r2, r2.zero_class(), d);
        std::map<long long, long long> brute;
        for (long long a = 0; a <= d; ++a)
            for (long long b = -a; b <= 0; ++b)
                for (long long c = -a; c <= 0; ++c) {
                    if (a + b + c < 0) continue;
                    const long long deg = 3 * a + b + c;
                    if (deg >= 1 && deg <= d) ++brute[deg];
                }
        CHECK(fast == brute);
    }
    // Nonzero offset, including one off the lattice walls.
    const auto off = ClassVector{2, -1, 0};
    for (long long d : {10LL, 25LL}) {
        const auto fast = count_nef_points(r2, off, d);
        std::map<long long, long long> brute;
        for (long long a = -10; a <= d; ++a)
            for (long long b = -d; b <= 10; ++b)
                for (long long c = -d; c <= 10; ++c) {
                    const long long da = a - off[0], db = b - off[1], dc = c - off[2];
                    if (-db < 0 || -dc < 0 || da + db + dc < 0) continue;
                    const long long deg = 3 * a + b + c;
                    if (deg >= 1 && deg <= d) ++brute[deg];
                }
        CHECK(fast == brute);
    }
}

TEST_CASE("Ehrhart ratio converges to the slice volume") {
    const auto r2 = PicardLattice::blow_up_of_plane(2);
    const Rational vol = alpha_constant(r2).polytope_volume;
    Rational previous_dev;
    bool first = true;
    for (long long d : {100LL, 200LL, 400LL}) {
        long long cum = 0;
        for (const auto& [deg, c] : count_nef_points(r2, r2.zero_class(), d)) cum += c;
        const Rational ratio = Rational(cum) / (Rational(d) * d * d);
        const Rational dev = boost::multiprecision::abs(Rational(ratio - vol)) / vol;
        if (!first) CHECK(dev < previous_dev);
        previous_dev = dev;
        first = false;
    }
    // The deviation halves when d doubles (leading correction ~ 12/d).
    CHECK(previous_dev < Rational(1, 25));
}

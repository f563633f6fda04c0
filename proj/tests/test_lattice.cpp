#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dpfib/lattice.hpp"

using namespace dpfib;

namespace {

/// Signature of the Gram matrix via rational diagonalization (congruence).
std::pair<int, int> gram_signature(const PicardLattice& lat) {
    const int n = lat.rank();
    std::vector<std::vector<Rational>> m(static_cast<size_t>(n),
                                         std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rational(lat.gram(i, j));
    int pos = 0, neg = 0;
    for (int k = 0; k < n; ++k) {
        if (m[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            // Find a later index to mix in, preserving congruence class.
            for (int j = k + 1; j < n; ++j)
                if (m[static_cast<size_t>(k)][static_cast<size_t>(j)] != 0) {
                    for (int t = 0; t < n; ++t)
                        m[static_cast<size_t>(k)][static_cast<size_t>(t)] +=
                            m[static_cast<size_t>(j)][static_cast<size_t>(t)];
                    for (int t = 0; t < n; ++t)
                        m[static_cast<size_t>(t)][static_cast<size_t>(k)] +=
                            m[static_cast<size_t>(t)][static_cast<size_t>(j)];
                    break;
                }
        }
        const Rational p = m[static_cast<size_t>(k)][static_cast<size_t>(k)];
        if (p > 0) ++pos;
        else if (p < 0) ++neg;
        if (p == 0) continue;
        for (int j = k + 1; j < n; ++j) {
            const Rational f = m[static_cast<size_t>(k)][static_cast<size_t>(j)] / p;
            if (f == 0) continue;
            for (int t = 0; t < n; ++t)
                m[static_cast<size_t>(j)][static_cast<size_t>(t)] -=
                    f * m[static_cast<size_t>(k)][static_cast<size_t>(t)];
            for (int t = 0; t < n; ++t)
                m[static_cast<size_t>(t)][static_cast<size_t>(j)] -=
                    f * m[static_cast<size_t>(t)][static_cast<size_t>(k)];
        }
    }
    return {pos, neg};
}

std::vector<PicardLattice> all_lattices() {
    std::vector<PicardLattice> out;
    for (int r = 0; r <= 8; ++r) out.push_back(PicardLattice::blow_up_of_plane(r));
    out.push_back(PicardLattice::quadric_surface());
    return out;
}

ClassVector random_class(const PicardLattice& lat, std::mt19937_64& rng, long long bound) {
    std::uniform_int_distribution<long long> dist(-bound, bound);
    ClassVector c(static_cast<size_t>(lat.rank()));
    for (auto& x : c) x = dist(rng);
    return c;
}

}  // namespace

TEST_CASE("pairing matches the fixed intersection form") {
    const auto dp3 = PicardLattice::blow_up_of_plane(6);
    ClassVector h(7, 0), e1(7, 0);
    h[0] = 1;
    e1[1] = 1;
    CHECK(dp3.pairing(h, h) == 1);
    CHECK(dp3.pairing(e1, e1) == -1);
    CHECK(dp3.pairing(dp3.canonical_class(), dp3.canonical_class()) == 3);
}

TEST_CASE("anticanonical degree examples") {
    CHECK(PicardLattice::blow_up_of_plane(0).anticanonical_degree({1}) == 3);
    CHECK(PicardLattice::blow_up_of_plane(1).anticanonical_degree({0, 1}) == 1);
    CHECK(PicardLattice::quadric_surface().anticanonical_degree({1, 0}) == 2);
}

TEST_CASE("self-intersection examples") {
    CHECK(PicardLattice::blow_up_of_plane(2).self_intersection({1, -1, -1}) == -1);
    CHECK(PicardLattice::blow_up_of_plane(1).self_intersection({1, -1}) == 0);
    CHECK(PicardLattice::blow_up_of_plane(0).self_intersection({2}) == 4);
}

TEST_CASE("canonical self-intersection equals the degree on every model") {
    for (const auto& lat : all_lattices()) {
        CHECK(lat.self_intersection(lat.canonical_class()) == lat.degree());
        CHECK(lat.degree() >= 1);
        CHECK(lat.degree() <= 9);
    }
}

TEST_CASE("Gram signature is (1, rank - 1) on every model") {
    for (const auto& lat : all_lattices()) {
        const auto [pos, neg] = gram_signature(lat);
        CHECK(pos == 1);
        CHECK(neg == lat.rank() - 1);
    }
}

TEST_CASE("pairing is symmetric and bilinear on random classes") {
    std::mt19937_64 rng(7);
    for (const auto& lat : all_lattices())
        for (int trial = 0; trial < 50; ++trial) {
            const auto a = random_class(lat, rng, 40);
            const auto b = random_class(lat, rng, 40);
            const auto c = random_class(lat, rng, 40);
            CHECK(lat.pairing(a, b) == lat.pairing(b, a));
            CHECK(lat.pairing(add_classes(a, b), c) ==
                  lat.pairing(a, c) + lat.pairing(b, c));
        }
}

TEST_CASE("Hodge inequality holds for positive-degree classes") {
    std::mt19937_64 rng(11);
    for (const auto& lat : all_lattices())
        for (int trial = 0; trial < 200; ++trial) {
            const auto c = random_class(lat, rng, 25);
            const auto d = random_class(lat, rng, 25);
            if (lat.anticanonical_degree(c) <= 0) continue;
            if (lat.self_intersection(d) <= 0) continue;
            const long long cd = lat.pairing(c, d);
            CHECK(cd * cd >= lat.self_intersection(c) * lat.self_intersection(d));
        }
}

TEST_CASE("dimension mismatch and overflow are hard errors") {
    const auto lat = PicardLattice::blow_up_of_plane(2);
    CHECK_THROWS_AS(lat.pairing({1, 0}, {1, 0, 0}), DimensionMismatch);
    const long long big = 4000000000LL;
    CHECK_THROWS_AS(lat.pairing({big, big, big}, {big, big, big}), OverflowError);
}

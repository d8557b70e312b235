#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace ncsohs;
using testsupport::Rng;
using E = std::optional<double>;

namespace {

const E kStar{};

/// Pattern on k vertices, specified exactly on the edges of g, all specified entries 1.
PartialSymMatrix pattern(const Graph& g) {
    return testsupport::mask(SymMatrix(Eigen::MatrixXd::Ones(SymMatrix::index(g.vertex_count()),
                                                             SymMatrix::index(g.vertex_count()))),
                             g);
}

}  // namespace

TEST_CASE("subspace arrangement ideals") {
    const PartialSymMatrix first({{5, 5, 5, kStar}, {5, 5, 5, kStar}, {5, 5, 5, 5}, {kStar, kStar, 5, 5}});
    CHECK(subspace_arrangement_ideal(first).to_string() == "<x0*x3, x1*x3>");
    const PartialSymMatrix cyc({{5, 5, kStar, 5}, {5, 5, 5, kStar}, {kStar, 5, 5, 5}, {5, kStar, 5, 5}});
    CHECK(subspace_arrangement_ideal(cyc).to_string() == "<x0*x2, x1*x3>");
    CHECK(subspace_arrangement_ideal(PartialSymMatrix::from(SymMatrix::identity(3))).is_zero());
    CHECK_THROWS_AS(MonomialIdeal(3, {{1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(MonomialIdeal(3, {{0, 3}}), InvalidArgument);
}

TEST_CASE("Stanley-Reisner complexes") {
    const SimplicialComplex edge = stanley_reisner_complex(MonomialIdeal(2, {{0, 1}}));
    CHECK(edge.faces().size() == 3);  // empty face and the two vertices
    CHECK(stanley_reisner_complex(MonomialIdeal(3, {})).facets() == std::vector<FaceMask>{0b111});

    // <x0x2, x1x3> leaves the 4-cycle 0-1-2-3 with no triangles.
    const SimplicialComplex c4 = stanley_reisner_complex(MonomialIdeal(4, {{0, 2}, {1, 3}}));
    std::vector<FaceMask> expected;
    for (FaceMask f = 0; f < 16; ++f) {
        const bool has02 = (f & 0b0101) == 0b0101;
        const bool has13 = (f & 0b1010) == 0b1010;
        if (!has02 && !has13) expected.push_back(f);
    }
    std::vector<FaceMask> faces = c4.faces();
    std::sort(faces.begin(), faces.end());
    CHECK(faces == expected);
    CHECK(c4.f_vector(0b1111) == std::vector<std::size_t>{1, 4, 4});
}

TEST_CASE("exact rank") {
    CHECK(exact_rank({{1, 2}, {2, 4}}) == 1);
    CHECK(exact_rank({{1, 0, -1}, {0, 1, 1}, {1, 1, 0}}) == 2);
    CHECK(exact_rank({}) == 0);
    // Entries large enough to overflow 64-bit Bareiss products.
    const std::int64_t big = std::int64_t{1} << 40;
    CHECK(exact_rank({{big, big + 1, 1}, {big + 1, big, 1}, {1, 1, big}}) == 3);
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const int r = testsupport::uniform_int(rng, 1, 6);
        const int c = testsupport::uniform_int(rng, 1, 6);
        std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(r), std::vector<std::int64_t>(static_cast<std::size_t>(c)));
        Eigen::MatrixXd m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = testsupport::uniform_int(rng, -1, 1);
                m(i, j) = static_cast<double>(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            }
        CHECK(exact_rank(a) == static_cast<std::size_t>(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank()));
    }
}

TEST_CASE("reduced homology of small complexes") {
    const SimplicialComplex simplex = stanley_reisner_complex(MonomialIdeal(3, {}));
    CHECK(reduced_homology(simplex, 0b111) == std::vector<std::size_t>{0, 0, 0, 0});
    const SimplicialComplex two_points = stanley_reisner_complex(MonomialIdeal(2, {{0, 1}}));
    const auto h = reduced_homology(two_points, 0b11);
    REQUIRE(h.size() >= 2);
    CHECK(h[1] == 1);  // two components
    const auto hc4 = reduced_homology(stanley_reisner_complex(MonomialIdeal(4, {{0, 2}, {1, 3}})), 0b1111);
    REQUIRE(hc4.size() >= 3);
    CHECK(hc4[2] == 1);  // one loop
}

TEST_CASE("reduced Euler characteristic matches the homology") {
    Rng rng(62);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testsupport::uniform_int(rng, 1, 7));
        const Graph g = testsupport::random_graph(rng, n, 0.5);
        const SimplicialComplex cx = stanley_reisner_complex(subspace_arrangement_ideal(pattern(g)));
        for (FaceMask w = 0; w < (FaceMask{1} << n); ++w) {
            const auto f = cx.f_vector(w);
            const auto hom = reduced_homology(cx, w);
            long long chi = 0;
            for (std::size_t i = 0; i < f.size(); ++i) chi += (i % 2 == 0 ? -1 : 1) * static_cast<long long>(f[i]);
            long long alt = 0;
            for (std::size_t q = 0; q < hom.size(); ++q) alt += (q % 2 == 0 ? -1 : 1) * static_cast<long long>(hom[q]);
            CHECK(chi == alt);
        }
    }
}

TEST_CASE("Betti tables of the three reference ideals") {
    const BettiTable a = betti_table(MonomialIdeal(4, {{0, 3}, {1, 3}}));
    CHECK(a.totals() == std::vector<long long>{2, 1});
    CHECK(a.at(0, 2) == 2);
    CHECK(a.at(1, 3) == 1);
    CHECK(a.regularity() == 2);
    CHECK(a.to_text() == "       0 1\ntotal: 2 1\n    2: 2 1\n");

    const BettiTable b = betti_table(MonomialIdeal(4, {{0, 2}, {1, 3}}));
    CHECK(b.totals() == std::vector<long long>{2, 1});
    CHECK(b.at(1, 4) == 1);
    CHECK(b.regularity() == 3);
    CHECK(b.to_text() == "       0 1\ntotal: 2 1\n    2: 2 .\n    3: . 1\n");

    const BettiTable c = betti_table(MonomialIdeal(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}}));
    CHECK(c.totals() == std::vector<long long>{8, 14, 9, 2});
    CHECK(c.rows() == std::vector<int>{2});
    CHECK(c.regularity() == 2);
}

TEST_CASE("Betti table edge cases") {
    const BettiTable zero = betti_table(MonomialIdeal(3, {}));
    CHECK(zero.empty());
    CHECK(zero.regularity() == 0);
    CHECK(regularity(MonomialIdeal(0, {})) == 0);
    CHECK(betti_table(MonomialIdeal(2, {{0, 1}})).totals() == std::vector<long long>{1});
    CHECK_THROWS_AS(betti_table(MonomialIdeal(17, {{0, 1}})), AmbientTooLarge);
}

TEST_CASE("cone shortcut does not change the table") {
    Rng rng(63);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testsupport::uniform_int(rng, 2, 6));
        const MonomialIdeal ideal = subspace_arrangement_ideal(pattern(testsupport::random_graph(rng, n, 0.5)));
        CHECK(betti_table(ideal, true) == betti_table(ideal, false));
    }
}

TEST_CASE("generator count sits at homological degree zero") {
    Rng rng(64);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testsupport::uniform_int(rng, 2, 7));
        const MonomialIdeal ideal = subspace_arrangement_ideal(pattern(testsupport::random_graph(rng, n, 0.6)));
        CHECK(betti_table(ideal).at(0, 2) == static_cast<long long>(ideal.generators().size()));
    }
}

TEST_CASE("chordal patterns are exactly the 2-regular ones") {
    Rng rng(65);
    int chordal = 0;
    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testsupport::uniform_int(rng, 1, 7));
        const Graph g = trial % 2 == 0 ? testsupport::random_chordal_graph(rng, n)
                                       : testsupport::random_graph(rng, n, testsupport::uniform(rng, 0.3, 0.8));
        const PartialSymMatrix p = pattern(g);
        const bool c = is_chordal(g).chordal;
        chordal += c ? 1 : 0;
        CHECK(c == (regularity(subspace_arrangement_ideal(p)) <= 2));
        CHECK(is_2_regular(p) == is_2_regular_by_betti(p));
    }
    CHECK(chordal > 80);
    CHECK(chordal < 250);
}

#include <catch_amalgamated.hpp>

#include "support.hpp"

#include <cmath>

using namespace ncsohs;
using testsupport::Rng;
using E = std::optional<double>;

namespace {

const E kStar{};

PartialSymMatrix c4(double corner) {
    return PartialSymMatrix({{5, 5, kStar, corner}, {5, 5, 5, kStar}, {kStar, 5, 5, 5}, {corner, kStar, 5, 5}});
}

}  // namespace

TEST_CASE("graph basics") {
    Graph g = Graph::cycle(4);
    CHECK(g.edge_count() == 4);
    CHECK(g.has_edge(0, 3));
    CHECK(g.degree(0) == 2);
    g.remove_edge(0, 3);
    CHECK_FALSE(g.has_edge(3, 0));
    CHECK(Graph::complete(4).is_clique({0, 1, 2, 3}));
    CHECK_THROWS_AS(g.add_edge(1, 1), InvalidArgument);
}

TEST_CASE("chordality of named graphs") {
    const ChordalityResult c4r = is_chordal(Graph::cycle(4));
    CHECK_FALSE(c4r.chordal);
    REQUIRE(c4r.cycle.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(Graph::cycle(4).has_edge(c4r.cycle[i], c4r.cycle[(i + 1) % 4]));
    }
    CHECK_FALSE(is_chordal(Graph::cycle(6)));
    CHECK(is_chordal(Graph::cycle(3)));
    for (std::size_t n = 0; n <= 7; ++n) CHECK(is_chordal(Graph::complete(n)));
    Rng rng(51);
    for (int t = 0; t < 50; ++t) {
        const Graph tree = testsupport::random_tree(rng, static_cast<std::size_t>(testsupport::uniform_int(rng, 1, 9)));
        const ChordalityResult r = is_chordal(tree);
        CHECK(r.chordal);
        CHECK(is_perfect_elimination_ordering(tree, r.elimination_order));
    }
}

TEST_CASE("is_chordal agrees with the induced cycle oracle") {
    Rng rng(52);
    int chordal = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testsupport::uniform_int(rng, 1, 8));
        const Graph g = trial % 3 == 0 ? testsupport::random_chordal_graph(rng, n)
                                       : testsupport::random_graph(rng, n, testsupport::uniform(rng, 0.2, 0.8));
        const ChordalityResult r = is_chordal(g);
        CHECK(r.chordal == !testsupport::has_induced_long_cycle(g));
        if (r.chordal) {
            ++chordal;
            CHECK(is_perfect_elimination_ordering(g, r.elimination_order));
        } else {
            // The reported cycle is induced and has length at least 4.
            REQUIRE(r.cycle.size() >= 4);
            for (std::size_t i = 0; i < r.cycle.size(); ++i) {
                for (std::size_t j = i + 1; j < r.cycle.size(); ++j) {
                    const bool adjacent = j == i + 1 || (i == 0 && j + 1 == r.cycle.size());
                    CHECK(g.has_edge(r.cycle[i], r.cycle[j]) == adjacent);
                }
            }
        }
    }
    CHECK(chordal > 200);
}

TEST_CASE("maximal cliques") {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    const auto cl = maximal_cliques(g);
    REQUIRE(cl.size() == 3);
    CHECK(cl[0] == std::vector<std::size_t>{0, 1, 2});
    CHECK(cl[1] == std::vector<std::size_t>{2, 3});
    CHECK(cl[2] == std::vector<std::size_t>{4});
    CHECK(maximal_cliques(Graph::cycle(4)).size() == 4);
}

TEST_CASE("partial matrices") {
    const PartialSymMatrix p({{1, kStar}, {kStar, 2}});
    CHECK_FALSE(p.is_specified(0, 1));
    CHECK(p.unspecified_pairs().size() == 1);
    CHECK_THROWS_AS(PartialSymMatrix({{1, 2}, {kStar, 1}}), InvalidArgument);
    CHECK_THROWS_AS(PartialSymMatrix({{kStar, 0}, {0, 1}}), InvalidArgument);
    CHECK(specification_graph(c4(5)).edge_count() == 4);
    CHECK(is_partial_psd(c4(5)));
    CHECK(is_partial_psd(c4(std::sqrt(5.0))));
    const PartialSymMatrix bad({{1, 2, kStar}, {2, 1, kStar}, {kStar, kStar, 1}});
    auto v = partial_psd_violation(bad);
    REQUIRE(v);
    CHECK(v->indices == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(psd_complete(bad), NotPartialPsd);
}

TEST_CASE("the three by three fives pattern fills with 5") {
    const PartialSymMatrix p({{5, 5, kStar}, {5, 5, 5}, {kStar, 5, 5}});
    const CompletionResult r = psd_complete_detailed(p);
    CHECK(r.method == CompletionMethod::chordal);
    CHECK(r.matrix(0, 2) == 5.0);
    CHECK(is_psd(r.matrix));
}

TEST_CASE("single fill uses b^t A^+ c") {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const SymMatrix m = testsupport::random_psd(rng, 3, static_cast<std::size_t>(testsupport::uniform_int(rng, 1, 3)));
        PartialSymMatrix p = PartialSymMatrix::from(m);
        p.unspecify(0, 2);
        const SymMatrix out = psd_complete(p);
        const double expected = m(1, 1) > 1e-12 ? m(0, 1) * m(1, 2) / m(1, 1) : 0.0;
        CHECK(out(0, 2) == Catch::Approx(expected).margin(1e-9));
        CHECK(is_psd(out, 1e-8));
    }
}

TEST_CASE("non-chordal patterns may or may not complete") {
    const CompletionResult all5 = psd_complete_detailed(c4(5));
    CHECK(all5.method == CompletionMethod::max_det);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(all5.matrix(i, j) - 5.0) <= 1e-6);

    try {
        psd_complete(c4(std::sqrt(5.0)));
        FAIL("expected CompletionFailed");
    } catch (const CompletionFailed& e) {
        CHECK(!e.minor().empty());
        CHECK(e.min_eigenvalue() < -1e-6);
    }
}

TEST_CASE("grid search finds no PSD completion of the sqrt(5) cycle") {
    const double s5 = std::sqrt(5.0);
    double best = -1e300;
    for (int a = -200; a <= 200; ++a) {
        for (int b = -200; b <= 200; ++b) {
            const double x = 0.05 * a;
            const double y = 0.05 * b;
            const SymMatrix m{{5, 5, x, s5}, {5, 5, 5, y}, {x, 5, 5, 5}, {s5, y, 5, 5}};
            best = std::max(best, min_eigenvalue(m));
        }
    }
    CHECK(best < -1e-6);
}

TEST_CASE("chordal masks of PSD matrices always complete") {
    Rng rng(54);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = static_cast<std::size_t>(testsupport::uniform_int(rng, 1, 8));
        const SymMatrix m = testsupport::random_psd(rng, k, static_cast<std::size_t>(testsupport::uniform_int(rng, 1, static_cast<int>(k))));
        const PartialSymMatrix p = testsupport::mask(m, testsupport::random_chordal_graph(rng, k));
        const SymMatrix out = psd_complete(p);
        CHECK(is_psd(out, 1e-8));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (p.is_specified(i, j)) CHECK(out(i, j) == *p.value(i, j));
    }
}

TEST_CASE("trees and sparse patterns complete") {
    Rng rng(55);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t k = static_cast<std::size_t>(testsupport::uniform_int(rng, 2, 8));
        const SymMatrix m = testsupport::random_psd(rng, k, k);
        Graph g = trial % 2 == 0 ? testsupport::random_tree(rng, k) : Graph(k);
        if (trial % 2 == 1) {
            for (int e = 0; e < 3; ++e) {
                const auto u = static_cast<std::size_t>(testsupport::uniform_int(rng, 0, static_cast<int>(k) - 1));
                const auto v = static_cast<std::size_t>(testsupport::uniform_int(rng, 0, static_cast<int>(k) - 1));
                if (u != v) g.add_edge(u, v);
            }
        }
        const CompletionResult r = psd_complete_detailed(testsupport::mask(m, g));
        CHECK(r.method != CompletionMethod::max_det);
        CHECK(is_psd(r.matrix, 1e-8));
    }
}

TEST_CASE("fully specified matrices are echoed") {
    const SymMatrix m{{2, 1}, {1, 2}};
    const CompletionResult r = psd_complete_detailed(PartialSymMatrix::from(m));
    CHECK(r.method == CompletionMethod::none);
    CHECK(r.matrix == m);
}

TEST_CASE("SOHS completion of partial representations") {
    const MonomialVector w{Word::one(), Word{1, 2}, Word{2, 1}, Word{2, 2}};
    const PartialRepresentation all5(w, c4(5));
    CHECK(is_quasi_sohs(all5));
    const SohsCompletion c = sohs_complete(all5);
    CHECK(c.certificate.is_psd(1e-6));
    CHECK(std::abs(c.f_bar.coeff(Word{1, 2}) - 10.0) < 1e-5);
    CHECK(c.f_bar.coeff(Word{2, 2}) == 10.0);

    const PartialRepresentation root5(w, c4(std::sqrt(5.0)));
    CHECK(is_quasi_sohs(root5));
    CHECK_THROWS_AS(sohs_complete(PartialRepresentation(w, PartialSymMatrix::from(SymMatrix{{5, 5, 5, std::sqrt(5.0)}, {5, 5, 5, 5}, {5, 5, 5, 5}, {std::sqrt(5.0), 5, 5, 5}}))), NotPartialPsd);
    CHECK_THROWS_AS(sohs_complete(root5), CompletionFailed);
    CHECK_THROWS_AS(PartialRepresentation(w, PartialSymMatrix({{0, kStar}, {kStar, 1}})), InvalidArgument);
}

TEST_CASE("2-regular patterns always admit SOHS completions") {
    Rng rng(56);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = static_cast<std::size_t>(testsupport::uniform_int(rng, 1, 6));
        const MonomialVector w = testsupport::random_monomials(rng, k, 2, 2);
        const SymMatrix m = testsupport::random_psd(rng, w.size(), w.size());
        const PartialSymMatrix p = testsupport::mask(m, testsupport::random_chordal_graph(rng, w.size()));
        REQUIRE(is_2_regular(p));
        const SohsCompletion c = sohs_complete(PartialRepresentation(w, p));
        CHECK(c.certificate.is_psd(1e-8));
    }
}

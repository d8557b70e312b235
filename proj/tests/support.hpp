#pragma once

// Generators and independent oracles shared by the test binaries.

#include <ncsohs/ncsohs.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

using namespace ncsohs;
using Rng = std::mt19937_64;
using Rational = boost::multiprecision::cpp_rational;

inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Word random_word(Rng& rng, std::size_t max_degree, int variables) {
    const int deg = uniform_int(rng, 0, static_cast<int>(max_degree));
    std::vector<Letter> letters;
    for (int i = 0; i < deg; ++i) {
        letters.push_back(static_cast<Letter>(uniform_int(rng, 1, variables)));
    }
    return Word(letters);
}

/// Integer coefficients in [-9, 9] so arithmetic identities hold exactly.
inline Polynomial random_polynomial(Rng& rng, int terms, std::size_t max_degree, int variables) {
    Polynomial f;
    for (int t = 0; t < terms; ++t) {
        const int c = uniform_int(rng, -9, 9);
        if (c != 0) {
            f.add_term(random_word(rng, max_degree, variables), c);
        }
    }
    return f;
}

/// Distinct words, at least one of degree exactly `top`.
inline MonomialVector random_monomials(Rng& rng, std::size_t k, std::size_t top, int variables) {
    k = std::min(k, word_count(top, static_cast<std::size_t>(variables)));
    std::vector<Word> words;
    auto fresh = [&](const Word& w) { return std::find(words.begin(), words.end(), w) == words.end(); };
    while (words.empty()) {
        std::vector<Letter> letters;
        for (std::size_t i = 0; i < top; ++i) {
            letters.push_back(static_cast<Letter>(uniform_int(rng, 1, variables)));
        }
        words.emplace_back(letters);
    }
    while (words.size() < k) {
        Word w = random_word(rng, top, variables);
        if (fresh(w)) {
            words.push_back(w);
        }
    }
    std::shuffle(words.begin(), words.end(), rng);
    return MonomialVector(std::move(words));
}

inline Eigen::MatrixXd random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double lo = -1,
                                     double hi = 1) {
    Eigen::MatrixXd m(SymMatrix::index(rows), SymMatrix::index(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            m(i, j) = uniform(rng, lo, hi);
        }
    }
    return m;
}

/// B B^t with B of shape k x rank.
inline SymMatrix random_psd(Rng& rng, std::size_t k, std::size_t rank) {
    const Eigen::MatrixXd b = random_matrix(rng, k, rank);
    const Eigen::MatrixXd m = b * b.transpose();
    return SymMatrix(Eigen::MatrixXd(0.5 * (m + m.transpose())));
}

inline SymMatrix random_symmetric(Rng& rng, std::size_t k, double lo, double hi) {
    const Eigen::MatrixXd b = random_matrix(rng, k, k, lo, hi);
    return SymMatrix(Eigen::MatrixXd(0.5 * (b + b.transpose())));
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t k) {
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
    std::shuffle(s.begin(), s.end(), rng);
    return s;
}

inline Graph random_graph(Rng& rng, std::size_t n, double p) {
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (uniform(rng, 0, 1) < p) g.add_edge(u, v);
        }
    }
    return g;
}

/// Random edges with probability p, then an induced cycle of length >= 4 planted on
/// random vertices. Never chordal.
inline Graph random_graph_with_cycle(Rng& rng, std::size_t n, double p) {
    Graph g = random_graph(rng, n, p);
    const auto order = random_permutation(rng, n);
    const std::size_t len = static_cast<std::size_t>(uniform_int(rng, 4, static_cast<int>(n)));
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = i + 1; j < len; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j + 1 == len);
            if (adjacent && !g.has_edge(order[i], order[j])) g.add_edge(order[i], order[j]);
            if (!adjacent && g.has_edge(order[i], order[j])) g.remove_edge(order[i], order[j]);
        }
    }
    return g;
}

/// Built by repeatedly attaching a vertex to a clique, then relabelled at random.
inline Graph random_chordal_graph(Rng& rng, std::size_t n) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t v = 1; v < n; ++v) {
        std::vector<std::size_t> clique;
        for (std::size_t u = 0; u < v; ++u) {
            if (uniform(rng, 0, 1) >= 0.5) continue;
            const bool joins = std::all_of(clique.begin(), clique.end(), [&](std::size_t c) {
                return std::find(adj[u].begin(), adj[u].end(), c) != adj[u].end();
            });
            if (joins) clique.push_back(u);
        }
        for (std::size_t u : clique) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    }
    const auto sigma = random_permutation(rng, n);
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v : adj[u]) {
            if (u < v) g.add_edge(sigma[u], sigma[v]);
        }
    }
    return g;
}

inline Graph random_tree(Rng& rng, std::size_t n) {
    Graph g(n);
    for (std::size_t v = 1; v < n; ++v) {
        g.add_edge(v, static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(v) - 1)));
    }
    return g;
}

/// Oracle: some vertex subset of size >= 4 induces a cycle.
inline bool has_induced_long_cycle(const Graph& g) {
    const std::size_t n = g.vertex_count();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) < 4) continue;
        std::vector<std::size_t> vs;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) vs.push_back(i);
        }
        bool two_regular = true;
        for (std::size_t v : vs) {
            std::size_t d = 0;
            for (std::size_t u : vs) d += g.has_edge(u, v) ? 1 : 0;
            two_regular = two_regular && d == 2;
        }
        if (!two_regular) continue;
        // A 2-regular graph is a single cycle iff it is connected.
        std::vector<std::size_t> stack{vs[0]};
        std::uint32_t seen = 1u << vs[0];
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t u : vs) {
                if (g.has_edge(u, v) && !(seen & (1u << u))) {
                    seen |= 1u << u;
                    stack.push_back(u);
                }
            }
        }
        if (seen == mask) return true;
    }
    return false;
}

/// Oracle: exact determinant by fraction-exact Gaussian elimination.
inline Rational exact_det(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

/// Oracle: an integer symmetric matrix is PSD iff every principal minor is >= 0.
inline bool psd_by_principal_minors(const std::vector<std::vector<int>>& m) {
    const std::size_t n = m.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) idx.push_back(i);
        }
        std::vector<std::vector<Rational>> sub(idx.size(), std::vector<Rational>(idx.size()));
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = m[idx[a]][idx[b]];
        }
        if (exact_det(sub) < 0) return false;
    }
    return true;
}

inline PartialSymMatrix mask(const SymMatrix& m, const Graph& g) {
    PartialSymMatrix p = PartialSymMatrix::from(m);
    for (std::size_t i = 0; i < m.order(); ++i) {
        for (std::size_t j = i + 1; j < m.order(); ++j) {
            if (!g.has_edge(i, j)) p.unspecify(i, j);
        }
    }
    return p;
}

inline double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
    return a.order() == 0 ? 0.0 : (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace testsupport

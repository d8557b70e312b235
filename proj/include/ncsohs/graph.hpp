#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ncsohs {

/// Simple undirected graph on vertices 0..n-1, adjacency-matrix backed.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

    static Graph complete(std::size_t n) {
        Graph g(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                g.add_edge(i, j);
            }
        }
        return g;
    }

    static Graph cycle(std::size_t n) {
        Graph g(n);
        for (std::size_t i = 0; i < n; ++i) {
            g.add_edge(i, (i + 1) % n);
        }
        return g;
    }

    std::size_t vertex_count() const noexcept { return n_; }

    void add_edge(std::size_t u, std::size_t v) {
        check(u, v);
        adj_[u * n_ + v] = adj_[v * n_ + u] = 1;
    }

    void remove_edge(std::size_t u, std::size_t v) {
        check(u, v);
        adj_[u * n_ + v] = adj_[v * n_ + u] = 0;
    }

    bool has_edge(std::size_t u, std::size_t v) const {
        return u < n_ && v < n_ && adj_[u * n_ + v] != 0;
    }

    std::vector<std::size_t> neighbors(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::size_t u = 0; u < n_; ++u) {
            if (adj_[v * n_ + u]) {
                out.push_back(u);
            }
        }
        return out;
    }

    std::size_t degree(std::size_t v) const {
        std::size_t d = 0;
        for (std::size_t u = 0; u < n_; ++u) {
            d += adj_[v * n_ + u];
        }
        return d;
    }

    /// Edges {u, v} with u < v in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t u = 0; u < n_; ++u) {
            for (std::size_t v = u + 1; v < n_; ++v) {
                if (adj_[u * n_ + v]) {
                    out.emplace_back(u, v);
                }
            }
        }
        return out;
    }

    std::size_t edge_count() const { return edges().size(); }

    bool is_clique(const std::vector<std::size_t>& vs) const {
        for (std::size_t a = 0; a < vs.size(); ++a) {
            for (std::size_t b = a + 1; b < vs.size(); ++b) {
                if (!has_edge(vs[a], vs[b])) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check(std::size_t u, std::size_t v) const {
        if (u >= n_ || v >= n_) {
            throw InvalidArgument("vertex out of range");
        }
        if (u == v) {
            throw InvalidArgument("loops are not allowed");
        }
    }

    std::size_t n_ = 0;
    std::vector<char> adj_;
};

/// Maximum cardinality search; returns vertices in the order they were picked.
inline std::vector<std::size_t> maximum_cardinality_search(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> weight(n, 0);
    std::vector<bool> done(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!done[v] && (best == n || weight[v] > weight[best])) {
                best = v;
            }
        }
        done[best] = true;
        order.push_back(best);
        for (std::size_t u = 0; u < n; ++u) {
            if (!done[u] && g.has_edge(best, u)) {
                ++weight[u];
            }
        }
    }
    return order;
}

/// True iff for each vertex, its neighbours later in `order` form a clique.
inline bool is_perfect_elimination_ordering(const Graph& g, const std::vector<std::size_t>& order) {
    const std::size_t n = g.vertex_count();
    if (order.size() != n) {
        return false;
    }
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (order[i] >= n || pos[order[i]] != n) {
            return false;
        }
        pos[order[i]] = i;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> later;
        for (std::size_t u : g.neighbors(order[i])) {
            if (pos[u] > i) {
                later.push_back(u);
            }
        }
        if (!g.is_clique(later)) {
            return false;
        }
    }
    return true;
}

/**
 * An induced cycle of length >= 4, or nothing if the graph is chordal.
 *
 * For a vertex v with non-adjacent neighbours u, w, a shortest u-w path that
 * avoids v's other closed neighbourhood closes up with v into a chordless
 * cycle. Every chordless cycle arises this way, so exhausting (v, u, w)
 * decides the question.
 */
inline std::optional<std::vector<std::size_t>> find_chordless_cycle(const Graph& g) {
    const std::size_t n = g.vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
        const auto nv = g.neighbors(v);
        for (std::size_t a = 0; a < nv.size(); ++a) {
            for (std::size_t b = a + 1; b < nv.size(); ++b) {
                const std::size_t u = nv[a];
                const std::size_t w = nv[b];
                if (g.has_edge(u, w)) {
                    continue;
                }
                std::vector<bool> blocked(n, false);
                blocked[v] = true;
                for (std::size_t x : nv) {
                    blocked[x] = x != u && x != w;
                }
                std::vector<std::size_t> parent(n, n);
                std::queue<std::size_t> q;
                q.push(u);
                parent[u] = u;
                while (!q.empty() && parent[w] == n) {
                    const std::size_t x = q.front();
                    q.pop();
                    for (std::size_t y = 0; y < n; ++y) {
                        if (!blocked[y] && parent[y] == n && g.has_edge(x, y)) {
                            parent[y] = x;
                            q.push(y);
                        }
                    }
                }
                if (parent[w] == n) {
                    continue;
                }
                std::vector<std::size_t> cycle{v};
                for (std::size_t x = w;; x = parent[x]) {
                    cycle.push_back(x);
                    if (x == u) {
                        break;
                    }
                }
                std::reverse(cycle.begin() + 1, cycle.end());
                return cycle;
            }
        }
    }
    return std::nullopt;
}

struct ChordalityResult {
    bool chordal = true;
    std::vector<std::size_t> elimination_order;  ///< a PEO when chordal
    std::vector<std::size_t> cycle;              ///< an induced cycle of length >= 4 otherwise

    explicit operator bool() const noexcept { return chordal; }
};

/// MCS ordering reversed is a PEO exactly when the graph is chordal.
inline ChordalityResult is_chordal(const Graph& g) {
    ChordalityResult out;
    auto order = maximum_cardinality_search(g);
    std::reverse(order.begin(), order.end());
    if (is_perfect_elimination_ordering(g, order)) {
        out.elimination_order = std::move(order);
        return out;
    }
    out.chordal = false;
    if (auto c = find_chordless_cycle(g)) {
        out.cycle = std::move(*c);
    }
    return out;
}

namespace detail {

inline void bron_kerbosch(const Graph& g, std::vector<std::size_t>& r, std::vector<std::size_t> p,
                          std::vector<std::size_t> x, std::vector<std::vector<std::size_t>>& out) {
    if (p.empty() && x.empty()) {
        auto clique = r;
        std::sort(clique.begin(), clique.end());
        out.push_back(std::move(clique));
        return;
    }
    // Pivot on the vertex of P u X with most neighbours in P.
    std::size_t pivot = p.empty() ? x.front() : p.front();
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
        for (std::size_t u : *set) {
            std::size_t c = 0;
            for (std::size_t v : p) {
                c += g.has_edge(u, v);
            }
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
    }
    const std::vector<std::size_t> candidates = [&] {
        std::vector<std::size_t> c;
        for (std::size_t v : p) {
            if (!g.has_edge(pivot, v)) {
                c.push_back(v);
            }
        }
        return c;
    }();
    for (std::size_t v : candidates) {
        std::vector<std::size_t> p2, x2;
        for (std::size_t u : p) {
            if (g.has_edge(v, u)) p2.push_back(u);
        }
        for (std::size_t u : x) {
            if (g.has_edge(v, u)) x2.push_back(u);
        }
        r.push_back(v);
        bron_kerbosch(g, r, std::move(p2), std::move(x2), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

}  // namespace detail

/// All maximal cliques (isolated vertices included), each sorted, list sorted.
inline std::vector<std::vector<std::size_t>> maximal_cliques(const Graph& g) {
    std::vector<std::vector<std::size_t>> out;
    if (g.vertex_count() == 0) {
        return out;
    }
    std::vector<std::size_t> r, p(g.vertex_count());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = i;
    }
    detail::bron_kerbosch(g, r, std::move(p), {}, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ncsohs

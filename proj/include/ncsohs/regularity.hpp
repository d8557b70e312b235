#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "completion.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace ncsohs {

/// Largest ambient variable count accepted by the exact Betti computation.
inline constexpr std::size_t kMaxBettiVariables = 16;

/// Ideal in k[x_0..x_{n-1}] generated by square-free quadratics x_p x_q.
class MonomialIdeal {
public:
    using Pair = std::pair<std::size_t, std::size_t>;

    MonomialIdeal() = default;

    MonomialIdeal(std::size_t n, std::vector<Pair> generators) : n_(n) {
        for (auto [p, q] : generators) {
            if (p == q) {
                throw InvalidArgument("generator x" + std::to_string(p) + "^2 is not square-free");
            }
            if (p >= n || q >= n) {
                throw InvalidArgument("generator index out of range");
            }
            gens_.emplace_back(std::min(p, q), std::max(p, q));
        }
        std::sort(gens_.begin(), gens_.end());
        if (std::adjacent_find(gens_.begin(), gens_.end()) != gens_.end()) {
            throw InvalidArgument("repeated generator");
        }
    }

    std::size_t variables() const noexcept { return n_; }
    const std::vector<Pair>& generators() const noexcept { return gens_; }
    bool is_zero() const noexcept { return gens_.empty(); }

    bool contains_pair(std::size_t p, std::size_t q) const {
        return std::binary_search(gens_.begin(), gens_.end(), Pair{std::min(p, q), std::max(p, q)});
    }

    /// "<x0*x3, x1*x3>", or "<0>" for the zero ideal.
    std::string to_string() const {
        if (gens_.empty()) {
            return "<0>";
        }
        std::string s = "<";
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            s += (i ? ", x" : "x") + std::to_string(gens_[i].first) + "*x" +
                 std::to_string(gens_[i].second);
        }
        return s + ">";
    }

    friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Pair> gens_;
};

/// One generator x_{i} x_{j} (0-based) per unspecified off-diagonal pair.
inline MonomialIdeal subspace_arrangement_ideal(const PartialSymMatrix& p) {
    return MonomialIdeal(p.order(), p.unspecified_pairs());
}

/// Vertices of a face as a bitmask over at most kMaxBettiVariables vertices.
using FaceMask = std::uint32_t;

/// A simplicial complex on vertices 0..n-1, stored as its full face set.
class SimplicialComplex {
public:
    SimplicialComplex() : n_(0), is_face_(1, 1), faces_{0} {}

    SimplicialComplex(std::size_t n, std::vector<FaceMask> faces) : n_(n) {
        if (n > kMaxBettiVariables) {
            throw AmbientTooLarge(n, kMaxBettiVariables);
        }
        is_face_.assign(std::size_t{1} << n, 0);
        for (FaceMask f : faces) {
            if (f >> n) {
                throw InvalidArgument("face uses a vertex outside the complex");
            }
            is_face_[f] = 1;
        }
        for (FaceMask f = 0; f < is_face_.size(); ++f) {
            if (!is_face_[f]) {
                continue;
            }
            for (FaceMask g = f; g; g &= g - 1) {
                if (!is_face_[f & ~(g & -g)]) {
                    throw InvalidArgument("face set is not closed under subsets");
                }
            }
        }
        rebuild();
    }

    std::size_t vertex_count() const noexcept { return n_; }
    bool contains(FaceMask f) const { return f < is_face_.size() && is_face_[f]; }

    /// All faces, the empty face first, ordered by size then mask.
    const std::vector<FaceMask>& faces() const noexcept { return faces_; }

    std::vector<FaceMask> facets() const {
        std::vector<FaceMask> out;
        for (FaceMask f : faces_) {
            bool maximal = true;
            for (std::size_t v = 0; v < n_ && maximal; ++v) {
                const FaceMask bit = FaceMask{1} << v;
                maximal = (f & bit) || !is_face_[f | bit];
            }
            if (maximal) {
                out.push_back(f);
            }
        }
        return out;
    }

    /// f_{-1}, f_0, f_1, ...: number of faces of each dimension, empty face included.
    std::vector<std::size_t> f_vector(FaceMask within) const {
        std::vector<std::size_t> f;
        for (FaceMask face : faces_) {
            if ((face & ~within) != 0) {
                continue;
            }
            const auto size = static_cast<std::size_t>(std::popcount(face));
            if (f.size() <= size) {
                f.resize(size + 1, 0);
            }
            ++f[size];
        }
        return f;
    }

private:
    void rebuild() {
        faces_.clear();
        for (FaceMask f = 0; f < is_face_.size(); ++f) {
            if (is_face_[f]) {
                faces_.push_back(f);
            }
        }
        std::stable_sort(faces_.begin(), faces_.end(), [](FaceMask a, FaceMask b) {
            return std::popcount(a) < std::popcount(b);
        });
    }

    friend SimplicialComplex stanley_reisner_complex(const MonomialIdeal& ideal);

    std::size_t n_;
    std::vector<char> is_face_;
    std::vector<FaceMask> faces_;
};

/// Faces are the vertex sets containing no generator pair.
inline SimplicialComplex stanley_reisner_complex(const MonomialIdeal& ideal) {
    const std::size_t n = ideal.variables();
    if (n > kMaxBettiVariables) {
        throw AmbientTooLarge(n, kMaxBettiVariables);
    }
    std::vector<FaceMask> forbidden(n, 0);
    for (auto [p, q] : ideal.generators()) {
        forbidden[p] |= FaceMask{1} << q;
        forbidden[q] |= FaceMask{1} << p;
    }
    SimplicialComplex out;
    out.n_ = n;
    out.is_face_.assign(std::size_t{1} << n, 0);
    out.is_face_[0] = 1;
    for (FaceMask f = 1; f < out.is_face_.size(); ++f) {
        const auto low = static_cast<std::size_t>(std::countr_zero(f));
        const FaceMask rest = f & (f - 1);
        out.is_face_[f] = out.is_face_[rest] && !(forbidden[low] & rest);
    }
    out.rebuild();
    return out;
}

namespace detail {

struct RankOverflow {};

inline std::int64_t checked_det2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    std::int64_t x = 0, y = 0, z = 0;
    if (__builtin_mul_overflow(a, b, &x) || __builtin_mul_overflow(c, d, &y) ||
        __builtin_sub_overflow(x, y, &z)) {
        throw RankOverflow{};
    }
    return z;
}

template <class T>
T det2(const T& a, const T& b, const T& c, const T& d) {
    if constexpr (std::is_same_v<T, std::int64_t>) {
        return checked_det2(a, b, c, d);
    } else {
        return a * b - c * d;
    }
}

/// Rank over Q by fraction-free (Bareiss) elimination; every division is exact.
template <class T>
std::size_t bareiss_rank(std::vector<std::vector<T>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    T prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = det2<T>(a[r][c], a[i][j], a[i][c], a[r][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Exact rank of an integer matrix; int64 first, arbitrary precision on overflow.
inline std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& a) {
    try {
        return bareiss_rank(a);
    } catch (const RankOverflow&) {
        using boost::multiprecision::cpp_int;
        std::vector<std::vector<cpp_int>> big(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            big[i].assign(a[i].begin(), a[i].end());
        }
        return bareiss_rank(std::move(big));
    }
}

}  // namespace detail

using detail::exact_rank;

/**
 * Reduced homology ranks over Q of the subcomplex induced on `within`.
 * Entry q+1 holds dim H~_q, starting at q = -1.
 */
inline std::vector<std::size_t> reduced_homology(const SimplicialComplex& cx, FaceMask within) {
    std::vector<std::vector<FaceMask>> by_size;
    for (FaceMask f : cx.faces()) {
        if ((f & ~within) != 0) {
            continue;
        }
        const auto size = static_cast<std::size_t>(std::popcount(f));
        if (by_size.size() <= size) {
            by_size.resize(size + 1);
        }
        by_size[size].push_back(f);
    }
    // rank of the boundary from size-s faces to size-(s-1) faces, s >= 1.
    std::vector<std::size_t> rank(by_size.size() + 1, 0);
    for (std::size_t s = 1; s < by_size.size(); ++s) {
        const auto& hi = by_size[s];
        const auto& lo = by_size[s - 1];
        std::map<FaceMask, std::size_t> row_of;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            row_of.emplace(lo[i], i);
        }
        std::vector<std::vector<std::int64_t>> m(lo.size(), std::vector<std::int64_t>(hi.size(), 0));
        for (std::size_t c = 0; c < hi.size(); ++c) {
            std::int64_t sign = 1;
            for (FaceMask g = hi[c]; g; g &= g - 1) {
                const FaceMask bit = g & -g;
                m[row_of.at(hi[c] & ~bit)][c] = sign;
                sign = -sign;
            }
        }
        rank[s] = exact_rank(m);
    }
    std::vector<std::size_t> h(by_size.size(), 0);
    for (std::size_t s = 0; s < by_size.size(); ++s) {
        h[s] = by_size[s].size() - rank[s] - rank[s + 1];
    }
    return h;
}

/// Graded Betti numbers beta_{i,j} of an ideal, stored sparsely (zeros omitted).
class BettiTable {
public:
    using Key = std::pair<int, int>;  ///< (homological index i, internal degree j)

    void add(int i, int j, long long v) {
        if (v != 0) {
            entries_[{i, j}] += v;
        }
    }

    long long at(int i, int j) const {
        auto it = entries_.find({i, j});
        return it == entries_.end() ? 0 : it->second;
    }

    const std::map<Key, long long>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    /// Largest homological index with a nonzero entry; -1 when empty.
    int length() const {
        int m = -1;
        for (const auto& [k, v] : entries_) {
            m = std::max(m, k.first);
        }
        return m;
    }

    std::vector<long long> totals() const {
        std::vector<long long> t(static_cast<std::size_t>(length() + 1), 0);
        for (const auto& [k, v] : entries_) {
            t[static_cast<std::size_t>(k.first)] += v;
        }
        return t;
    }

    /// max(j - i) over nonzero entries; 0 for the zero ideal.
    int regularity() const {
        int reg = 0;
        bool any = false;
        for (const auto& [k, v] : entries_) {
            reg = any ? std::max(reg, k.second - k.first) : k.second - k.first;
            any = true;
        }
        return reg;
    }

    /// Row labels j - i that carry at least one nonzero entry, ascending.
    std::vector<int> rows() const {
        std::vector<int> r;
        for (const auto& [k, v] : entries_) {
            r.push_back(k.second - k.first);
        }
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        return r;
    }

    /// Grid in the layout Macaulay2 prints: columns i, rows j - i, '.' for zero.
    std::string to_text() const {
        if (entries_.empty()) {
            return "total:\n";
        }
        const int cols = length() + 1;
        const auto totals_row = totals();
        const auto row_labels = rows();
        std::vector<std::size_t> width(static_cast<std::size_t>(cols), 1);
        auto cell = [&](int r, int i) {
            const long long v = at(i, r + i);
            return v == 0 ? std::string(".") : std::to_string(v);
        };
        for (int i = 0; i < cols; ++i) {
            auto& w = width[static_cast<std::size_t>(i)];
            w = std::max(w, std::to_string(i).size());
            w = std::max(w, std::to_string(totals_row[static_cast<std::size_t>(i)]).size());
            for (int r : row_labels) {
                w = std::max(w, cell(r, i).size());
            }
        }
        std::size_t label = std::string("total:").size();
        for (int r : row_labels) {
            label = std::max(label, std::to_string(r).size() + 1);
        }
        auto pad = [](const std::string& s, std::size_t w) {
            return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
        };
        auto line = [&](const std::string& head, auto&& value) {
            std::string s = pad(head, label);
            for (int i = 0; i < cols; ++i) {
                s += ' ' + pad(value(i), width[static_cast<std::size_t>(i)]);
            }
            return s + '\n';
        };
        std::string out = line("", [](int i) { return std::to_string(i); });
        out += line("total:", [&](int i) { return std::to_string(totals_row[static_cast<std::size_t>(i)]); });
        for (int r : row_labels) {
            out += line(std::to_string(r) + ":", [&](int i) { return cell(r, i); });
        }
        return out;
    }

    friend bool operator==(const BettiTable&, const BettiTable&) = default;

private:
    std::map<Key, long long> entries_;
};

/**
 * Graded Betti numbers of the ideal by Hochster's formula:
 *   beta_{i,j}(I) = sum_{|W| = j} dim H~_{j-i-2}(Delta_W)
 * where Delta is the Stanley-Reisner complex. The complex is a flag complex,
 * so Delta_W is a cone (zero reduced homology) whenever some vertex of W is
 * joined to all the others; `cone_shortcut` skips those W.
 */
inline BettiTable betti_table(const MonomialIdeal& ideal, bool cone_shortcut = true) {
    const std::size_t n = ideal.variables();
    if (n > kMaxBettiVariables) {
        throw AmbientTooLarge(n, kMaxBettiVariables);
    }
    const SimplicialComplex cx = stanley_reisner_complex(ideal);
    std::vector<FaceMask> joined(n, 0);  // vertices sharing an edge of the complex
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
            if (u != v && !ideal.contains_pair(u, v)) {
                joined[v] |= FaceMask{1} << u;
            }
        }
    }
    BettiTable table;
    const FaceMask full = n == 0 ? 0 : static_cast<FaceMask>((std::uint64_t{1} << n) - 1);
    for (FaceMask w = 1; w <= full && w != 0; ++w) {
        const int j = std::popcount(w);
        if (j < 2) {
            continue;
        }
        if (cone_shortcut) {
            bool cone = false;
            for (FaceMask g = w; g && !cone; g &= g - 1) {
                const auto v = static_cast<std::size_t>(std::countr_zero(g));
                cone = (w & ~(FaceMask{1} << v) & ~joined[v]) == 0;
            }
            if (cone) {
                continue;
            }
        }
        const auto h = reduced_homology(cx, w);
        for (std::size_t idx = 0; idx < h.size(); ++idx) {
            const int q = static_cast<int>(idx) - 1;
            const int i = j - q - 2;
            if (i >= 0) {
                table.add(i, j, static_cast<long long>(h[idx]));
            }
        }
    }
    return table;
}

inline int regularity(const MonomialIdeal& ideal) { return betti_table(ideal).regularity(); }

/// 2-regularity of the arrangement, decided by chordality of the specification graph.
inline bool is_2_regular(const PartialSymMatrix& p) {
    return is_chordal(specification_graph(p)).chordal;
}

/// Same question answered through the Betti table.
inline bool is_2_regular_by_betti(const PartialSymMatrix& p) {
    return regularity(subspace_arrangement_ideal(p)) <= 2;
}

}  // namespace ncsohs

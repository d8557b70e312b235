#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "word.hpp"

namespace ncsohs {

/// An ordered list of pairwise distinct words.
class MonomialVector {
public:
    MonomialVector() = default;

    MonomialVector(std::initializer_list<Word> words) : MonomialVector(std::vector<Word>(words)) {}

    explicit MonomialVector(std::vector<Word> words) : words_(std::move(words)) {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto [it, inserted] = pos_.emplace(words_[i], i);
            if (!inserted) {
                throw InvalidArgument("monomial vector repeats the word '" + words_[i].to_string() +
                                      "'");
            }
        }
    }

    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }
    const Word& operator[](std::size_t i) const { return words_.at(i); }
    const std::vector<Word>& words() const noexcept { return words_; }
    auto begin() const noexcept { return words_.begin(); }
    auto end() const noexcept { return words_.end(); }

    bool contains(const Word& w) const { return pos_.count(w) != 0; }

    std::optional<std::size_t> index_of(const Word& w) const {
        auto it = pos_.find(w);
        if (it == pos_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    /// Largest word degree; 0 when empty.
    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& w : words_) {
            d = std::max(d, w.degree());
        }
        return d;
    }

    MonomialVector permuted(const std::vector<std::size_t>& sigma) const {
        if (sigma.size() != size() || !is_permutation(sigma)) {
            throw InvalidArgument("not a permutation of the monomial indices");
        }
        std::vector<Word> out;
        out.reserve(size());
        for (std::size_t s : sigma) {
            out.push_back(words_[s]);
        }
        return MonomialVector(std::move(out));
    }

    friend bool operator==(const MonomialVector& a, const MonomialVector& b) {
        return a.words_ == b.words_;
    }

private:
    std::vector<Word> words_;
    std::unordered_map<Word, std::size_t> pos_;
};

/// A monomial vector W and a symmetric coefficient matrix G, standing for W^* G W.
class Representation {
public:
    Representation() = default;

    Representation(MonomialVector monomials, SymMatrix matrix)
        : monomials_(std::move(monomials)), matrix_(std::move(matrix)) {
        if (monomials_.size() != matrix_.order()) {
            throw InvalidArgument("representation has " + std::to_string(monomials_.size()) +
                                  " monomials but a matrix of order " +
                                  std::to_string(matrix_.order()));
        }
    }

    const MonomialVector& monomials() const noexcept { return monomials_; }
    const SymMatrix& matrix() const noexcept { return matrix_; }
    std::size_t order() const noexcept { return monomials_.size(); }

    /// Applies sigma to the monomials and congruently to the matrix.
    Representation permuted(const std::vector<std::size_t>& sigma) const {
        return {monomials_.permuted(sigma), permute_congruent(matrix_, sigma)};
    }

    friend bool operator==(const Representation&, const Representation&) = default;

private:
    MonomialVector monomials_;
    SymMatrix matrix_;
};

/// A representation whose matrix has strictly positive diagonal.
class GramLikeMatrix {
public:
    explicit GramLikeMatrix(Representation r) : rep_(std::move(r)) {
        for (std::size_t i = 0; i < rep_.order(); ++i) {
            if (!(rep_.matrix()(i, i) > 0.0)) {
                throw InvalidArgument("Gram-like matrix needs a positive diagonal; entry " +
                                      std::to_string(i + 1) + " is " +
                                      detail::format_double(rep_.matrix()(i, i)));
            }
        }
    }

    GramLikeMatrix(MonomialVector w, SymMatrix g)
        : GramLikeMatrix(Representation(std::move(w), std::move(g))) {}

    const Representation& representation() const noexcept { return rep_; }
    const MonomialVector& monomials() const noexcept { return rep_.monomials(); }
    const SymMatrix& matrix() const noexcept { return rep_.matrix(); }
    std::size_t order() const noexcept { return rep_.order(); }

    bool is_psd(double tol) const { return ncsohs::is_psd(rep_.matrix(), tol); }
    bool is_psd() const { return ncsohs::is_psd(rep_.matrix()); }

private:
    Representation rep_;
};

/// sum_{i,j} G(i,j) zeta_i^* zeta_j.
inline Polynomial expand(const MonomialVector& w, const SymMatrix& g) {
    if (w.size() != g.order()) {
        throw InvalidArgument("monomial count does not match matrix order");
    }
    Polynomial out;
    std::vector<Word> stars;
    stars.reserve(w.size());
    for (const auto& z : w) {
        stars.push_back(z.involution());
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            out.add_term(stars[i] * w[j], g(i, j));
        }
    }
    return out;
}

inline Polynomial expand(const Representation& r) { return expand(r.monomials(), r.matrix()); }
inline Polynomial expand(const GramLikeMatrix& r) { return expand(r.representation()); }

inline bool is_sohs_certificate(const Polynomial& f, const Representation& r, double tol = 1e-9) {
    return approx_equal(expand(r), f, tol) && is_psd(r.matrix(), tol);
}

/**
 * Writes W^* G W as sum g_t^* g_t from G = sum lambda_t v_t v_t^t, g_t = sqrt(lambda_t) v_t^t W.
 * Eigenvalues at or below `tol` are dropped. Throws NotPsd when G is not PSD at `tol`.
 */
inline std::vector<Polynomial> sohs_witness(const Representation& r, double tol = 1e-9) {
    const SymMatrix& g = r.matrix();
    const double eff = tol * (1.0 + g.inf_norm());
    if (!is_psd(g, eff)) {
        throw NotPsd("matrix is not positive semidefinite (lambda_min " +
                     detail::format_double(min_eigenvalue(g)) + ")");
    }
    std::vector<Polynomial> out;
    if (g.order() == 0) {
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.matrix());
    for (Eigen::Index t = es.eigenvalues().size() - 1; t >= 0; --t) {
        const double lambda = es.eigenvalues()(t);
        if (lambda <= eff) {
            continue;
        }
        Eigen::VectorXd v = es.eigenvectors().col(t) * std::sqrt(lambda);
        Eigen::Index lead = 0;
        v.cwiseAbs().maxCoeff(&lead);
        if (v(lead) < 0) {
            v = -v;
        }
        const double floor = 1e-15 * v.cwiseAbs().maxCoeff();
        Polynomial gt;
        for (std::size_t i = 0; i < r.order(); ++i) {
            const double c = v(SymMatrix::index(i));
            if (std::abs(c) > floor) {
                gt.add_term(r.monomials()[i], c);
            }
        }
        out.push_back(std::move(gt));
    }
    return out;
}

/// Sum of g^* g over the list.
inline Polynomial sum_of_hermitian_squares(const std::vector<Polynomial>& gs) {
    Polynomial out;
    for (const auto& g : gs) {
        out += g.involution() * g;
    }
    return out;
}

enum class FitPolicy { strict, even, first };

inline std::string to_string(FitPolicy p) {
    switch (p) {
        case FitPolicy::strict: return "strict";
        case FitPolicy::even: return "even";
        case FitPolicy::first: return "first";
    }
    return "strict";
}

inline FitPolicy parse_fit_policy(const std::string& s) {
    if (s == "strict") return FitPolicy::strict;
    if (s == "even") return FitPolicy::even;
    if (s == "first") return FitPolicy::first;
    throw InvalidArgument("unknown policy '" + s + "' (expected strict, even or first)");
}

/**
 * Finds a symmetric G with W^* G W = f.
 *
 * A cell is an unordered index pair {i, j}. It produces the word
 * zeta_i^* zeta_j and its involution, so each cell feeds exactly one
 * {w, w^*} orbit of f. Within an orbit the coefficient is shared among the
 * candidate cells according to `policy`. An off-diagonal cell counts twice
 * toward a self-adjoint word (both (i, j) and (j, i) produce it).
 */
inline Representation fit_gram(const Polynomial& f, const MonomialVector& w,
                               FitPolicy policy = FitPolicy::strict, double tol = 1e-9) {
    double scale = 1.0;
    for (const auto& [word, c] : f.terms()) {
        scale = std::max(scale, std::abs(c));
    }
    if (!f.is_symmetric(tol * scale)) {
        throw InvalidArgument("fit_gram needs a symmetric polynomial");
    }
    struct Cell {
        std::size_t i, j;
    };
    // Orbit representative (the deglex-smaller of w, w^*) -> candidate cells.
    std::map<Word, std::vector<Cell>> cells;
    // Visit cells in deglex order of their (smaller, larger) monomial pair so
    // that the first candidate stored is the deglex-smallest.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i; j < w.size(); ++j) {
            pairs.emplace_back(i, j);
        }
    }
    auto key = [&](const std::pair<std::size_t, std::size_t>& p) {
        const Word& a = w[p.first];
        const Word& b = w[p.second];
        return a < b ? std::pair<const Word*, const Word*>{&a, &b}
                     : std::pair<const Word*, const Word*>{&b, &a};
    };
    std::sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
        auto kp = key(p);
        auto kq = key(q);
        if (*kp.first != *kq.first) {
            return *kp.first < *kq.first;
        }
        return *kp.second < *kq.second;
    });
    for (const auto& [i, j] : pairs) {
        const Word u = w[i].involution() * w[j];
        const Word ustar = u.involution();
        cells[std::min(u, ustar)].push_back({i, j});
    }

    SymMatrix g(w.size());
    std::set<Word> done;
    for (const auto& [term, unused] : f.terms()) {
        const Word word = std::min(term, term.involution());
        if (!done.insert(word).second) {
            continue;
        }
        const Word star = word.involution();
        // Orbit average absorbs rounding noise between w and w^*.
        const double c = (f.coeff(word) + f.coeff(star)) / 2.0;
        auto it = cells.find(word);
        if (it == cells.end() || it->second.empty()) {
            throw UnrepresentableWord(word.to_string());
        }
        const auto& cand = it->second;
        const bool self_adjoint = star == word;
        auto weight = [&](const Cell& cell) { return cell.i != cell.j && self_adjoint ? 2.0 : 1.0; };
        switch (policy) {
            case FitPolicy::strict:
                if (cand.size() > 1) {
                    throw AmbiguousDistribution(word.to_string(), cand.size());
                }
                [[fallthrough]];
            case FitPolicy::first:
                g.set(cand.front().i, cand.front().j, c / weight(cand.front()));
                break;
            case FitPolicy::even: {
                const double share = c / static_cast<double>(cand.size());
                for (const auto& cell : cand) {
                    g.set(cell.i, cell.j, share / weight(cell));
                }
                break;
            }
        }
    }
    return {w, g};
}

/**
 * Right-chip closure of the words of f: every suffix and every prefix of
 * length at most ceil(deg f / 2), deglex sorted. Empty for f = 0.
 */
inline MonomialVector candidate_monomials(const Polynomial& f) {
    const auto deg = f.degree();
    if (!deg) {
        return {};
    }
    const std::size_t half = (*deg + 1) / 2;
    std::set<Word> found;
    for (const auto& [w, c] : f.terms()) {
        const Word star = w.involution();
        for (std::size_t i = 0; i <= half; ++i) {
            Word suffix = rc(w, i);
            Word prefix = rc(star, i).involution();
            if (suffix.degree() <= half) {
                found.insert(std::move(suffix));
            }
            if (prefix.degree() <= half) {
                found.insert(std::move(prefix));
            }
        }
    }
    return MonomialVector(std::vector<Word>(found.begin(), found.end()));
}

/// Fit over the full vector of all words of degree <= d in n letters (deglex).
inline Representation gram_matrix(const Polynomial& f, std::size_t d, std::size_t n,
                                  FitPolicy policy = FitPolicy::strict) {
    return fit_gram(f, MonomialVector(words_up_to(d, n)), policy);
}

}  // namespace ncsohs

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gram.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "word.hpp"

namespace ncsohs {

/// One term d * delta of f - h.
struct Delta {
    Word word;
    double coeff = 0.0;
};

/**
 * f = h + sum_j d_j delta_j together with a PSD Gram-like certificate R_h of h.
 * The deltas are the terms of f - h with magnitude above `tol`, in deglex order.
 */
class ExtensionProblem {
public:
    ExtensionProblem(Polynomial f, Polynomial h, GramLikeMatrix r_h, double tol = 1e-9)
        : f_(std::move(f)), h_(std::move(h)), r_h_(std::move(r_h)), tol_(tol) {
        if (!(tol > 0)) {
            throw InvalidArgument("tolerance must be positive");
        }
        if (!approx_equal(expand(r_h_), h_, tol)) {
            throw InvalidArgument("R_h does not expand to h");
        }
        if (!r_h_.is_psd(tol * (1.0 + r_h_.matrix().inf_norm()))) {
            throw NotPsd("R_h is not positive semidefinite");
        }
        const Polynomial rest = (f_ - h_).pruned(tol);
        for (const auto& [w, c] : rest.terms()) {
            deltas_.push_back({w, c});
        }
    }

    const Polynomial& f() const noexcept { return f_; }
    const Polynomial& h() const noexcept { return h_; }
    const GramLikeMatrix& r_h() const noexcept { return r_h_; }
    const std::vector<Delta>& deltas() const noexcept { return deltas_; }
    double tol() const noexcept { return tol_; }

private:
    Polynomial f_;
    Polynomial h_;
    GramLikeMatrix r_h_;
    double tol_;
    std::vector<Delta> deltas_;
};

struct RcChoice {
    std::size_t delta = 0;  ///< index into ExtensionProblem::deltas()
    RcDecomposition split;
};

struct RcCheck {
    bool ok = true;
    std::vector<RcChoice> choices;        ///< one per delta when ok
    std::vector<std::size_t> obstructed;  ///< deltas whose every split lies inside R_h

    explicit operator bool() const noexcept { return ok; }
};

/**
 * For each delta = beta^* gamma, looks for an rc decomposition where beta and
 * gamma are not both monomials of R_h.
 *
 * Among admissible splits the choice minimizes the number of monomials not yet
 * present (R_h's plus those added for earlier deltas), then the largest
 * degree among those new monomials, then gamma in deglex.
 */
inline RcCheck check_rc_conditions(const ExtensionProblem& p) {
    RcCheck out;
    const MonomialVector& zeta = p.r_h().monomials();
    std::set<Word> added;
    for (std::size_t j = 0; j < p.deltas().size(); ++j) {
        std::optional<RcDecomposition> best;
        std::tuple<std::size_t, std::size_t> best_key{};
        for (auto& dec : rc_decompositions(p.deltas()[j].word)) {
            if (zeta.contains(dec.left) && zeta.contains(dec.right)) {
                continue;
            }
            std::set<Word> fresh;
            for (const Word* w : {&dec.left, &dec.right}) {
                if (!zeta.contains(*w) && !added.count(*w)) {
                    fresh.insert(*w);
                }
            }
            std::size_t max_deg = 0;
            for (const auto& w : fresh) {
                max_deg = std::max(max_deg, w.degree());
            }
            const std::tuple<std::size_t, std::size_t> key{fresh.size(), max_deg};
            if (!best || key < best_key || (key == best_key && dec.right < best->right)) {
                best = dec;
                best_key = key;
            }
        }
        if (!best) {
            out.ok = false;
            out.obstructed.push_back(j);
            continue;
        }
        for (const Word* w : {&best->left, &best->right}) {
            if (!zeta.contains(*w)) {
                added.insert(*w);
            }
        }
        out.choices.push_back({j, *best});
    }
    if (!out.ok) {
        out.choices.clear();
    }
    return out;
}

/// Where a delta's coefficient went: matrix cell (row, col) and its mirror.
struct Placement {
    Word word;
    double value = 0.0;
    std::size_t row = 0;
    std::size_t col = 0;
};

/**
 * [[G_h, A], [A^t, C]] over W_l = (zeta_1..zeta_k, new monomials). Everything
 * is specified except the diagonal of C.
 */
struct PartialBlockMatrix {
    MonomialVector monomials;
    SymMatrix g_h;
    Eigen::MatrixXd a;      ///< k x m
    Eigen::MatrixXd c_off;  ///< m x m, diagonal meaningless
    std::vector<Placement> placements;

    std::size_t preserved() const noexcept { return g_h.order(); }
    std::size_t added() const noexcept { return static_cast<std::size_t>(c_off.rows()); }
};

inline PartialBlockMatrix build_partial_extension(const ExtensionProblem& p) {
    const RcCheck rc = check_rc_conditions(p);
    if (!rc.ok) {
        std::string words;
        for (std::size_t j : rc.obstructed) {
            words += (words.empty() ? "" : ", ") + p.deltas()[j].word.to_string();
        }
        throw NotApplicable("no admissible rc decomposition for: " + words);
    }
    const auto& deltas = p.deltas();
    std::map<Word, double> coeff;
    for (const auto& d : deltas) {
        if (is_hermitian_square(d.word)) {
            throw NotApplicable("'" + d.word.to_string() + "' is a Hermitian square");
        }
        coeff.emplace(d.word, d.coeff);
    }

    const MonomialVector& zeta = p.r_h().monomials();
    std::vector<Word> words = zeta.words();
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < words.size(); ++i) {
        index.emplace(words[i], i);
    }
    auto slot = [&](const Word& w) {
        auto [it, inserted] = index.emplace(w, words.size());
        if (inserted) {
            words.push_back(w);
        }
        return it->second;
    };

    struct Pending {
        std::size_t row, col;
        double value;
        Word word;
    };
    std::vector<Pending> pending;
    for (const auto& choice : rc.choices) {
        const Delta& d = deltas[choice.delta];
        const Word star = d.word.involution();
        double value = d.coeff;
        if (star == d.word) {
            value = d.coeff / 2.0;
        } else if (auto it = coeff.find(star); it != coeff.end()) {
            if (std::abs(it->second - d.coeff) > p.tol()) {
                throw NotApplicable("'" + d.word.to_string() + "' and its involution carry different "
                                    "coefficients");
            }
            if (star < d.word) {
                continue;  // fused into the mirror, placed once
            }
        } else if (p.f().coeff(star) != 0.0) {
            throw NotApplicable("involution of '" + d.word.to_string() + "' already occurs in f");
        }
        const std::size_t r = slot(choice.split.left);
        const std::size_t c = slot(choice.split.right);
        pending.push_back({r, c, value, d.word});
    }

    const std::size_t k = zeta.size();
    const std::size_t l = words.size();
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(SymMatrix::index(l), SymMatrix::index(l));
    full.topLeftCorner(SymMatrix::index(k), SymMatrix::index(k)) = p.r_h().matrix().matrix();
    PartialBlockMatrix out;
    for (const auto& e : pending) {
        full(SymMatrix::index(e.row), SymMatrix::index(e.col)) = e.value;
        full(SymMatrix::index(e.col), SymMatrix::index(e.row)) = e.value;
        out.placements.push_back({e.word, e.value, e.row, e.col});
    }
    const auto ki = SymMatrix::index(k);
    const auto mi = SymMatrix::index(l - k);
    out.monomials = MonomialVector(std::move(words));
    out.g_h = p.r_h().matrix();
    out.a = full.topRightCorner(ki, mi);
    out.c_off = full.bottomRightCorner(mi, mi);
    out.c_off.diagonal().setZero();
    return out;
}

/**
 * Fills the unspecified diagonal of C so that the Schur complement
 * C - A^t G_h^+ A becomes diagonally dominant:
 *   c_ii = (A^t G_h^+ A)_ii + sum_{j != i} |(C - A^t G_h^+ A)_ij| + margin.
 * Throws ColumnSpaceViolation when col(A) is not inside col(G_h).
 */
inline SymMatrix complete_diagonal(const PartialBlockMatrix& p, double margin = 1.0,
                                   double tol = 1e-9) {
    if (!(margin >= 0)) {
        throw InvalidArgument("margin must be nonnegative");
    }
    const auto k = SymMatrix::index(p.preserved());
    const auto m = SymMatrix::index(p.added());
    const double residual = column_space_residual(p.g_h, p.a);
    if (residual > tol * (1.0 + p.a.norm())) {
        throw ColumnSpaceViolation(residual);
    }
    const Eigen::MatrixXd s = p.a.transpose() * pseudo_inverse(p.g_h).matrix() * p.a;
    Eigen::MatrixXd c = p.c_off;
    for (Eigen::Index i = 0; i < m; ++i) {
        double off = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (j != i) {
                off += std::abs(p.c_off(i, j) - s(i, j));
            }
        }
        c(i, i) = s(i, i) + off + margin;
        if (!(c(i, i) > 0)) {
            throw NotApplicable("diagonal entry for '" +
                                p.monomials[static_cast<std::size_t>(k + i)].to_string() +
                                "' would be zero; use a positive margin");
        }
    }
    Eigen::MatrixXd full(k + m, k + m);
    full.topLeftCorner(k, k) = p.g_h.matrix();
    full.topRightCorner(k, m) = p.a;
    full.bottomLeftCorner(m, k) = p.a.transpose();
    full.bottomRightCorner(m, m) = c;
    SymMatrix out(full);
    if (!is_psd(out, tol * (1.0 + out.inf_norm()))) {
        throw NotPsd("diagonal completion is not positive semidefinite (lambda_min " +
                     detail::format_double(min_eigenvalue(out)) + ")");
    }
    return out;
}

/// Clause-by-clause verdict of the extension check.
struct GmpeReport {
    bool nontrivial = false;       ///< f~ != f
    bool new_words_only = false;   ///< f~ - f shares no word with f
    bool expands = false;          ///< W^* G W = f~
    bool psd = false;
    bool positive_diagonal = false;
    bool h_certified = false;      ///< R_h expands to h and is PSD
    bool preserves_block = false;  ///< R_h sits in R_f~ as a principal submatrix

    bool ok() const noexcept {
        return nontrivial && new_words_only && expands && psd && positive_diagonal &&
               h_certified && preserves_block;
    }
    explicit operator bool() const noexcept { return ok(); }

    std::string failing_clause() const {
        if (!nontrivial) return "extension adds no terms";
        if (!new_words_only) return "extension changes a coefficient of f";
        if (!expands) return "certificate does not expand to the extension";
        if (!psd) return "certificate is not positive semidefinite";
        if (!positive_diagonal) return "certificate has a nonpositive diagonal entry";
        if (!h_certified) return "R_h is not a PSD certificate of h";
        if (!preserves_block) return "R_h is not a principal submatrix of the certificate";
        return "";
    }
};

inline GmpeReport verify_gmpe_report(const Polynomial& f_tilde, const Polynomial& f,
                                     const Polynomial& h, const Representation& r_h,
                                     const Representation& r_f_tilde, double tol = 1e-9) {
    GmpeReport rep;
    const Polynomial added = (f_tilde - f).pruned(tol);
    rep.nontrivial = !added.is_zero();
    rep.new_words_only = std::all_of(added.terms().begin(), added.terms().end(),
                                     [&](const auto& t) { return f.coeff(t.first) == 0.0; });
    rep.expands = approx_equal(expand(r_f_tilde), f_tilde, tol);
    const SymMatrix& g = r_f_tilde.matrix();
    rep.psd = is_psd(g, tol * (1.0 + g.inf_norm()));
    rep.positive_diagonal = true;
    for (std::size_t i = 0; i < g.order(); ++i) {
        rep.positive_diagonal = rep.positive_diagonal && g(i, i) > 0.0;
    }
    rep.h_certified = approx_equal(expand(r_h), h, tol) &&
                      is_psd(r_h.matrix(), tol * (1.0 + r_h.matrix().inf_norm()));
    std::vector<std::size_t> idx;
    rep.preserves_block = true;
    for (const auto& w : r_h.monomials()) {
        auto i = r_f_tilde.monomials().index_of(w);
        if (!i) {
            rep.preserves_block = false;
            break;
        }
        idx.push_back(*i);
    }
    if (rep.preserves_block) {
        const SymMatrix sub = g.principal(idx);
        rep.preserves_block =
            sub.order() == 0 || (sub.matrix() - r_h.matrix().matrix()).cwiseAbs().maxCoeff() <= tol;
    }
    return rep;
}

/// Checks that (f~, R_f~) is a Gram-like-matrix-preserving SOHS extension of f with respect to (h, R_h).
inline bool verify_gmpe(const Polynomial& f_tilde, const Polynomial& f, const Polynomial& h,
                        const Representation& r_h, const Representation& r_f_tilde,
                        double tol = 1e-9) {
    return verify_gmpe_report(f_tilde, f, h, r_h, r_f_tilde, tol).ok();
}

struct ExtensionResult {
    Polynomial f_tilde;
    GramLikeMatrix certificate;
    std::size_t added_terms = 0;
};

/// check_rc_conditions -> build_partial_extension -> complete_diagonal, then verified.
inline ExtensionResult diagonal_extension(const Polynomial& f, const Polynomial& h,
                                          const GramLikeMatrix& r_h, double margin = 1.0,
                                          double tol = 1e-9) {
    const ExtensionProblem problem(f, h, r_h, tol);
    const PartialBlockMatrix partial = build_partial_extension(problem);
    const SymMatrix g = complete_diagonal(partial, margin, tol);
    Representation cert(partial.monomials, g);
    Polynomial f_tilde = expand(cert);
    const GmpeReport rep = verify_gmpe_report(f_tilde, f, h, r_h.representation(), cert, tol);
    if (!rep.ok()) {
        throw NotApplicable("diagonal completion does not give an extension: " +
                            rep.failing_clause());
    }
    const std::size_t added = (f_tilde - f).pruned(tol).size();
    return {std::move(f_tilde), GramLikeMatrix(std::move(cert)), added};
}

/**
 * Explicit extension for f = h + sum_j a_j zeta_j with no constant term.
 * W~ = (W_k, 1, zeta_1..zeta_r) and G~ = G_h (+) [[s, d^t], [d, I]] where
 * d_j = a_j (a_j / 2 for self-adjoint zeta_j) and s defaults to sum d_j^2 + 1.
 * `constant_entry` overrides s; any value >= sum d_j^2 keeps G~ PSD.
 */
inline ExtensionResult block_extension(const Polynomial& f, const Polynomial& h,
                                       const GramLikeMatrix& r_h,
                                       std::optional<double> constant_entry = std::nullopt,
                                       double tol = 1e-9) {
    if (f.coeff(Word::one()) != 0.0) {
        throw HypothesisViolated("f has a constant term");
    }
    if (!approx_equal(expand(r_h), h, tol) ||
        !r_h.is_psd(tol * (1.0 + r_h.matrix().inf_norm()))) {
        throw HypothesisViolated("R_h is not a PSD certificate of h");
    }
    const Polynomial rest = (f - h).pruned(tol);
    if (rest.coeff(Word::one()) != 0.0) {
        throw HypothesisViolated("f - h has a constant term");
    }
    const MonomialVector& wk = r_h.monomials();
    if (wk.contains(Word::one())) {
        throw HypothesisViolated("1 is a monomial of R_h");
    }
    for (const auto& [zeta, a] : rest.terms()) {
        if (wk.contains(zeta)) {
            throw HypothesisViolated("'" + zeta.to_string() + "' is a monomial of R_h");
        }
        for (const auto& [eta, c] : h.terms()) {
            for (std::size_t i = 0; i <= eta.degree(); ++i) {
                if (rc(eta, i) == zeta) {
                    throw HypothesisViolated("rc('" + eta.to_string() + "', " + std::to_string(i) +
                                             ") equals '" + zeta.to_string() + "'");
                }
            }
        }
        const Word star = zeta.involution();
        if (star != zeta && rest.coeff(star) != 0.0) {
            throw HypothesisViolated("f - h contains both '" + zeta.to_string() +
                                     "' and its involution");
        }
        if (f.coeff(star * zeta) != 0.0) {
            throw HypothesisViolated("'" + (star * zeta).to_string() + "' already occurs in f");
        }
    }

    std::vector<double> d;
    double sum_sq = 0.0;
    for (const auto& [zeta, a] : rest.terms()) {
        d.push_back(zeta.is_self_adjoint() ? a / 2.0 : a);
        sum_sq += d.back() * d.back();
    }
    const double s = constant_entry.value_or(sum_sq + 1.0);
    if (!(s > 0) || s < sum_sq - tol * (1.0 + sum_sq)) {
        throw InvalidArgument("constant entry must be positive and at least sum d_j^2 = " +
                              detail::format_double(sum_sq));
    }

    const std::size_t r = d.size();
    Eigen::MatrixXd lower = Eigen::MatrixXd::Identity(SymMatrix::index(r + 1),
                                                      SymMatrix::index(r + 1));
    lower(0, 0) = s;
    for (std::size_t j = 0; j < r; ++j) {
        lower(0, SymMatrix::index(j + 1)) = d[j];
        lower(SymMatrix::index(j + 1), 0) = d[j];
    }
    std::vector<Word> words = wk.words();
    words.push_back(Word::one());
    for (const auto& [zeta, a] : rest.terms()) {
        words.push_back(zeta);
    }
    Representation cert(MonomialVector(std::move(words)),
                        block_diag({r_h.matrix(), SymMatrix(lower)}));
    Polynomial f_tilde = expand(cert);
    const GmpeReport rep = verify_gmpe_report(f_tilde, f, h, r_h.representation(), cert, tol);
    if (!rep.ok()) {
        throw HypothesisViolated("construction does not verify: " + rep.failing_clause());
    }
    const std::size_t added = (f_tilde - f).pruned(tol).size();
    return {std::move(f_tilde), GramLikeMatrix(std::move(cert)), added};
}

/// True iff the two monomial lists share no word.
inline bool check_block_decomposable(const Representation& r_h, const Representation& r_g) {
    return std::none_of(r_g.monomials().begin(), r_g.monomials().end(),
                        [&](const Word& w) { return r_h.monomials().contains(w); });
}

/// block-diag(R_h, R_g) over the concatenated monomials; needs disjoint lists.
inline Representation assemble_block_certificate(const Representation& r_h,
                                                 const Representation& r_g) {
    if (!check_block_decomposable(r_h, r_g)) {
        throw InvalidArgument("monomial lists are not disjoint");
    }
    std::vector<Word> words = r_h.monomials().words();
    words.insert(words.end(), r_g.monomials().begin(), r_g.monomials().end());
    return {MonomialVector(std::move(words)), block_diag({r_h.matrix(), r_g.matrix()})};
}

}  // namespace ncsohs

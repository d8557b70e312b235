#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gram.hpp"
#include "graph.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"

namespace ncsohs {

/// Symmetric matrix with some off-diagonal entries unspecified. The diagonal is always specified.
class PartialSymMatrix {
public:
    using Entry = std::optional<double>;

    PartialSymMatrix() = default;

    explicit PartialSymMatrix(const std::vector<std::vector<Entry>>& rows)
        : k_(rows.size()),
          values_(Eigen::MatrixXd::Zero(SymMatrix::index(k_), SymMatrix::index(k_))),
          mask_(k_ * k_, 0) {
        for (std::size_t i = 0; i < k_; ++i) {
            if (rows[i].size() != k_) {
                throw InvalidArgument("partial matrix is not square");
            }
        }
        double scale = 1.0;
        for (const auto& row : rows) {
            for (const auto& e : row) {
                if (e) {
                    if (!std::isfinite(*e)) {
                        throw InvalidArgument("partial matrix has a non-finite entry");
                    }
                    scale = std::max(scale, 1.0 + std::abs(*e));
                }
            }
        }
        for (std::size_t i = 0; i < k_; ++i) {
            if (!rows[i][i]) {
                throw InvalidArgument("diagonal entry " + std::to_string(i + 1) + " is unspecified");
            }
            set(i, i, *rows[i][i]);
            for (std::size_t j = i + 1; j < k_; ++j) {
                const Entry& a = rows[i][j];
                const Entry& b = rows[j][i];
                if (a.has_value() != b.has_value()) {
                    throw InvalidArgument("entries (" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) +
                                          ") and its mirror disagree on being specified");
                }
                if (a) {
                    if (std::abs(*a - *b) > 1e-12 * scale) {
                        throw InvalidArgument("partial matrix is not symmetric at (" +
                                              std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                              ")");
                    }
                    set(i, j, 0.5 * (*a + *b));
                }
            }
        }
    }

    static PartialSymMatrix from(const SymMatrix& m) {
        PartialSymMatrix p;
        p.k_ = m.order();
        p.values_ = m.matrix();
        p.mask_.assign(p.k_ * p.k_, 1);
        return p;
    }

    std::size_t order() const noexcept { return k_; }

    bool is_specified(std::size_t i, std::size_t j) const { return mask_.at(i * k_ + j) != 0; }

    Entry value(std::size_t i, std::size_t j) const {
        if (!is_specified(i, j)) {
            return std::nullopt;
        }
        return values_(SymMatrix::index(i), SymMatrix::index(j));
    }

    /// Raw storage; unspecified entries read as 0.
    const Eigen::MatrixXd& values() const noexcept { return values_; }

    void set(std::size_t i, std::size_t j, double v) {
        if (i >= k_ || j >= k_) {
            throw InvalidArgument("index out of range");
        }
        values_(SymMatrix::index(i), SymMatrix::index(j)) = v;
        values_(SymMatrix::index(j), SymMatrix::index(i)) = v;
        mask_[i * k_ + j] = mask_[j * k_ + i] = 1;
    }

    void unspecify(std::size_t i, std::size_t j) {
        if (i == j) {
            throw InvalidArgument("diagonal entries cannot be unspecified");
        }
        if (i >= k_ || j >= k_) {
            throw InvalidArgument("index out of range");
        }
        values_(SymMatrix::index(i), SymMatrix::index(j)) = 0.0;
        values_(SymMatrix::index(j), SymMatrix::index(i)) = 0.0;
        mask_[i * k_ + j] = mask_[j * k_ + i] = 0;
    }

    /// Unspecified pairs (i < j), 0-based, lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> unspecified_pairs() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < k_; ++i) {
            for (std::size_t j = i + 1; j < k_; ++j) {
                if (!is_specified(i, j)) {
                    out.emplace_back(i, j);
                }
            }
        }
        return out;
    }

    bool is_complete() const { return unspecified_pairs().empty(); }

    SymMatrix principal(const std::vector<std::size_t>& idx) const {
        for (std::size_t a : idx) {
            for (std::size_t b : idx) {
                if (!is_specified(a, b)) {
                    throw InvalidArgument("principal submatrix has unspecified entries");
                }
            }
        }
        return SymMatrix(values_).principal(idx);
    }

    SymMatrix to_sym_matrix() const {
        if (!is_complete()) {
            throw InvalidArgument("matrix has unspecified entries");
        }
        return SymMatrix(values_);
    }

    std::vector<std::vector<Entry>> to_rows() const {
        std::vector<std::vector<Entry>> rows(k_, std::vector<Entry>(k_));
        for (std::size_t i = 0; i < k_; ++i) {
            for (std::size_t j = 0; j < k_; ++j) {
                rows[i][j] = value(i, j);
            }
        }
        return rows;
    }

private:
    std::size_t k_ = 0;
    Eigen::MatrixXd values_;
    std::vector<char> mask_;
};

/// Edge {i, j} for every specified off-diagonal pair.
inline Graph specification_graph(const PartialSymMatrix& p) {
    Graph g(p.order());
    for (std::size_t i = 0; i < p.order(); ++i) {
        for (std::size_t j = i + 1; j < p.order(); ++j) {
            if (p.is_specified(i, j)) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

struct MinorViolation {
    std::vector<std::size_t> indices;  ///< 0-based
    double min_eigenvalue = 0.0;
};

/// A maximal clique whose specified block is not PSD, if any.
inline std::optional<MinorViolation> partial_psd_violation(const PartialSymMatrix& p,
                                                           double tol = 1e-9) {
    for (const auto& clique : maximal_cliques(specification_graph(p))) {
        const SymMatrix block = p.principal(clique);
        const double lambda = min_eigenvalue(block);
        if (lambda < -tol * (1.0 + block.inf_norm())) {
            return MinorViolation{clique, lambda};
        }
    }
    return std::nullopt;
}

/// Every fully specified principal submatrix is PSD. Checked on maximal cliques,
/// which contain every fully specified index set.
inline bool is_partial_psd(const PartialSymMatrix& p, double tol = 1e-9) {
    return !partial_psd_violation(p, tol).has_value();
}

enum class CompletionMethod { none, chordal, max_det };

inline std::string to_string(CompletionMethod m) {
    switch (m) {
        case CompletionMethod::none: return "none";
        case CompletionMethod::chordal: return "chordal";
        case CompletionMethod::max_det: return "max-det";
    }
    return "none";
}

struct CompletionResult {
    SymMatrix matrix;
    CompletionMethod method = CompletionMethod::none;
    std::size_t filled = 0;  ///< number of unspecified pairs that were filled
};

namespace detail {

/// Smallest principal index set of `m` whose block has lambda_min below -threshold.
inline std::vector<std::size_t> smallest_bad_minor(const SymMatrix& m, double threshold,
                                                   double* lambda_out) {
    const std::size_t k = m.order();
    if (k > 16) {
        std::vector<std::size_t> all(k);
        for (std::size_t i = 0; i < k; ++i) all[i] = i;
        *lambda_out = min_eigenvalue(m);
        return all;
    }
    for (std::size_t size = 1; size <= k; ++size) {
        // Subsets of a given size in lexicographic order via a bitmask walk.
        std::vector<std::size_t> best;
        double best_lambda = 0.0;
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (1u << i)) idx.push_back(i);
            }
            const double lambda = min_eigenvalue(m.principal(idx));
            if (lambda < -threshold && (best.empty() || lambda < best_lambda)) {
                best = idx;
                best_lambda = lambda;
            }
        }
        if (!best.empty()) {
            *lambda_out = best_lambda;
            return best;
        }
    }
    *lambda_out = min_eigenvalue(m);
    return {};
}

/**
 * Coordinate ascent on log det(X + s I) over the free entries: each update
 * moves x_ij so that the (i, j) entry of the inverse vanishes.
 */
inline void center(Eigen::MatrixXd& x, double s,
                   const std::vector<std::pair<std::size_t, std::size_t>>& free) {
    const Eigen::Index k = x.rows();
    const Eigen::MatrixXd shift = s * Eigen::MatrixXd::Identity(k, k);
    const double scale = 1.0 + x.cwiseAbs().maxCoeff();
    for (int sweep = 0; sweep < 20000; ++sweep) {
        double moved = 0.0;
        for (const auto& [ui, uj] : free) {
            const auto i = SymMatrix::index(ui);
            const auto j = SymMatrix::index(uj);
            const Eigen::MatrixXd y = (x + shift).inverse();
            const double den = y(i, i) * y(j, j) - y(i, j) * y(i, j);
            if (!(den > 0)) {
                continue;
            }
            const double t = y(i, j) / den;
            x(i, j) += t;
            x(j, i) = x(i, j);
            moved = std::max(moved, std::abs(t));
        }
        if (moved <= 1e-10 * scale) {
            return;
        }
    }
}

}  // namespace detail

/**
 * Maximum-determinant completion of the free entries with an eps diagonal
 * shift, reached by shrinking a larger shift that keeps the iterate positive
 * definite. Throws CompletionFailed when the shift cannot be driven down to eps
 * or the result is not PSD at 1e-6 with the original diagonal.
 */
inline SymMatrix max_det_complete(const PartialSymMatrix& p, double eps = 1e-6) {
    const auto free = p.unspecified_pairs();
    Eigen::MatrixXd x = p.values();
    const Eigen::Index k = x.rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(k, k);
    if (k == 0) {
        return {};
    }
    double s = std::max(eps, x.cwiseAbs().rowwise().sum().maxCoeff() + 1.0);
    bool stalled = false;
    for (int outer = 0; outer < 400; ++outer) {
        detail::center(x, s, free);
        if (s <= eps) {
            break;
        }
        const double lambda = min_eigenvalue(SymMatrix(Eigen::MatrixXd(x + s * id)));
        const double next = std::max(eps, s - 0.9 * lambda);
        if (next > eps && s - next < 1e-9 * (1.0 + s)) {
            stalled = true;
            break;
        }
        s = next;
    }
    const SymMatrix result(x);
    const double lambda = min_eigenvalue(result);
    if (stalled || s > eps || lambda < -1e-6) {
        double bad_lambda = lambda;
        auto minor = detail::smallest_bad_minor(result, 1e-6, &bad_lambda);
        throw CompletionFailed("no positive semidefinite completion found (best lambda_min " +
                                   detail::format_double(lambda) + ")",
                               std::move(minor), bad_lambda);
    }
    return result;
}

/**
 * PSD completion. Chordal patterns are filled one entry at a time: pick the
 * first unspecified {i, j} whose addition keeps the graph chordal and whose
 * common neighbourhood K is a clique, and set x = b^t A^+ c from the block on
 * {i} u K u {j}. Other patterns go to max_det_complete.
 */
inline CompletionResult psd_complete_detailed(const PartialSymMatrix& p, double tol = 1e-9) {
    if (!(tol > 0)) {
        throw InvalidArgument("tolerance must be positive");
    }
    if (auto bad = partial_psd_violation(p, tol)) {
        throw NotPartialPsd(bad->indices, bad->min_eigenvalue);
    }
    const std::size_t missing = p.unspecified_pairs().size();
    if (missing == 0) {
        return {SymMatrix(p.values()), CompletionMethod::none, 0};
    }
    Graph g = specification_graph(p);
    if (is_chordal(g)) {
        PartialSymMatrix work = p;
        while (!work.is_complete()) {
            bool progressed = false;
            for (const auto& [i, j] : work.unspecified_pairs()) {
                std::vector<std::size_t> common;
                for (std::size_t v = 0; v < work.order(); ++v) {
                    if (g.has_edge(i, v) && g.has_edge(j, v)) {
                        common.push_back(v);
                    }
                }
                if (!g.is_clique(common)) {
                    continue;
                }
                g.add_edge(i, j);
                if (!is_chordal(g)) {
                    g.remove_edge(i, j);
                    continue;
                }
                double x = 0.0;
                if (!common.empty()) {
                    const SymMatrix a = work.principal(common);
                    Eigen::VectorXd b(SymMatrix::index(common.size()));
                    Eigen::VectorXd c(SymMatrix::index(common.size()));
                    for (std::size_t t = 0; t < common.size(); ++t) {
                        b(SymMatrix::index(t)) = *work.value(i, common[t]);
                        c(SymMatrix::index(t)) = *work.value(j, common[t]);
                    }
                    x = b.dot(pseudo_inverse(a).matrix() * c);
                }
                work.set(i, j, x);
                std::vector<std::size_t> local{i};
                local.insert(local.end(), common.begin(), common.end());
                local.push_back(j);
                std::sort(local.begin(), local.end());
                const SymMatrix block = work.principal(local);
                const double lambda = min_eigenvalue(block);
                if (lambda < -1e-8 * (1.0 + block.inf_norm())) {
                    throw CompletionFailed("filled block is not positive semidefinite", local, lambda);
                }
                progressed = true;
                break;
            }
            if (!progressed) {
                break;
            }
        }
        if (work.is_complete()) {
            SymMatrix out = work.to_sym_matrix();
            const double lambda = min_eigenvalue(out);
            if (lambda < -1e-8 * (1.0 + out.inf_norm())) {
                double bad = lambda;
                auto minor = detail::smallest_bad_minor(out, 1e-8 * (1.0 + out.inf_norm()), &bad);
                throw CompletionFailed("chordal completion is not positive semidefinite",
                                       std::move(minor), bad);
            }
            return {std::move(out), CompletionMethod::chordal, missing};
        }
    }
    return {max_det_complete(p), CompletionMethod::max_det, missing};
}

inline SymMatrix psd_complete(const PartialSymMatrix& p, double tol = 1e-9) {
    return psd_complete_detailed(p, tol).matrix;
}

/// Monomial vector with a partial coefficient matrix of positive diagonal.
class PartialRepresentation {
public:
    PartialRepresentation(MonomialVector monomials, PartialSymMatrix pmatrix)
        : monomials_(std::move(monomials)), pmatrix_(std::move(pmatrix)) {
        if (monomials_.size() != pmatrix_.order()) {
            throw InvalidArgument("partial representation has " +
                                  std::to_string(monomials_.size()) +
                                  " monomials but a matrix of order " +
                                  std::to_string(pmatrix_.order()));
        }
        for (std::size_t i = 0; i < pmatrix_.order(); ++i) {
            if (!(*pmatrix_.value(i, i) > 0.0)) {
                throw InvalidArgument("diagonal entry " + std::to_string(i + 1) +
                                      " must be positive");
            }
        }
    }

    const MonomialVector& monomials() const noexcept { return monomials_; }
    const PartialSymMatrix& pmatrix() const noexcept { return pmatrix_; }

private:
    MonomialVector monomials_;
    PartialSymMatrix pmatrix_;
};

inline bool is_quasi_sohs(const PartialRepresentation& p, double tol = 1e-9) {
    return is_partial_psd(p.pmatrix(), tol);
}

struct SohsCompletion {
    Polynomial f_bar;
    GramLikeMatrix certificate;
    CompletionMethod method = CompletionMethod::none;
};

/// Completes the partial Gram-like matrix and expands it over the same monomials.
inline SohsCompletion sohs_complete(const PartialRepresentation& p, double tol = 1e-9) {
    CompletionResult r = psd_complete_detailed(p.pmatrix(), tol);
    GramLikeMatrix cert(p.monomials(), std::move(r.matrix));
    Polynomial f_bar = expand(cert);
    return {std::move(f_bar), std::move(cert), r.method};
}

}  // namespace ncsohs

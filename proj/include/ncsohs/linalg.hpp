#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ncsohs {

/// A real symmetric matrix. Entries (i, j) and (j, i) are always bitwise equal.
class SymMatrix {
public:
    SymMatrix() = default;

    explicit SymMatrix(std::size_t k) : m_(Eigen::MatrixXd::Zero(index(k), index(k))) {}

    /// Accepts a square matrix whose asymmetry is below 1e-12 relative to its
    /// magnitude and averages the two triangles; anything else is rejected.
    explicit SymMatrix(const Eigen::MatrixXd& m) : m_(m) {
        if (m.rows() != m.cols()) {
            throw InvalidArgument("matrix is not square (" + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + ")");
        }
        if (!m.allFinite()) {
            throw InvalidArgument("matrix has non-finite entries");
        }
        const double scale = 1.0 + (m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
                if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) {
                    throw InvalidArgument("matrix is not symmetric at (" + std::to_string(i + 1) +
                                          "," + std::to_string(j + 1) + ")");
                }
                const double v = 0.5 * (m(i, j) + m(j, i));
                m_(i, j) = v;
                m_(j, i) = v;
            }
        }
    }

    SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
        : SymMatrix(from_rows(rows)) {}

    static SymMatrix identity(std::size_t k) {
        return SymMatrix(Eigen::MatrixXd::Identity(index(k), index(k)));
    }

    static SymMatrix zero(std::size_t k) { return SymMatrix(k); }

    static SymMatrix diagonal(const std::vector<double>& d) {
        SymMatrix out(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            out.m_(index(i), index(i)) = d[i];
        }
        return out;
    }

    std::size_t order() const noexcept { return static_cast<std::size_t>(m_.rows()); }

    double operator()(std::size_t i, std::size_t j) const { return m_(index(i), index(j)); }

    /// Sets (i, j) and (j, i) together.
    void set(std::size_t i, std::size_t j, double v) {
        m_(index(i), index(j)) = v;
        m_(index(j), index(i)) = v;
    }

    const Eigen::MatrixXd& matrix() const noexcept { return m_; }

    SymMatrix principal(const std::vector<std::size_t>& idx) const {
        SymMatrix out(idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) {
                out.m_(index(a), index(b)) = at(idx[a], idx[b]);
            }
        }
        return out;
    }

    /// Maximum absolute row sum.
    double inf_norm() const {
        return m_.size() == 0 ? 0.0 : m_.cwiseAbs().rowwise().sum().maxCoeff();
    }

    std::vector<std::vector<double>> to_rows() const {
        std::vector<std::vector<double>> rows(order(), std::vector<double>(order()));
        for (std::size_t i = 0; i < order(); ++i) {
            for (std::size_t j = 0; j < order(); ++j) {
                rows[i][j] = (*this)(i, j);
            }
        }
        return rows;
    }

    friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
        return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
    }

    static Eigen::Index index(std::size_t i) { return static_cast<Eigen::Index>(i); }

private:
    double at(std::size_t i, std::size_t j) const {
        if (i >= order() || j >= order()) {
            throw InvalidArgument("index out of range");
        }
        return m_(index(i), index(j));
    }

    static Eigen::MatrixXd from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const auto k = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd m(k, k);
        Eigen::Index i = 0;
        for (const auto& row : rows) {
            if (static_cast<Eigen::Index>(row.size()) != k) {
                throw InvalidArgument("ragged matrix rows");
            }
            Eigen::Index j = 0;
            for (double v : row) {
                m(i, j++) = v;
            }
            ++i;
        }
        return m;
    }

    Eigen::MatrixXd m_;
};

/// Default PSD tolerance: 1e-9 * (1 + ||M||_inf).
inline double default_tol(const SymMatrix& m) { return 1e-9 * (1.0 + m.inf_norm()); }

/// Ascending eigenvalues.
inline Eigen::VectorXd eigenvalues(const SymMatrix& m) {
    if (m.order() == 0) {
        return {};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// Smallest eigenvalue; +infinity for the empty matrix.
inline double min_eigenvalue(const SymMatrix& m) {
    if (m.order() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return eigenvalues(m)(0);
}

inline bool is_psd(const SymMatrix& m, double tol) {
    if (tol < 0) {
        throw InvalidArgument("tolerance must be nonnegative");
    }
    return min_eigenvalue(m) >= -tol;
}

inline bool is_psd(const SymMatrix& m) { return is_psd(m, default_tol(m)); }

inline bool is_pd(const SymMatrix& m, double tol) {
    if (tol < 0) {
        throw InvalidArgument("tolerance must be nonnegative");
    }
    return min_eigenvalue(m) > tol;
}

inline bool is_pd(const SymMatrix& m) { return is_pd(m, default_tol(m)); }

inline bool is_permutation(const std::vector<std::size_t>& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (std::size_t s : sigma) {
        if (s >= sigma.size() || seen[s]) {
            return false;
        }
        seen[s] = true;
    }
    return true;
}

/// result(i, j) = M(sigma[i], sigma[j]); sigma is 0-based.
inline SymMatrix permute_congruent(const SymMatrix& m, const std::vector<std::size_t>& sigma) {
    if (sigma.size() != m.order() || !is_permutation(sigma)) {
        throw InvalidArgument("not a permutation of the matrix indices");
    }
    return m.principal(sigma);
}

inline SymMatrix block_diag(const std::vector<SymMatrix>& blocks) {
    std::size_t k = 0;
    for (const auto& b : blocks) {
        k += b.order();
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(SymMatrix::index(k), SymMatrix::index(k));
    Eigen::Index off = 0;
    for (const auto& b : blocks) {
        const auto n = SymMatrix::index(b.order());
        out.block(off, off, n, n) = b.matrix();
        off += n;
    }
    return SymMatrix(out);
}

/// Moore-Penrose inverse via the spectral decomposition; eigenvalues with
/// |lambda| <= tol * |lambda|_max are treated as zero.
inline SymMatrix pseudo_inverse(const SymMatrix& m, double tol = 1e-10) {
    if (m.order() == 0) {
        return {};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.matrix());
    const Eigen::VectorXd& lambda = es.eigenvalues();
    const double cutoff = tol * lambda.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (std::abs(lambda(i)) > cutoff && lambda(i) != 0.0) {
            inv(i) = 1.0 / lambda(i);
        }
    }
    const Eigen::MatrixXd& v = es.eigenvectors();
    Eigen::MatrixXd p = v * inv.asDiagonal() * v.transpose();
    return SymMatrix(Eigen::MatrixXd(0.5 * (p + p.transpose())));
}

/// ||(I - A A^+) B||_F, the part of B outside the column space of A.
inline double column_space_residual(const SymMatrix& a, const Eigen::MatrixXd& b) {
    if (b.rows() != SymMatrix::index(a.order())) {
        throw InvalidArgument("row count of B does not match the order of A");
    }
    if (b.size() == 0) {
        return 0.0;
    }
    const Eigen::MatrixXd proj = a.matrix() * pseudo_inverse(a).matrix();
    return (b - proj * b).norm();
}

inline bool column_space_contains(const SymMatrix& a, const Eigen::MatrixXd& b, double tol = 1e-9) {
    return column_space_residual(a, b) <= tol * (1.0 + b.norm());
}

/// C - B^t A^+ B for M = [[A, B], [B^t, C]] with A the leading m x m block.
inline SymMatrix schur_complement(const SymMatrix& m, std::size_t lead) {
    const std::size_t k = m.order();
    if (lead < 1 || lead >= k) {
        throw InvalidArgument("Schur split must satisfy 1 <= m < order");
    }
    const auto p = SymMatrix::index(lead);
    const auto q = SymMatrix::index(k - lead);
    const Eigen::MatrixXd a = m.matrix().topLeftCorner(p, p);
    const Eigen::MatrixXd b = m.matrix().topRightCorner(p, q);
    const Eigen::MatrixXd c = m.matrix().bottomRightCorner(q, q);
    const Eigen::MatrixXd s = c - b.transpose() * pseudo_inverse(SymMatrix(a)).matrix() * b;
    return SymMatrix(Eigen::MatrixXd(0.5 * (s + s.transpose())));
}

/**
 * For a PSD matrix, a (numerically) zero diagonal entry forces its whole row
 * and column to vanish. Returns whether `m` obeys that; throws NotPsd when the
 * precondition fails.
 */
inline bool zero_diag_implies_zero_line_check(const SymMatrix& m, double tol = 1e-9) {
    if (!is_psd(m, tol * (1.0 + m.inf_norm()))) {
        throw NotPsd("zero-diagonal line check requires a positive semidefinite matrix");
    }
    for (std::size_t i = 0; i < m.order(); ++i) {
        if (std::abs(m(i, i)) > tol) {
            continue;
        }
        for (std::size_t j = 0; j < m.order(); ++j) {
            if (std::abs(m(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace ncsohs

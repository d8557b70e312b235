#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncsohs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed polynomial text. `position()` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class NotPsd : public Error {
public:
    using Error::Error;
};

/// A word of the target polynomial has no cell (i, j) with zeta_i^* zeta_j equal to it.
class UnrepresentableWord : public Error {
public:
    explicit UnrepresentableWord(std::string word)
        : Error("word '" + word + "' cannot be produced by the monomial vector"),
          word_(std::move(word)) {}

    const std::string& word() const noexcept { return word_; }

private:
    std::string word_;
};

/// Strict fitting found more than one candidate cell for a word.
class AmbiguousDistribution : public Error {
public:
    AmbiguousDistribution(std::string word, std::size_t cells)
        : Error("word '" + word + "' has " + std::to_string(cells) +
                " candidate cells; strict policy refuses to choose"),
          word_(std::move(word)), cells_(cells) {}

    const std::string& word() const noexcept { return word_; }
    std::size_t cells() const noexcept { return cells_; }

private:
    std::string word_;
    std::size_t cells_;
};

class NotApplicable : public Error {
public:
    using Error::Error;
};

/// The off-diagonal block does not lie in the column space of the preserved block.
class ColumnSpaceViolation : public Error {
public:
    explicit ColumnSpaceViolation(double residual)
        : Error("column space of the coupling block is not contained in that of G_h (residual " +
                std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class HypothesisViolated : public Error {
public:
    explicit HypothesisViolated(std::string clause)
        : Error("hypothesis violated: " + clause), clause_(std::move(clause)) {}

    const std::string& clause() const noexcept { return clause_; }

private:
    std::string clause_;
};

class NotPartialPsd : public Error {
public:
    explicit NotPartialPsd(std::vector<std::size_t> clique, double min_eigenvalue)
        : Error(describe(clique, min_eigenvalue)), clique_(std::move(clique)),
          min_eigenvalue_(min_eigenvalue) {}

    const std::vector<std::size_t>& clique() const noexcept { return clique_; }
    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    static std::string describe(const std::vector<std::size_t>& clique, double lambda) {
        std::string s = "specified principal submatrix on {";
        for (std::size_t i = 0; i < clique.size(); ++i) {
            s += (i ? "," : "") + std::to_string(clique[i] + 1);
        }
        return s + "} is not positive semidefinite (lambda_min " + std::to_string(lambda) + ")";
    }

    std::vector<std::size_t> clique_;
    double min_eigenvalue_;
};

/// No PSD completion was found. `minor()` lists (0-based) indices of a principal
/// submatrix of the best-effort completion that is not PSD.
class CompletionFailed : public Error {
public:
    CompletionFailed(const std::string& reason, std::vector<std::size_t> minor, double min_eigenvalue)
        : Error(reason), minor_(std::move(minor)), min_eigenvalue_(min_eigenvalue) {}

    const std::vector<std::size_t>& minor() const noexcept { return minor_; }
    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    std::vector<std::size_t> minor_;
    double min_eigenvalue_;
};

class AmbientTooLarge : public Error {
public:
    AmbientTooLarge(std::size_t n, std::size_t limit)
        : Error("ambient variable count " + std::to_string(n) + " exceeds limit " +
                std::to_string(limit)) {}
};

}  // namespace ncsohs

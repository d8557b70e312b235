#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ncsohs {

/// Variable index, 1-based: letter 3 is X3.
using Letter = std::uint32_t;

/**
 * An element of the free monoid over X1, X2, ...
 *
 * The empty word is the unit 1. Words are ordered degree first, then
 * lexicographically on letter indices (deglex).
 */
class Word {
public:
    Word() = default;

    Word(std::initializer_list<Letter> letters) : letters_(letters) { validate(); }

    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) { validate(); }

    static Word one() { return {}; }
    static Word var(Letter i) { return Word{i}; }

    const std::vector<Letter>& letters() const noexcept { return letters_; }
    std::size_t degree() const noexcept { return letters_.size(); }
    bool is_one() const noexcept { return letters_.empty(); }

    /// Largest variable index used, 0 for the empty word.
    Letter max_variable() const noexcept {
        return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
    }

    Word involution() const {
        Word w;
        w.letters_.assign(letters_.rbegin(), letters_.rend());
        return w;
    }

    bool is_self_adjoint() const noexcept {
        return std::equal(letters_.begin(), letters_.begin() + letters_.size() / 2,
                          letters_.rbegin());
    }

    friend Word operator*(const Word& a, const Word& b) {
        Word w;
        w.letters_.reserve(a.degree() + b.degree());
        w.letters_.insert(w.letters_.end(), a.letters_.begin(), a.letters_.end());
        w.letters_.insert(w.letters_.end(), b.letters_.begin(), b.letters_.end());
        return w;
    }

    friend bool operator==(const Word&, const Word&) = default;

    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (a.degree() != b.degree()) {
            return a.degree() <=> b.degree();
        }
        return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                      b.letters_.begin(), b.letters_.end());
    }

    /// Text form used by the polynomial grammar, e.g. "x1^2 x2" or "1".
    std::string to_string() const {
        if (letters_.empty()) {
            return "1";
        }
        std::string out;
        for (std::size_t i = 0; i < letters_.size();) {
            std::size_t run = 1;
            while (i + run < letters_.size() && letters_[i + run] == letters_[i]) {
                ++run;
            }
            if (!out.empty()) {
                out += ' ';
            }
            out += 'x' + std::to_string(letters_[i]);
            if (run > 1) {
                out += '^' + std::to_string(run);
            }
            i += run;
        }
        return out;
    }

private:
    void validate() const {
        for (Letter l : letters_) {
            if (l == 0) {
                throw InvalidArgument("variable indices are 1-based; got 0");
            }
        }
    }

    std::vector<Letter> letters_;
};

/// Right chip: the last i letters of w; w itself when i >= deg(w); 1 when i = 0.
inline Word rc(const Word& w, std::size_t i) {
    if (i >= w.degree()) {
        return w;
    }
    const auto& l = w.letters();
    return Word(std::vector<Letter>(l.end() - static_cast<std::ptrdiff_t>(i), l.end()));
}

/// A factorisation w = left^* right. `split` is the length of `right`.
struct RcDecomposition {
    Word left;
    Word right;
    std::size_t split = 0;

    friend bool operator==(const RcDecomposition&, const RcDecomposition&) = default;
};

/**
 * All deg(w)+1 rc decompositions of w, ordered by split n = 0..deg(w).
 *
 * The n-th entry is (rc(w^*, deg(w) - n), rc(w, n)), so that
 * left^* * right == w for every entry.
 */
inline std::vector<RcDecomposition> rc_decompositions(const Word& w) {
    std::vector<RcDecomposition> out;
    const std::size_t d = w.degree();
    const Word star = w.involution();
    out.reserve(d + 1);
    for (std::size_t n = 0; n <= d; ++n) {
        out.push_back({rc(star, d - n), rc(w, n), n});
    }
    return out;
}

/// Hermitian square test: w == v^* v for some word v.
inline bool is_hermitian_square(const Word& w) {
    if (w.degree() % 2 != 0) {
        return false;
    }
    const auto& l = w.letters();
    const std::size_t half = l.size() / 2;
    return std::equal(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(half), l.rbegin());
}

/// Number of words of degree at most d in n letters: 1 + n + ... + n^d.
inline std::size_t word_count(std::size_t d, std::size_t n) {
    std::size_t total = 0;
    std::size_t power = 1;
    for (std::size_t k = 0; k <= d; ++k) {
        total += power;
        power *= n;
    }
    return total;
}

/// Every word of degree <= d over X1..Xn in deglex order.
inline std::vector<Word> words_up_to(std::size_t d, std::size_t n) {
    std::vector<Word> out;
    out.reserve(word_count(d, n));
    out.push_back(Word::one());
    std::vector<std::vector<Letter>> layer{{}};
    for (std::size_t k = 1; k <= d && n > 0; ++k) {
        std::vector<std::vector<Letter>> next;
        next.reserve(layer.size() * n);
        for (const auto& prefix : layer) {
            for (Letter x = 1; x <= n; ++x) {
                auto w = prefix;
                w.push_back(x);
                next.push_back(std::move(w));
            }
        }
        for (const auto& w : next) {
            out.emplace_back(w);
        }
        layer = std::move(next);
    }
    return out;
}

}  // namespace ncsohs

template <>
struct std::hash<ncsohs::Word> {
    std::size_t operator()(const ncsohs::Word& w) const noexcept {
        std::size_t h = w.degree();
        for (auto l : w.letters()) {
            h ^= std::hash<std::uint32_t>{}(l) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

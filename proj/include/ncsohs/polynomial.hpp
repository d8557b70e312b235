#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "word.hpp"

namespace ncsohs {

/**
 * A real noncommutative polynomial: a finite map Word -> coefficient.
 *
 * Zero coefficients are never stored, so two polynomials are equal exactly
 * when their term maps are equal. Terms iterate in deglex order.
 */
class Polynomial {
public:
    using TermMap = std::map<Word, double>;

    Polynomial() = default;

    static Polynomial constant(double c) { return term(Word::one(), c); }

    static Polynomial variable(Letter i) { return term(Word::var(i), 1.0); }

    static Polynomial term(Word w, double c) {
        Polynomial p;
        p.add_term(std::move(w), c);
        return p;
    }

    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    double coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? 0.0 : it->second;
    }

    /// Highest word length; empty for the zero polynomial.
    std::optional<std::size_t> degree() const {
        if (terms_.empty()) {
            return std::nullopt;
        }
        std::size_t d = 0;
        for (const auto& [w, c] : terms_) {
            d = std::max(d, w.degree());
        }
        return d;
    }

    /// Number of variables: the largest index occurring.
    Letter variable_count() const {
        Letter n = 0;
        for (const auto& [w, c] : terms_) {
            n = std::max(n, w.max_variable());
        }
        return n;
    }

    std::vector<Word> words() const {
        std::vector<Word> out;
        out.reserve(terms_.size());
        for (const auto& [w, c] : terms_) {
            out.push_back(w);
        }
        return out;
    }

    void add_term(Word w, double c) {
        if (c == 0.0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(std::move(w), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0.0) {
                terms_.erase(it);
            }
        }
    }

    Polynomial involution() const {
        Polynomial out;
        for (const auto& [w, c] : terms_) {
            out.terms_.emplace(w.involution(), c);
        }
        return out;
    }

    /// Exact comparison of f against f^*.
    bool is_symmetric() const {
        for (const auto& [w, c] : terms_) {
            if (coeff(w.involution()) != c) {
                return false;
            }
        }
        return true;
    }

    /// Symmetric up to `tol` in every coefficient.
    bool is_symmetric(double tol) const {
        for (const auto& [w, c] : terms_) {
            if (std::abs(coeff(w.involution()) - c) > tol) {
                return false;
            }
        }
        return true;
    }

    /// Copy without the terms whose magnitude is at most `tol`.
    Polynomial pruned(double tol) const {
        Polynomial out;
        for (const auto& [w, c] : terms_) {
            if (std::abs(c) > tol) {
                out.terms_.emplace(w, c);
            }
        }
        return out;
    }

    Polynomial& operator+=(const Polynomial& g) {
        for (const auto& [w, c] : g.terms_) {
            add_term(w, c);
        }
        return *this;
    }

    Polynomial& operator-=(const Polynomial& g) {
        for (const auto& [w, c] : g.terms_) {
            add_term(w, -c);
        }
        return *this;
    }

    Polynomial& operator*=(double s) {
        if (s == 0.0) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_) {
            c *= s;
        }
        std::erase_if(terms_, [](const auto& t) { return t.second == 0.0; });
        return *this;
    }

    friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
    friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
    friend Polynomial operator*(Polynomial f, double s) { return f *= s; }
    friend Polynomial operator*(double s, Polynomial f) { return f *= s; }
    friend Polynomial operator-(Polynomial f) { return f *= -1.0; }

    /// Free-algebra product: words concatenate pairwise.
    friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
        Polynomial out;
        for (const auto& [u, a] : f.terms_) {
            for (const auto& [v, b] : g.terms_) {
                out.add_term(u * v, a * b);
            }
        }
        return out;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    std::string to_string() const;

private:
    TermMap terms_;
};

inline Polynomial add(const Polynomial& f, const Polynomial& g) { return f + g; }
inline Polynomial scalar_mul(double s, const Polynomial& f) { return s * f; }
inline Polynomial mul(const Polynomial& f, const Polynomial& g) { return f * g; }
inline Polynomial involution(const Polynomial& f) { return f.involution(); }
inline bool is_symmetric(const Polynomial& f) { return f.is_symmetric(); }

/// Largest coefficient-wise deviation between f and g.
inline double max_coeff_difference(const Polynomial& f, const Polynomial& g) {
    double worst = 0.0;
    const Polynomial diff = f - g;
    for (const auto& [w, c] : diff.terms()) {
        worst = std::max(worst, std::abs(c));
    }
    return worst;
}

inline bool approx_equal(const Polynomial& f, const Polynomial& g, double tol) {
    return max_coeff_difference(f, g) <= tol;
}

namespace detail {

/// Shortest decimal that parses back to exactly `x`.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

class PolynomialParser {
public:
    explicit PolynomialParser(std::string_view text) : text_(text) {}

    Polynomial parse() {
        Polynomial out;
        skip_space();
        if (at_end()) {
            throw ParseError("empty input", pos_);
        }
        bool first = true;
        while (true) {
            skip_space();
            double sign = 1.0;
            if (!at_end() && (peek() == '+' || peek() == '-')) {
                sign = peek() == '-' ? -1.0 : 1.0;
                ++pos_;
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            first = false;
            auto [word, c] = parse_term();
            out.add_term(std::move(word), sign * c);
            skip_space();
            if (at_end()) {
                break;
            }
        }
        return out;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_space() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) {
            ++pos_;
        }
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_var(char c) { return c == 'x' || c == 'X'; }

    std::pair<Word, double> parse_term() {
        skip_space();
        if (at_end()) {
            throw ParseError("expected a term", pos_);
        }
        double c = 1.0;
        bool have_coeff = false;
        // A sign directly in front of the number ("+ -2 x1") folds into it.
        if (peek() == '-' || peek() == '+' || is_digit(peek()) || peek() == '.') {
            c = parse_number();
            have_coeff = true;
            skip_space();
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip_space();
                if (at_end() || !is_var(peek())) {
                    throw ParseError("expected a variable after '*'", pos_);
                }
            }
        }
        std::vector<Letter> letters;
        while (true) {
            skip_space();
            if (at_end() || !is_var(peek())) {
                break;
            }
            parse_factor(letters);
            skip_space();
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip_space();
                if (at_end() || !is_var(peek())) {
                    throw ParseError("expected a variable after '*'", pos_);
                }
            }
        }
        if (!have_coeff && letters.empty()) {
            throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
        }
        return {Word(std::move(letters)), c};
    }

    double parse_number() {
        const std::size_t start = pos_;
        double sign = 1.0;
        while (!at_end() && (peek() == '-' || peek() == '+')) {
            if (peek() == '-') {
                sign = -sign;
            }
            ++pos_;
            skip_space();
        }
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double value = 0.0;
        auto res = std::from_chars(first, last, value);
        if (res.ec != std::errc()) {
            throw ParseError("malformed number", start);
        }
        pos_ += static_cast<std::size_t>(res.ptr - first);
        return sign * value;
    }

    void parse_factor(std::vector<Letter>& letters) {
        const std::size_t start = pos_;
        ++pos_;  // 'x'
        const std::size_t index = parse_digits("variable index");
        if (index == 0) {
            throw ParseError("variable indices start at 1", start);
        }
        std::size_t power = 1;
        skip_space();
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_space();
            power = parse_digits("exponent");
        }
        letters.insert(letters.end(), power, static_cast<Letter>(index));
    }

    std::size_t parse_digits(const char* what) {
        const std::size_t start = pos_;
        std::size_t value = 0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (res.ec != std::errc() || res.ptr == text_.data() + start) {
            throw ParseError(std::string("expected ") + what, start);
        }
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/**
 * Parses the polynomial grammar: terms joined by '+'/'-', each an optional
 * coefficient (optionally followed by '*') and a juxtaposition of factors
 * `x<i>` or `x<i>^<k>`. A bare number is a constant term.
 */
inline Polynomial parse(std::string_view text) { return detail::PolynomialParser(text).parse(); }

inline std::string Polynomial::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        const bool negative = std::signbit(c);
        const double mag = std::abs(c);
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (w.is_one()) {
            out += detail::format_double(mag);
        } else {
            if (mag != 1.0) {
                out += detail::format_double(mag) + " ";
            }
            out += w.to_string();
        }
    }
    return out;
}

inline std::string print(const Polynomial& f) { return f.to_string(); }

}  // namespace ncsohs

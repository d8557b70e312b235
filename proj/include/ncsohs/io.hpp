#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "completion.hpp"
#include "errors.hpp"
#include "gram.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "regularity.hpp"
#include "word.hpp"

namespace ncsohs {

/// Malformed JSON document or a document that does not follow the schema.
class SchemaError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

using Json = nlohmann::json;

/// A single monomial such as "x1 x2^2" or "1"; coefficients are rejected.
inline Word parse_word(const std::string& text) {
    const Polynomial p = parse(text);
    if (p.size() != 1 || p.terms().begin()->second != 1.0) {
        throw SchemaError("'" + text + "' is not a monomial");
    }
    return p.terms().begin()->first;
}

namespace detail {

inline const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

inline MonomialVector monomials_from_json(const Json& j) {
    if (!j.is_array()) {
        throw SchemaError("\"monomials\" must be an array of strings");
    }
    std::vector<Word> words;
    for (const auto& e : j) {
        if (!e.is_string()) {
            throw SchemaError("\"monomials\" must be an array of strings");
        }
        words.push_back(parse_word(e.get<std::string>()));
    }
    return MonomialVector(std::move(words));
}

inline std::vector<std::vector<std::optional<double>>> rows_from_json(const Json& j,
                                                                      bool allow_null) {
    if (!j.is_array()) {
        throw SchemaError("\"matrix\" must be an array of rows");
    }
    std::vector<std::vector<std::optional<double>>> rows;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != j.size()) {
            throw SchemaError("\"matrix\" must be square");
        }
        auto& out = rows.emplace_back();
        for (const auto& e : row) {
            if (e.is_null() && allow_null) {
                out.emplace_back(std::nullopt);
            } else if (e.is_number()) {
                out.emplace_back(e.get<double>());
            } else {
                throw SchemaError(allow_null ? "matrix entries must be numbers or null"
                                             : "matrix entries must be numbers");
            }
        }
    }
    return rows;
}

}  // namespace detail

inline Json to_json(const MonomialVector& w) {
    Json out = Json::array();
    for (const auto& z : w) {
        out.push_back(z.to_string());
    }
    return out;
}

inline Json to_json(const SymMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m.to_rows()) {
        out.push_back(row);
    }
    return out;
}

inline Json to_json(const PartialSymMatrix& p) {
    Json out = Json::array();
    for (const auto& row : p.to_rows()) {
        Json r = Json::array();
        for (const auto& e : row) {
            r.push_back(e ? Json(*e) : Json(nullptr));
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline Json to_json(const Representation& r) {
    return {{"monomials", to_json(r.monomials())}, {"matrix", to_json(r.matrix())}};
}

inline Json to_json(const PartialRepresentation& r) {
    return {{"monomials", to_json(r.monomials())}, {"matrix", to_json(r.pmatrix())}};
}

inline Json to_json(const BettiTable& t) {
    Json entries = Json::array();
    for (const auto& [k, v] : t.entries()) {
        entries.push_back({{"i", k.first}, {"j", k.second}, {"value", v}});
    }
    return {{"totals", t.totals()}, {"entries", entries}, {"regularity", t.regularity()}};
}

inline Json to_json(const MonomialIdeal& ideal) {
    Json gens = Json::array();
    for (auto [p, q] : ideal.generators()) {
        gens.push_back({p, q});
    }
    return {{"variables", ideal.variables()}, {"generators", gens}, {"text", ideal.to_string()}};
}

inline Representation representation_from_json(const Json& j) {
    const MonomialVector w = detail::monomials_from_json(detail::require(j, "monomials"));
    const auto rows = detail::rows_from_json(detail::require(j, "matrix"), false);
    if (rows.size() != w.size()) {
        throw SchemaError("matrix order does not match the number of monomials");
    }
    Eigen::MatrixXd m(SymMatrix::index(rows.size()), SymMatrix::index(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            m(SymMatrix::index(i), SymMatrix::index(k)) = *rows[i][k];
        }
    }
    return {w, SymMatrix(m)};
}

/// Accepts {"matrix": [[...]]} or a bare array of rows; null marks an unspecified entry.
inline PartialSymMatrix partial_matrix_from_json(const Json& j) {
    const Json& m = j.is_array() ? j : detail::require(j, "matrix");
    return PartialSymMatrix(detail::rows_from_json(m, true));
}

inline PartialRepresentation partial_representation_from_json(const Json& j) {
    MonomialVector w = detail::monomials_from_json(detail::require(j, "monomials"));
    PartialSymMatrix p = partial_matrix_from_json(detail::require(j, "matrix"));
    return {std::move(w), std::move(p)};
}

/// Parses JSON text, reporting syntax errors as SchemaError.
inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace ncsohs

// ncsohs: command-line front end for the ncsohs library.
//
// Exit codes: 0 success, 2 input error, 3 extension obstruction,
// 4 completion infeasible.

#include <CLI11.hpp>

#include <ncsohs/ncsohs.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ncsohs;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kExtensionObstruction = 3;
constexpr int kCompletionInfeasible = 4;

struct Options {
    double tol = 1e-9;
    bool json = false;
    std::string policy = "strict";
    std::string mode = "block";
    double margin = 1.0;
    std::optional<double> constant;
    std::string rep;
    std::string poly;
    std::string h;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// '@path' or a bare path reads a file; text starting with '{' or '[' is inline JSON.
Json load_json(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        return parse_json(arg);
    }
    return parse_json(read_file(arg.front() == '@' ? arg.substr(1) : arg));
}

/// '@path' reads the polynomial text from a file.
Polynomial load_poly(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') {
        return parse(read_file(arg.substr(1)));
    }
    return parse(arg);
}

Json terms_json(const Polynomial& f) {
    Json out = Json::array();
    for (const auto& [w, c] : f.terms()) {
        out.push_back({{"word", w.to_string()}, {"coeff", c}});
    }
    return out;
}

Json poly_json(const Polynomial& f) {
    return {{"text", f.to_string()}, {"terms", terms_json(f)}};
}

std::string rows_text(const SymMatrix& m) {
    std::string out;
    for (const auto& row : m.to_rows()) {
        out += "  [";
        for (std::size_t j = 0; j < row.size(); ++j) {
            out += (j ? ", " : "") + detail::format_double(row[j]);
        }
        out += "]\n";
    }
    return out;
}

std::string index_list(const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        s += (i ? "," : "") + std::to_string(idx[i] + 1);
    }
    return s + "}";
}

Json one_based(const std::vector<std::size_t>& idx) {
    Json out = Json::array();
    for (std::size_t i : idx) {
        out.push_back(i + 1);
    }
    return out;
}

void check_tol(double tol) {
    if (!(tol > 0)) {
        throw InvalidArgument("--tol must be positive");
    }
}

int cmd_expand(const Options& o) {
    const Representation r = representation_from_json(load_json(o.rep));
    const Polynomial f = expand(r);
    if (o.json) {
        std::cout << Json{{"polynomial", poly_json(f)}}.dump(2) << "\n";
    } else {
        std::cout << f.to_string() << "\n";
    }
    return kOk;
}

int cmd_verify(const Options& o) {
    const Polynomial f = load_poly(o.poly);
    const Json j = load_json(o.rep);
    Representation r;
    bool fitted = false;
    if (j.is_object() && !j.contains("matrix")) {
        r = fit_gram(f, detail::monomials_from_json(detail::require(j, "monomials")),
                     parse_fit_policy(o.policy), o.tol);
        fitted = true;
    } else {
        r = representation_from_json(j);
    }
    const bool equal = approx_equal(expand(r), f, o.tol);
    const double lambda = r.order() ? min_eigenvalue(r.matrix()) : 0.0;
    const bool psd = is_psd(r.matrix(), o.tol * (1.0 + r.matrix().inf_norm()));
    std::vector<Polynomial> squares;
    if (psd) {
        squares = sohs_witness(r, o.tol);
    }
    const bool certificate = equal && psd;
    if (o.json) {
        Json sq = Json::array();
        for (const auto& g : squares) {
            sq.push_back(g.to_string());
        }
        std::cout << Json{{"equal", equal},
                          {"psd", psd},
                          {"lambda_min", lambda},
                          {"certificate", certificate},
                          {"fitted", fitted},
                          {"representation", to_json(r)},
                          {"squares", sq}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "equal: " << (equal ? "true" : "false") << "\n";
        std::cout << "psd: " << (psd ? "true" : "false") << "\n";
        std::cout << "lambda_min: " << detail::format_double(lambda) << "\n";
        if (fitted) {
            std::cout << "fitted matrix (" << o.policy << "):\n" << rows_text(r.matrix());
        }
        if (psd) {
            std::cout << "squares: " << squares.size() << "\n";
            for (const auto& g : squares) {
                std::cout << "  (" << g.to_string() << ")^* (" << g.to_string() << ")\n";
            }
        }
        std::cout << "verdict: " << (certificate ? "SOHS certificate" : "not a certificate") << "\n";
    }
    return kOk;
}

int report_extension(const Options& o, const Polynomial& f, const ExtensionResult& res) {
    const Polynomial added = (res.f_tilde - f).pruned(o.tol);
    if (o.json) {
        std::cout << Json{{"mode", o.mode},
                          {"f_tilde", poly_json(res.f_tilde)},
                          {"added", poly_json(added)},
                          {"added_terms", res.added_terms},
                          {"certificate", to_json(res.certificate.representation())}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "f~ = " << res.f_tilde.to_string() << "\n";
        std::cout << "added (" << res.added_terms << " terms): " << added.to_string() << "\n";
        std::cout << "monomials: [";
        const auto& w = res.certificate.monomials();
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::cout << (i ? ", " : "") << w[i].to_string();
        }
        std::cout << "]\nmatrix:\n" << rows_text(res.certificate.matrix());
    }
    return kOk;
}

int cmd_extend(const Options& o) {
    const Polynomial f = load_poly(o.poly);
    const Polynomial h = load_poly(o.h);
    const GramLikeMatrix r_h(representation_from_json(load_json(o.rep)));
    if (o.mode == "block") {
        return report_extension(o, f, block_extension(f, h, r_h, o.constant, o.tol));
    }
    if (o.mode != "diag") {
        throw InvalidArgument("--mode must be block or diag");
    }
    const ExtensionProblem problem(f, h, r_h, o.tol);
    const RcCheck rc = check_rc_conditions(problem);
    if (!rc.ok) {
        Json words = Json::array();
        std::string text;
        for (std::size_t j : rc.obstructed) {
            const Word& w = problem.deltas()[j].word;
            words.push_back(w.to_string());
            text += "  " + w.to_string() + ": every split";
            for (const auto& dec : rc_decompositions(w)) {
                text += " (" + dec.left.to_string() + ")^*(" + dec.right.to_string() + ")";
            }
            text += " uses monomials of R_h only\n";
        }
        if (o.json) {
            std::cout << Json{{"error", "rc_obstruction"}, {"obstructed", words}}.dump(2) << "\n";
        } else {
            std::cerr << "rc obstruction: no extension preserving R_h along this route\n" << text;
        }
        return kExtensionObstruction;
    }
    return report_extension(o, f, diagonal_extension(f, h, r_h, o.margin, o.tol));
}

int cmd_complete(const Options& o) {
    const PartialRepresentation p = partial_representation_from_json(load_json(o.rep));
    const bool quasi = is_quasi_sohs(p, o.tol);
    const SohsCompletion c = sohs_complete(p, o.tol);
    if (o.json) {
        std::cout << Json{{"quasi_sohs", quasi},
                          {"method", to_string(c.method)},
                          {"polynomial", poly_json(c.f_bar)},
                          {"certificate", to_json(c.certificate.representation())}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "quasi SOHS: " << (quasi ? "true" : "false") << "\n";
        std::cout << "method: " << to_string(c.method) << "\n";
        std::cout << "completed matrix:\n" << rows_text(c.certificate.matrix());
        std::cout << "f = " << c.f_bar.to_string() << "\n";
    }
    return kOk;
}

int cmd_pattern(const Options& o) {
    const PartialSymMatrix p = partial_matrix_from_json(load_json(o.rep));
    const Graph g = specification_graph(p);
    const ChordalityResult chordal = is_chordal(g);
    const auto cliques = maximal_cliques(g);
    const MonomialIdeal ideal = subspace_arrangement_ideal(p);
    std::optional<BettiTable> table;
    std::string betti_note;
    try {
        table = betti_table(ideal);
    } catch (const AmbientTooLarge& e) {
        betti_note = e.what();
    }
    if (o.json) {
        Json edges = Json::array();
        for (auto [u, v] : g.edges()) {
            edges.push_back({u + 1, v + 1});
        }
        Json cl = Json::array();
        for (const auto& c : cliques) {
            cl.push_back(one_based(c));
        }
        Json out{{"order", p.order()},
                 {"edges", edges},
                 {"chordal", chordal.chordal},
                 {"maximal_cliques", cl},
                 {"ideal", to_json(ideal)},
                 {"two_regular", chordal.chordal}};
        if (chordal.chordal) {
            out["elimination_order"] = one_based(chordal.elimination_order);
        } else {
            out["chordless_cycle"] = one_based(chordal.cycle);
        }
        if (table) {
            out["betti"] = to_json(*table);
            out["betti"]["text"] = table->to_text();
            out["regularity"] = table->regularity();
        } else {
            out["betti"] = nullptr;
            out["betti_note"] = betti_note;
        }
        std::cout << out.dump(2) << "\n";
        return kOk;
    }
    std::cout << "order: " << p.order() << "\n";
    std::cout << "specified pairs:";
    for (auto [u, v] : g.edges()) {
        std::cout << " {" << u + 1 << "," << v + 1 << "}";
    }
    std::cout << "\nchordal: " << (chordal.chordal ? "true" : "false") << "\n";
    if (chordal.chordal) {
        std::cout << "perfect elimination order:";
        for (std::size_t v : chordal.elimination_order) std::cout << " " << v + 1;
        std::cout << "\n";
    } else {
        std::cout << "chordless cycle:";
        for (std::size_t v : chordal.cycle) std::cout << " " << v + 1;
        std::cout << "\n";
    }
    std::cout << "maximal cliques:";
    for (const auto& c : cliques) {
        std::cout << " " << index_list(c);
    }
    std::cout << "\nideal: " << ideal.to_string() << "\n";
    if (table) {
        std::cout << "betti table:\n" << table->to_text();
        std::cout << "regularity: " << table->regularity() << "\n";
    } else {
        std::cout << "betti table: skipped (" << betti_note << ")\n";
    }
    std::cout << "2-regular: " << (chordal.chordal ? "true" : "false") << "\n";
    return kOk;
}

int fail(const Options& o, int code, const std::string& kind, const std::string& message,
         Json extra = Json::object()) {
    if (o.json) {
        extra["error"] = kind;
        extra["message"] = message;
        std::cout << extra.dump(2) << "\n";
    }
    std::cerr << "error: " << message << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Noncommutative SOHS certificates, extensions, completions and pattern analysis"};
    app.require_subcommand(1);
    app.add_option("--tol", o.tol, "Numerical tolerance (> 0)")->capture_default_str();
    app.add_flag("--json", o.json, "Machine-readable JSON output");

    auto* expand_cmd = app.add_subcommand("expand", "Expand W^* G W from a representation JSON");
    expand_cmd->add_option("representation", o.rep, "Representation JSON (path, @path or inline)")
        ->required();

    auto* verify_cmd =
        app.add_subcommand("verify-sohs", "Check a polynomial against a Gram representation");
    verify_cmd->add_option("polynomial", o.poly, "Polynomial text or @path")->required();
    verify_cmd->add_option("representation", o.rep,
                           "Representation JSON; without \"matrix\" the matrix is fitted")
        ->required();
    verify_cmd->add_option("--policy", o.policy, "Fitting policy: strict, even or first")
        ->check(CLI::IsMember({"strict", "even", "first"}))
        ->capture_default_str();

    auto* extend_cmd = app.add_subcommand("extend", "Gram-like-matrix-preserving SOHS extension");
    extend_cmd->add_option("polynomial", o.poly, "Polynomial f")->required();
    extend_cmd->add_option("sohs_part", o.h, "SOHS part h of f")->required();
    extend_cmd->add_option("representation", o.rep, "Gram-like certificate of h")->required();
    extend_cmd->add_option("--mode", o.mode, "block or diag")
        ->check(CLI::IsMember({"block", "diag"}))
        ->capture_default_str();
    extend_cmd->add_option("--margin", o.margin, "Diagonal margin for --mode diag")
        ->capture_default_str();
    extend_cmd->add_option("--constant", o.constant,
                           "Constant diagonal entry for --mode block (>= sum of d_j^2)");

    auto* complete_cmd =
        app.add_subcommand("complete", "SOHS completion of a partial representation");
    complete_cmd->add_option("representation", o.rep, "Partial representation JSON (null = unspecified)")
        ->required();

    auto* pattern_cmd = app.add_subcommand(
        "pattern", "Specification graph, chordality, ideal, Betti table and regularity");
    pattern_cmd->add_option("matrix", o.rep, "Partial matrix JSON")->required();

    for (auto* sub : {expand_cmd, verify_cmd, extend_cmd, complete_cmd, pattern_cmd}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        check_tol(o.tol);
        if (*expand_cmd) return cmd_expand(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*extend_cmd) return cmd_extend(o);
        if (*complete_cmd) return cmd_complete(o);
        if (*pattern_cmd) return cmd_pattern(o);
    } catch (const ColumnSpaceViolation& e) {
        return fail(o, kExtensionObstruction, "column_space_violation", e.what(),
                    {{"residual", e.residual()}});
    } catch (const HypothesisViolated& e) {
        return fail(o, kExtensionObstruction, "hypothesis_violated", e.what(),
                    {{"clause", e.clause()}});
    } catch (const NotApplicable& e) {
        return fail(o, kExtensionObstruction, "not_applicable", e.what());
    } catch (const NotPartialPsd& e) {
        return fail(o, kCompletionInfeasible, "not_partial_psd", e.what(),
                    {{"minor", one_based(e.clique())}, {"lambda_min", e.min_eigenvalue()}});
    } catch (const CompletionFailed& e) {
        return fail(o, kCompletionInfeasible, "completion_failed",
                    std::string(e.what()) + "; violated minor " + index_list(e.minor()),
                    {{"minor", one_based(e.minor())}, {"lambda_min", e.min_eigenvalue()}});
    } catch (const ParseError& e) {
        return fail(o, kInputError, "parse_error", e.what(), {{"position", e.position()}});
    } catch (const Error& e) {
        return fail(o, kInputError, "input_error", e.what());
    } catch (const Json::exception& e) {
        return fail(o, kInputError, "input_error", e.what());
    }
    return kInputError;
}

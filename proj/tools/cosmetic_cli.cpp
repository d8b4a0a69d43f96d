#include "cosmetic/errors.hpp"
#include "cosmetic/exactnum.hpp"
#include "cosmetic/geometry.hpp"
#include "cosmetic/lattice.hpp"
#include "cosmetic/nzseries.hpp"
#include "cosmetic/ranklemmas.hpp"
#include "cosmetic/scanner.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>

using namespace cosmetic;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

long parse_long(const std::string& s) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
        if (used != s.size()) throw ArgumentError("");
        return v;
    } catch (const std::exception&) {
        throw ArgumentError("not an integer: '" + s + "'");
    }
}

std::vector<long> parse_longs(const std::string& s) {
    std::vector<long> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_long(part));
    return out;
}

std::vector<Slope> parse_slopes(const std::string& s) {
    std::vector<Slope> out;
    for (const auto& part : split(s, ';')) {
        auto pq = parse_longs(part);
        if (pq.size() != 2) throw ArgumentError("slope must be p,q");
        out.push_back(Slope::make(pq[0], pq[1]));
    }
    return out;
}

json complex_json(const Complex& z, unsigned digits) { return {to_string(z.re, digits), to_string(z.im, digits)}; }

json complex_list(const std::vector<Complex>& zs, unsigned digits) {
    json out = json::array();
    for (const auto& z : zs) out.push_back(complex_json(z, digits));
    return out;
}

json certificate_json(const RelationCertificate& c, unsigned digits) {
    json cs = json::array();
    for (const auto& x : c.coefficients) cs.push_back(x.str());
    return {{"kind", c.kind_name()}, {"coefficients", cs}, {"residual", c.found() ? to_string(c.residual, 6) : ""},
            {"digits", digits}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw ArgumentError("cannot write " + path);
    os << text;
}

std::string error_kind(const std::exception& ex) {
    if (dynamic_cast<const MalformedSystem*>(&ex)) return "malformed-system";
    if (dynamic_cast<const ArgumentError*>(&ex)) return "argument";
    if (dynamic_cast<const PrecisionExhausted*>(&ex)) return "precision-exhausted";
    if (dynamic_cast<const HypothesisError*>(&ex)) return "hypothesis";
    if (dynamic_cast<const LemmaViolation*>(&ex)) return "lemma-violation";
    if (dynamic_cast<const StepSizeError*>(&ex)) return "step-size";
    if (dynamic_cast<const NoConvergence*>(&ex)) return "no-convergence";
    return "internal";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dehn filling, height and rank-lemma computations"};
    app.require_subcommand(1);
    int exit_code = 0;

    unsigned digits = 60;
    std::string file;

    // lattice
    auto* siegel = app.add_subcommand("siegel", "small integer kernel basis of linear forms");
    std::string forms_text;
    std::size_t ambient = 0;
    siegel->add_option("--forms", forms_text, "forms as a,b,c;d,e,f")->required();
    siegel->add_option("--n", ambient, "ambient dimension (defaults to the form length)");
    siegel->callback([&] {
        std::vector<IntVector> forms;
        for (const auto& row : split(forms_text, ';')) {
            IntVector v;
            for (long x : parse_longs(row)) v.emplace_back(x);
            forms.push_back(v);
        }
        std::size_t n = ambient ? ambient : forms.front().size();
        auto basis = siegel_basis(forms, n);
        json cs = json::array();
        for (const auto& b : basis) {
            json row = json::array();
            for (const auto& x : b) row.push_back(x.str());
            cs.push_back(row);
        }
        Integer worst = 0;
        for (const auto& f : forms)
            for (const auto& b : basis) {
                Integer dot = 0;
                for (std::size_t i = 0; i < n; ++i) dot += f[i] * b[i];
                worst = std::max(worst, Integer(abs(dot)));
            }
        emit({{"kind", "basis"}, {"coefficients", cs}, {"residual", worst.str()},
              {"ratio", siegel_ratio(forms, basis)}});
    });

    auto* relation = app.add_subcommand("relation", "integer relation among decimal values");
    std::string values_text;
    long bound = 1000000;
    relation->add_option("--values", values_text, "comma-separated values, each real or a+bi")->required();
    relation->add_option("--bound", bound, "coefficient bound");
    relation->add_option("--digits", digits, "working precision");
    relation->callback([&] {
        Precision guard(digits + 10);
        std::vector<Complex> xs;
        for (const auto& v : split(values_text, ',')) xs.push_back(parse_complex(v));
        emit(certificate_json(integer_relation(xs, Integer(bound), digits), digits));
    });

    auto* quadratic = app.add_subcommand("quadratic", "test whether a value satisfies a quadratic");
    std::string tau_text;
    unsigned quad_digits = 80;  // the default coefficient ceiling needs 72 digits
    quadratic->add_option("--tau", tau_text, "value as a+bi or re,im")->required();
    quadratic->add_option("--digits", quad_digits, "working precision");
    quadratic->callback([&] {
        Precision guard(quad_digits + 10);
        auto d = is_quadratic(parse_complex(tau_text), quad_digits);
        json j = certificate_json(d.witness, quad_digits);
        j["quadratic"] = d.value;
        emit(j);
    });

    // exactnum
    auto* height_cmd = app.add_subcommand("height", "logarithmic Weil height of a root of a polynomial");
    std::string poly_text, near_text = "0";
    height_cmd->add_option("--poly", poly_text, "integer polynomial, e.g. x^2-x-1")->required();
    height_cmd->add_option("--near", near_text, "approximate root selecting the conjugate");
    height_cmd->add_option("--digits", digits, "working precision");
    height_cmd->callback([&] {
        Precision guard(digits + 10);
        auto a = AlgebraicNumber::root_of(IntPolynomial::parse(poly_text), parse_complex(near_text), digits);
        emit({{"minpoly", a.minpoly().str()},
              {"degree", a.degree()},
              {"root", complex_json(a.value(digits), digits)},
              {"height", to_string(height(a, digits), digits)},
              {"mahler_log", to_string(mahler_log(a.minpoly(), digits), digits)}});
    });

    // geometry
    auto* solve = app.add_subcommand("solve", "complete hyperbolic structure");
    solve->add_option("file", file, "gluing system JSON")->required();
    solve->add_option("--digits", digits, "working precision");
    solve->callback([&] {
        auto gs = load_gluing_system(file);
        auto z = solve_complete(gs, digits);
        auto [u, v] = peripheral_logs(gs, z);
        emit({{"name", gs.name},
              {"shapes", complex_list(z.z, digits)},
              {"u", complex_list(u, digits)},
              {"v", complex_list(v, digits)},
              {"cusp_shapes", complex_list(cusp_shapes(gs, z), digits)},
              {"condition", to_string(jacobian_condition(gs, z), 6)},
              {"residual", to_string(z.residual, 6)}});
    });

    auto* fill = app.add_subcommand("fill", "hyperbolic Dehn filling");
    std::string slope_text;
    fill->add_option("file", file, "gluing system JSON")->required();
    fill->add_option("--slope", slope_text, "p,q or p1,q1;p2,q2")->required();
    fill->add_option("--digits", digits, "working precision");
    fill->callback([&] {
        auto gs = load_gluing_system(file);
        auto fp = solve_filled(gs, parse_slopes(slope_text), digits);
        emit({{"name", gs.name},
              {"slopes", slope_text},
              {"shapes", complex_list(fp.shapes.z, digits)},
              {"u", complex_list(fp.u, digits)},
              {"v", complex_list(fp.v, digits)},
              {"t", complex_list(fp.t, digits)},
              {"residual", to_string(fp.residual, 6)},
              {"dehn_residual", to_string(dehn_residual(fp), 6)}});
    });

    // nzseries
    auto* nz = app.add_subcommand("nz", "Neumann-Zagier potential coefficients");
    int order = 6;
    nz->add_option("file", file, "gluing system JSON")->required();
    nz->add_option("--order", order, "even truncation order");
    nz->add_option("--digits", digits, "working precision");
    nz->callback([&] {
        auto gs = load_gluing_system(file);
        auto fit = fit_potential(gs, order, digits);
        json map = json::object();
        for (const auto& [i, j, c] : fit.phi.terms())
            map[std::to_string(i) + "," + std::to_string(j)] = complex_json(c, std::min(digits, 40u));
        emit(map);
    });

    auto* sgi = app.add_subcommand("sgi", "strong geometric isolation test on a two-cusped manifold");
    sgi->add_option("file", file, "gluing system JSON")->required();
    sgi->add_option("--order", order, "even truncation order");
    sgi->add_option("--digits", digits, "working precision");
    sgi->callback([&] {
        auto gs = load_gluing_system(file);
        if (gs.k != 2) throw ArgumentError("sgi needs a two-cusped manifold");
        auto fit = fit_potential(gs, order, digits);
        Real tol = default_sgi_tolerance(digits);
        emit({{"sgi", sgi_test(fit.phi, tol)}, {"m22", complex_json(m22(fit.phi), 20)}, {"tol", to_string(tol, 6)}});
    });

    // ranklemmas
    auto* lemma41 = app.add_subcommand("ranklemma41", "rank of a twisted 2x2 matrix over Q(tau)");
    std::string rows_text, pairs_text, tau_poly;
    lemma41->add_option("--rows", rows_text, "a1,b1,c1,d1;a2,b2,c2,d2")->required();
    lemma41->add_option("--pairs", pairs_text, "p,q;p',q'")->required();
    lemma41->add_option("--tau-poly", tau_poly, "minimal polynomial of tau (default x^3-x-1)");
    lemma41->callback([&] {
        auto rows = split(rows_text, ';');
        auto pairs = split(pairs_text, ';');
        if (rows.size() != 2 || pairs.size() != 2) throw ArgumentError("need two rows and two slopes");
        std::array<std::array<long, 4>, 2> r;
        for (int i = 0; i < 2; ++i) {
            auto v = parse_longs(rows[i]);
            if (v.size() != 4) throw ArgumentError("each row needs four integers");
            std::copy(v.begin(), v.end(), r[i].begin());
        }
        auto s1 = parse_longs(pairs[0]), s2 = parse_longs(pairs[1]);
        if (s1.size() != 2 || s2.size() != 2) throw ArgumentError("each slope needs two integers");
        SlopeConstraint s{s1[0], s1[1], s2[0], s2[1]};
        FieldRef field = tau_poly.empty() ? plastic_field() : make_field(IntPolynomial::parse(tau_poly));
        auto res = classify_lemma41(TwistedMatrix::of(r[0], r[1]), s, field);
        json j{{"rank", res.rank}, {"classification", to_string(res.classification)}};
        if (!res.matrix_form.empty()) j["matrix_form"] = res.matrix_form;
        emit(j);
    });

    // scanner
    long max_coeff = 25;
    std::string tol_text, mode_text = "op", out_prefix;
    auto report_out = [&](const CollisionReport& report) {
        if (out_prefix.empty()) {
            std::cout << report.to_json();
        } else {
            write_file(out_prefix + ".json", report.to_json());
            write_file(out_prefix + ".csv", report.to_csv());
        }
        if (report.unexplained() > 0) exit_code = 1;
    };
    auto tolerance = [&] {
        return tol_text.empty() ? pow10(-static_cast<long>(digits) / 2) : parse_real(tol_text);
    };

    auto* scan = app.add_subcommand("scan", "core holonomy collisions on a one-cusped manifold");
    scan->add_option("file", file, "gluing system JSON")->required();
    scan->add_option("--max", max_coeff, "largest |p|+|q|");
    scan->add_option("--digits", digits, "working precision");
    scan->add_option("--tol", tol_text, "collision tolerance (default 10^(-digits/2))");
    scan->add_option("--mode", mode_text, "op or or");
    scan->add_option("--out", out_prefix, "write PREFIX.json and PREFIX.csv instead of printing JSON");
    scan->callback([&] {
        auto gs = load_gluing_system(file);
        Precision guard(digits + 20);
        report_out(scan_cosmetic(gs, max_coeff, tolerance(), parse_scan_mode(mode_text), digits));
    });

    auto* scan2 = app.add_subcommand("scan2", "holonomy set collisions and dependences on a two-cusped manifold");
    long dep_bound = 50;
    scan2->add_option("file", file, "gluing system JSON")->required();
    scan2->add_option("--max", max_coeff, "largest |p|+|q| per cusp");
    scan2->add_option("--digits", digits, "working precision");
    scan2->add_option("--tol", tol_text, "collision tolerance (default 10^(-digits/2))");
    scan2->add_option("--bound", dep_bound, "coefficient bound for multiplicative dependence");
    scan2->add_option("--out", out_prefix, "write PREFIX.json and PREFIX.csv instead of printing JSON");
    scan2->callback([&] {
        auto gs = load_gluing_system(file);
        Precision guard(digits + 20);
        report_out(scan_two_cusp(gs, max_coeff, tolerance(), digits, dep_bound));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& ex) {
        json err{{"error", error_kind(ex)}, {"message", ex.what()}};
        if (auto* nc = dynamic_cast<const NoConvergence*>(&ex)) {
            json last = json::array();
            for (const auto& [re, im] : nc->last_iterate()) last.push_back({re, im});
            err["last_iterate"] = last;
        }
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return exit_code;
}

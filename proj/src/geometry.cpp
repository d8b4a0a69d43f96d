#include "cosmetic/geometry.hpp"

#include "cosmetic/errors.hpp"
#include "linalg_internal.hpp"
#include "poly_internal.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace cosmetic {

namespace {

using json = nlohmann::json;
using detail::CMatrix;

std::vector<int> int_vector(const json& j, const char* key, int n, const std::string& where) {
    if (!j.contains(key) || !j[key].is_array()) throw MalformedSystem(where + ": missing array '" + key + "'");
    const json& arr = j[key];
    if (static_cast<int>(arr.size()) != n)
        throw MalformedSystem(where + ": '" + key + "' has length " + std::to_string(arr.size()) + ", expected " +
                              std::to_string(n));
    std::vector<int> out;
    for (const auto& x : arr) {
        if (!x.is_number_integer()) throw MalformedSystem(where + ": non-integer entry in '" + key + "'");
        out.push_back(x.get<int>());
    }
    return out;
}

GluingRow parse_row(const json& j, const char* ka, const char* kb, int n, const std::string& where) {
    if (!j.is_object()) throw MalformedSystem(where + ": expected an object");
    GluingRow r;
    r.a = int_vector(j, ka, n, where);
    r.b = int_vector(j, kb, n, where);
    if (!j.contains("sign") || !j["sign"].is_number_integer()) throw MalformedSystem(where + ": missing sign");
    r.sign = j["sign"].get<int>();
    if (r.sign != 1 && r.sign != -1) throw MalformedSystem(where + ": sign must be 1 or -1");
    return r;
}

std::vector<GluingRow> parse_rows(const json& doc, const char* key, const char* ka, const char* kb, int count,
                                  int n) {
    if (!doc.contains(key) || !doc[key].is_array()) throw MalformedSystem(std::string("missing array '") + key + "'");
    const json& arr = doc[key];
    if (static_cast<int>(arr.size()) != count)
        throw MalformedSystem(std::string("'") + key + "' has " + std::to_string(arr.size()) + " rows, expected " +
                              std::to_string(count));
    std::vector<GluingRow> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(parse_row(arr[i], ka, kb, n, std::string(key) + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<Integer> exponent_vector(const GluingRow& r) {
    std::vector<Integer> v;
    for (int x : r.a) v.emplace_back(x);
    for (int x : r.b) v.emplace_back(x);
    return v;
}

Complex row_value(const GluingRow& r, const ShapeAssignment& s) {
    Complex acc;
    for (std::size_t j = 0; j < r.a.size(); ++j) {
        if (r.a[j]) acc += s.log_z[j] * Real(r.a[j]);
        if (r.b[j]) acc += s.log_1mz[j] * Real(r.b[j]);
    }
    return acc;
}

std::vector<Complex> row_gradient(const GluingRow& r, const std::vector<Complex>& z) {
    std::vector<Complex> g(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (r.a[j]) g[j] += Complex(Real(r.a[j])) / z[j];
        if (r.b[j]) g[j] -= Complex(Real(r.b[j])) / (Complex(1) - z[j]);
    }
    return g;
}

// Nearest i pi k whose parity matches the sign: even for +1, odd for -1.
Complex snap_constant(const Complex& value, int sign) {
    Real x = value.im / pi();
    long k = round_to_long(x);
    bool want_odd = sign < 0;
    if ((std::abs(k) % 2 == 1) != want_odd) k += (x >= Real(k)) ? 1 : -1;
    return i_pi() * Real(k);
}

// Recreates a stored multiple of i pi at the current precision.
Complex refresh_constant(const Complex& c) { return i_pi() * Real(round_to_long(c.im / pi())); }

ShapeAssignment principal(const std::vector<Complex>& z) {
    ShapeAssignment s;
    s.z = z;
    for (const auto& x : z) {
        s.log_z.push_back(log(x));
        s.log_1mz.push_back(log(Complex(1) - x));
    }
    return s;
}

Real edge_residual(const GluingSystem& gs, const ShapeAssignment& s) {
    Real worst = 0;
    for (std::size_t e = 0; e < gs.edges.size(); ++e)
        worst = std::max(worst, abs(row_value(gs.edges[e], s) - s.edge_const[e]));
    return worst;
}

[[noreturn]] void fail(const std::string& what, const std::vector<Complex>& z) {
    throw NoConvergence(what, to_strings(z, 30));
}

ShapeAssignment rebased(const ShapeAssignment& s) {
    ShapeAssignment r;
    for (const auto& x : s.z) r.z.push_back(rebase(x));
    for (const auto& x : s.log_z) r.log_z.push_back(rebase(x));
    for (const auto& x : s.log_1mz) r.log_1mz.push_back(rebase(x));
    for (const auto& c : s.edge_const) r.edge_const.push_back(refresh_constant(c));
    for (const auto& c : s.meridian_const) r.meridian_const.push_back(refresh_constant(c));
    for (const auto& c : s.longitude_const) r.longitude_const.push_back(refresh_constant(c));
    r.residual = rebase(s.residual);
    return r;
}

// Cusp condition alpha u_i + beta v_i = s gamma_i.
struct CuspTarget {
    Complex alpha, beta, gamma;
};

struct System {
    const GluingSystem& gs;
    std::vector<CuspTarget> targets;

    std::vector<Complex> residual(const ShapeAssignment& s, const Real& t) const {
        std::vector<Complex> f;
        for (int e : gs.independent_edges) f.push_back(row_value(gs.edges[e], s) - s.edge_const[e]);
        for (int i = 0; i < gs.k; ++i) {
            Complex u = row_value(gs.longitudes[i], s) - s.longitude_const[i];
            Complex v = row_value(gs.meridians[i], s) - s.meridian_const[i];
            f.push_back(targets[i].alpha * u + targets[i].beta * v - targets[i].gamma * t);
        }
        return f;
    }

    CMatrix jacobian(const std::vector<Complex>& z) const {
        CMatrix j;
        for (int e : gs.independent_edges) j.push_back(row_gradient(gs.edges[e], z));
        for (int i = 0; i < gs.k; ++i) {
            auto gu = row_gradient(gs.longitudes[i], z);
            auto gv = row_gradient(gs.meridians[i], z);
            std::vector<Complex> row(z.size());
            for (std::size_t c = 0; c < z.size(); ++c) row[c] = targets[i].alpha * gu[c] + targets[i].beta * gv[c];
            j.push_back(std::move(row));
        }
        return j;
    }

    std::vector<Complex> gammas() const {
        std::vector<Complex> g(gs.independent_edges.size());
        for (const auto& t : targets) g.push_back(t.gamma);
        return g;
    }
};

Real max_abs(const std::vector<Complex>& xs) {
    Real m = 0;
    for (const auto& x : xs) m = std::max(m, abs(x));
    return m;
}

// Newton at fixed homotopy time. Returns the converged point or none.
std::optional<ShapeAssignment> correct(const System& sys, const ShapeAssignment& anchor, std::vector<Complex> z,
                                       const Real& t, const Real& tol, int max_iter) {
    ShapeAssignment cur = track_branches(sys.gs, anchor, z);
    for (int it = 0; it < max_iter; ++it) {
        auto f = sys.residual(cur, t);
        for (auto& x : f) x = -x;
        auto dz = detail::solve_linear(sys.jacobian(cur.z), f);
        if (!dz) return std::nullopt;
        for (std::size_t j = 0; j < z.size(); ++j) z[j] = cur.z[j] + (*dz)[j];
        cur = track_branches(sys.gs, cur, z);
        if (max_abs(*dz) < tol) return cur;
    }
    return std::nullopt;
}

ShapeAssignment continue_path(const System& sys, const ShapeAssignment& complete, unsigned digits) {
    const GluingSystem& gs = sys.gs;
    ShapeAssignment cur;
    {
        // path tracking at modest precision, then polish at the target precision
        Precision low(40);
        cur = rebased(complete);
        Real t = 0, h = Real(1) / 16;
        const Real tol = pow10(-30);
        int steps = 0;
        while (t < 1) {
            if (++steps > 4000) fail("continuation exceeded its step budget", cur.z);
            Real t_new = std::min(Real(1), t + h);
            auto tangent = detail::solve_linear(sys.jacobian(cur.z), sys.gammas());
            if (!tangent) fail("singular Jacobian along the continuation path", cur.z);
            std::vector<Complex> pred(cur.z.size());
            for (std::size_t j = 0; j < pred.size(); ++j) pred[j] = cur.z[j] + (*tangent)[j] * (t_new - t);
            std::optional<ShapeAssignment> next;
            try {
                next = correct(sys, cur, pred, t_new, tol, 8);
            } catch (const StepSizeError&) {
                next.reset();
            } catch (const ArgumentError&) {
                next.reset();
            }
            bool ok = next.has_value();
            if (ok) {
                Real drift = 0;
                for (std::size_t j = 0; j < pred.size(); ++j)
                    drift = std::max(drift, abs(next->z[j] - pred[j]) / (Real(1) + abs(pred[j])));
                ok = drift < Real(0.05);
            }
            if (!ok) {
                h /= 2;
                if (h < Real(1e-9)) fail("continuation step size underflow", cur.z);
                continue;
            }
            cur = std::move(*next);
            t = t_new;
            h = std::min(h * Real(1.5), Real(0.25));
        }
    }
    Precision high(digits + 20);
    cur = rebased(cur);
    auto polished = correct(sys, cur, cur.z, Real(1), pow10(-static_cast<long>(digits) - 12), 40);
    if (!polished) fail("final Newton polish did not converge", cur.z);
    polished->residual = edge_residual(gs, *polished);
    return *polished;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> to_strings(const std::vector<Complex>& zs, unsigned digits) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& z : zs) out.emplace_back(to_string(z.re, digits), to_string(z.im, digits));
    return out;
}

GluingSystem parse_gluing_system(const std::string& doc) {
    json j;
    try {
        j = json::parse(doc);
    } catch (const json::parse_error& e) {
        throw MalformedSystem(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedSystem("top level must be an object");
    GluingSystem gs;
    if (!j.contains("name") || !j["name"].is_string()) throw MalformedSystem("missing string 'name'");
    if (!j.contains("tetrahedra") || !j["tetrahedra"].is_number_integer())
        throw MalformedSystem("missing integer 'tetrahedra'");
    if (!j.contains("cusps") || !j["cusps"].is_number_integer()) throw MalformedSystem("missing integer 'cusps'");
    gs.name = j["name"].get<std::string>();
    gs.n = j["tetrahedra"].get<int>();
    gs.k = j["cusps"].get<int>();
    if (gs.n < 1 || gs.k < 1 || gs.k > gs.n) throw MalformedSystem("need 1 <= cusps <= tetrahedra");
    gs.edges = parse_rows(j, "edge_equations", "theta1", "theta2", gs.n, gs.n);
    gs.meridians = parse_rows(j, "meridians", "mu1", "mu2", gs.k, gs.n);
    gs.longitudes = parse_rows(j, "longitudes", "lambda1", "lambda2", gs.k, gs.n);

    std::vector<std::vector<Integer>> chosen;
    for (int e = 0; e < gs.n; ++e) {
        auto trial = chosen;
        trial.push_back(exponent_vector(gs.edges[e]));
        if (detail::integer_rank(trial) == static_cast<int>(trial.size())) {
            chosen = std::move(trial);
            gs.independent_edges.push_back(e);
        }
    }
    if (static_cast<int>(chosen.size()) != gs.n - gs.k)
        throw MalformedSystem("edge rows have rank " + std::to_string(chosen.size()) + ", expected n - k = " +
                              std::to_string(gs.n - gs.k));
    return gs;
}

GluingSystem load_gluing_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_gluing_system(ss.str());
}

Slope Slope::make(long p, long q) {
    if (std::gcd(p, q) != 1) throw ArgumentError("slope (" + std::to_string(p) + "," + std::to_string(q) + ") is not primitive");
    return Slope{p, q};
}

std::pair<long, long> Slope::completion() const {
    // extended Euclid on (p, -q): p r + (-q) s = 1
    long old_r = 1, r = 0, old_a = p, a = -q, old_s = 0, s = 1;
    while (a != 0) {
        long quo = old_a / a;
        std::tie(old_a, a) = std::make_pair(a, old_a - quo * a);
        std::tie(old_r, r) = std::make_pair(r, old_r - quo * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - quo * s);
    }
    if (old_a < 0) {
        old_r = -old_r;
        old_s = -old_s;
    }
    return {old_r, old_s};
}

ShapeAssignment track_branches(const GluingSystem& gs, const ShapeAssignment& from, std::vector<Complex> z) {
    ShapeAssignment s;
    s.edge_const = from.edge_const;
    s.meridian_const = from.meridian_const;
    s.longitude_const = from.longitude_const;
    const Real two_pi = 2 * pi();
    const Real limit = Real(1.5);
    auto unwrap = [&](const Complex& w, const Complex& prev) {
        Complex l = log(w);
        l.im += two_pi * Real(round_to_long((prev.im - l.im) / two_pi));
        if (abs(l - prev) > limit) throw StepSizeError("logarithm branch jump exceeds the tracking limit");
        return l;
    };
    for (std::size_t j = 0; j < z.size(); ++j) {
        s.log_z.push_back(unwrap(z[j], from.log_z[j]));
        s.log_1mz.push_back(unwrap(Complex(1) - z[j], from.log_1mz[j]));
    }
    s.z = std::move(z);
    s.residual = s.edge_const.empty() ? Real(0) : edge_residual(gs, s);
    return s;
}

ShapeAssignment solve_complete(const GluingSystem& gs, unsigned digits) {
    Precision guard(digits + 20);
    std::vector<Complex> z(gs.n, polar(Real(1), pi() / 3));
    const Real tol = pow10(-static_cast<long>(digits) - 15);
    auto snapped_residual = [&](const ShapeAssignment& s) {
        std::vector<Complex> f;
        for (int e : gs.independent_edges) {
            Complex v = row_value(gs.edges[e], s);
            f.push_back(v - snap_constant(v, gs.edges[e].sign));
        }
        for (int i = 0; i < gs.k; ++i) {
            Complex v = row_value(gs.longitudes[i], s);
            f.push_back(v - snap_constant(v, gs.longitudes[i].sign));
        }
        return f;
    };
    auto jac = [&](const std::vector<Complex>& zz) {
        CMatrix j;
        for (int e : gs.independent_edges) j.push_back(row_gradient(gs.edges[e], zz));
        for (int i = 0; i < gs.k; ++i) j.push_back(row_gradient(gs.longitudes[i], zz));
        return j;
    };
    bool converged = false;
    for (int it = 0; it < 200 && !converged; ++it) {
        ShapeAssignment s;
        try {
            s = principal(z);
        } catch (const ArgumentError&) {
            fail("a shape reached a degenerate value", z);
        }
        auto f = snapped_residual(s);
        for (auto& x : f) x = -x;
        auto dz = detail::solve_linear(jac(z), f);
        if (!dz) fail("singular Jacobian in the complete-structure solve", z);
        Real step = max_abs(*dz);
        // damp long steps so a shape cannot jump across 0 or 1
        Real lambda = 1;
        if (step > Real(0.5)) lambda = Real(0.5) / step;
        for (int j = 0; j < gs.n; ++j) z[j] += (*dz)[j] * lambda;
        converged = step < tol;
    }
    if (!converged) fail("Newton did not converge from the regular-tetrahedron start", z);

    ShapeAssignment s = principal(z);
    for (const auto& r : gs.edges) s.edge_const.push_back(snap_constant(row_value(r, s), r.sign));
    for (const auto& r : gs.meridians) s.meridian_const.push_back(snap_constant(row_value(r, s), r.sign));
    for (const auto& r : gs.longitudes) s.longitude_const.push_back(snap_constant(row_value(r, s), r.sign));
    s.residual = edge_residual(gs, s);
    Real bound = pow10(-static_cast<long>(digits) + 10);
    if (s.residual >= bound) fail("edge rows outside the solved subset are not satisfied", z);
    for (std::size_t i = 0; i < s.meridian_const.size(); ++i)
        if (abs(row_value(gs.meridians[i], s) - s.meridian_const[i]) >= bound)
            fail("meridian holonomy is not trivial at the solution", z);
    for (const auto& x : z)
        if (x.im <= 0) fail("solution is not geometric (a shape has nonpositive imaginary part)", z);
    return s;
}

std::pair<std::vector<Complex>, std::vector<Complex>> peripheral_logs(const GluingSystem& gs,
                                                                       const ShapeAssignment& z) {
    std::vector<Complex> u, v;
    for (int i = 0; i < gs.k; ++i) {
        u.push_back(row_value(gs.longitudes[i], z) - z.longitude_const[i]);
        v.push_back(row_value(gs.meridians[i], z) - z.meridian_const[i]);
    }
    return {u, v};
}

FilledPoint solve_filled(const GluingSystem& gs, const std::vector<Slope>& slopes, unsigned digits) {
    ShapeAssignment complete = solve_complete(gs, digits);
    return solve_filled(gs, complete, slopes, digits);
}

FilledPoint solve_filled(const GluingSystem& gs, const ShapeAssignment& complete, const std::vector<Slope>& slopes,
                         unsigned digits) {
    if (static_cast<int>(slopes.size()) != gs.k) throw ArgumentError("need one slope per cusp");
    for (const auto& s : slopes) Slope::make(s.p, s.q);
    Precision guard(digits + 20);
    System sys{gs, {}};
    for (const auto& s : slopes) sys.targets.push_back({Complex(Real(s.q)), Complex(Real(s.p)), two_pi_i()});
    FilledPoint fp;
    fp.shapes = continue_path(sys, complete, digits);
    fp.slopes = slopes;
    std::tie(fp.u, fp.v) = peripheral_logs(gs, fp.shapes);
    fp.residual = fp.shapes.residual;
    for (int i = 0; i < gs.k; ++i) {
        Complex d = fp.v[i] * Real(slopes[i].p) + fp.u[i] * Real(slopes[i].q) - two_pi_i();
        fp.residual = std::max(fp.residual, abs(d));
        fp.t.push_back(core_holonomy(fp.u[i], fp.v[i], slopes[i]));
    }
    fp.digits = digits;
    return fp;
}

ShapeAssignment solve_deformation(const GluingSystem& gs, const ShapeAssignment& complete,
                                  const std::vector<Complex>& u, unsigned digits) {
    if (static_cast<int>(u.size()) != gs.k) throw ArgumentError("need one u per cusp");
    Precision guard(digits + 20);
    System sys{gs, {}};
    for (const auto& x : u) sys.targets.push_back({Complex(1), Complex(0), rebase(x)});
    return continue_path(sys, complete, digits);
}

Complex core_holonomy(const Complex& u, const Complex& v, const Slope& slope) {
    auto [r, s] = slope.completion();
    Complex t = exp(v * Real(s) + u * Real(r));
    if (abs(t) < 1) t = Complex(1) / t;
    return t;
}

Complex core_holonomy_consistency(const FilledPoint& fp, int i) {
    if (i < 0 || i >= static_cast<int>(fp.slopes.size())) throw ArgumentError("cusp index out of range");
    Precision guard(fp.digits + 20);
    const Slope& sl = fp.slopes[i];
    auto [r, s] = sl.completion();
    Complex t = exp(fp.v[i] * Real(s + sl.p) + fp.u[i] * Real(r + sl.q));
    if (abs(t) < 1) t = Complex(1) / t;
    return t;
}

Real dehn_residual(const FilledPoint& fp) {
    Precision guard(fp.digits + 20);
    Real worst = 0;
    for (std::size_t i = 0; i < fp.slopes.size(); ++i) {
        Complex w = exp(fp.v[i] * Real(fp.slopes[i].p) + fp.u[i] * Real(fp.slopes[i].q));
        worst = std::max(worst, abs(w - Complex(1)));
    }
    return worst;
}

std::vector<std::vector<Complex>> cusp_shape_matrix(const GluingSystem& gs, const ShapeAssignment& complete) {
    Precision guard(complete.z.front().re.precision());
    System sys{gs, std::vector<CuspTarget>(gs.k, CuspTarget{Complex(1), Complex(0), Complex(0)})};
    CMatrix j = sys.jacobian(complete.z);
    std::vector<std::vector<Complex>> out(gs.k, std::vector<Complex>(gs.k));
    for (int c = 0; c < gs.k; ++c) {
        std::vector<Complex> e(gs.n);
        e[gs.n - gs.k + c] = Complex(1);
        auto dz = detail::solve_linear(j, e);
        if (!dz) throw NoConvergence("singular Jacobian at the complete structure", to_strings(complete.z, 30));
        for (int i = 0; i < gs.k; ++i) {
            auto gv = row_gradient(gs.meridians[i], complete.z);
            Complex acc;
            for (int q = 0; q < gs.n; ++q) acc += gv[q] * (*dz)[q];
            out[i][c] = acc;
        }
    }
    return out;
}

std::vector<Complex> cusp_shapes(const GluingSystem& gs, const ShapeAssignment& complete) {
    auto m = cusp_shape_matrix(gs, complete);
    std::vector<Complex> out;
    for (int i = 0; i < gs.k; ++i) out.push_back(m[i][i]);
    return out;
}

Real jacobian_condition(const GluingSystem& gs, const ShapeAssignment& z) {
    Precision guard(z.z.front().re.precision());
    System sys{gs, std::vector<CuspTarget>(gs.k, CuspTarget{Complex(1), Complex(0), Complex(0)})};
    CMatrix j = sys.jacobian(z.z);
    auto inv = detail::invert(j);
    if (!inv) return Real(-1);
    return detail::inf_norm(j) * detail::inf_norm(*inv);
}

}  // namespace cosmetic

#include "cosmetic/scanner.hpp"

#include "cosmetic/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>
#include <variant>

namespace cosmetic {

namespace {

long level(const Slope& s) { return std::abs(s.p) + std::abs(s.q); }

// Checks the filled-point invariants and packs the holonomies. Returns a reason on failure.
std::variant<HolonomyEntry, std::string> make_entry(const FilledPoint& fp) {
    Precision guard(fp.digits + 20);
    HolonomyEntry e;
    e.slopes = fp.slopes;
    e.t = fp.t;
    e.residual = fp.residual;
    e.dehn_residual = dehn_residual(fp);
    e.completion_gap = 0;
    for (std::size_t i = 0; i < fp.t.size(); ++i)
        e.completion_gap = std::max(e.completion_gap, abs(core_holonomy_consistency(fp, static_cast<int>(i)) - fp.t[i]));
    const long d = static_cast<long>(fp.digits);
    if (e.dehn_residual > pow10(-(d - 10))) return "Dehn equation residual " + to_string(e.dehn_residual, 6);
    if (e.completion_gap > pow10(-(d - 12))) return "completion shift changes t by " + to_string(e.completion_gap, 6);
    for (const auto& t : fp.t)
        if (abs(t) <= 1) return "core holonomy inside the unit circle";
    return e;
}

std::variant<HolonomyEntry, std::string> solve_entry(const GluingSystem& gs, const ShapeAssignment& complete,
                                                     const std::vector<Slope>& slopes, unsigned digits) {
    try {
        return make_entry(solve_filled(gs, complete, slopes, digits));
    } catch (const std::exception& ex) {
        return std::string(ex.what());
    }
}

// Lazily solved complete structures, one per precision.
class CompleteCache {
public:
    explicit CompleteCache(const GluingSystem& gs) : gs_(gs) {}
    const ShapeAssignment& at(unsigned digits) {
        auto it = cache_.find(digits);
        if (it == cache_.end()) it = cache_.emplace(digits, solve_complete(gs_, digits)).first;
        return it->second;
    }

private:
    const GluingSystem& gs_;
    std::map<unsigned, ShapeAssignment> cache_;
};

struct Distance {
    Real value;
    std::string matching;
};

Distance entry_distance(const HolonomyEntry& a, const HolonomyEntry& b, ScanMode mode) {
    if (a.t.size() == 1) {
        Complex other = mode == ScanMode::OrientationReversing ? conj(b.t[0]) : b.t[0];
        return {abs(a.t[0] - other), mode == ScanMode::OrientationReversing ? "conjugate" : "direct"};
    }
    Real direct = std::max(abs(a.t[0] - b.t[0]), abs(a.t[1] - b.t[1]));
    Real swapped = std::max(abs(a.t[0] - b.t[1]), abs(a.t[1] - b.t[0]));
    if (swapped < direct) return {swapped, "swapped"};
    return {direct, "direct"};
}

// Smallest real part over the holonomy set; 1-Lipschitz for every matching, so it bounds distances from below.
double sweep_key(const HolonomyEntry& e) {
    double key = std::numeric_limits<double>::infinity();
    for (const auto& t : e.t) key = std::min(key, t.re.convert_to<double>());
    return key;
}

void add_level_means(CollisionReport& report) {
    Precision guard(report.digits + 20);
    std::map<long, LevelMean> acc;
    for (const auto& e : report.table) {
        long c = std::numeric_limits<long>::max();
        for (const auto& s : e.slopes) c = std::min(c, level(s));
        Real worst = 0, length = 0;
        for (const auto& t : e.t) {
            worst = std::max(worst, abs(t - Complex(1)));
            length = std::max(length, log(abs(t)));
        }
        auto& slot = acc[c];
        slot.level = c;
        slot.mean += worst;
        slot.mean_length += length;
        ++slot.count;
    }
    report.level_means.clear();
    for (auto& [c, lm] : acc) {
        lm.mean /= Real(lm.count);
        lm.mean_length /= Real(lm.count);
        report.level_means.push_back(lm);
    }
    report.monotone = report.length_monotone = true;
    const LevelMean* prev = nullptr;
    for (const auto& lm : report.level_means) {
        if (lm.level < 10) continue;
        if (prev && lm.mean > prev->mean) report.monotone = false;
        if (prev && lm.mean_length > prev->mean_length) report.length_monotone = false;
        prev = &lm;
    }
}

nlohmann::json slopes_json(const std::vector<Slope>& ss) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : ss) out.push_back({s.p, s.q});
    return out;
}

nlohmann::json collision_json(const Collision& c, unsigned digits) {
    return {{"a", slopes_json(c.a)},
            {"b", slopes_json(c.b)},
            {"matching", c.matching},
            {"distance", to_string(c.distance, 6)},
            {"recheck", to_string(c.recheck, 6)},
            {"survived", c.survived},
            {"explained", c.explained},
            {"explanation", c.explanation},
            {"digits", digits}};
}

std::string describe(const PeripheralMap& m) {
    return "[[" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "],[" + std::to_string(m[2]) + "," +
           std::to_string(m[3]) + "]]";
}

std::string describe(const CuspExchange& x) {
    return "cusp exchange: cusp 1 -> cusp 2 by " + describe(x.to_second) + ", cusp 2 -> cusp 1 by " +
           describe(x.to_first);
}

Slope normalize(long p, long q) {
    if (p < 0 || (p == 0 && q < 0)) return {-p, -q};
    return {p, q};
}

// Ratio of the translations of A e1 and A e2 on a cusp with shape c, which a similarity preserves.
std::optional<Complex> image_ratio(const PeripheralMap& m, const Complex& c) {
    Complex den = Complex(Real(m[1])) * c + Complex(Real(m[3]));
    if (abs(den) == 0) return std::nullopt;
    return (Complex(Real(m[0])) * c + Complex(Real(m[2]))) / den;
}

}  // namespace

Slope apply_map(const PeripheralMap& m, const Slope& s) {
    return normalize(m[0] * s.p + m[1] * s.q, m[2] * s.p + m[3] * s.q);
}

std::vector<Slope> CuspExchange::image(const std::vector<Slope>& s) const {
    if (s.size() != 2) throw ArgumentError("cusp exchange acts on slope pairs");
    return {apply_map(to_first, s[1]), apply_map(to_second, s[0])};
}

std::optional<CuspExchange> find_cusp_exchange(const GluingSystem& gs, const ShapeAssignment& complete,
                                               unsigned digits, long bound) {
    if (gs.k != 2) return std::nullopt;
    Precision guard(digits + 20);
    auto shapes = cusp_shapes(gs, complete);
    const Real tol = pow10(-static_cast<long>(digits) / 3);
    // maps from a cusp with shape `from` to one with shape `to`, one per sign class
    auto candidates = [&](const Complex& from, const Complex& to) {
        std::vector<PeripheralMap> out;
        for (long a = -bound; a <= bound; ++a)
            for (long b = -bound; b <= bound; ++b)
                for (long c = -bound; c <= bound; ++c)
                    for (long d = -bound; d <= bound; ++d) {
                        if (a * d - b * c != 1) continue;
                        if (a < 0 || (a == 0 && b < 0)) continue;
                        PeripheralMap m{a, b, c, d};
                        auto r = image_ratio(m, to);
                        if (r && abs(*r - from) < tol) out.push_back(m);
                    }
        return out;
    };
    auto forward = candidates(shapes[0], shapes[1]);
    auto backward = candidates(shapes[1], shapes[0]);
    const std::vector<Slope> probe{Slope{5, 1}, Slope{7, 2}};
    std::optional<HolonomyEntry> base;
    for (const auto& f : forward)
        for (const auto& g : backward) {
            CuspExchange x{f, g};
            if (!base) {
                auto r = solve_entry(gs, complete, probe, digits);
                if (!std::holds_alternative<HolonomyEntry>(r)) return std::nullopt;
                base = std::get<HolonomyEntry>(r);
            }
            auto r = solve_entry(gs, complete, x.image(probe), digits);
            if (!std::holds_alternative<HolonomyEntry>(r)) continue;
            const auto& e = std::get<HolonomyEntry>(r);
            Real d = std::max(abs(base->t[0] - e.t[1]), abs(base->t[1] - e.t[0]));
            if (d < pow10(-static_cast<long>(digits) / 2)) return x;
        }
    return std::nullopt;
}

std::string to_string(ScanMode m) {
    return m == ScanMode::OrientationPreserving ? "orientation-preserving" : "orientation-reversing";
}

ScanMode parse_scan_mode(const std::string& s) {
    if (s == "op" || s == "orientation-preserving") return ScanMode::OrientationPreserving;
    if (s == "or" || s == "orientation-reversing") return ScanMode::OrientationReversing;
    throw ArgumentError("mode must be op or or");
}

long CollisionReport::unexplained() const {
    return std::count_if(collisions.begin(), collisions.end(), [](const Collision& c) { return !c.explained; });
}

std::string CollisionReport::to_json() const {
    nlohmann::json j;
    j["manifold"] = manifold;
    j["mode"] = mode;
    j["range"] = range;
    j["tolerance"] = to_string(tolerance, 6);
    j["digits"] = digits;
    const unsigned shown = std::min(digits, 30u);
    nlohmann::json table_json = nlohmann::json::array();
    for (const auto& e : table) {
        nlohmann::json ts = nlohmann::json::array();
        for (const auto& t : e.t) ts.push_back({to_string(t.re, shown), to_string(t.im, shown)});
        table_json.push_back({{"slopes", slopes_json(e.slopes)},
                              {"t", ts},
                              {"residual", to_string(e.residual, 6)},
                              {"dehn_residual", to_string(e.dehn_residual, 6)},
                              {"completion_gap", to_string(e.completion_gap, 6)}});
    }
    j["table"] = table_json;
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : failures) fails.push_back({{"slopes", slopes_json(f.slopes)}, {"reason", f.reason}});
    j["failures"] = fails;
    j["collisions"] = nlohmann::json::array();
    for (const auto& c : collisions) j["collisions"].push_back(collision_json(c, digits));
    j["artifacts"] = nlohmann::json::array();
    for (const auto& c : artifacts) j["artifacts"].push_back(collision_json(c, digits));
    j["unexplained"] = unexplained();
    if (dependence_bound > 0) {
        j["dependence_bound"] = dependence_bound;
        nlohmann::json deps = nlohmann::json::array();
        for (const auto& d : dependences) {
            nlohmann::json cs = nlohmann::json::array();
            for (const auto& c : d.coefficients) cs.push_back(c.str());
            deps.push_back({{"slopes", slopes_json(d.slopes)}, {"coefficients", cs}, {"explanation", d.explanation}});
        }
        j["dependences"] = deps;
        j["symmetry"] = symmetry;
    }
    j["min_gap"] = to_string(min_gap, 6);
    nlohmann::json means = nlohmann::json::array();
    for (const auto& lm : level_means)
        means.push_back({{"level", lm.level},
                         {"mean", to_string(lm.mean, 12)},
                         {"mean_length", to_string(lm.mean_length, 12)},
                         {"count", lm.count}});
    j["level_means"] = means;
    j["monotone"] = monotone;
    j["length_monotone"] = length_monotone;
    return j.dump(2) + "\n";
}

std::string CollisionReport::to_csv() const {
    std::ostringstream os;
    const unsigned shown = std::min(digits, 30u);
    const std::size_t k = table.empty() ? 1 : table.front().slopes.size();
    auto suffix = [&](std::size_t i) { return k == 1 ? std::string() : std::to_string(i + 1); };
    for (std::size_t i = 0; i < k; ++i) os << (i ? "," : "") << "p" << suffix(i) << ",q" << suffix(i);
    for (std::size_t i = 0; i < k; ++i)
        os << ",re(t" << suffix(i) << "),im(t" << suffix(i) << "),|t" << suffix(i) << "|";
    os << ",residual\n";
    for (const auto& e : table) {
        for (std::size_t i = 0; i < k; ++i) os << (i ? "," : "") << e.slopes[i].p << "," << e.slopes[i].q;
        for (const auto& t : e.t)
            os << "," << to_string(t.re, shown) << "," << to_string(t.im, shown) << "," << to_string(abs(t), shown);
        os << "," << to_string(e.residual, 6) << "\n";
    }
    return os.str();
}

std::vector<Slope> enumerate_slopes(long lo, long hi) {
    std::vector<Slope> out;
    for (long c = std::max(lo, 1L); c <= hi; ++c) {
        if (c == 1) {
            out.push_back({0, 1});
            out.push_back({1, 0});
            continue;
        }
        for (long p = 1; p < c; ++p)
            if (std::gcd(p, c) == 1) {
                out.push_back({p, -(c - p)});
                out.push_back({p, c - p});
            }
    }
    return out;
}

void detect_collisions(CollisionReport& report, ScanMode mode, const Recompute& recompute, const Explainer& explain) {
    report.collisions.clear();
    report.artifacts.clear();
    const auto& table = report.table;
    const std::size_t n = table.size();
    Precision guard(report.digits + 20);
    const Real tol = rebase(report.tolerance);
    const double tol_d = tol.convert_to<double>();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = sweep_key(table[i]);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

    // sweep: every pair with distance below max(tol, best gap so far) is examined
    std::vector<std::tuple<std::size_t, std::size_t, Distance>> candidates;
    std::optional<Real> best_gap;
    double window = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t i = order[x];
        for (std::size_t y = x; y-- > 0;) {
            const std::size_t j = order[y];
            if (keys[i] - keys[j] > std::max(window, tol_d)) break;
            Distance d = entry_distance(table[i], table[j], mode);
            if (d.value < tol) {
                candidates.emplace_back(std::min(i, j), std::max(i, j), d);
            } else if (!best_gap || d.value < *best_gap) {
                best_gap = d.value;
                window = std::max(d.value.convert_to<double>() * 1.000001, 1e-300);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b)); });

    const unsigned high = 2 * report.digits;
    std::map<std::size_t, std::optional<HolonomyEntry>> rechecked;
    auto high_entry = [&](std::size_t i) -> const std::optional<HolonomyEntry>& {
        auto it = rechecked.find(i);
        if (it == rechecked.end()) {
            std::optional<HolonomyEntry> e;
            try {
                e = recompute(table[i].slopes, high);
            } catch (const std::exception&) {
            }
            it = rechecked.emplace(i, std::move(e)).first;
        }
        return it->second;
    };
    for (auto& [i, j, d] : candidates) {
        Collision c;
        c.a = table[i].slopes;
        c.b = table[j].slopes;
        c.matching = d.matching;
        c.distance = d.value;
        const auto& hi = high_entry(i);
        const auto& hj = high_entry(j);
        if (hi && hj) {
            Precision hguard(high + 20);
            c.recheck = entry_distance(*hi, *hj, mode).value;
            c.survived = c.recheck < pow10(-static_cast<long>(report.digits));
        } else {
            c.recheck = Real(-1);
        }
        if (explain) c.explanation = explain(c.a, c.b, c.matching);
        c.explained = !c.explanation.empty();
        if (c.survived) {
            report.collisions.push_back(std::move(c));
        } else {
            if (!best_gap || c.distance < *best_gap) best_gap = c.distance;
            report.artifacts.push_back(std::move(c));
        }
    }
    report.min_gap = best_gap ? *best_gap : Real(-1);
}

CollisionReport scan_cosmetic(const GluingSystem& gs, long max_coeff, const Real& tol, ScanMode mode,
                              unsigned digits) {
    if (gs.k != 1) throw ArgumentError("scan_cosmetic needs a one-cusped manifold");
    if (max_coeff < 8) throw ArgumentError("max_coeff must be at least 8");
    CollisionReport report;
    report.manifold = gs.name;
    report.mode = to_string(mode);
    report.range = max_coeff;
    report.tolerance = tol;
    report.digits = digits;
    CompleteCache complete(gs);
    for (const auto& s : enumerate_slopes(5, max_coeff)) {
        auto r = solve_entry(gs, complete.at(digits), {s}, digits);
        if (auto* e = std::get_if<HolonomyEntry>(&r))
            report.table.push_back(std::move(*e));
        else
            report.failures.push_back({{s}, std::get<std::string>(r)});
    }
    add_level_means(report);
    Recompute recompute = [&](const std::vector<Slope>& ss, unsigned d) {
        auto r = solve_entry(gs, complete.at(d), ss, d);
        if (auto* e = std::get_if<HolonomyEntry>(&r)) return *e;
        throw NoConvergence(std::get<std::string>(r));
    };
    Explainer explain = [mode](const std::vector<Slope>& a, const std::vector<Slope>& b, const std::string&) {
        if (mode == ScanMode::OrientationReversing && a[0].p == b[0].p && a[0].q == -b[0].q)
            return std::string("orientation-reversing symmetry exchanges (p,q) and (p,-q)");
        return std::string();
    };
    detect_collisions(report, mode, recompute, explain);
    return report;
}

CollisionReport scan_two_cusp(const GluingSystem& gs, long max_coeff, const Real& tol, unsigned digits,
                              long dependence_bound) {
    if (gs.k != 2) throw ArgumentError("scan_two_cusp needs a two-cusped manifold");
    if (max_coeff < 8) throw ArgumentError("max_coeff must be at least 8");
    CollisionReport report;
    report.manifold = gs.name;
    report.mode = to_string(ScanMode::OrientationPreserving);
    report.range = max_coeff;
    report.tolerance = tol;
    report.digits = digits;
    report.dependence_bound = dependence_bound;
    CompleteCache complete(gs);

    std::optional<CuspExchange> exchange = find_cusp_exchange(gs, complete.at(digits), digits);
    if (exchange) report.symmetry = describe(*exchange);

    const auto slopes = enumerate_slopes(5, max_coeff);
    std::map<std::pair<long, long>, std::size_t> index;
    for (std::size_t i = 0; i < slopes.size(); ++i) index[{slopes[i].p, slopes[i].q}] = i;
    auto position = [&](const std::vector<Slope>& ss) -> std::optional<std::pair<std::size_t, std::size_t>> {
        auto a = index.find({ss[0].p, ss[0].q}), b = index.find({ss[1].p, ss[1].q});
        if (a == index.end() || b == index.end()) return std::nullopt;
        return std::make_pair(a->second, b->second);
    };
    for (std::size_t i = 0; i < slopes.size(); ++i)
        for (std::size_t j = 0; j < slopes.size(); ++j) {
            std::vector<Slope> ss{slopes[i], slopes[j]};
            bool fixed = false;
            if (exchange) {
                auto img = exchange->image(ss);
                auto pos = position(img);
                if (pos && *pos < std::make_pair(i, j)) continue;  // enumerated as the image
                fixed = img == ss;
            }
            auto r = solve_entry(gs, complete.at(digits), ss, digits);
            if (auto* e = std::get_if<HolonomyEntry>(&r)) {
                if (dependence_bound > 0) {
                    auto cert = multiplicative_dependence(e->t[0], e->t[1], Integer(dependence_bound), digits);
                    if (cert.found())
                        report.dependences.push_back(
                            {ss, cert.coefficients, fixed ? "filling fixed by the cusp exchange, so t1 = t2" : ""});
                }
                report.table.push_back(std::move(*e));
            } else {
                report.failures.push_back({ss, std::get<std::string>(r)});
            }
        }
    add_level_means(report);
    Recompute recompute = [&](const std::vector<Slope>& ss, unsigned d) {
        auto r = solve_entry(gs, complete.at(d), ss, d);
        if (auto* e = std::get_if<HolonomyEntry>(&r)) return *e;
        throw NoConvergence(std::get<std::string>(r));
    };
    Explainer explain = [exchange](const std::vector<Slope>& a, const std::vector<Slope>& b, const std::string& m) {
        if (exchange && m == "swapped" && (exchange->image(a) == b || exchange->image(b) == a))
            return std::string("isometry exchanging the cusps");
        return std::string();
    };
    detect_collisions(report, ScanMode::OrientationPreserving, recompute, explain);
    return report;
}

SubgroupLattice siegel_subgroup_for_point(const Slope& a, const Slope& b) {
    Slope::make(a.p, a.q);
    Slope::make(b.p, b.q);
    IntVector v{Integer(-a.q), Integer(a.p), Integer(-b.q), Integer(b.p)};
    auto basis = siegel_basis({v}, 4);
    return SubgroupLattice({basis[0], basis[1]}, 4);
}

Real subgroup_defect(const SubgroupLattice& h, const FilledPoint& a, const FilledPoint& b) {
    if (a.v.empty() || b.v.empty()) throw ArgumentError("filled points need peripheral logs");
    Precision guard(std::max(a.digits, b.digits) + 20);
    std::vector<Complex> point{exp(rebase(a.v[0])), exp(rebase(a.u[0])), exp(rebase(b.v[0])), exp(rebase(b.u[0]))};
    return h.max_defect(point);
}

}  // namespace cosmetic

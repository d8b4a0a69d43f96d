#include "cosmetic/nzseries.hpp"

#include "linalg_internal.hpp"

#include <algorithm>
#include <map>

namespace cosmetic {

namespace {

constexpr int kAngles = 8;

int mod8(int x) { return ((x % kAngles) + kAngles) % kAngles; }

// Discrete Fourier coefficient table for one radius combination: modes[(m1, m2)][cusp].
using ModeTable = std::map<std::pair<int, int>, std::vector<Complex>>;

}  // namespace

std::vector<Real> default_fit_radii() { return {Real("0.02"), Real("0.04")}; }

std::vector<Complex> PotentialFit::gradient(const std::vector<Complex>& u) const {
    Complex u1 = u.at(0), u2 = cusps == 2 ? u.at(1) : Complex(0);
    std::vector<Complex> out(cusps);
    const int n = full.order();
    std::vector<Complex> p1{Complex(1)}, p2{Complex(1)};
    for (int d = 1; d <= n; ++d) {
        p1.push_back(p1.back() * u1);
        p2.push_back(p2.back() * u2);
    }
    for (const auto& [i, j, c] : full.terms()) {
        if (i > 0) out[0] += c * Real(i) * p1[i - 1] * p2[j] / Real(2);
        if (cusps == 2 && j > 0) out[1] += c * Real(j) * p1[i] * p2[j - 1] / Real(2);
    }
    return out;
}

PotentialFit fit_potential(const DeformationSampler& sampler, int k, int order, unsigned digits,
                           const std::vector<Real>& radii_in) {
    if (k < 1 || k > 2) throw ArgumentError("fit_potential supports one or two cusps");
    if (order < 4 || order % 2 != 0) throw ArgumentError("order must be even and at least 4");
    if (order > kFitDegree) throw ArgumentError("order exceeds the fitted degree");
    if (radii_in.size() != 2) throw ArgumentError("fit grid needs exactly two radii");
    Precision guard(digits + 20);
    std::vector<Real> radii;
    for (const auto& r : radii_in) radii.push_back(rebase(r));
    std::vector<Complex> roots;
    for (int m = 0; m < kAngles; ++m) roots.push_back(polar(Real(1), 2 * pi() * m / kAngles));

    // samples[(ra, rb)][(m1, m2)] = v, with rb and m2 pinned to 0 when k = 1
    const int nr2 = k == 2 ? 2 : 1, na2 = k == 2 ? kAngles : 1;
    std::map<std::pair<int, int>, ModeTable> modes;
    std::vector<std::tuple<std::vector<Complex>, std::vector<Complex>>> samples;
    for (int ra = 0; ra < 2; ++ra)
        for (int rb = 0; rb < nr2; ++rb) {
            ModeTable table;
            for (int m1 = 0; m1 < kAngles; ++m1)
                for (int m2 = 0; m2 < na2; ++m2) {
                    std::vector<Complex> u{roots[m1] * radii[ra]};
                    if (k == 2) u.push_back(roots[m2] * radii[rb]);
                    std::vector<Complex> v = sampler(u);
                    if (static_cast<int>(v.size()) != k) throw ArgumentError("sampler returned the wrong arity");
                    for (auto& x : v) x = rebase(x);
                    // accumulate v * conj(root)^mode for every mode
                    for (int q1 = 0; q1 < kAngles; ++q1)
                        for (int q2 = 0; q2 < na2; ++q2) {
                            Complex w = conj(roots[(q1 * m1) % kAngles]) * conj(roots[(q2 * m2) % kAngles]);
                            auto& slot = table[{q1, q2}];
                            slot.resize(k);
                            for (int i = 0; i < k; ++i) slot[i] += v[i] * w;
                        }
                    samples.emplace_back(u, v);
                }
            const Real scale = Real(kAngles * na2);
            for (auto& [mode, vals] : table)
                for (auto& x : vals) x = x / scale;
            modes[{ra, rb}] = std::move(table);
        }

    // group unknown monomials u1^a u2^b by (a mod 8, b mod 8); each group is its own least-squares problem
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> groups;
    for (int d = 1; d <= kFitDegree; ++d)
        for (int a = 0; a <= d; ++a) {
            int b = d - a;
            if (k == 1 && b > 0) continue;
            groups[{mod8(a), mod8(b)}].push_back({a, b});
        }

    TruncatedSeries2<Complex> full(kFitDegree);
    Real worst_rcond = 1;
    for (const auto& [cls, monos] : groups) {
        detail::CMatrix rows;
        std::vector<Complex> rhs;
        for (int ra = 0; ra < 2; ++ra)
            for (int rb = 0; rb < nr2; ++rb) {
                const Real& r1 = radii[ra];
                Real r2 = k == 2 ? radii[rb] : Real(1);
                const ModeTable& table = modes.at({ra, rb});
                for (int i = 0; i < k; ++i) {
                    int q1 = i == 0 ? mod8(cls.first - 1) : cls.first;
                    int q2 = k == 1 ? 0 : (i == 1 ? mod8(cls.second - 1) : cls.second);
                    std::vector<Complex> row;
                    bool any = false;
                    for (auto [a, b] : monos) {
                        int da = i == 0 ? a - 1 : a, db = i == 1 ? b - 1 : b;
                        int mult = i == 0 ? a : b;
                        if (da < 0 || db < 0 || mult == 0) {
                            row.emplace_back(0);
                            continue;
                        }
                        any = true;
                        row.push_back(Complex(Real(mult) / 2 * pow(r1, da) * pow(r2, db)));
                    }
                    if (!any) continue;
                    rows.push_back(std::move(row));
                    rhs.push_back(table.at({q1, q2})[i]);
                }
            }
        // column scaling so every monomial has unit size on the grid
        std::vector<Real> colscale(monos.size(), Real(0));
        for (const auto& row : rows)
            for (std::size_t c = 0; c < row.size(); ++c) colscale[c] = std::max(colscale[c], abs(row[c]));
        for (auto& row : rows)
            for (std::size_t c = 0; c < row.size(); ++c)
                if (colscale[c] != 0) row[c] = row[c] / colscale[c];
        if (rows.size() < monos.size()) throw PrecisionExhausted("fit grid cannot separate the monomials");
        Real rcond;
        auto x = detail::least_squares(rows, rhs, rcond);
        worst_rcond = std::min(worst_rcond, rcond);
        for (std::size_t c = 0; c < monos.size(); ++c)
            full.set(monos[c].first, monos[c].second, colscale[c] == 0 ? Complex(0) : x[c] / colscale[c]);
    }
    if (worst_rcond < pow10(-static_cast<long>(digits) / 2))
        throw PrecisionExhausted("potential fit is ill-conditioned at this precision");

    PotentialFit fit;
    fit.full = full;
    fit.phi = full.truncated(order);
    fit.radii = radii;
    fit.cusps = k;
    fit.residual = 0;
    for (const auto& [u, v] : samples) {
        auto g = fit.gradient(u);
        for (int i = 0; i < k; ++i) fit.residual = std::max(fit.residual, abs(g[i] - v[i]));
    }
    // the top two degrees measure how fast the series is still decaying on the grid
    Real rmax = std::max(radii[0], radii[1]);
    fit.truncation = 0;
    for (const auto& [i, j, c] : full.terms())
        if (i + j >= kFitDegree - 1)
            fit.truncation = std::max(fit.truncation, abs(c) * Real(i + j) / 2 * pow(rmax, i + j - 1));
    return fit;
}

PotentialFit fit_potential(const GluingSystem& gs, const ShapeAssignment& complete, int order, unsigned digits,
                           const std::vector<Real>& radii) {
    if (gs.k > 2) throw ArgumentError("fit_potential supports one or two cusps");
    DeformationSampler sampler = [&](const std::vector<Complex>& u) {
        ShapeAssignment s = solve_deformation(gs, complete, u, digits);
        return peripheral_logs(gs, s).second;
    };
    return fit_potential(sampler, gs.k, order, digits, radii);
}

PotentialFit fit_potential(const GluingSystem& gs, int order, unsigned digits) {
    ShapeAssignment complete = solve_complete(gs, digits);
    return fit_potential(gs, complete, order, digits, default_fit_radii());
}

}  // namespace cosmetic

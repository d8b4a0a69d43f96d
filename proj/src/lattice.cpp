#include "cosmetic/lattice.hpp"

#include "cosmetic/errors.hpp"
#include "poly_internal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cosmetic {

namespace {

Integer dot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// nearest integer to a / b, b > 0
Integer round_div(const Integer& a, const Integer& b) { return floor_div(2 * a + b, 2 * b); }

void normalize_sign(IntVector& v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        return;
    }
}

Real norm2(const IntVector& v) {
    Integer s = dot(v, v);
    return sqrt(to_real(s));
}

}  // namespace

std::vector<IntVector> lll_reduce(const std::vector<IntVector>& basis) {
    const std::size_t n = basis.size();
    if (n == 0) return {};
    const std::size_t dim = basis[0].size();
    for (const auto& v : basis)
        if (v.size() != dim) throw ArgumentError("lattice basis vectors have different lengths");

    // 1-based indices follow the integral LLL of Cohen, Algorithm 2.6.7.
    std::vector<IntVector> b(n + 1);
    for (std::size_t i = 0; i < n; ++i) b[i + 1] = basis[i];
    std::vector<Integer> d(n + 1);
    std::vector<std::vector<Integer>> lam(n + 1, std::vector<Integer>(n + 1));
    const Integer dnum = 99, dden = 100;

    auto red = [&](std::size_t k, std::size_t l) {
        if (2 * abs(lam[k][l]) <= d[l]) return;
        Integer q = round_div(lam[k][l], d[l]);
        for (std::size_t t = 0; t < dim; ++t) b[k][t] -= q * b[l][t];
        lam[k][l] -= q * d[l];
        for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    std::size_t kmax = 1;
    auto swap_k = [&](std::size_t k) {
        std::swap(b[k], b[k - 1]);
        for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Integer l = lam[k][k - 1];
        Integer B = (d[k - 2] * d[k] + l * l) / d[k - 1];
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Integer t = lam[i][k];
            lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
            lam[i][k - 1] = (B * t + l * lam[i][k]) / d[k];
        }
        d[k - 1] = B;
    };

    d[0] = 1;
    d[1] = dot(b[1], b[1]);
    if (d[1] == 0) throw ArgumentError("dependent lattice basis");
    std::size_t k = 2;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 1; j <= k; ++j) {
                Integer u = dot(b[k], b[j]);
                for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k)
                    lam[k][j] = u;
                else
                    d[k] = u;
            }
            if (d[k] == 0) throw ArgumentError("dependent lattice basis");
        }
        while (true) {
            red(k, k - 1);
            if (dden * d[k] * d[k - 2] < dnum * d[k - 1] * d[k - 1] - dden * lam[k][k - 1] * lam[k][k - 1]) {
                swap_k(k);
                if (k > 2) --k;
            } else {
                for (std::size_t l = k - 1; l-- > 1;) red(k, l);
                ++k;
                break;
            }
        }
    }
    return std::vector<IntVector>(b.begin() + 1, b.end());
}

std::vector<IntVector> siegel_basis(const std::vector<IntVector>& forms, std::size_t n) {
    const std::size_t r = forms.size();
    if (r >= n) throw ArgumentError("siegel_basis needs fewer forms than the ambient dimension");
    for (const auto& f : forms)
        if (f.size() != n) throw ArgumentError("form length differs from the ambient dimension");
    if (r > 0 && detail::integer_rank(forms) != static_cast<int>(r)) throw ArgumentError("dependent forms");

    std::vector<IntVector> kernel;
    Integer w = Integer(1) << static_cast<unsigned>(n);
    for (const auto& f : forms) w *= 1 + dot(f, f);
    for (int attempt = 0; attempt < 6; ++attempt, w *= w) {
        std::vector<IntVector> rows;
        for (std::size_t i = 0; i < n; ++i) {
            IntVector row(n + r);
            row[i] = 1;
            for (std::size_t j = 0; j < r; ++j) row[n + j] = w * forms[j][i];
            rows.push_back(std::move(row));
        }
        kernel.clear();
        for (auto& v : lll_reduce(rows)) {
            bool tail_zero = std::all_of(v.begin() + static_cast<long>(n), v.end(), [](const Integer& x) { return x == 0; });
            if (tail_zero) kernel.emplace_back(v.begin(), v.begin() + static_cast<long>(n));
        }
        if (kernel.size() == n - r) break;
    }
    if (kernel.size() != n - r) throw PrecisionExhausted("kernel weight failed to separate the forms");
    for (auto& v : kernel) {
        normalize_sign(v);
        for (const auto& f : forms)
            if (dot(v, f) != 0) throw LemmaViolation("kernel vector not orthogonal to a form");
    }
    std::stable_sort(kernel.begin(), kernel.end(), [](const IntVector& a, const IntVector& b) {
        Integer na = dot(a, a), nb = dot(b, b);
        if (na != nb) return na < nb;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    return kernel;
}

double siegel_ratio(const std::vector<IntVector>& forms, const std::vector<IntVector>& basis) {
    double num = 1, den = 1;
    for (const auto& b : basis) num *= std::sqrt(dot(b, b).convert_to<double>());
    for (const auto& f : forms) den *= std::sqrt(dot(f, f).convert_to<double>());
    return num / den;
}

SubgroupLattice::SubgroupLattice(std::vector<IntVector> rows, std::size_t n) : rows_(std::move(rows)), n_(n) {
    for (const auto& r : rows_)
        if (r.size() != n_) throw ArgumentError("subgroup row length differs from the ambient dimension");
    if (!rows_.empty() && detail::integer_rank(rows_) != static_cast<int>(rows_.size()))
        throw ArgumentError("subgroup rows are dependent");
}

bool SubgroupLattice::is_torus() const {
    const std::size_t r = rows_.size();
    if (r == 0) return true;
    Integer g = 0;
    std::vector<std::size_t> cols(r);
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t start, std::size_t depth) {
        if (depth == r) {
            std::vector<std::vector<Integer>> m(r, std::vector<Integer>(r));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) m[i][j] = rows_[i][cols[j]];
            g = gcd(g, detail::bareiss_det(m));
            return;
        }
        for (std::size_t c = start; c < n_; ++c) {
            cols[depth] = c;
            walk(c + 1, depth + 1);
        }
    };
    walk(0, 0);
    return abs(g) == 1;
}

Real SubgroupLattice::max_defect(const std::vector<Complex>& point) const {
    if (point.size() != n_) throw ArgumentError("point dimension differs from the ambient dimension");
    Real worst = 0;
    for (const auto& row : rows_) {
        Complex v(1);
        for (std::size_t j = 0; j < n_; ++j)
            if (row[j] != 0) v *= pow(point[j], row[j].convert_to<long>());
        Real d = abs(v - Complex(1));
        if (d > worst) worst = d;
    }
    return worst;
}

RelationCertificate integer_relation(const std::vector<Complex>& xs, const Integer& bound, unsigned digits) {
    const std::size_t m = xs.size();
    if (m < 2) throw ArgumentError("integer_relation needs at least two values");
    if (bound < 1) throw ArgumentError("relation bound must be at least 1");
    double need = 4.0 * static_cast<double>(m) * std::log10(bound.convert_to<double>());
    if (static_cast<double>(digits) < need)
        throw PrecisionExhausted("integer_relation needs " + std::to_string(static_cast<int>(std::ceil(need))) +
                                 " digits for this bound");

    Precision guard(digits + 10);
    Real maxabs = 1;
    bool has_im = false;
    for (const auto& x : xs) {
        Real a = abs(x);
        if (a > maxabs) maxabs = a;
        if (x.im != 0) has_im = true;
    }
    Real w = pow10(static_cast<long>(digits) - 5) / maxabs;
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < m; ++i) {
        IntVector row(m + (has_im ? 2 : 1));
        row[i] = 1;
        row[m] = round_to_integer(w * xs[i].re);
        if (has_im) row[m + 1] = round_to_integer(w * xs[i].im);
        rows.push_back(std::move(row));
    }
    auto reduced = lll_reduce(rows);

    Real threshold = pow10(-static_cast<long>(digits / 2));
    auto residual_of = [&](const IntVector& c) {
        Complex s;
        for (std::size_t i = 0; i < m; ++i)
            if (c[i] != 0) s += to_real(c[i]) * xs[i];
        return abs(s);
    };

    RelationCertificate cert;
    cert.residual = threshold;
    bool have = false;
    Integer best_max = 0;
    Real best_seen = -1;
    for (const auto& v : reduced) {
        IntVector c(v.begin(), v.begin() + static_cast<long>(m));
        Integer mx = 0;
        for (const auto& x : c) mx = max(mx, Integer(abs(x)));
        if (mx == 0 || mx > bound) continue;
        Real res = residual_of(c);
        if (best_seen < 0 || res < best_seen) best_seen = res;
        if (res >= threshold) continue;
        if (!have || mx < best_max) {
            have = true;
            best_max = mx;
            cert.coefficients = c;
        }
    }
    if (!have) {
        if (best_seen >= 0) cert.residual = best_seen;
        return cert;
    }
    Integer g = 0;
    for (const auto& x : cert.coefficients) g = gcd(g, x);
    for (auto& x : cert.coefficients) x /= g;
    normalize_sign(cert.coefficients);
    cert.kind = RelationCertificate::Kind::Relation;
    cert.residual = residual_of(cert.coefficients);
    return cert;
}

Detection is_quadratic(const Complex& tau, unsigned digits) {
    Precision guard(digits + 10);
    Complex t = rebase(tau);
    std::vector<Complex> xs{Complex(1), t, t * t};
    Detection d;
    d.witness = integer_relation(xs, kRelationCeiling, digits);
    d.value = d.witness.found();
    if (d.value) {
        auto& c = d.witness.coefficients;
        std::size_t top = c.size();
        while (top-- > 0 && c[top] == 0) {}
        if (c[top] < 0)
            for (auto& x : c) x = -x;
    }
    return d;
}

Detection rational_independence(const Complex& t1, const Complex& t2, unsigned digits) {
    Precision guard(digits + 10);
    Complex a = rebase(t1), b = rebase(t2);
    std::vector<Complex> xs{Complex(1), a, b, a * b};
    Detection d;
    d.witness = integer_relation(xs, kRelationCeiling, digits);
    d.value = !d.witness.found();
    return d;
}

RelationCertificate multiplicative_dependence(const Complex& t1, const Complex& t2, const Integer& bound,
                                              unsigned digits) {
    if ((t1.re == 0 && t1.im == 0) || (t2.re == 0 && t2.im == 0))
        throw ArgumentError("multiplicative dependence needs nonzero values");
    Precision guard(digits + 10);
    std::vector<Complex> xs{log(rebase(t1)), log(rebase(t2)), two_pi_i()};
    RelationCertificate cert = integer_relation(xs, bound, digits);
    if (cert.found() && cert.coefficients[0] == 0 && cert.coefficients[1] == 0) cert = RelationCertificate{};
    return cert;
}

}  // namespace cosmetic

#include "cosmetic/errors.hpp"
#include "cosmetic/exactnum.hpp"
#include "poly_internal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace cosmetic {

namespace {

Real log10_of(const Integer& n) {
    if (n == 0) return Real(0);
    return log(abs(to_real(n))) / log(Real(10));
}

bool try_isolate(const IntPolynomial& p, unsigned digits, unsigned w, std::vector<Complex>& z,
                 std::vector<RootEnclosure>& out) {
    Precision guard(w);
    const int d = p.degree();
    std::vector<Complex> a(static_cast<std::size_t>(d) + 1), da(static_cast<std::size_t>(d));
    for (int k = 0; k <= d; ++k) a[static_cast<std::size_t>(k)] = Complex(to_real(p.coeff(k)));
    for (int k = 1; k <= d; ++k) da[static_cast<std::size_t>(k - 1)] = a[static_cast<std::size_t>(k)] * Real(k);

    if (z.empty()) {
        // Fujiwara bound, points spread on a slightly rotated circle
        Real bound = 0;
        Real lead = abs(to_real(p.lead()));
        for (int k = 1; k <= d; ++k) {
            Real c = abs(to_real(p.coeff(d - k))) / lead;
            if (c == 0) continue;
            Real r = 2 * pow(c, Real(1) / Real(k));
            if (r > bound) bound = r;
        }
        if (bound == 0) bound = 1;
        for (int k = 0; k < d; ++k) z.push_back(polar(bound, 2 * pi() * Real(k) / Real(d) + Real(0.4)));
    } else {
        for (auto& v : z) v = rebase(v);
    }

    auto horner = [](const std::vector<Complex>& c, const Complex& x) {
        Complex r;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    };

    Real target = pow10(-static_cast<long>(digits) - 10);
    bool converged = false;
    int polish = 0;
    for (int iter = 0; iter < 60 * d + 400; ++iter) {
        Real maxcorr = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            Complex pz = horner(a, z[k]);
            if (pz.re == 0 && pz.im == 0) continue;
            Complex dpz = horner(da, z[k]);
            Complex s;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) s += Complex(1) / (z[k] - z[j]);
            Complex corr;
            if (dpz.re == 0 && dpz.im == 0) {
                corr = Complex(pow10(-static_cast<long>(w) / 4), Real(0));
            } else {
                Complex n = pz / dpz;
                corr = n / (Complex(1) - n * s);
            }
            z[k] -= corr;
            Real rel = abs(corr) / std::max(Real(1), abs(z[k]));
            if (rel > maxcorr) maxcorr = rel;
        }
        if (maxcorr < target) {
            if (++polish >= 2) {
                converged = true;
                break;
            }
        }
    }
    if (!converged) return false;

    // Weierstrass inclusion disks: radius d*|W_k| plus an evaluation error bound.
    Real eps = pow10(-static_cast<long>(w) + 2);
    std::vector<RootEnclosure> res;
    Real lead = to_real(p.lead());
    for (std::size_t k = 0; k < z.size(); ++k) {
        Complex pz = horner(a, z[k]);
        Real scale = 0, zk = abs(z[k]), zp = 1;
        for (int j = 0; j <= d; ++j) {
            scale += abs(to_real(p.coeff(j))) * zp;
            zp *= zk;
        }
        Real perr = abs(pz) + eps * Real(2 * d + 2) * scale;
        Complex prod(lead);
        for (std::size_t j = 0; j < z.size(); ++j)
            if (j != k) prod *= (z[k] - z[j]);
        Real ap = abs(prod);
        if (ap == 0) return false;
        Real r = Real(d) * perr / ap;
        if (r > pow10(-static_cast<long>(digits)) * std::max(Real(1), zk)) return false;
        res.push_back({z[k], r});
    }
    for (std::size_t i = 0; i < res.size(); ++i)
        for (std::size_t j = i + 1; j < res.size(); ++j)
            if (abs(res[i].center - res[j].center) <= res[i].radius + res[j].radius) return false;
    out = std::move(res);
    return true;
}

struct FactorWithRoots {
    IntPolynomial factor;
    std::vector<RootEnclosure> roots;
};

// Digits needed so that lead * prod (x - r) over any root subset rounds to integers reliably.
unsigned factor_digits(const IntPolynomial& p) {
    Precision guard(30);
    Real m = mahler_log(p, 20) / log(Real(10));
    Real b = log10_of(p.lead()) + Real(p.degree()) * Real(0.30103) + m;
    return static_cast<unsigned>(std::ceil(b.convert_to<double>())) + 25;
}

std::vector<FactorWithRoots> factor_with_roots(const IntPolynomial& input, unsigned digits) {
    IntPolynomial p = input.primitive_part();
    std::vector<FactorWithRoots> out;
    if (p.degree() < 1) return out;
    unsigned need = std::max(digits, factor_digits(p));
    // strip the root at zero
    if (p.coeff(0) == 0) {
        Precision guard(need + 10);
        out.push_back({IntPolynomial{0, 1}, {{Complex(0), Real(0)}}});
        p = *exact_quotient(p, IntPolynomial{0, 1});
        if (p.degree() < 1) return out;
    }
    auto all = isolate_roots(p, need);
    if (p.degree() == 1) {
        out.push_back({p, all});
        return out;
    }
    Precision guard(need + 10);
    std::vector<std::size_t> rem(all.size());
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = i;
    IntPolynomial q = p;
    Real tol = pow10(-static_cast<long>(need) / 2);

    std::size_t k = 1;
    while (2 * k <= rem.size()) {
        bool found = false;
        std::vector<std::size_t> pick(k);
        std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t start, std::size_t depth) -> bool {
            if (depth == k) {
                Real imsum = 0;
                for (auto idx : pick) imsum += all[idx].center.im;
                if (abs(imsum) > Real(1e-6)) return false;
                std::vector<Complex> c{Complex(to_real(q.lead()))};
                for (auto idx : pick) {
                    std::vector<Complex> next(c.size() + 1);
                    for (std::size_t j = 0; j < c.size(); ++j) {
                        next[j + 1] += c[j];
                        next[j] -= c[j] * all[idx].center;
                    }
                    c = std::move(next);
                }
                std::vector<Integer> ints;
                for (auto& v : c) {
                    Integer r = round_to_integer(v.re);
                    if (abs(v.re - to_real(r)) > tol || abs(v.im) > tol) return false;
                    ints.push_back(r);
                }
                IntPolynomial cand = IntPolynomial(ints).primitive_part();
                auto quo = exact_quotient(q, cand);
                if (!quo) return false;
                std::vector<RootEnclosure> rs;
                for (auto idx : pick) rs.push_back(all[idx]);
                out.push_back({cand, rs});
                std::vector<std::size_t> keep;
                for (auto idx : rem)
                    if (std::find(pick.begin(), pick.end(), idx) == pick.end()) keep.push_back(idx);
                rem = std::move(keep);
                q = *quo;
                return true;
            }
            for (std::size_t i = start; i < rem.size(); ++i) {
                pick[depth] = rem[i];
                if (search(i + 1, depth + 1)) return true;
            }
            return false;
        };
        found = search(0, 0);
        if (!found) ++k;
    }
    std::vector<RootEnclosure> rs;
    for (auto idx : rem) rs.push_back(all[idx]);
    out.push_back({q.primitive_part(), rs});
    return out;
}

}  // namespace

std::vector<RootEnclosure> isolate_roots(const IntPolynomial& p, unsigned digits) {
    const int d = p.degree();
    if (d < 1) return {};
    if (d == 1) {
        Precision guard(digits + 20);
        Real r = -to_real(p.coeff(0)) / to_real(p.coeff(1));
        return {{Complex(r), Real(0)}};
    }
    std::vector<Complex> z;
    std::vector<RootEnclosure> out;
    for (unsigned w = digits + 20; w <= 8 * digits + 400; w *= 2)
        if (try_isolate(p, digits, w, z, out)) return out;
    throw PrecisionExhausted("root isolation failed for " + p.str());
}

std::vector<Complex> roots(const IntPolynomial& p, unsigned digits) {
    std::vector<Complex> out;
    for (const auto& [f, e] : squarefree_decomposition(p))
        for (const auto& r : isolate_roots(f, digits))
            for (int k = 0; k < e; ++k) out.push_back(r.center);
    return out;
}

Real mahler_log(const IntPolynomial& p, unsigned digits) {
    if (p.is_zero()) throw ArgumentError("Mahler measure of the zero polynomial");
    auto parts = squarefree_decomposition(p);
    std::vector<std::pair<std::vector<RootEnclosure>, int>> rs;
    for (const auto& [f, e] : parts) rs.emplace_back(isolate_roots(f, digits + 5), e);
    Precision guard(digits + 10);
    Real total = log(abs(to_real(p.lead())));
    for (const auto& [enc, e] : rs)
        for (const auto& r : enc) {
            Real m = abs(r.center);
            if (m > 1) total += Real(e) * log(m);
        }
    return total;
}

std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& p) {
    if (p.is_zero()) throw ArgumentError("factorization of the zero polynomial");
    if (poly_gcd(p, p.derivative()).degree() > 0) throw ArgumentError("polynomial is not squarefree: " + p.str());
    std::vector<IntPolynomial> out;
    for (auto& f : factor_with_roots(p, 20)) out.push_back(f.factor);
    return out;
}

bool is_irreducible(const IntPolynomial& p) {
    if (p.degree() < 1) return false;
    IntPolynomial q = p.primitive_part();
    if (poly_gcd(q, q.derivative()).degree() > 0) return false;
    return factor_squarefree(q).size() == 1;
}

AlgebraicNumber AlgebraicNumber::rational(const Rational& q) {
    Precision guard(kDefaultDigits + 20);
    IntPolynomial m(std::vector<Integer>{-numerator(q), denominator(q)});
    return AlgebraicNumber(m.primitive_part(), Complex(to_real(q)), Real(0), kDefaultDigits);
}

AlgebraicNumber AlgebraicNumber::root_of(const IntPolynomial& p, const Complex& near, unsigned digits) {
    if (p.degree() < 1) throw ArgumentError("root_of needs a nonconstant polynomial");
    std::vector<FactorWithRoots> cands;
    for (const auto& [f, e] : squarefree_decomposition(p))
        for (auto& fr : factor_with_roots(f, digits)) cands.push_back(std::move(fr));
    Precision guard(digits + 20);
    const FactorWithRoots* best = nullptr;
    const RootEnclosure* root = nullptr;
    Real bestd = -1;
    for (const auto& c : cands)
        for (const auto& r : c.roots) {
            Real dist = abs(r.center - near);
            if (bestd < 0 || dist < bestd) {
                bestd = dist;
                best = &c;
                root = &r;
            }
        }
    if (root->radius != 0 || best->factor.degree() > 1)
        return AlgebraicNumber(best->factor, rebase(root->center), rebase(root->radius), digits);
    // rational root: store the exact quotient
    Rational q(-best->factor.coeff(0), best->factor.coeff(1));
    return AlgebraicNumber(best->factor, Complex(to_real(q)), Real(0), digits);
}

Complex AlgebraicNumber::value(unsigned digits) const {
    if (degree() == 1) {
        Precision guard(digits + 20);
        return Complex(to_real(Rational(-minpoly_.coeff(0), minpoly_.coeff(1))));
    }
    auto rs = isolate_roots(minpoly_, digits);
    Precision guard(digits + 20);
    std::size_t best = 0;
    for (std::size_t k = 1; k < rs.size(); ++k)
        if (abs(rs[k].center - approx_) < abs(rs[best].center - approx_)) best = k;
    return rs[best].center;
}

std::vector<Complex> AlgebraicNumber::conjugates(unsigned digits) const {
    std::vector<Complex> out;
    for (auto& r : isolate_roots(minpoly_, digits)) out.push_back(r.center);
    return out;
}

namespace {

// Polynomial in x through resultant values Res_y(f(y), g_x(y)) at x = 0..degree.
IntPolynomial resultant_in_x(const IntPolynomial& f, int degree, const std::function<IntPolynomial(const Integer&)>& g_at) {
    std::vector<Integer> values;
    for (int x = 0; x <= degree; ++x) values.push_back(resultant(f, g_at(Integer(x))));
    return detail::interpolate(values);
}

}  // namespace

AlgebraicNumber AlgebraicNumber::pow(long n) const {
    if (n == 0) return integer(1);
    if (n < 0) return inverse().pow(-n);
    if (degree() == 1) {
        Rational q(-minpoly_.coeff(0), minpoly_.coeff(1)), r(1);
        for (long k = 0; k < n; ++k) r *= q;
        return rational(r);
    }
    IntPolynomial r = resultant_in_x(minpoly_, degree(), [&](const Integer& x0) {
        return IntPolynomial::monomial(Integer(-1), static_cast<int>(n)) + IntPolynomial(std::vector<Integer>{x0});
    });
    Complex v = value(digits_ + 10);
    Precision guard(digits_ + 30);
    return root_of(r, cosmetic::pow(v, n), digits_);
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (minpoly_.coeff(0) == 0) throw ArgumentError("inverse of zero");
    std::vector<Integer> rev(minpoly_.coefficients().rbegin(), minpoly_.coefficients().rend());
    Complex v = value(digits_ + 10);
    Precision guard(digits_ + 30);
    return root_of(IntPolynomial(rev), Complex(1) / v, digits_);
}

AlgebraicNumber AlgebraicNumber::operator-() const {
    std::vector<Integer> c = minpoly_.coefficients();
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    Complex v = value(digits_ + 10);
    Precision guard(digits_ + 30);
    return root_of(IntPolynomial(c), -v, digits_);
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    unsigned digits = std::max(a.digits_, b.digits_);
    const IntPolynomial& g = b.minpoly_;
    IntPolynomial r = resultant_in_x(a.minpoly_, a.degree() * b.degree(),
                                     [&](const Integer& x0) { return detail::compose_shift(g, x0); });
    Complex va = a.value(digits + 10), vb = b.value(digits + 10);
    Precision guard(digits + 30);
    return AlgebraicNumber::root_of(r, va + vb, digits);
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    unsigned digits = std::max(a.digits_, b.digits_);
    if (a.minpoly_.coeff(0) == 0 || b.minpoly_.coeff(0) == 0) return AlgebraicNumber::integer(0);
    const IntPolynomial& g = b.minpoly_;
    const int d2 = g.degree();
    IntPolynomial r = resultant_in_x(a.minpoly_, a.degree() * d2, [&](const Integer& x0) {
        // y^d2 g(x0 / y)
        std::vector<Integer> c(static_cast<std::size_t>(d2) + 1);
        Integer xp = 1;
        for (int k = 0; k <= d2; ++k) {
            c[static_cast<std::size_t>(d2 - k)] = g.coeff(k) * xp;
            xp *= x0;
        }
        return IntPolynomial(c);
    });
    Complex va = a.value(digits + 10), vb = b.value(digits + 10);
    Precision guard(digits + 30);
    return AlgebraicNumber::root_of(r, va * vb, digits);
}

Real height(const AlgebraicNumber& a, unsigned digits) {
    Real m = mahler_log(a.minpoly(), digits);
    Precision guard(digits + 10);
    return m / Real(a.degree());
}

std::vector<IntPolynomial> northcott_enumerate(int max_deg, const Real& max_height, unsigned digits) {
    if (max_deg < 1 || max_deg > 4) throw ArgumentError("northcott_enumerate supports degrees 1 to 4");
    if (max_height < 0) throw ArgumentError("height bound must be nonnegative");
    Precision guard(digits + 10);
    const Real h = rebase(max_height);
    const Real slack = pow10(-static_cast<long>(digits) / 2);
    std::vector<IntPolynomial> out;
    for (int d = 1; d <= max_deg; ++d) {
        // |a_k| <= binom(d, k) M(f) and M(f) = exp(d h)
        const Real mahler = exp(Real(d) * h) * (1 + slack);
        std::vector<long> bound(d + 1);
        long binom = 1;
        for (int k = 0; k <= d; ++k) {
            bound[k] = static_cast<long>(floor(Real(binom) * mahler).convert_to<double>());
            binom = binom * (d - k) / (k + 1);
        }
        std::vector<long> c(d + 1);
        std::function<void(int)> rec = [&](int k) {
            if (k < 0) {
                if (c[d] <= 0) return;
                std::vector<Integer> coeffs(c.begin(), c.end());
                IntPolynomial f(coeffs);
                if (f.content() != 1 || !is_irreducible(f)) return;
                if (mahler_log(f, digits) / Real(d) <= h + slack) out.push_back(f);
                return;
            }
            for (long x = -bound[k]; x <= bound[k]; ++x) {
                c[k] = x;
                rec(k - 1);
            }
        };
        rec(d);
    }
    return out;
}

namespace {

using Monomial = std::vector<int>;
using MultiPoly = std::map<Monomial, Complex>;

MultiPoly multiply_linear(const MultiPoly& p, const std::vector<Complex>& form) {
    MultiPoly out;
    for (const auto& [mono, c] : p)
        for (std::size_t v = 0; v < form.size(); ++v) {
            Monomial m = mono;
            ++m[v];
            auto it = out.find(m);
            if (it == out.end())
                out.emplace(m, c * form[v]);
            else
                it->second += c * form[v];
        }
    return out;
}

}  // namespace

Real height_tuple(const std::vector<AlgebraicNumber>& as, unsigned digits) {
    if (as.empty()) throw ArgumentError("height of an empty tuple");
    const std::size_t n = as.size();
    std::vector<std::vector<Complex>> conj(n);
    for (std::size_t i = 0; i < n; ++i) conj[i] = as[i].conjugates(digits + 10);

    // Embeddings of the common field, found through a primitive element sum c_i a_i.
    std::vector<std::vector<Complex>> embeddings;
    for (int attempt = 0; attempt < 8 && embeddings.empty(); ++attempt) {
        std::vector<long> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = attempt == 0 ? 1 : static_cast<long>(std::pow(attempt + 1, i)) * (i % 2 ? -1 : 1);
        AlgebraicNumber gamma = AlgebraicNumber::integer(c[0]) * as[0];
        for (std::size_t i = 1; i < n; ++i) gamma = gamma + AlgebraicNumber::integer(c[i]) * as[i];
        auto gconj = gamma.conjugates(digits + 10);
        Precision guard(digits + 20);
        Real tol = pow10(-static_cast<long>(digits) / 2);
        bool unique = true;
        std::vector<std::vector<Complex>> found;
        for (const auto& rho : gconj) {
            int hits = 0;
            std::vector<Complex> pick;
            std::vector<std::size_t> idx(n, 0);
            while (true) {
                Complex s;
                for (std::size_t i = 0; i < n; ++i) s += Real(c[i]) * conj[i][idx[i]];
                if (abs(s - rho) < tol) {
                    ++hits;
                    pick.clear();
                    for (std::size_t i = 0; i < n; ++i) pick.push_back(conj[i][idx[i]]);
                }
                std::size_t pos = 0;
                while (pos < n && ++idx[pos] == conj[pos].size()) idx[pos++] = 0;
                if (pos == n) break;
            }
            if (hits != 1) {
                unique = false;
                break;
            }
            found.push_back(pick);
        }
        if (unique) embeddings = std::move(found);
    }
    if (embeddings.empty()) throw PrecisionExhausted("no primitive element separated the conjugate tuples");

    const std::size_t D = embeddings.size();
    Integer ell = 1;
    for (const auto& a : as) ell *= abs(a.minpoly().lead());

    // coefficient size bound for the scaled norm form
    Real bound_log10;
    {
        Precision guard(digits + 20);
        Real acc = 0;
        for (const auto& e : embeddings) {
            Real s = 1;
            for (const auto& b : e) s += abs(b);
            acc += log(to_real(ell) * s) / log(Real(10));
        }
        bound_log10 = acc;
    }
    unsigned work = digits + 30 + static_cast<unsigned>(std::ceil(bound_log10.convert_to<double>()));
    // recompute the embeddings at the working precision via nearest conjugates
    std::vector<std::vector<Complex>> conj_hi(n);
    for (std::size_t i = 0; i < n; ++i) conj_hi[i] = as[i].conjugates(work);

    Precision guard(work + 10);
    Real arch = 0;
    MultiPoly normform{{Monomial(n + 1, 0), Complex(1)}};
    for (const auto& e : embeddings) {
        Real mx = 1;
        std::vector<Complex> form{Complex(to_real(ell))};
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < conj_hi[i].size(); ++k)
                if (abs(conj_hi[i][k] - e[i]) < abs(conj_hi[i][best] - e[i])) best = k;
            const Complex& b = conj_hi[i][best];
            if (abs(b) > mx) mx = abs(b);
            form.push_back(to_real(ell) * b);
        }
        arch += log(mx);
        normform = multiply_linear(normform, form);
    }
    Integer content = 0;
    Real tol = Real(1) / 8;
    for (const auto& [mono, c] : normform) {
        Integer r = round_to_integer(c.re);
        if (abs(c.re - to_real(r)) > tol || abs(c.im) > tol)
            throw PrecisionExhausted("norm form did not round to integers");
        content = gcd(content, r);
    }
    Real finite = Real(static_cast<long>(D)) * log(to_real(ell)) - log(to_real(content));
    Real h = (arch + finite) / Real(static_cast<long>(D));
    return h;
}

NumberField::NumberField(IntPolynomial base) : base_(base.primitive_part()) {
    if (base_.degree() < 1) throw ArgumentError("number field base must be nonconstant");
    if (!is_irreducible(base_)) throw ArgumentError("number field base is reducible: " + base_.str());
    for (const auto& c : base_.coefficients()) monic_.push_back(Rational(c) / Rational(base_.lead()));
}

FieldRef make_field(const IntPolynomial& base) { return std::make_shared<const NumberField>(base); }

namespace {

std::vector<Rational> reduce(std::vector<Rational> r, const std::vector<Rational>& monic) {
    const std::size_t d = monic.size() - 1;
    while (r.size() > d) {
        Rational top = r.back();
        std::size_t shift = r.size() - 1 - d;
        if (top != 0)
            for (std::size_t k = 0; k < d; ++k) r[shift + k] -= top * monic[k];
        r.pop_back();
    }
    detail::trim(r);
    return r;
}

void check_same(const FieldElement& a, const FieldElement& b) {
    if (a.field() == b.field()) return;
    if (a.field()->base() != b.field()->base()) throw ArgumentError("field elements over different base polynomials");
}

}  // namespace

FieldElement::FieldElement(FieldRef field, std::vector<Rational> rep) : field_(std::move(field)) {
    if (!field_) throw ArgumentError("field element without a field");
    rep_ = reduce(std::move(rep), field_->monic());
}

FieldElement FieldElement::linear(FieldRef field, long a, long b) {
    return FieldElement(std::move(field), {Rational(a), Rational(b)});
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return FieldElement(a.field_, detail::q_add(a.rep_, b.rep_));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return FieldElement(a.field_, detail::q_sub(a.rep_, b.rep_));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return FieldElement(a.field_, detail::q_mul(a.rep_, b.rep_));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return a.rep_ == b.rep_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw ArgumentError("inverse of zero in a number field");
    // extended Euclid: s * rep + t * base = 1
    using detail::QPoly;
    QPoly r0 = field_->monic(), r1 = rep_;
    QPoly s0, s1{Rational(1)};
    while (!r1.empty()) {
        QPoly q, r;
        detail::q_divmod(r0, r1, q, r);
        QPoly s = detail::q_sub(s0, detail::q_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) throw ArgumentError("element is a zero divisor");
    Rational inv = Rational(1) / r0[0];
    for (auto& c : s0) c *= inv;
    return FieldElement(field_, s0);
}

std::string FieldElement::str() const {
    if (rep_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < rep_.size(); ++k) {
        if (rep_[k] == 0) continue;
        if (!out.empty()) out += " + ";
        out += "(" + rep_[k].str() + ")";
        if (k >= 1) out += "*t";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

int field_rank(const FieldMatrix& input) {
    if (input.empty()) return 0;
    const std::size_t rows = input.size(), cols = input[0].size();
    const FieldRef* ref = nullptr;
    for (const auto& row : input) {
        if (row.size() != cols) throw ArgumentError("ragged field matrix");
        for (const auto& e : row) {
            if (!ref)
                ref = &e.field();
            else if (e.field() != *ref && e.field()->base() != (*ref)->base())
                throw ArgumentError("matrix entries over different base polynomials");
        }
    }
    if (!ref) return 0;
    FieldMatrix m = input;
    FieldElement prev((*ref), {Rational(1)});
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        FieldElement inv_prev = prev.inverse();
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) * inv_prev;
            m[i][c] = FieldElement(*ref, {});
        }
        prev = m[rank][c];
        ++rank;
    }
    return static_cast<int>(rank);
}

}  // namespace cosmetic

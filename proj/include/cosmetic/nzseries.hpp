#pragma once

#include "cosmetic/errors.hpp"
#include "cosmetic/geometry.hpp"
#include "cosmetic/mp.hpp"

#include <functional>
#include <string>
#include <tuple>
#include <vector>

namespace cosmetic {

// Gaussian rational.
struct ExactComplex {
    Rational re;
    Rational im;

    ExactComplex() = default;
    ExactComplex(const Rational& r) : re(r) {}
    ExactComplex(const Rational& r, const Rational& i) : re(r), im(i) {}
    ExactComplex(long r) : re(r) {}
    ExactComplex(long r, long i) : re(r), im(i) {}

    ExactComplex& operator+=(const ExactComplex& o) { re += o.re; im += o.im; return *this; }
    ExactComplex& operator-=(const ExactComplex& o) { re -= o.re; im -= o.im; return *this; }
    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
};

inline Complex to_complex(const ExactComplex& z) { return {to_real(z.re), to_real(z.im)}; }
inline Real magnitude(const ExactComplex& z) { return abs(to_complex(z)); }
inline Real magnitude(const Complex& z) { return abs(z); }
inline bool is_zero(const ExactComplex& z) { return z.re == 0 && z.im == 0; }
inline bool is_zero(const Complex& z) { return z.re == 0 && z.im == 0; }

template <class C>
C from_rational(const Rational& q);
template <>
inline ExactComplex from_rational<ExactComplex>(const Rational& q) { return ExactComplex(q); }
template <>
inline Complex from_rational<Complex>(const Rational& q) { return Complex(to_real(q)); }

// Power series in (u1, u2) truncated at total degree `order`.
template <class C>
class TruncatedSeries2 {
public:
    explicit TruncatedSeries2(int order = 0) : order_(order), c_((order + 1) * (order + 2) / 2) {
        if (order < 0) throw ArgumentError("series order must be nonnegative");
    }

    // u1 (index 0) or u2 (index 1).
    static TruncatedSeries2 variable(int index, int order) {
        TruncatedSeries2 s(order);
        if (order >= 1) s.set(index == 0 ? 1 : 0, index == 0 ? 0 : 1, C(1));
        return s;
    }
    static TruncatedSeries2 constant(const C& value, int order) {
        TruncatedSeries2 s(order);
        s.set(0, 0, value);
        return s;
    }

    int order() const { return order_; }

    C coeff(int i, int j) const {
        if (i < 0 || j < 0 || i + j > order_) return C();
        return c_[index(i, j)];
    }
    void set(int i, int j, C value) {
        if (i < 0 || j < 0 || i + j > order_) throw ArgumentError("monomial beyond the truncation order");
        c_[index(i, j)] = std::move(value);
    }

    TruncatedSeries2 truncated(int order) const {
        TruncatedSeries2 s(order);
        for (int d = 0; d <= std::min(order, order_); ++d)
            for (int i = 0; i <= d; ++i) s.set(i, d - i, coeff(i, d - i));
        return s;
    }

    // Partial derivative; the result keeps the order but its top degree is empty.
    TruncatedSeries2 derivative(int var) const {
        TruncatedSeries2 s(order_);
        for (int d = 1; d <= order_; ++d)
            for (int i = 0; i <= d; ++i) {
                int j = d - i;
                if (var == 0 && i > 0) s.set(i - 1, j, coeff(i, j) * C(static_cast<long>(i)));
                if (var == 1 && j > 0) s.set(i, j - 1, coeff(i, j) * C(static_cast<long>(j)));
            }
        return s;
    }

    // Nonzero terms as (i, j, coefficient) in graded order.
    std::vector<std::tuple<int, int, C>> terms() const {
        std::vector<std::tuple<int, int, C>> out;
        for (int d = 0; d <= order_; ++d)
            for (int i = d; i >= 0; --i)
                if (!is_zero(coeff(i, d - i))) out.emplace_back(i, d - i, coeff(i, d - i));
        return out;
    }

    TruncatedSeries2& operator+=(const TruncatedSeries2& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    TruncatedSeries2& operator-=(const TruncatedSeries2& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend TruncatedSeries2 operator+(TruncatedSeries2 a, const TruncatedSeries2& b) { return a += b; }
    friend TruncatedSeries2 operator-(TruncatedSeries2 a, const TruncatedSeries2& b) { return a -= b; }
    friend TruncatedSeries2 operator*(const C& s, TruncatedSeries2 a) {
        for (auto& x : a.c_) x = s * x;
        return a;
    }
    friend TruncatedSeries2 operator*(const TruncatedSeries2& a, const TruncatedSeries2& b) {
        a.check(b);
        TruncatedSeries2 r(a.order_);
        for (int da = 0; da <= a.order_; ++da)
            for (int ia = 0; ia <= da; ++ia) {
                const C& x = a.c_[index(ia, da - ia)];
                if (is_zero(x)) continue;
                for (int db = 0; da + db <= a.order_; ++db)
                    for (int ib = 0; ib <= db; ++ib) {
                        const C& y = b.c_[index(ib, db - ib)];
                        if (is_zero(y)) continue;
                        r.c_[index(ia + ib, da - ia + db - ib)] += x * y;
                    }
            }
        return r;
    }
    friend bool operator==(const TruncatedSeries2& a, const TruncatedSeries2& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }

private:
    static std::size_t index(int i, int j) {
        int d = i + j;
        return static_cast<std::size_t>(d * (d + 1) / 2 + j);
    }
    void check(const TruncatedSeries2& o) const {
        if (o.order_ != order_) throw ArgumentError("series orders differ");
    }

    int order_;
    std::vector<C> c_;
};

// f(g1, g2) at the smallest of the three orders. Throws ArgumentError if g1 or g2 has a constant term.
template <class C>
TruncatedSeries2<C> series_compose(const TruncatedSeries2<C>& f, const TruncatedSeries2<C>& g1,
                                   const TruncatedSeries2<C>& g2) {
    if (!is_zero(g1.coeff(0, 0)) || !is_zero(g2.coeff(0, 0)))
        throw ArgumentError("inner series must have zero constant term");
    const int n = std::min({f.order(), g1.order(), g2.order()});
    TruncatedSeries2<C> a = g1.truncated(n), b = g2.truncated(n);
    std::vector<TruncatedSeries2<C>> pa{TruncatedSeries2<C>::constant(C(1), n)};
    std::vector<TruncatedSeries2<C>> pb{TruncatedSeries2<C>::constant(C(1), n)};
    for (int k = 1; k <= n; ++k) {
        pa.push_back(pa.back() * a);
        pb.push_back(pb.back() * b);
    }
    TruncatedSeries2<C> out(n);
    for (const auto& [i, j, c] : f.truncated(n).terms()) out += c * (pa[i] * pb[j]);
    return out;
}

// Coefficient of u1^2 u2^2.
template <class C>
C m22(const TruncatedSeries2<C>& phi) {
    return phi.coeff(2, 2);
}

// True iff every mixed coefficient is below tol in magnitude.
template <class C>
bool sgi_test(const TruncatedSeries2<C>& phi, const Real& tol) {
    for (const auto& [i, j, c] : phi.terms())
        if (i > 0 && j > 0 && !(magnitude(c) < tol)) return false;
    return true;
}

inline Real default_sgi_tolerance(unsigned digits) { return pow10(-static_cast<long>(digits) / 2); }

template <class C>
struct Section7Residuals {
    C u1_u2sq;  // coefficient of u1 u2^2 in h1(u1,u2) - h1(u1,g)
    C u2;       // coefficient of u2 in a1 u2 + b1 h2 + c1 g + d1 h2(u1,g)
    C u1sq_u2;  // coefficient of u1^2 u2 in the same expression
};

// Residual coefficients after substituting g = (1/c2) phi' - (b2/c2) h2 for u2'.
template <class C>
Section7Residuals<C> section7_constraints(const TruncatedSeries2<C>& h1, const TruncatedSeries2<C>& h2,
                                          const TruncatedSeries2<C>& phi_prime, long a1, long b1, long c1, long d1,
                                          long b2, long c2) {
    if (c2 == 0) throw ArgumentError("c2 must be nonzero");
    if (std::min({h1.order(), h2.order(), phi_prime.order()}) < 3)
        throw ArgumentError("series orders must be at least 3");
    if (!is_zero(h2.coeff(0, 0)) || !is_zero(phi_prime.coeff(0, 0)))
        throw ArgumentError("h2 and phi' must vanish at the origin");
    const C c = from_rational<C>(Rational(1, c2));
    const C b = from_rational<C>(Rational(-b2, c2));
    auto g = [&](int i, int j) { return c * phi_prime.coeff(i, j) + b * h2.coeff(i, j); };
    auto H1 = [&](int i, int j) { return h1.coeff(i, j); };
    auto H2 = [&](int i, int j) { return h2.coeff(i, j); };
    const C two(2), three(3);
    const C A1(a1), B1(b1), C1(c1), D1(d1);

    Section7Residuals<C> r;
    r.u1_u2sq = H1(1, 2) - (H1(1, 1) * g(0, 2) + H1(1, 2) * g(0, 1) * g(0, 1) + H1(0, 1) * g(1, 2) +
                            H1(0, 2) * (two * g(1, 0) * g(0, 2) + two * g(1, 1) * g(0, 1)) +
                            H1(0, 3) * three * g(1, 0) * g(0, 1) * g(0, 1));
    r.u2 = A1 + B1 * H2(0, 1) + C1 * g(0, 1) + D1 * H2(0, 1) * g(0, 1);
    r.u1sq_u2 = B1 * H2(2, 1) + C1 * g(2, 1) +
                D1 * (H2(2, 1) * g(0, 1) + H2(1, 1) * g(1, 1) + H2(1, 2) * two * g(1, 0) * g(0, 1) +
                      H2(0, 1) * g(2, 1) + H2(0, 2) * (two * g(2, 0) * g(0, 1) + two * g(1, 0) * g(1, 1)) +
                      H2(0, 3) * three * g(1, 0) * g(1, 0) * g(0, 1));
    return r;
}

// Result of sampling Def(M) and fitting v_i = 1/2 dPhi/du_i.
struct PotentialFit {
    TruncatedSeries2<Complex> phi;   // truncated at the requested order
    TruncatedSeries2<Complex> full;  // all fitted monomials
    Real residual;                   // max |fitted v - sampled v| over the grid
    Real truncation;                 // size of the top fitted degrees on the grid
    std::vector<Real> radii;
    int cusps = 1;

    // 1/2 dPhi/du_i of the full fit at u (u2 ignored when k = 1).
    std::vector<Complex> gradient(const std::vector<Complex>& u) const;
};

// Monomials of total degree up to this are fitted; aliasing on the 8-angle grid starts beyond it.
inline constexpr int kFitDegree = 16;

using DeformationSampler = std::function<std::vector<Complex>(const std::vector<Complex>& u)>;

// Fits on a grid of 2 radii x 8 angles per variable using v = sampler(u).
PotentialFit fit_potential(const DeformationSampler& sampler, int k, int order, unsigned digits,
                           const std::vector<Real>& radii);
// Samples the deformation space of a fixture around its complete structure.
PotentialFit fit_potential(const GluingSystem& gs, int order, unsigned digits);
PotentialFit fit_potential(const GluingSystem& gs, const ShapeAssignment& complete, int order, unsigned digits,
                           const std::vector<Real>& radii);

// Default grid radii, chosen so truncation aliasing stays below the fitting tolerance.
std::vector<Real> default_fit_radii();

}  // namespace cosmetic

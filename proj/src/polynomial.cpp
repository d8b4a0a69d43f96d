#include "cosmetic/errors.hpp"
#include "cosmetic/exactnum.hpp"
#include "poly_internal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cosmetic {

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::monomial(const Integer& c, int k) {
    std::vector<Integer> v(static_cast<std::size_t>(k) + 1);
    v[static_cast<std::size_t>(k)] = c;
    return IntPolynomial(std::move(v));
}

Integer IntPolynomial::coeff(int k) const {
    if (k < 0 || k > degree()) return Integer(0);
    return c_[static_cast<std::size_t>(k)];
}

const Integer& IntPolynomial::lead() const {
    if (c_.empty()) throw ArgumentError("leading coefficient of the zero polynomial");
    return c_.back();
}

Integer IntPolynomial::content() const {
    Integer g = 0;
    for (const auto& a : c_) g = gcd(g, a);
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return *this;
    Integer g = content();
    if (lead() < 0) g = -g;
    std::vector<Integer> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(a / g);
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::derivative() const {
    std::vector<Integer> v;
    for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k] * static_cast<long>(k));
    return IntPolynomial(std::move(v));
}

Integer IntPolynomial::eval(const Integer& x) const {
    Integer r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Complex IntPolynomial::eval(const Complex& x) const {
    Complex r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * x;
        r.re += to_real(*it);
    }
    return r;
}

std::string IntPolynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Integer a = c_[static_cast<std::size_t>(k)];
        if (a == 0) continue;
        bool neg = a < 0;
        Integer m = neg ? Integer(-a) : a;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (k == 0) {
            os << m;
            continue;
        }
        if (m != 1) os << m << "*";
        os << "x";
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

IntPolynomial IntPolynomial::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ArgumentError("empty polynomial");
    std::vector<Integer> coeffs;
    std::size_t i = 0;
    auto fail = [&]() { return ArgumentError("cannot parse polynomial '" + text + "'"); };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw fail();
        }
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        Integer c = 1;
        bool has_digits = i > start;
        if (has_digits) c = Integer(s.substr(start, i - start));
        int power = 0;
        if (i < s.size() && s[i] == '*') {
            if (!has_digits) throw fail();
            ++i;
            if (i >= s.size() || s[i] != 'x') throw fail();
        }
        if (i < s.size() && s[i] == 'x') {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t ps = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i == ps) throw fail();
                power = std::stoi(s.substr(ps, i - ps));
            }
        } else if (!has_digits) {
            throw fail();
        }
        if (coeffs.size() <= static_cast<std::size_t>(power)) coeffs.resize(static_cast<std::size_t>(power) + 1);
        coeffs[static_cast<std::size_t>(power)] += sign * c;
    }
    return IntPolynomial(std::move(coeffs));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] -= b.c_[k];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const Integer& s, const IntPolynomial& a) {
    std::vector<Integer> v(a.c_);
    for (auto& x : v) x *= s;
    return IntPolynomial(std::move(v));
}

namespace detail {

QPoly to_q(const IntPolynomial& p) {
    QPoly q;
    for (const auto& a : p.coefficients()) q.emplace_back(a);
    return q;
}

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPolynomial to_primitive(const QPoly& p) {
    Integer l = 1;
    for (const auto& a : p) l = lcm(l, denominator(a));
    std::vector<Integer> v;
    for (const auto& a : p) v.push_back(numerator(a) * (l / denominator(a)));
    return IntPolynomial(std::move(v)).primitive_part();
}

QPoly q_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QPoly q_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
    trim(r);
    return r;
}

QPoly q_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    trim(r);
    return r;
}

void q_divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
    if (b.empty()) throw ArgumentError("polynomial division by zero");
    rem = a;
    trim(rem);
    quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rational(0));
    while (rem.size() >= b.size() && !rem.empty()) {
        std::size_t shift = rem.size() - b.size();
        Rational f = rem.back() / b.back();
        quot[shift] = f;
        for (std::size_t k = 0; k < b.size(); ++k) rem[shift + k] -= f * b[k];
        rem.pop_back();
        trim(rem);
    }
    trim(quot);
}

QPoly q_derivative(const QPoly& a) {
    QPoly r;
    for (std::size_t k = 1; k < a.size(); ++k) r.push_back(a[k] * static_cast<long>(k));
    trim(r);
    return r;
}

QPoly q_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly q, r;
        q_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational l = a.back();
        for (auto& x : a) x /= l;
    }
    return a;
}

Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

int integer_rank(std::vector<std::vector<Integer>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return static_cast<int>(rank);
}

IntPolynomial interpolate(const std::vector<Integer>& values) {
    // Newton divided differences at nodes 0..n-1, then expansion to the monomial basis.
    std::size_t n = values.size();
    std::vector<Rational> dd(values.begin(), values.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / Rational(static_cast<long>(level));
    QPoly acc;
    for (std::size_t i = n; i-- > 0;) {
        // acc = acc * (x - i) + dd[i]
        QPoly shifted = q_mul(acc, QPoly{Rational(-static_cast<long>(i)), Rational(1)});
        acc = q_add(shifted, QPoly{dd[i]});
    }
    std::vector<Integer> out;
    for (const auto& a : acc) {
        if (denominator(a) != 1) throw LemmaViolation("interpolated resultant is not integral");
        out.push_back(numerator(a));
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial compose_shift(const IntPolynomial& g, const Integer& x0) {
    // g(x0 - y) as a polynomial in y
    IntPolynomial base(std::vector<Integer>{x0, Integer(-1)});
    IntPolynomial acc;
    for (int k = g.degree(); k >= 0; --k) acc = acc * base + IntPolynomial(std::vector<Integer>{g.coeff(k)});
    return acc;
}

}  // namespace detail

std::optional<IntPolynomial> exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw ArgumentError("division by the zero polynomial");
    detail::QPoly q, r;
    detail::q_divmod(detail::to_q(a), detail::to_q(b), q, r);
    if (!r.empty()) return std::nullopt;
    std::vector<Integer> out;
    for (const auto& c : q) {
        if (denominator(c) != 1) return std::nullopt;
        out.push_back(numerator(c));
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    return detail::to_primitive(detail::q_gcd(detail::to_q(a), detail::to_q(b)));
}

Integer resultant(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    int m = a.degree(), n = b.degree();
    if (m == 0) return pow(a.lead(), static_cast<unsigned>(n));
    if (n == 0) return pow(b.lead(), static_cast<unsigned>(m));
    std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = b.coeff(n - k);
    return detail::bareiss_det(std::move(s));
}

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p) {
    using namespace detail;
    if (p.is_zero()) throw ArgumentError("squarefree decomposition of zero");
    std::vector<std::pair<IntPolynomial, int>> out;
    if (p.degree() == 0) return out;
    // Yun's algorithm over Q.
    QPoly f = to_q(p.primitive_part());
    QPoly fp = q_derivative(f);
    QPoly a = q_gcd(f, fp);
    QPoly b, c, d, rem;
    q_divmod(f, a, b, rem);
    q_divmod(fp, a, c, rem);
    d = q_sub(c, q_derivative(b));
    int i = 1;
    while (b.size() > 1) {
        a = q_gcd(b, d);
        QPoly nb, nc;
        q_divmod(b, a, nb, rem);
        q_divmod(d, a, nc, rem);
        if (a.size() > 1) out.emplace_back(to_primitive(a), i);
        b = std::move(nb);
        d = q_sub(nc, q_derivative(b));
        ++i;
    }
    return out;
}

}  // namespace cosmetic

#include "cosmetic/mp.hpp"

#include "cosmetic/errors.hpp"

#include <algorithm>
#include <cctype>

namespace cosmetic {

Real pi() {
    Real x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

Real ln2() {
    Real x;
    mpfr_const_log2(x.backend().data(), MPFR_RNDN);
    return x;
}

Complex two_pi_i() { return {Real(0), 2 * pi()}; }
Complex i_pi() { return {Real(0), pi()}; }

Real abs(const Complex& z) {
    Real r;
    mpfr_hypot(r.backend().data(), z.re.backend().data(), z.im.backend().data(), MPFR_RNDN);
    return r;
}

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex exp(const Complex& z) {
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) {
    if (z.re == 0 && z.im == 0) throw ArgumentError("log of zero");
    return {log(abs(z)), arg(z)};
}

Complex sqrt(const Complex& z) {
    if (z.re == 0 && z.im == 0) return {};
    Real m = abs(z);
    Real a = sqrt((m + abs(z.re)) / 2);
    if (z.re >= 0) return {a, z.im / (2 * a)};
    Real b = z.im < 0 ? Real(-a) : a;
    return {abs(z.im) / (2 * a), b};
}

Complex pow(const Complex& z, long n) {
    if (n < 0) return Complex(1) / pow(z, -n);
    Complex result(1), base = z;
    while (n) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

Real pow10(long e) { return pow(Real(10), Real(e)); }

Integer round_to_integer(const Real& x) {
    Real r = round(x);
    Integer n;
    mpfr_get_z(n.backend().data(), r.backend().data(), MPFR_RNDN);
    return n;
}

long round_to_long(const Real& x) { return round(x).convert_to<long>(); }

Real to_real(const Integer& n) {
    Real r;
    mpfr_set_z(r.backend().data(), n.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

std::string to_string(const Real& x, unsigned digits) {
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

Real parse_real(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ArgumentError("empty number");
    try {
        return Real(t);
    } catch (const std::exception&) {
        throw ArgumentError("cannot parse number '" + s + "'");
    }
}

Complex parse_complex(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ArgumentError("empty complex number");
    auto comma = t.find(',');
    if (comma != std::string::npos) return {parse_real(t.substr(0, comma)), parse_real(t.substr(comma + 1))};
    if (t.back() != 'i') return {parse_real(t), Real(0)};
    t.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag = [](const std::string& u) {
        if (u.empty() || u == "+") return Real(1);
        if (u == "-") return Real(-1);
        return parse_real(u);
    };
    if (split == std::string::npos) return {Real(0), imag(t)};
    return {parse_real(t.substr(0, split)), imag(t.substr(split))};
}

}  // namespace cosmetic

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace cosmetic {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Sets the default decimal precision of newly created Reals for the lifetime of
// the guard. The setting is process-global. Values created inside a guard keep
// their precision when copied, assigned or passed through unary functions, so
// inputs from outside a guard go through rebase().
class Precision {
public:
    explicit Precision(unsigned digits) : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~Precision() { Real::default_precision(saved_); }
    Precision(const Precision&) = delete;
    Precision& operator=(const Precision&) = delete;

    static unsigned current() { return Real::default_precision(); }

private:
    unsigned saved_;
};

struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(const Real& r) : re(r), im(0) {}
    Complex(const Real& r, const Real& i) : re(r), im(i) {}
    Complex(int r) : re(r), im(0) {}
    Complex(long r) : re(r), im(0) {}
    Complex(double r) : re(r), im(0) {}
    Complex(double r, double i) : re(r), im(i) {}

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }
    Complex& operator/=(const Complex& o) { *this = *this / o; return *this; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Complex operator*(const Real& s, const Complex& a) { return {a.re * s, a.im * s}; }
    friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        // scale by the larger component to keep the denominator well away from underflow
        if (abs(b.re) >= abs(b.im)) {
            Real r = b.im / b.re;
            Real d = b.re + b.im * r;
            return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
        }
        Real r = b.re / b.im;
        Real d = b.re * r + b.im;
        return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

Real pi();
Real ln2();
Complex two_pi_i();
Complex i_pi();

Real abs(const Complex& z);
Real norm(const Complex& z);
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
// Principal branch, imaginary part in (-pi, pi].
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, long n);
Complex polar(const Real& r, const Real& theta);

// 10^e at current precision.
Real pow10(long e);
// Nearest integer (ties away from zero).
Integer round_to_integer(const Real& x);
long round_to_long(const Real& x);
Real to_real(const Integer& n);
Real to_real(const Rational& q);

// Decimal rendering with the given number of significant digits.
std::string to_string(const Real& x, unsigned digits);
Real parse_real(const std::string& s);
// Accepts "a", "a+bi", "a-bi", "bi" and "a,b" forms.
Complex parse_complex(const std::string& s);

// Copy rounded to the current default precision (plain copies keep the source precision).
inline Real rebase(const Real& x) {
    Real r(x);
    r.precision(Precision::current());
    return r;
}
inline Complex rebase(const Complex& z) { return {rebase(z.re), rebase(z.im)}; }

}  // namespace cosmetic

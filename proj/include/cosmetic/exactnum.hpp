#pragma once

#include "cosmetic/mp.hpp"

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cosmetic {

// Dense integer polynomial, lowest degree first, no trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial monomial(const Integer& c, int k);
    // Grammar: c_k*x^k +/- ... +/- c_0 with integer c_i. Also accepts x, -x^2, 3*x, 7.
    static IntPolynomial parse(const std::string& text);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Integer>& coefficients() const { return c_; }
    Integer coeff(int k) const;
    const Integer& lead() const;

    Integer content() const;
    // Positive leading coefficient, unit content.
    IntPolynomial primitive_part() const;
    IntPolynomial derivative() const;

    Integer eval(const Integer& x) const;
    Complex eval(const Complex& x) const;
    std::string str() const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const Integer& s, const IntPolynomial& a);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }

private:
    void trim();
    std::vector<Integer> c_;
};

// a / b when the division is exact over the integers.
std::optional<IntPolynomial> exact_quotient(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);
Integer resultant(const IntPolynomial& a, const IntPolynomial& b);

// p = sign * content * prod f_i^e_i with primitive squarefree pairwise coprime f_i.
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p);
// Irreducible factors of a squarefree polynomial, by exact trial of root subsets.
std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& p);
bool is_irreducible(const IntPolynomial& p);

struct RootEnclosure {
    Complex center;
    Real radius;
};

// Certified enclosures for all roots of a squarefree polynomial; each disk holds exactly one root
// and has radius below 10^-digits * max(1, |root|).
std::vector<RootEnclosure> isolate_roots(const IntPolynomial& p, unsigned digits);
// All roots with multiplicity.
std::vector<Complex> roots(const IntPolynomial& p, unsigned digits);

Real mahler_log(const IntPolynomial& p, unsigned digits);

// An algebraic number: irreducible primitive minimal polynomial plus an isolating approximation.
class AlgebraicNumber {
public:
    static AlgebraicNumber rational(const Rational& q);
    static AlgebraicNumber integer(long n) { return rational(Rational(n)); }
    static constexpr unsigned kDefaultDigits = 60;
    // The root of p nearest to `near`; p may be reducible or carry repeated factors.
    static AlgebraicNumber root_of(const IntPolynomial& p, const Complex& near, unsigned digits = kDefaultDigits);

    const IntPolynomial& minpoly() const { return minpoly_; }
    int degree() const { return minpoly_.degree(); }
    const Complex& approx() const { return approx_; }
    const Real& radius() const { return radius_; }

    // The same root recomputed to the requested precision.
    Complex value(unsigned digits) const;
    std::vector<Complex> conjugates(unsigned digits) const;

    AlgebraicNumber pow(long n) const;
    AlgebraicNumber inverse() const;
    AlgebraicNumber operator-() const;
    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);

private:
    AlgebraicNumber(IntPolynomial m, Complex approx, Real radius, unsigned digits)
        : minpoly_(std::move(m)), approx_(std::move(approx)), radius_(std::move(radius)), digits_(digits) {}

    IntPolynomial minpoly_;
    Complex approx_;
    Real radius_;
    unsigned digits_;
};

Real height(const AlgebraicNumber& a, unsigned digits);
// Primitive irreducible minimal polynomials (positive leading coefficient) of every algebraic number with
// degree <= max_deg and height <= max_height, found from the coefficient bounds of the Mahler measure.
std::vector<IntPolynomial> northcott_enumerate(int max_deg, const Real& max_height, unsigned digits);
// Height of the point (1 : a_1 : ... : a_n), summed over the places of a common field.
Real height_tuple(const std::vector<AlgebraicNumber>& as, unsigned digits);

// Integer relation search on 1, x, ..., x^d for d up to max_deg. Returns the first
// irreducible polynomial found with a root at x, or nothing below the ceiling.
std::optional<IntPolynomial> min_poly_reconstruct(const Complex& x, int max_deg, unsigned digits);

// Q[x]/(base) for an irreducible base polynomial.
class NumberField {
public:
    explicit NumberField(IntPolynomial base);
    const IntPolynomial& base() const { return base_; }
    int degree() const { return base_.degree(); }
    // base divided by its leading coefficient
    const std::vector<Rational>& monic() const { return monic_; }

private:
    IntPolynomial base_;
    std::vector<Rational> monic_;
};

using FieldRef = std::shared_ptr<const NumberField>;
FieldRef make_field(const IntPolynomial& base);

class FieldElement {
public:
    // rep[k] is the coefficient of tau^k before reduction.
    FieldElement(FieldRef field, std::vector<Rational> rep);
    static FieldElement linear(FieldRef field, long a, long b);  // a + b*tau

    const FieldRef& field() const { return field_; }
    const std::vector<Rational>& rep() const { return rep_; }
    bool is_zero() const { return rep_.empty(); }

    FieldElement inverse() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    std::string str() const;

private:
    FieldRef field_;
    std::vector<Rational> rep_;
};

using FieldMatrix = std::vector<std::vector<FieldElement>>;
int field_rank(const FieldMatrix& m);

}  // namespace cosmetic

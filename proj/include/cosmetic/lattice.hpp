#pragma once

#include "cosmetic/exactnum.hpp"
#include "cosmetic/mp.hpp"

#include <string>
#include <vector>

namespace cosmetic {

using IntVector = std::vector<Integer>;

// Exact integral LLL with delta = 99/100. Throws ArgumentError on dependent rows.
std::vector<IntVector> lll_reduce(const std::vector<IntVector>& basis);

// Largest observed ratio prod|b_i| / prod|form_j| that siegel_basis promises to stay under.
inline constexpr double kSiegelConstant = 16.0;

// Integer basis of the kernel of `forms` in Z^n, LLL-reduced and sorted by length.
std::vector<IntVector> siegel_basis(const std::vector<IntVector>& forms, std::size_t n);
// prod |b_i| / prod |form_j|, in double precision.
double siegel_ratio(const std::vector<IntVector>& forms, const std::vector<IntVector>& basis);

// Exponent vectors of monomial equations x^a = 1 defining an algebraic subgroup of G_m^n.
class SubgroupLattice {
public:
    SubgroupLattice(std::vector<IntVector> rows, std::size_t n);

    const std::vector<IntVector>& rows() const { return rows_; }
    std::size_t ambient() const { return n_; }
    std::size_t codimension() const { return rows_.size(); }
    // Primitive row space, i.e. the subgroup is a torus.
    bool is_torus() const;
    // max over rows of |x^a - 1| at a point of (C^*)^n
    Real max_defect(const std::vector<Complex>& point) const;

private:
    std::vector<IntVector> rows_;
    std::size_t n_;
};

struct RelationCertificate {
    enum class Kind { NoneFound, Relation };
    Kind kind = Kind::NoneFound;
    IntVector coefficients;
    Real residual;

    bool found() const { return kind == Kind::Relation; }
    std::string kind_name() const { return found() ? "relation" : "none-found"; }
};

// Integer relation with |c_i| <= bound and |sum c_i x_i| < 10^(-digits/2). Complex inputs give
// paired real constraints. Coefficients are primitive with the first nonzero entry positive.
RelationCertificate integer_relation(const std::vector<Complex>& xs, const Integer& bound, unsigned digits);

inline const Integer kRelationCeiling = Integer(1000000);

struct Detection {
    bool value = false;
    RelationCertificate witness;
};

// Relation among 1, tau, tau^2 below the default ceiling. Witness has positive top coefficient.
Detection is_quadratic(const Complex& tau, unsigned digits);
// True when 1, t1, t2, t1*t2 admit no relation below the default ceiling.
Detection rational_independence(const Complex& t1, const Complex& t2, unsigned digits);
// (a, b, N) with a log t1 + b log t2 + N 2 pi i = 0, principal logarithms, |a|, |b| <= bound.
RelationCertificate multiplicative_dependence(const Complex& t1, const Complex& t2, const Integer& bound,
                                              unsigned digits);

}  // namespace cosmetic

#pragma once

#include "cosmetic/exactnum.hpp"

#include <vector>

namespace cosmetic::detail {

using QPoly = std::vector<Rational>;

QPoly to_q(const IntPolynomial& p);
void trim(QPoly& p);
IntPolynomial to_primitive(const QPoly& p);
QPoly q_mul(const QPoly& a, const QPoly& b);
QPoly q_add(const QPoly& a, const QPoly& b);
QPoly q_sub(const QPoly& a, const QPoly& b);
void q_divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem);
QPoly q_derivative(const QPoly& a);
// Monic gcd.
QPoly q_gcd(QPoly a, QPoly b);

Integer bareiss_det(std::vector<std::vector<Integer>> m);
int integer_rank(std::vector<std::vector<Integer>> m);
// Integer polynomial through (k, values[k]), k = 0..n-1.
IntPolynomial interpolate(const std::vector<Integer>& values);
// g(x0 - y) in the variable y.
IntPolynomial compose_shift(const IntPolynomial& g, const Integer& x0);

}  // namespace cosmetic::detail

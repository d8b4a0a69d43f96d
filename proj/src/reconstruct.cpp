#include "cosmetic/errors.hpp"
#include "cosmetic/exactnum.hpp"
#include "cosmetic/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace cosmetic {

std::optional<IntPolynomial> min_poly_reconstruct(const Complex& x, int max_deg, unsigned digits) {
    if (max_deg < 1) throw ArgumentError("max_deg must be positive");
    if (digits < 10u * static_cast<unsigned>(max_deg))
        throw PrecisionExhausted("min_poly_reconstruct needs at least 10 digits per degree");
    Precision guard(digits + 10);
    Complex v = rebase(x);
    // default ceiling 10^(digits / (2 max_deg)), capped per degree by the relation-search budget
    double ceiling_log = static_cast<double>(digits) / (2.0 * max_deg);
    std::vector<Complex> powers{Complex(1)};
    for (int d = 1; d <= max_deg; ++d) {
        powers.push_back(powers.back() * v);
        double budget_log = static_cast<double>(digits) / (4.0 * (d + 1));
        double lg = std::min(ceiling_log, budget_log);
        Integer bound = std::max(Integer(1), Integer(static_cast<long long>(std::floor(std::pow(10.0, std::min(lg, 18.0))))));
        RelationCertificate rel = integer_relation(powers, bound, digits);
        if (!rel.found() || rel.coefficients.back() == 0) continue;
        IntPolynomial p = IntPolynomial(rel.coefficients).primitive_part();
        // a lower-degree factor would have been found first; keep the factor that vanishes at x anyway
        IntPolynomial best = p;
        if (p.degree() > 1) {
            auto parts = factor_squarefree(p);
            Real bestv = -1;
            for (const auto& f : parts) {
                Real r = abs(f.eval(v));
                if (bestv < 0 || r < bestv) {
                    bestv = r;
                    best = f;
                }
            }
        }
        return best;
    }
    return std::nullopt;
}

}  // namespace cosmetic

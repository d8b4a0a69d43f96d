#include "cosmetic/ranklemmas.hpp"

#include "cosmetic/errors.hpp"
#include "linalg_internal.hpp"

#include <numeric>

namespace cosmetic {

namespace {

using Row = std::array<long, 4>;

long dot(const Row& r, const SlopeConstraint& s) { return -s.q * r[0] + s.p * r[1] - s.q2 * r[2] + s.p2 * r[3]; }

bool integer_rank_two(const Row& x, const Row& y) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (x[i] * y[j] - x[j] * y[i] != 0) return true;
    return false;
}

bool coprime(long p, long q) { return std::gcd(p, q) == 1; }

void check_lemma41_hypotheses(const TwistedMatrix& m, const SlopeConstraint& s) {
    if (!coprime(s.p, s.q) || !coprime(s.p2, s.q2)) throw HypothesisError("slopes must be coprime pairs");
    if (!check_constraints(m, s)) throw HypothesisError("rows violate the slope constraints");
    if (!integer_rank_two(m.rows[0], m.rows[1])) throw HypothesisError("integer matrix must have rank 2");
}

// Coefficients of the twisted determinant in 1, tau, tau^2.
std::array<long, 3> det_coefficients(const Row& r1, const Row& r2) {
    return {r1[0] * r2[2] - r1[2] * r2[0], r1[0] * r2[3] + r1[1] * r2[2] - r1[2] * r2[1] - r1[3] * r2[0],
            r1[1] * r2[3] - r1[3] * r2[1]};
}

std::string matrix_form(const TwistedMatrix& m) {
    bool equal = true, negated = true;
    for (const auto& r : m.rows) {
        equal = equal && r[0] == r[2] && r[1] == r[3];
        negated = negated && r[0] == -r[2] && r[1] == -r[3];
    }
    if (equal) return "columns_equal";
    if (negated) return "columns_negated";
    return "other";
}

Lemma41Class slope_relation(const SlopeConstraint& s) {
    if (s.p == s.p2 && s.q == s.q2) return Lemma41Class::EqualPair;
    if (s.p == -s.p2 && s.q == -s.q2) return Lemma41Class::NegatedPair;
    throw LemmaViolation("rank-one twisted matrix with slopes (" + std::to_string(s.p) + "," + std::to_string(s.q) +
                         ") and (" + std::to_string(s.p2) + "," + std::to_string(s.q2) + ") that are not equal up to sign");
}

std::vector<std::pair<long, long>> coprime_slopes(int bound, bool nonzero) {
    std::vector<std::pair<long, long>> out;
    for (long p = -bound; p <= bound; ++p)
        for (long q = -bound; q <= bound; ++q) {
            if (std::abs(p) + std::abs(q) > bound || !coprime(p, q)) continue;
            if (nonzero && (p == 0 || q == 0)) continue;
            out.emplace_back(p, q);
        }
    return out;
}

std::vector<Row> kernel_box(const SlopeConstraint& s, int bound) {
    std::vector<Row> out;
    Row r;
    for (r[0] = -bound; r[0] <= bound; ++r[0])
        for (r[1] = -bound; r[1] <= bound; ++r[1])
            for (r[2] = -bound; r[2] <= bound; ++r[2])
                for (r[3] = -bound; r[3] <= bound; ++r[3])
                    if (dot(r, s) == 0 && (r[0] || r[1] || r[2] || r[3])) out.push_back(r);
    return out;
}

int lemma42_rank(const Row& r1, const Row& r2) {
    long e1 = r1[0] * r2[2] - r1[2] * r2[0];
    long e2 = r1[1] * r2[2] - r1[2] * r2[1];
    long e3 = r1[0] * r2[3] - r1[3] * r2[0];
    long e4 = r1[1] * r2[3] - r1[3] * r2[1];
    if (e1 || e2 || e3 || e4) return 2;
    for (const auto& r : {r1, r2})
        for (long x : r)
            if (x) return 1;
    return 0;
}

}  // namespace

bool check_constraints(const TwistedMatrix& m, const SlopeConstraint& s) {
    return dot(m.rows[0], s) == 0 && dot(m.rows[1], s) == 0;
}

std::string to_string(Lemma41Class c) {
    switch (c) {
        case Lemma41Class::RankTwo: return "RankTwo";
        case Lemma41Class::EqualPair: return "EqualPair";
        case Lemma41Class::NegatedPair: return "NegatedPair";
    }
    return "unknown";
}

FieldRef plastic_field() {
    static const FieldRef field = make_field(IntPolynomial{-1, -1, 0, 1});
    return field;
}

Lemma41Result classify_lemma41(const TwistedMatrix& m, const SlopeConstraint& s, const FieldRef& field) {
    if (field->degree() < 3) throw HypothesisError("tau must have degree at least 3 (non-quadratic cusp shape)");
    check_lemma41_hypotheses(m, s);
    FieldMatrix fm;
    for (const auto& r : m.rows)
        fm.push_back({FieldElement::linear(field, r[0], r[1]), FieldElement::linear(field, r[2], r[3])});
    Lemma41Result res;
    res.rank = field_rank(fm);
    if (res.rank == 2) return res;
    res.matrix_form = matrix_form(m);
    res.classification = slope_relation(s);
    return res;
}

Lemma41Result classify_lemma41(const TwistedMatrix& m, const SlopeConstraint& s) {
    return classify_lemma41(m, s, plastic_field());
}

int verify_lemma42(const TwistedMatrix& m, const SlopeConstraint& s) {
    if (!s.p || !s.q || !s.p2 || !s.q2) throw HypothesisError("all slope entries must be nonzero");
    if (!coprime(s.p, s.q) || !coprime(s.p2, s.q2)) throw HypothesisError("slopes must be coprime pairs");
    if (!check_constraints(m, s)) throw HypothesisError("rows violate the slope constraints");
    if (!integer_rank_two(m.rows[0], m.rows[1])) throw HypothesisError("integer matrix must have rank 2");
    return lemma42_rank(m.rows[0], m.rows[1]);
}

Lemma41Sweep sweep_lemma41(int entry_bound, int slope_bound, long cross_check) {
    Lemma41Sweep out;
    auto slopes = coprime_slopes(slope_bound, false);
    for (const auto& [p, q] : slopes)
        for (const auto& [p2, q2] : slopes) {
            SlopeConstraint s{p, q, p2, q2};
            ++out.slope_pairs;
            auto rows = kernel_box(s, entry_bound);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = i + 1; j < rows.size(); ++j) {
                    if (!integer_rank_two(rows[i], rows[j])) continue;
                    TwistedMatrix m = TwistedMatrix::of(rows[i], rows[j]);
                    ++out.instances;
                    auto e = det_coefficients(rows[i], rows[j]);
                    int rank = (e[0] || e[1] || e[2]) ? 2 : 1;
                    std::string key;
                    if (rank == 2) {
                        ++out.rank_two;
                        key = "RankTwo";
                    } else {
                        try {
                            Lemma41Class c = slope_relation(s);
                            (c == Lemma41Class::EqualPair ? out.equal_pair : out.negated_pair)++;
                            key = to_string(c) + "/" + matrix_form(m);
                        } catch (const LemmaViolation&) {
                            ++out.violations;
                            key = "violation";
                        }
                    }
                    ++out.forms[key];
                    if (cross_check > 0 && out.instances % cross_check == 0) {
                        ++out.field_rank_checks;
                        try {
                            if (classify_lemma41(m, s).rank != rank) ++out.mismatches;
                        } catch (const LemmaViolation&) {
                            if (rank != 1) ++out.mismatches;
                        }
                    }
                }
        }
    return out;
}

Lemma42Sweep sweep_lemma42(int entry_bound, int slope_bound) {
    Lemma42Sweep out;
    auto slopes = coprime_slopes(slope_bound, true);
    for (const auto& [p, q] : slopes)
        for (const auto& [p2, q2] : slopes) {
            SlopeConstraint s{p, q, p2, q2};
            auto rows = kernel_box(s, entry_bound);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = i + 1; j < rows.size(); ++j) {
                    if (!integer_rank_two(rows[i], rows[j])) continue;
                    ++out.instances;
                    ++out.ranks[lemma42_rank(rows[i], rows[j])];
                }
        }
    return out;
}

TwistedMatrix random_constrained_matrix(const SlopeConstraint& s, std::mt19937_64& rng) {
    IntVector w{Integer(-s.q), Integer(s.p), Integer(-s.q2), Integer(s.p2)};
    auto basis = siegel_basis({w}, 4);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (;;) {
        TwistedMatrix m;
        for (auto& r : m.rows) {
            IntVector v(4, Integer(0));
            for (const auto& b : basis) {
                int c = coef(rng);
                for (int k = 0; k < 4; ++k) v[k] += c * b[k];
            }
            for (int k = 0; k < 4; ++k) r[k] = v[k].convert_to<long>();
        }
        if (integer_rank_two(m.rows[0], m.rows[1])) return m;
    }
}

Lemma42Sweep sample_lemma42(std::uint64_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> entry(-20, 20);
    auto slope = [&]() {
        for (;;) {
            long p = entry(rng), q = entry(rng);
            if (p && q && coprime(p, q)) return std::make_pair(p, q);
        }
    };
    Lemma42Sweep out;
    for (std::uint64_t n = 0; n < count; ++n) {
        auto [p, q] = slope();
        auto [p2, q2] = slope();
        SlopeConstraint s{p, q, p2, q2};
        TwistedMatrix m = random_constrained_matrix(s, rng);
        ++out.instances;
        ++out.ranks[verify_lemma42(m, s)];
    }
    return out;
}

std::vector<std::vector<Complex>> block_jacobian(const SubgroupLattice& h, const Complex& tau1, const Complex& tau2,
                                                 BlockPattern& pattern) {
    if (h.ambient() != 8 || h.codimension() != 4) throw ArgumentError("block Jacobian needs 4 rows over 8 variables");
    auto supported = [&](std::size_t row, std::array<int, 4> vars) {
        for (int v = 0; v < 8; ++v)
            if (h.rows()[row][v] != 0 && std::find(vars.begin(), vars.end(), v) == vars.end()) return false;
        return true;
    };
    auto matches = [&](std::array<int, 4> first, std::array<int, 4> second) {
        return supported(0, first) && supported(1, first) && supported(2, second) && supported(3, second);
    };
    if (matches({0, 1, 4, 5}, {2, 3, 6, 7}))
        pattern = BlockPattern::Split;
    else if (matches({0, 1, 6, 7}, {2, 3, 4, 5}))
        pattern = BlockPattern::Crossed;
    else
        throw ArgumentError("rows do not follow the split or crossed block pattern");
    // variable -> (column, uses tau)
    static const std::array<std::pair<int, int>, 8> layout{
        {{0, 0}, {0, 1}, {2, 0}, {2, 2}, {1, 0}, {1, 1}, {3, 0}, {3, 2}}};
    std::vector<std::vector<Complex>> j(4, std::vector<Complex>(4));
    for (int r = 0; r < 4; ++r)
        for (int v = 0; v < 8; ++v) {
            const Integer& e = h.rows()[r][v];
            if (e == 0) continue;
            auto [col, t] = layout[v];
            Complex factor = t == 0 ? Complex(1) : (t == 1 ? rebase(tau1) : rebase(tau2));
            j[r][col] += factor * to_real(e);
        }
    return j;
}

BlockRank jacobian_block_rank(const SubgroupLattice& h, const Complex& tau1, const Complex& tau2, unsigned digits) {
    Precision guard(digits + 10);
    BlockPattern pattern;
    auto j = block_jacobian(h, tau1, tau2, pattern);
    BlockRank out;
    out.rank = detail::numeric_rank(j, pow10(-static_cast<long>(digits) / 2));
    out.predicted_dim = 4 - out.rank;
    return out;
}

}  // namespace cosmetic

#pragma once

#include "cosmetic/exactnum.hpp"
#include "cosmetic/lattice.hpp"
#include "cosmetic/mp.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace cosmetic {

// Two integer rows (a, b, c, d). Row i gives the twisted entries a_i + b_i tau and c_i + d_i tau,
// where a, c are exponents of M, M' and b, d of L, L'.
struct TwistedMatrix {
    std::array<std::array<long, 4>, 2> rows{};

    static TwistedMatrix of(const std::array<long, 4>& r1, const std::array<long, 4>& r2) {
        TwistedMatrix m;
        m.rows = {r1, r2};
        return m;
    }
};

// Slopes (p, q) and (p', q').
struct SlopeConstraint {
    long p = 1, q = 0, p2 = 1, q2 = 0;
};

// -q a + p b - q' c + p' d = 0 on both rows.
bool check_constraints(const TwistedMatrix& m, const SlopeConstraint& s);

enum class Lemma41Class { RankTwo, EqualPair, NegatedPair };
std::string to_string(Lemma41Class c);

struct Lemma41Result {
    Lemma41Class classification = Lemma41Class::RankTwo;
    int rank = 2;
    // Observed shape of a rank-one matrix: "columns_equal", "columns_negated" or "other"; empty for rank two.
    std::string matrix_form;
};

// Field with tau a root of x^3 - x - 1.
FieldRef plastic_field();

// Rank of [[a1 + b1 tau, c1 + d1 tau], [a2 + b2 tau, c2 + d2 tau]] over Q(tau) and the slope relation it forces.
// Throws HypothesisError when tau is quadratic, the constraints fail or the integer rank is not 2;
// LemmaViolation on a rank-one matrix with neither slope relation.
Lemma41Result classify_lemma41(const TwistedMatrix& m, const SlopeConstraint& s, const FieldRef& field);
Lemma41Result classify_lemma41(const TwistedMatrix& m, const SlopeConstraint& s);

// Rank of [[a1 + b1 t1, c1 + d1 t2], [a2 + b2 t1, c2 + d2 t2]] with 1, t1, t2, t1 t2 treated as a basis.
// Throws HypothesisError when a slope entry is zero, the constraints fail or the integer rank is not 2.
int verify_lemma42(const TwistedMatrix& m, const SlopeConstraint& s);

struct Lemma41Sweep {
    std::uint64_t slope_pairs = 0;
    std::uint64_t instances = 0;
    std::uint64_t rank_two = 0;
    std::uint64_t equal_pair = 0;
    std::uint64_t negated_pair = 0;
    std::uint64_t violations = 0;
    std::uint64_t field_rank_checks = 0;  // instances also run through classify_lemma41
    std::uint64_t mismatches = 0;         // cross-checks that disagreed with the coefficient test
    std::map<std::string, std::uint64_t> forms;  // (classification/matrix_form) -> count
};

// Every deduplicated pair of rows with entries in [-bound, bound] orthogonal to the constraint vector,
// for every ordered pair of coprime slopes with |p| + |q| <= slope_bound. Determinants are tested through
// their coefficients in 1, tau, tau^2, which is exact for a cubic tau; every `cross_check`-th instance is
// also run through classify_lemma41.
Lemma41Sweep sweep_lemma41(int entry_bound, int slope_bound, long cross_check = 97);

struct Lemma42Sweep {
    std::uint64_t instances = 0;
    std::map<int, std::uint64_t> ranks;
};

// Exhaustive run over the same space restricted to slopes with no zero entry.
Lemma42Sweep sweep_lemma42(int entry_bound, int slope_bound);
// Random instances: rows are small combinations of a kernel basis of the constraint vector.
Lemma42Sweep sample_lemma42(std::uint64_t count, std::uint64_t seed);

// Random rank-2 instance satisfying the constraints of s.
TwistedMatrix random_constrained_matrix(const SlopeConstraint& s, std::mt19937_64& rng);

struct BlockRank {
    int rank = 0;
    int predicted_dim = 0;  // 4 - rank
};

// Variables are ordered (M1, L1, M2, L2, M1', L1', M2', L2'); near the complete structure
// log M_i = u_i and log L_i = tau_i u_i, so a monomial row contributes a + b tau_i to the u_i column.
// Accepts the split pattern (rows 0-1 on {M1,L1,M1',L1'}, rows 2-3 on {M2,L2,M2',L2'}) or the crossed
// pattern (rows 0-1 on {M1,L1,M2',L2'}, rows 2-3 on {M2,L2,M1',L1'}); anything else is an ArgumentError.
BlockRank jacobian_block_rank(const SubgroupLattice& h, const Complex& tau1, const Complex& tau2,
                              unsigned digits = 40);

enum class BlockPattern { Split, Crossed };
// Numeric 4x4 Jacobian in columns (u1, u1', u2, u2').
std::vector<std::vector<Complex>> block_jacobian(const SubgroupLattice& h, const Complex& tau1, const Complex& tau2,
                                                 BlockPattern& pattern);

}  // namespace cosmetic

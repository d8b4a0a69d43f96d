#pragma once

#include "cosmetic/geometry.hpp"
#include "cosmetic/lattice.hpp"
#include "cosmetic/mp.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cosmetic {

enum class ScanMode { OrientationPreserving, OrientationReversing };
std::string to_string(ScanMode m);
ScanMode parse_scan_mode(const std::string& s);  // "op" or "or"

// One scanned filling. For one cusp `t` has a single entry.
struct HolonomyEntry {
    std::vector<Slope> slopes;
    std::vector<Complex> t;
    Real residual;        // solver residual (edge rows and Dehn equations in log form)
    Real dehn_residual;   // max |exp(p v + q u) - 1|
    Real completion_gap;  // max |t - t from the shifted completion|
};

struct ScanFailure {
    std::vector<Slope> slopes;
    std::string reason;
};

struct Collision {
    std::vector<Slope> a;
    std::vector<Slope> b;
    std::string matching;  // "direct", "conjugate" or "swapped"
    Real distance;         // at the scan precision
    Real recheck;          // at twice the scan precision
    bool survived = false;
    bool explained = false;
    std::string explanation;
};

struct DependenceHit {
    std::vector<Slope> slopes;
    IntVector coefficients;
    std::string explanation;  // empty when no symmetry accounts for it
};

// 2x2 integer matrix acting on slope vectors (p, q), row-major.
using PeripheralMap = std::array<long, 4>;
Slope apply_map(const PeripheralMap& m, const Slope& s);  // result normalized up to sign

// An orientation-preserving isometry exchanging the two cusps: slopes on cusp 1 go to `to_second`
// applied on cusp 2, slopes on cusp 2 go to `to_first` applied on cusp 1.
struct CuspExchange {
    PeripheralMap to_second;
    PeripheralMap to_first;
    // Filling (s1, s2) is isometric to image(s1, s2) with the holonomies exchanged.
    std::vector<Slope> image(const std::vector<Slope>& s) const;
};

// Searches maps in SL(2, Z) with entries up to `bound` whose action matches the cusp shapes, then
// confirms a candidate pair by comparing one filling with its image.
std::optional<CuspExchange> find_cusp_exchange(const GluingSystem& gs, const ShapeAssignment& complete,
                                               unsigned digits, long bound = 3);

struct LevelMean {
    long level = 0;  // |p| + |q|, the smallest over the cusps
    Real mean;         // mean of max_i |t_i - 1|
    Real mean_length;  // mean of max_i log|t_i|, the real core length
    long count = 0;
};

struct CollisionReport {
    std::string manifold;
    std::string mode;
    long range = 0;
    Real tolerance;
    unsigned digits = 0;
    std::vector<HolonomyEntry> table;
    std::vector<ScanFailure> failures;
    std::vector<Collision> collisions;  // survived re-verification
    std::vector<Collision> artifacts;   // dissolved under re-verification
    std::vector<DependenceHit> dependences;
    long dependence_bound = 0;
    std::string symmetry;  // cusp exchange used for normalization, if any
    Real min_gap;  // smallest distance between holonomies that is not a surviving collision
    std::vector<LevelMean> level_means;
    bool monotone = true;         // means of |t - 1| nonincreasing from level 10 on
    bool length_monotone = true;  // same for the core length

    long unexplained() const;
    std::string to_json() const;
    std::string to_csv() const;
};

// Normalized coprime slopes (p > 0, or p = 0 and q = 1) with lo <= |p| + |q| <= hi, ordered by (|p|+|q|, p, q).
std::vector<Slope> enumerate_slopes(long lo, long hi);

// Holonomy comparisons among all slopes with 5 <= |p| + |q| <= max_coeff on a one-cusped manifold.
CollisionReport scan_cosmetic(const GluingSystem& gs, long max_coeff, const Real& tol, ScanMode mode,
                              unsigned digits);

// Unordered holonomy sets over pairs of slopes on a two-cusped manifold. When an isometry exchanges the cusps,
// each coefficient pair and its image are enumerated once. Also runs multiplicative_dependence(t1, t2) at `dependence_bound`.
CollisionReport scan_two_cusp(const GluingSystem& gs, long max_coeff, const Real& tol, unsigned digits,
                              long dependence_bound = 50);

// Collision detection over a precomputed table (used by both scans). `recompute` re-solves an entry at a
// higher precision; explained(a, b) names an expected coincidence or returns "".
using Recompute = std::function<HolonomyEntry(const std::vector<Slope>&, unsigned digits)>;
using Explainer = std::function<std::string(const std::vector<Slope>&, const std::vector<Slope>&, const std::string&)>;
void detect_collisions(CollisionReport& report, ScanMode mode, const Recompute& recompute, const Explainer& explain);

// Two shortest kernel vectors of (-q, p, -q', p') over the exponents of (M, L, M', L').
SubgroupLattice siegel_subgroup_for_point(const Slope& a, const Slope& b);
// max over rows of |M^x1 L^x2 M'^x3 L'^x4 - 1| with M = exp(v), L = exp(u) from the two filled points.
Real subgroup_defect(const SubgroupLattice& h, const FilledPoint& a, const FilledPoint& b);

}  // namespace cosmetic

#pragma once

#include "cosmetic/mp.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cosmetic {

// One monomial row: sign * prod z_j^a_j (1 - z_j)^b_j.
struct GluingRow {
    std::vector<int> a;
    std::vector<int> b;
    int sign = 1;
};

struct GluingSystem {
    std::string name;
    int n = 0;
    int k = 0;
    std::vector<GluingRow> edges;
    std::vector<GluingRow> meridians;
    std::vector<GluingRow> longitudes;
    // n - k edge rows with independent exponent vectors, chosen greedily in file order.
    std::vector<int> independent_edges;
};

// Validates the schema and the rank count. Throws MalformedSystem.
GluingSystem parse_gluing_system(const std::string& doc);
GluingSystem load_gluing_system(const std::string& path);

// Shapes with the logarithm branches that were tracked to reach them. The constants are the
// multiples of i*pi fixed at the complete structure, so that every row vanishes there.
struct ShapeAssignment {
    std::vector<Complex> z;
    std::vector<Complex> log_z;
    std::vector<Complex> log_1mz;
    std::vector<Complex> edge_const;
    std::vector<Complex> meridian_const;
    std::vector<Complex> longitude_const;
    Real residual;
};

struct Slope {
    long p = 1;
    long q = 0;

    // Throws ArgumentError unless gcd(p, q) = 1.
    static Slope make(long p, long q);
    // (r, s) with p r - q s = 1.
    std::pair<long, long> completion() const;
    friend bool operator==(const Slope&, const Slope&) = default;
};

struct FilledPoint {
    ShapeAssignment shapes;
    std::vector<Slope> slopes;
    std::vector<Complex> u;
    std::vector<Complex> v;
    std::vector<Complex> t;
    Real residual;
    unsigned digits = 0;
};

// Newton from z_v = exp(i pi/3) on the edge rows plus u_i = 0. Throws NoConvergence.
ShapeAssignment solve_complete(const GluingSystem& gs, unsigned digits);

// (u, v): longitude and meridian log-holonomies on the tracked branch.
std::pair<std::vector<Complex>, std::vector<Complex>> peripheral_logs(const GluingSystem& gs,
                                                                       const ShapeAssignment& z);

// Moves the branches of `from` to new shapes. Throws StepSizeError when a logarithm jumps.
ShapeAssignment track_branches(const GluingSystem& gs, const ShapeAssignment& from, std::vector<Complex> z);

// Continuation from the complete structure to p v + q u = 2 pi i on every cusp.
FilledPoint solve_filled(const GluingSystem& gs, const std::vector<Slope>& slopes, unsigned digits);
FilledPoint solve_filled(const GluingSystem& gs, const ShapeAssignment& complete, const std::vector<Slope>& slopes,
                         unsigned digits);

// Continuation from the complete structure to prescribed longitude logs u.
ShapeAssignment solve_deformation(const GluingSystem& gs, const ShapeAssignment& complete,
                                  const std::vector<Complex>& u, unsigned digits);

// exp(s v + r u) with p r - q s = 1, inverted when it lies inside the unit circle.
Complex core_holonomy(const Complex& u, const Complex& v, const Slope& slope);
// Same quantity from the shifted completion (r + q, s + p).
Complex core_holonomy_consistency(const FilledPoint& fp, int i);
// max_i |exp(p_i v_i + q_i u_i) - 1|
Real dehn_residual(const FilledPoint& fp);

// dv_i/du_j at the complete structure by implicit differentiation.
std::vector<std::vector<Complex>> cusp_shape_matrix(const GluingSystem& gs, const ShapeAssignment& complete);
std::vector<Complex> cusp_shapes(const GluingSystem& gs, const ShapeAssignment& complete);

// Infinity-norm condition number of the Jacobian of (edge rows, u) at z.
Real jacobian_condition(const GluingSystem& gs, const ShapeAssignment& z);

// Decimal (re, im) pairs, for error payloads and reports.
std::vector<std::pair<std::string, std::string>> to_strings(const std::vector<Complex>& zs, unsigned digits);

}  // namespace cosmetic

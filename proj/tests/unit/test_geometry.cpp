#include "cosmetic/errors.hpp"
#include "cosmetic/geometry.hpp"
#include "test_support.hpp"

#include <json.hpp>

#include <map>

using namespace cosmetic;
using testing_support::close;
using testing_support::fixture;

namespace {

const GluingSystem& gluing(const std::string& name) {
    static std::map<std::string, GluingSystem> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, load_gluing_system(fixture(name + ".json"))).first;
    return it->second;
}

const ShapeAssignment& complete(const std::string& name) {
    static std::map<std::string, ShapeAssignment> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, solve_complete(gluing(name), 60)).first;
    return it->second;
}

nlohmann::json expectations() {
    return nlohmann::json::parse(testing_support::read_file(fixture("oracle_expectations.json")));
}

Complex parse_pair(const nlohmann::json& j) {
    return {parse_real(j[0].get<std::string>()), parse_real(j[1].get<std::string>())};
}

// Independent Newton oracle for the figure-eight complete structure, written against the raw
// fixture rows: z1^2 z2^-1 (1-z1)^-1 (1-z2)^2 = 1 and z2 = z1 reduce to z^2 - z + 1 = 0.
Complex figure_eight_oracle() {
    Complex z(Real("0.4"), Real("0.9"));
    for (int it = 0; it < 60; ++it) {
        Complex f = z * z - z + Complex(1);
        Complex df = Complex(2) * z - Complex(1);
        z -= f / df;
    }
    return z;
}

}  // namespace

TEST(GluingSystemTest, ParsesFixtures) {
    const auto& m004 = gluing("m004");
    EXPECT_EQ(m004.n, 2);
    EXPECT_EQ(m004.k, 1);
    EXPECT_EQ(m004.edges.size(), 2u);
    EXPECT_EQ(m004.independent_edges.size(), 1u);
    const auto& m129 = gluing("m129");
    EXPECT_EQ(m129.k, 2);
    EXPECT_EQ(static_cast<int>(m129.independent_edges.size()), m129.n - 2);
}

TEST(GluingSystemTest, RejectsMalformedDocuments) {
    auto doc = nlohmann::json::parse(testing_support::read_file(fixture("m004.json")));
    auto bad_length = doc;
    bad_length["edge_equations"][0]["theta1"] = {1, 2, 3};
    EXPECT_THROW(parse_gluing_system(bad_length.dump()), MalformedSystem);
    auto bad_sign = doc;
    bad_sign["meridians"][0]["sign"] = 2;
    EXPECT_THROW(parse_gluing_system(bad_sign.dump()), MalformedSystem);
    auto missing = doc;
    missing.erase("longitudes");
    EXPECT_THROW(parse_gluing_system(missing.dump()), MalformedSystem);
    auto rank = doc;
    rank["cusps"] = 2;
    rank["meridians"].push_back(rank["meridians"][0]);
    rank["longitudes"].push_back(rank["longitudes"][0]);
    EXPECT_THROW(parse_gluing_system(rank.dump()), MalformedSystem);
    EXPECT_THROW(parse_gluing_system("{not json"), MalformedSystem);
}

TEST(SlopeTest, CoprimeAndCompletion) {
    EXPECT_THROW(Slope::make(2, 4), ArgumentError);
    EXPECT_THROW(Slope::make(0, 0), ArgumentError);
    for (long p = -9; p <= 9; ++p)
        for (long q = -9; q <= 9; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto [r, s] = Slope::make(p, q).completion();
            EXPECT_EQ(p * r - q * s, 1) << p << "," << q;
        }
    auto [r, s] = Slope::make(1, 0).completion();
    EXPECT_EQ(r, 1);
    EXPECT_EQ(s, 0);
}

TEST(CompleteStructureTest, FigureEightIsRegular) {
    const auto& z = complete("m004");
    Precision guard(80);
    Complex oracle = figure_eight_oracle();
    for (const auto& zv : z.z) EXPECT_TRUE(close(zv, oracle, 30));
    EXPECT_LT(z.residual, pow10(-50));
    auto [u, v] = peripheral_logs(gluing("m004"), z);
    EXPECT_TRUE(close(u[0], Complex(0), 50));
    EXPECT_TRUE(close(v[0], Complex(0), 50));
    EXPECT_LT(jacobian_condition(gluing("m004"), z), Real(1e10));
}

TEST(CompleteStructureTest, MatchesOracleShapes) {
    auto ex = expectations();
    for (const char* name : {"m004", "m015", "m129"}) {
        const auto& z = complete(name);
        Precision guard(80);
        ASSERT_EQ(z.z.size(), ex[name]["shapes"].size());
        for (std::size_t j = 0; j < z.z.size(); ++j) {
            EXPECT_GT(z.z[j].im, 0);
            EXPECT_TRUE(close(z.z[j], parse_pair(ex[name]["shapes"][j]), 50)) << name << " " << j;
        }
        EXPECT_LT(z.residual, pow10(-50)) << name;
        EXPECT_LT(jacobian_condition(gluing(name), z), Real(1e10)) << name;
    }
}

TEST(CompleteStructureTest, InconsistentSignDoesNotConverge) {
    auto doc = nlohmann::json::parse(testing_support::read_file(fixture("m004.json")));
    doc["edge_equations"][0]["sign"] = -1;
    doc["edge_equations"][1]["sign"] = -1;
    auto gs = parse_gluing_system(doc.dump());
    EXPECT_THROW(solve_complete(gs, 60), NoConvergence);
}

TEST(CuspShapeTest, ConjugateReciprocalOfOracleConvention) {
    // the oracle toolkit measures the cusp torus with the opposite orientation, so dv/du = 1 / conj(its shape)
    auto ex = expectations();
    for (const char* name : {"m004", "m015", "m129"}) {
        auto tau = cusp_shapes(gluing(name), complete(name));
        Precision guard(80);
        ASSERT_EQ(tau.size(), ex[name]["snappy_cusp_shapes"].size());
        for (std::size_t i = 0; i < tau.size(); ++i)
            EXPECT_TRUE(close(tau[i] * conj(parse_pair(ex[name]["snappy_cusp_shapes"][i])), Complex(1), 40)) << name;
    }
}

TEST(CuspShapeTest, RatioOfLogsNearCompleteStructure) {
    const auto& gs = gluing("m004");
    auto tau = cusp_shapes(gs, complete("m004"));
    Precision guard(60);
    Real prev = 1;
    for (const char* r : {"0.1", "0.05", "0.025"}) {
        Complex u = polar(Real(r), Real("0.3"));
        auto s = solve_deformation(gs, complete("m004"), {u}, 60);
        auto [uu, vv] = peripheral_logs(gs, s);
        EXPECT_TRUE(close(uu[0], u, 45));
        Real err = abs(vv[0] / u - tau[0]);
        // O(|u|^2): halving u quarters the error
        EXPECT_LT(err, Real(10) * Real(r) * Real(r));
        if (prev < 1) EXPECT_LT(err, prev / 3);
        prev = err;
    }
}

TEST(FilledTest, MatchesOracleFillings) {
    auto ex = expectations();
    for (const char* name : {"m004", "m015", "m129"}) {
        for (const auto& f : ex[name]["fillings"]) {
            std::vector<Slope> slopes;
            for (const auto& s : f["slopes"]) slopes.push_back(Slope::make(s[0].get<long>(), s[1].get<long>()));
            auto fp = solve_filled(gluing(name), complete(name), slopes, 60);
            Precision guard(80);
            for (std::size_t j = 0; j < fp.shapes.z.size(); ++j)
                EXPECT_TRUE(close(fp.shapes.z[j], parse_pair(f["shapes"][j]), 45)) << name << " " << f["slopes"];
            for (std::size_t i = 0; i < fp.t.size(); ++i) {
                EXPECT_GT(abs(fp.t[i]), 1);
                EXPECT_TRUE(close(log(fp.t[i]), parse_pair(f["core_lengths"][i]), 45)) << name << " " << f["slopes"];
            }
            EXPECT_LT(fp.residual, pow10(-50));
            EXPECT_LT(dehn_residual(fp), pow10(-50));
        }
    }
}

TEST(FilledTest, DehnEquationRoundTripsAndCompletionShiftIsInvariant) {
    const auto& gs = gluing("m004");
    for (auto [p, q] : std::vector<std::pair<long, long>>{{5, 1}, {7, 2}, {-3, 4}, {1, 9}, {11, -3}, {6, 5}}) {
        auto fp = solve_filled(gs, complete("m004"), {Slope::make(p, q)}, 60);
        Precision guard(60);
        auto [u, v] = peripheral_logs(gs, fp.shapes);
        EXPECT_TRUE(close(Complex(Real(p)) * v[0] + Complex(Real(q)) * u[0], two_pi_i(), 50));
        EXPECT_TRUE(close(u[0], fp.u[0], 55));
        EXPECT_TRUE(close(core_holonomy_consistency(fp, 0), fp.t[0], 48)) << p << "," << q;
        EXPECT_GT(abs(fp.t[0]), 1);
    }
}

TEST(FilledTest, MeridianSlopeGivesExpOfLongitudeLog) {
    // p r - q s = 1 with (p, q) = (1, 0) forces r = 1, s = 0, so t = exp(u) up to inversion
    Precision guard(40);
    Complex u(Real("0.3"), Real("0.2")), v(Real("-0.1"), Real("0.7"));
    EXPECT_TRUE(close(core_holonomy(u, v, Slope::make(1, 0)), exp(u), 35));
    EXPECT_TRUE(close(core_holonomy(-u, v, Slope::make(1, 0)), exp(u), 35));
}

TEST(FilledTest, TwoCuspFillingSatisfiesBothEquations) {
    const auto& gs = gluing("m129");
    auto fp = solve_filled(gs, complete("m129"), {Slope::make(5, 1), Slope::make(-2, 7)}, 60);
    Precision guard(60);
    for (int i = 0; i < 2; ++i) {
        EXPECT_TRUE(close(Complex(Real(fp.slopes[i].p)) * fp.v[i] + Complex(Real(fp.slopes[i].q)) * fp.u[i], two_pi_i(), 50));
        EXPECT_TRUE(close(core_holonomy_consistency(fp, i), fp.t[i], 48));
        EXPECT_GT(abs(fp.t[i]), 1);
    }
}

TEST(FilledTest, FamiliesConvergeMonotonically) {
    const auto& gs = gluing("m004");
    for (bool meridian_first : {true, false}) {
        Real prev_t = 100, prev_u = 100;
        for (long n : {10, 12, 16, 20, 30, 40}) {
            Slope s = meridian_first ? Slope::make(n, 1) : Slope::make(1, n);
            auto fp = solve_filled(gs, complete("m004"), {s}, 60);
            Precision guard(60);
            Real dt = abs(fp.t[0] - Complex(1)), du = abs(exp(fp.u[0]) - Complex(1));
            EXPECT_LT(dt, prev_t) << n;
            EXPECT_LT(du, prev_u) << n;
            prev_t = dt;
            prev_u = du;
        }
    }
}

TEST(FilledTest, DiagonalFamilyShrinksTheCoreLength) {
    // along (n, n+1) the torsion need not settle, but the real length log|t| does
    const auto& gs = gluing("m004");
    Real prev = 100;
    for (long n : {10, 12, 15, 20}) {
        auto fp = solve_filled(gs, complete("m004"), {Slope::make(n, n + 1)}, 60);
        Precision guard(60);
        Real len = log(abs(fp.t[0]));
        EXPECT_LT(len, prev) << n;
        prev = len;
    }
}

#include "cosmetic/errors.hpp"
#include "cosmetic/scanner.hpp"
#include "test_support.hpp"

#include <json.hpp>

#include <numeric>
#include <set>

using namespace cosmetic;
using testing_support::fixture;

namespace {

using SlopePair = std::pair<long, long>;

std::set<SlopePair> slope_set(const std::vector<HolonomyEntry>& table) {
    std::set<SlopePair> out;
    for (const auto& e : table) out.insert({e.slopes[0].p, e.slopes[0].q});
    return out;
}

long level(const Slope& s) { return std::abs(s.p) + std::abs(s.q); }

double norm(const IntVector& v) {
    Integer s = 0;
    for (const auto& x : v) s += x * x;
    return std::sqrt(s.convert_to<double>());
}

Integer dot(const IntVector& a, const std::vector<long>& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

TEST(EnumerateSlopesTest, MatchesBruteForce) {
    auto slopes = enumerate_slopes(1, 15);
    std::set<SlopePair> seen;
    for (const auto& s : slopes) seen.insert({s.p, s.q});
    EXPECT_EQ(seen.size(), slopes.size());
    std::set<SlopePair> brute;
    for (long p = -15; p <= 15; ++p)
        for (long q = -15; q <= 15; ++q) {
            if (std::gcd(p, q) != 1 || std::abs(p) + std::abs(q) > 15) continue;
            long np = p, nq = q;
            if (np < 0 || (np == 0 && nq < 0)) np = -np, nq = -nq;
            brute.insert({np, nq});
        }
    EXPECT_EQ(seen, brute);
    for (std::size_t i = 1; i < slopes.size(); ++i) EXPECT_LE(level(slopes[i - 1]), level(slopes[i]));
    for (const auto& s : enumerate_slopes(5, 9)) {
        EXPECT_GE(level(s), 5);
        EXPECT_LE(level(s), 9);
    }
}

TEST(ScanModeTest, Parsing) {
    EXPECT_EQ(parse_scan_mode("op"), ScanMode::OrientationPreserving);
    EXPECT_EQ(parse_scan_mode("or"), ScanMode::OrientationReversing);
    EXPECT_EQ(parse_scan_mode(to_string(ScanMode::OrientationReversing)), ScanMode::OrientationReversing);
    EXPECT_THROW(parse_scan_mode("sideways"), ArgumentError);
}

TEST(ScanCosmeticTest, FigureEightPreservingModeIsClean) {
    auto gs = load_gluing_system(fixture("m004.json"));
    EXPECT_THROW(scan_cosmetic(gs, 7, pow10(-30), ScanMode::OrientationPreserving, 60), ArgumentError);
    auto report = scan_cosmetic(gs, 12, pow10(-30), ScanMode::OrientationPreserving, 60);
    EXPECT_TRUE(report.collisions.empty());
    EXPECT_EQ(report.unexplained(), 0);
    // every slope is either tabulated or listed as a failure; only the exceptional (4, +-1) fail
    std::set<SlopePair> covered = slope_set(report.table);
    for (const auto& f : report.failures) {
        covered.insert({f.slopes[0].p, f.slopes[0].q});
        EXPECT_EQ(f.slopes[0].p, 4);
        EXPECT_EQ(std::abs(f.slopes[0].q), 1);
    }
    EXPECT_EQ(covered.size(), enumerate_slopes(5, 12).size());
    Precision guard(60);
    for (const auto& e : report.table) {
        EXPECT_LT(e.dehn_residual, pow10(-50));
        EXPECT_LT(e.completion_gap, pow10(-48));
        EXPECT_GT(abs(e.t[0]), 1);
    }
    EXPECT_GT(report.min_gap, pow10(-30));
    EXPECT_FALSE(report.level_means.empty());
}

TEST(ScanCosmeticTest, FigureEightReversingModeFlagsConjugateFamily) {
    auto gs = load_gluing_system(fixture("m004.json"));
    auto report = scan_cosmetic(gs, 12, pow10(-30), ScanMode::OrientationReversing, 60);
    std::set<std::pair<SlopePair, SlopePair>> flagged;
    for (const auto& c : report.collisions) {
        EXPECT_EQ(c.matching, "conjugate");
        EXPECT_TRUE(c.explained);
        SlopePair a{c.a[0].p, c.a[0].q}, b{c.b[0].p, c.b[0].q};
        flagged.insert({std::min(a, b), std::max(a, b)});
    }
    std::set<std::pair<SlopePair, SlopePair>> expected;
    auto slopes = slope_set(report.table);
    for (const auto& [p, q] : slopes)
        if (q > 0 && slopes.count({p, -q})) expected.insert({{p, -q}, {p, q}});
    EXPECT_EQ(flagged, expected);
    EXPECT_EQ(report.unexplained(), 0);
}

TEST(DetectCollisionsTest, PlantedDuplicateAndArtifact) {
    // t(p, q) = exp(sqrt(p) + i sqrt(q)) is injective on these slopes; two entries are overwritten
    auto holonomy = [](const Slope& s, unsigned digits) {
        Precision guard(digits);
        long p = s.p, q = s.q;
        if (p == 9 && q == 2) p = 7, q = 3;  // planted exact duplicate of (7, 3)
        Complex t = exp(Complex(sqrt(Real(p)), sqrt(Real(std::abs(q)))));
        if (s.p == 11 && s.q == 1) t = exp(Complex(sqrt(Real(5)), Real(1))) + Complex(pow10(-20));
        HolonomyEntry e;
        e.slopes = {s};
        e.t = {t};
        e.residual = e.dehn_residual = e.completion_gap = Real(0);
        return e;
    };
    CollisionReport report;
    report.digits = 30;
    report.tolerance = pow10(-15);
    for (const auto& s : enumerate_slopes(5, 12))
        if (s.q > 0) report.table.push_back(holonomy(s, 30));
    Recompute recompute = [&](const std::vector<Slope>& ss, unsigned d) { return holonomy(ss[0], d); };
    detect_collisions(report, ScanMode::OrientationPreserving, recompute, nullptr);
    ASSERT_EQ(report.collisions.size(), 1u);
    const auto& c = report.collisions[0];
    std::set<SlopePair> pair{{c.a[0].p, c.a[0].q}, {c.b[0].p, c.b[0].q}};
    EXPECT_EQ(pair, (std::set<SlopePair>{{7, 3}, {9, 2}}));
    EXPECT_FALSE(c.explained);
    EXPECT_EQ(report.unexplained(), 1);
    // (5, 1) against the shifted (11, 1) sits inside the tolerance but dissolves under re-verification
    ASSERT_EQ(report.artifacts.size(), 1u);
    std::set<SlopePair> art{{report.artifacts[0].a[0].p, report.artifacts[0].a[0].q},
                            {report.artifacts[0].b[0].p, report.artifacts[0].b[0].q}};
    EXPECT_EQ(art, (std::set<SlopePair>{{5, 1}, {11, 1}}));
}

TEST(ScanTwoCuspTest, WhiteheadCollisionsAndDependences) {
    auto gs = load_gluing_system(fixture("m129.json"));
    auto report = scan_two_cusp(gs, 8, pow10(-30), 60, 50);
    EXPECT_FALSE(report.symmetry.empty());
    EXPECT_EQ(report.unexplained(), 0);
    for (const auto& c : report.collisions) EXPECT_TRUE(c.explained);
    for (const auto& d : report.dependences) {
        bool diagonal = d.slopes[0] == d.slopes[1];
        EXPECT_EQ(diagonal, !d.explanation.empty());
        // away from the diagonal only low fillings are dependent
        if (!diagonal) EXPECT_LT(std::min(level(d.slopes[0]), level(d.slopes[1])), 8);
    }
    Precision guard(60);
    for (const auto& e : report.table) {
        ASSERT_EQ(e.t.size(), 2u);
        EXPECT_LT(e.dehn_residual, pow10(-50));
        EXPECT_GT(abs(e.t[0]), 1);
        EXPECT_GT(abs(e.t[1]), 1);
    }
}

TEST(SiegelSubgroupTest, SpecExamples) {
    auto h = siegel_subgroup_for_point(Slope::make(1, 0), Slope::make(1, 0));
    ASSERT_EQ(h.codimension(), 2u);
    for (const auto& r : h.rows()) {
        EXPECT_EQ(dot(r, {0, 1, 0, 1}), 0);
        EXPECT_DOUBLE_EQ(norm(r), 1.0);
    }
    auto g = siegel_subgroup_for_point(Slope::make(2, 1), Slope::make(3, 1));
    ASSERT_EQ(g.codimension(), 2u);
    for (const auto& r : g.rows()) EXPECT_EQ(dot(r, {-1, 2, -1, 3}), 0);
    double shortest = 1e9;
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b)
            for (long c = -4; c <= 4; ++c)
                for (long d = -4; d <= 4; ++d)
                    if ((a || b || c || d) && -a + 2 * b - c + 3 * d == 0)
                        shortest = std::min(shortest, std::hypot(std::hypot(a, b), std::hypot(c, d)));
    EXPECT_DOUBLE_EQ(norm(g.rows()[0]), shortest);
    EXPECT_LE(norm(g.rows()[0]) * norm(g.rows()[1]), kSiegelConstant * std::sqrt(15.0));
}

TEST(SiegelSubgroupTest, ContainsTheDehnPoint) {
    auto gs = load_gluing_system(fixture("m004.json"));
    for (auto [p, q] : std::vector<SlopePair>{{5, 1}, {7, 2}, {3, -8}}) {
        auto fp = solve_filled(gs, {Slope::make(p, q)}, 60);
        auto h = siegel_subgroup_for_point(fp.slopes[0], fp.slopes[0]);
        Precision guard(60);
        EXPECT_LT(subgroup_defect(h, fp, fp), pow10(-45));
    }
}

TEST(ReportTest, DeterministicJsonAndCsv) {
    auto gs = load_gluing_system(fixture("m015.json"));
    auto a = scan_cosmetic(gs, 9, pow10(-30), ScanMode::OrientationPreserving, 60);
    auto b = scan_cosmetic(gs, 9, pow10(-30), ScanMode::OrientationPreserving, 60);
    EXPECT_EQ(a.to_json(), b.to_json());
    EXPECT_EQ(a.to_csv(), b.to_csv());
    auto doc = nlohmann::json::parse(a.to_json());
    EXPECT_EQ(doc["manifold"], "m015");
    EXPECT_EQ(doc["table"].size(), a.table.size());
    std::string csv = a.to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,q,re(t),im(t),|t|,residual");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(a.table.size()) + 1);
}

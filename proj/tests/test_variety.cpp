#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "alab/variety.hpp"
#include "test_util.hpp"

using namespace alab;

namespace {

const char* kHarmonic = "2-u1-u2";
const char* kSubharmonic = "3 - u1 - u1^-1 - u2 - u2^-1";
const char* kSmyth = "1+u1+u2+u3";

double circle_membership_error(const std::vector<double>& t) {
    // circles: (-1, s, -s), (s, -1, -s), (s, -s, -1), i.e. one angle is 1/2
    // and the other two differ by 1/2 mod 1
    auto wrap = [](double x) {
        x -= std::floor(x);
        return std::min(x, 1.0 - x);
    };
    const double a = std::hypot(wrap(t[0] - 0.5), wrap(t[2] - t[1] - 0.5));
    const double b = std::hypot(wrap(t[1] - 0.5), wrap(t[2] - t[0] - 0.5));
    const double c = std::hypot(wrap(t[2] - 0.5), wrap(t[1] - t[0] - 0.5));
    return std::min({a, b, c});
}

}  // namespace

TEST_CASE("sample_variety finds the single zero of 2-u-v", "[variety]") {
    const VarietySample s = sample_variety(LaurentPoly::parse(kHarmonic, 2), 64);
    REQUIRE_FALSE(s.empty());
    for (const VarietyPoint& p : s.points) {
        CHECK(p.residual <= s.tol);
        for (double t : p.angles) {
            const double dist0 = std::min(t, 1.0 - t);
            CHECK(dist0 < 1e-4);
        }
    }
}

TEST_CASE("sample_variety of an expansive polynomial is empty", "[variety]") {
    CHECK(sample_variety(LaurentPoly::parse("u1^2-u1-1", 1), 64).empty());
}

TEST_CASE("sample_variety of 1+u+v+w lies on the three circles", "[variety]") {
    const VarietySample s = sample_variety(LaurentPoly::parse(kSmyth, 3), 32);
    REQUIRE(s.points.size() > 50);
    for (const VarietyPoint& p : s.points) CHECK(circle_membership_error(p.angles) < 1e-3);
}

TEST_CASE("dimension estimates of the fixtures", "[variety]") {
    CHECK(dimension_estimate(sample_variety(LaurentPoly::parse("u1^2-u1-1", 1), 64)) == -1);
    CHECK(dimension_estimate(sample_variety(LaurentPoly::parse(kHarmonic, 2), 64)) == 0);
    CHECK(dimension_estimate(sample_variety(LaurentPoly::parse(kSubharmonic, 2), 64)) == 1);
    CHECK(dimension_estimate(sample_variety(LaurentPoly::parse(kSmyth, 3), 32)) == 1);
}

TEST_CASE("dimension estimate is invariant under axis relabeling", "[variety]") {
    const LaurentPoly f = LaurentPoly::parse(kSmyth, 3);
    // swap u1 and u3
    LaurentPoly g(3);
    for (const auto& [m, c] : f.terms()) g.add_term({m[2], m[1], m[0]}, c);
    CHECK(dimension_estimate(sample_variety(f, 32)) ==
          dimension_estimate(sample_variety(g, 32)));
}

TEST_CASE("classification matrix of the paper fixtures", "[variety]") {
    struct Fixture {
        const char* text;
        int dims;
        Verdict want;
    };
    const Fixture fixtures[] = {
        {"u1^2-u1-1", 1, Verdict::atoral},                          // 4.1
        {"u1^4-u1^3-u1^2-u1+1", 1, Verdict::toral},                 // 4.2
        {kHarmonic, 2, Verdict::atoral},                            // 4.3
        {kSubharmonic, 2, Verdict::toral},                          // 4.4
        {kSmyth, 3, Verdict::atoral},                               // 4.6
        {"2+u1+u2+u3", 3, Verdict::atoral},                         // 4.7
        {"23+u1^2+u1^-2-9u1-9u1^-1+u2^2+u2^-2-9u2-9u2^-1"
         "+2u1u2+2u1^-1u2^-1+2u1u2^-1+2u1^-1u2",
         2, Verdict::toral},                                        // 4.8
    };
    for (const Fixture& fx : fixtures) {
        const AtoralVerdict v = classify_atoral(LaurentPoly::parse(fx.text, fx.dims));
        INFO(fx.text);
        CHECK(v.verdict == fx.want);
    }
}

TEST_CASE("classification reasons follow the decision ladder", "[variety]") {
    CHECK(classify_atoral(LaurentPoly::parse("u1^2-u1-1", 1)).reason ==
          VerdictReason::empty_variety);
    CHECK(classify_atoral(LaurentPoly::parse(kHarmonic, 2)).reason ==
          VerdictReason::asymmetric);
    CHECK(classify_atoral(LaurentPoly::parse(kSubharmonic, 2)).reason ==
          VerdictReason::dimension_d_minus_1);
}

TEST_CASE("torsion scan fixtures", "[variety]") {
    const auto hits = torsion_scan(LaurentPoly::parse(kSubharmonic, 2), 30);
    REQUIRE(hits.size() == 4);
    auto has = [&](long long p1, long long q1, long long p2, long long q2) {
        const TorsionPoint w = TorsionPoint::from_angles({Rat(p1, q1), Rat(p2, q2)});
        return std::find(hits.begin(), hits.end(), w) != hits.end();
    };
    CHECK(has(1, 6, 0, 1));
    CHECK(has(5, 6, 0, 1));
    CHECK(has(0, 1, 1, 6));
    CHECK(has(0, 1, 5, 6));

    CHECK(torsion_scan(LaurentPoly::parse("u1^2-u1-1", 1), 40).empty());

    const auto small = torsion_scan(LaurentPoly::parse(kSmyth, 3), 2);
    REQUIRE(small.size() == 3);
    for (const TorsionPoint& w : small) {
        long long halves = 0;
        for (const Rat& a : w.angles) halves += a.den == 2;
        CHECK(halves == 2);
    }
}

TEST_CASE("torsion scan hits are exact zeros closed under conjugation", "[variety]") {
    for (const char* text : {kSubharmonic, kHarmonic}) {
        const LaurentPoly f = LaurentPoly::parse(text, 2);
        const auto hits = torsion_scan(f, 12);
        for (const TorsionPoint& w : hits) {
            CHECK(torsion_eval(f, w).exact_zero);
            CHECK(std::find(hits.begin(), hits.end(), w.conjugate()) != hits.end());
        }
    }
}

TEST_CASE("proximity counts fixtures", "[variety]") {
    const LaurentPoly f = LaurentPoly::parse(kHarmonic, 2);
    const VarietySample s = sample_variety(f, 64);
    const SubgroupLattice g4 = SubgroupLattice::scaled(2, 4);

    const ProximityCounts big = proximity_counts(f, g4, 10.0, s);
    CHECK(big.near_variety == 15);
    CHECK(big.small_value == 15);

    // Brute-force oracle for N at r = 0.5 over the 16 points.
    long long oracle = 0;
    for (const TorsionPoint& w : g4.enumerate_dual()) {
        const double a = std::abs(f.eval_angles(w.angle_doubles()));
        if (a > 1e-9 && a < 0.5) ++oracle;
    }
    const ProximityCounts mid = proximity_counts(f, g4, 0.5, s);
    CHECK(mid.small_value == oracle);

    // r below the minimum positive |f| on the dual group.
    const ProximityCounts tiny = proximity_counts(f, g4, 1e-6, s);
    CHECK(tiny.small_value == 0);

    CHECK_THROWS_AS(proximity_counts(f, g4, -1.0, s), Error);
}

TEST_CASE("M_f(r) <= N_f(K r) on fixture triples", "[variety]") {
    struct Case {
        const char* text;
        int dims;
        long long n;
    };
    const Case cases[] = {{kHarmonic, 2, 4}, {kHarmonic, 2, 7}, {kSubharmonic, 2, 5}};
    for (const Case& c : cases) {
        const LaurentPoly f = LaurentPoly::parse(c.text, c.dims);
        const VarietySample s = sample_variety(f, 64);
        const SubgroupLattice g = SubgroupLattice::scaled(c.dims, c.n);
        for (double r : {0.05, 0.2, 0.8}) {
            const ProximityCounts at_r = proximity_counts(f, g, r, s);
            const ProximityCounts at_kr = proximity_counts(f, g, at_r.lipschitz * r, s);
            CHECK(at_r.near_variety <= at_kr.small_value);
        }
    }
}

TEST_CASE("min distance to the variety", "[variety]") {
    const LaurentPoly f = LaurentPoly::parse(kHarmonic, 2);
    const VarietySample s = sample_variety(f, 64);
    const double dist = min_distance_to_variety(SubgroupLattice::scaled(2, 2), f, s);
    CHECK(dist == Catch::Approx(2.0).margin(1e-6));

    const VarietySample empty = sample_variety(LaurentPoly::parse("u1^2-u1-1", 1), 64);
    CHECK_THROWS_AS(
        min_distance_to_variety(SubgroupLattice::scaled(1, 3), LaurentPoly::parse("u1^2-u1-1", 1),
                                empty),
        Error);

    const LaurentPoly smyth = LaurentPoly::parse(kSmyth, 3);
    const VarietySample s3 = sample_variety(smyth, 32);
    const double d3 = min_distance_to_variety(SubgroupLattice::scaled(3, 3), smyth, s3);
    CHECK(d3 > std::exp(-0.5 * 27.0));
    CHECK(d3 > 0.0);
}

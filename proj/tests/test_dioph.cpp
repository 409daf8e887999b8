#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "alab/dioph.hpp"
#include "test_util.hpp"

using namespace alab;

TEST_CASE("gelfond scan of the quasi-hyperbolic quartic", "[dioph]") {
    const LaurentPoly f = LaurentPoly::parse("u1^4-u1^3-u1^2-u1+1", 1);
    const GelfondTable t = gelfond_table(f, 512, 0.05);
    CHECK(t.violations == 0);
    CHECK_FALSE(t.degenerate);
    REQUIRE(t.rows.size() == 512);
    // The unitary roots are the conjugate pair with u + 1/u = (1 - sqrt 13)/2.
    REQUIRE(t.root_angles.size() == 2);
    const double theta = std::acos((1.0 - std::sqrt(13.0)) / 4.0) / kTwoPi;
    const double mn = std::min(t.root_angles[0], t.root_angles[1]);
    CHECK(mn == Catch::Approx(theta).margin(1e-12));
    // Cross-check a few rows against the analytic angle.
    for (long long n : {1, 3, 11, 100, 512}) {
        const double want = 2.0 * std::fabs(std::sin(kTwoPi * 0.5 * n * theta));
        CHECK(t.rows[n - 1].min_abs == Catch::Approx(want).margin(1e-9));
    }
    for (const GelfondRow& row : t.rows) {
        CHECK(row.min_abs > 0.0);
        // Pointwise the bound can only fail at small n; the tail is clean.
        if (row.n > 256) CHECK(row.min_abs > row.bound);
    }
    CHECK(t.below_bound_count > 0);   // forced at small n for any unit lambda
    CHECK(t.last_below_n <= 256);
}

TEST_CASE("gelfond rejects torsion roots as degenerate", "[dioph]") {
    const GelfondTable t = gelfond_table(LaurentPoly::parse("u1-1", 1), 16, 0.1);
    CHECK(t.degenerate);
    CHECK(t.root_angles.empty());
}

TEST_CASE("gelfond errors without unitary roots", "[dioph]") {
    CHECK_THROWS_AS(gelfond_table(LaurentPoly::parse("u1^2-u1-1", 1), 16, 0.1), Error);
}

TEST_CASE("quantitative ratio: empty variety gives identically zero", "[dioph]") {
    const LaurentPoly f = LaurentPoly::parse("u1^2-u1-1", 1);
    const VarietySample s = sample_variety(f, 64);
    std::vector<SubgroupLattice> gammas;
    std::vector<double> radii;
    for (long long n : {4, 8, 16}) {
        gammas.push_back(SubgroupLattice::scaled(1, n));
        radii.push_back(1.0 / n);
    }
    const RatioSeries r = quantitative_ratio(f, gammas, radii, s);
    for (const RatioRow& row : r.rows) CHECK(row.ratio == 0.0);
    CHECK(r.trend_ok);
}

TEST_CASE("quantitative ratio decays for the harmonic fixture", "[dioph]") {
    const LaurentPoly f = LaurentPoly::parse("2-u1-u2", 2);
    const VarietySample s = sample_variety(f, 64);
    std::vector<SubgroupLattice> gammas;
    std::vector<double> radii;
    for (long long n : {4, 8, 16, 32}) {
        gammas.push_back(SubgroupLattice::scaled(2, n));
        radii.push_back(1.0 / (static_cast<double>(n) * n));
    }
    const RatioSeries r = quantitative_ratio(f, gammas, radii, s);
    CHECK(r.rows.back().ratio <= r.rows.front().ratio);
}

TEST_CASE("M_f is nondecreasing in r at fixed Gamma", "[dioph]") {
    const LaurentPoly f = LaurentPoly::parse("2-u1-u2", 2);
    const VarietySample s = sample_variety(f, 64);
    const SubgroupLattice g = SubgroupLattice::scaled(2, 6);
    long long prev = -1;
    for (double r : {0.05, 0.1, 0.3, 0.9, 2.0}) {
        const long long m = proximity_counts(f, g, r, s).near_variety;
        CHECK(m >= prev);
        prev = m;
    }
}

TEST_CASE("quantitative ratio validates input lengths", "[dioph]") {
    const LaurentPoly f = LaurentPoly::parse("2-u1-u2", 2);
    const VarietySample s = sample_variety(f, 32);
    CHECK_THROWS_AS(
        quantitative_ratio(f, {SubgroupLattice::scaled(2, 3)}, {0.1, 0.2}, s), Error);
}

TEST_CASE("lift to d+1 variables: variety and classification", "[dioph]") {
    // Empty variety stays empty.
    const LaurentPoly fib = LaurentPoly::parse("u1^2-u1-1", 1);
    const LaurentPoly lift_fib = lift_to_atoral(fib);
    REQUIRE(lift_fib.dims() == 2);
    CHECK(sample_variety(lift_fib, 48).empty());

    // Toral curve lifts to an atoral surface-free set of dimension 1 <= (d+1)-2.
    const LaurentPoly sub = LaurentPoly::parse("3-u1-u1^-1-u2-u2^-1", 2);
    const AtoralVerdict v = classify_atoral(lift_to_atoral(sub));
    CHECK(v.verdict == Verdict::atoral);
    CHECK(v.dim_estimate == 1);

    // U(u-1) = {1}: the lift pins the extra coordinate at 1 as well.
    const LaurentPoly lin = lift_to_atoral(LaurentPoly::parse("u1-1", 1));
    const VarietySample s = sample_variety(lin, 48);
    REQUIRE_FALSE(s.empty());
    for (const VarietyPoint& p : s.points)
        for (double t : p.angles) CHECK(std::min(t, 1.0 - t) < 1e-4);
    CHECK(dimension_estimate(s) == 0);
}

TEST_CASE("lift zero structure is exact on torsion points", "[dioph]") {
    const LaurentPoly f = LaurentPoly::parse("3-u1-u1^-1-u2-u2^-1", 2);
    const LaurentPoly h = lift_to_atoral(f);
    // Over Omega_{6Z^3}: h(omega, s) = 0 iff f(omega) = 0 and s = 1.
    for (const TorsionPoint& w : SubgroupLattice::scaled(3, 6).enumerate_dual()) {
        const TorsionPoint head = TorsionPoint::from_angles({w.angles[0], w.angles[1]});
        const bool f_zero = torsion_eval(f, head).exact_zero;
        const bool last_is_one = w.angles[2].is_zero();
        CHECK(torsion_eval(h, w).exact_zero == (f_zero && last_is_one));
    }
}

TEST_CASE("gelfond minima stay positive for non-torsion unitary roots", "[dioph]") {
    const LaurentPoly f = LaurentPoly::parse("u1^4-u1^3-u1^2-u1+1", 1);
    const GelfondTable t = gelfond_table(f, 100, 0.2);
    for (const GelfondRow& row : t.rows) CHECK(row.min_abs > 1e-6);
}

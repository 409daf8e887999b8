#include <catch2/catch_amalgamated.hpp>

#include "alab/laurent.hpp"
#include "test_util.hpp"

using namespace alab;

namespace {

Exponent e2(int a, int b) { return {a, b}; }

}  // namespace

TEST_CASE("parse: paper fixture 2 - u1 - u2", "[laurent]") {
    const LaurentPoly f = LaurentPoly::parse("2 - u1 - u2", 2);
    REQUIRE(f.term_count() == 3);
    CHECK(f.coeff(e2(0, 0)) == 2);
    CHECK(f.coeff(e2(1, 0)) == -1);
    CHECK(f.coeff(e2(0, 1)) == -1);
}

TEST_CASE("parse: zero polynomial and cancellation", "[laurent]") {
    CHECK(LaurentPoly::parse("0", 1).is_zero());
    const LaurentPoly f = LaurentPoly::parse("u1^-1 + u1 - u1", 1);
    REQUIRE(f.term_count() == 1);
    CHECK(f.coeff({-1}) == 1);
}

TEST_CASE("parse: coefficients, stars and multi-exponents", "[laurent]") {
    const LaurentPoly f = LaurentPoly::parse("3*u1^2 u2^-1 - 2u2 + 7", 2);
    CHECK(f.coeff(e2(2, -1)) == 3);
    CHECK(f.coeff(e2(0, 1)) == -2);
    CHECK(f.coeff(e2(0, 0)) == 7);
    // Round trip through the printer.
    CHECK(LaurentPoly::parse(f.str(), 2) == f);
}

TEST_CASE("parse errors carry position and kind", "[laurent]") {
    CHECK_THROWS_AS(LaurentPoly::parse("2 + + u1", 1), Error);
    CHECK_THROWS_AS(LaurentPoly::parse("", 1), Error);
    CHECK_THROWS_AS(LaurentPoly::parse("2 - u3", 2), Error);  // index exceeds dims
    try {
        LaurentPoly::parse("1 + x", 1);
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == "parse");
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
}

TEST_CASE("adjoint negates exponents and fixes the symmetric fixture", "[laurent]") {
    const LaurentPoly f = LaurentPoly::parse("2 - u1 - u2", 2);
    const LaurentPoly fs = f.adjoint();
    CHECK(fs.coeff(e2(-1, 0)) == -1);
    CHECK(fs.coeff(e2(0, -1)) == -1);
    CHECK(fs.coeff(e2(0, 0)) == 2);

    const LaurentPoly g = LaurentPoly::parse("3 - u1 - u1^-1 - u2 - u2^-1", 2);
    CHECK(g.adjoint() == g);
    CHECK(LaurentPoly(2).adjoint().is_zero());
}

TEST_CASE("essential symmetry fixtures", "[laurent]") {
    const auto sym = essential_symmetry(LaurentPoly::parse("3 - u1 - u1^-1 - u2 - u2^-1", 2));
    CHECK(sym.kind == SymmetryKind::symmetric);
    CHECK(sym.shift == e2(0, 0));

    CHECK(essential_symmetry(LaurentPoly::parse("u1^2 - u1 - 1", 1)).kind == SymmetryKind::none);
    CHECK(essential_symmetry(LaurentPoly::parse("2 + u1 + u2 + u3", 3)).kind ==
          SymmetryKind::none);
    // Palindromic univariate: symmetric with a nonzero shift.
    const auto pal = essential_symmetry(LaurentPoly::parse("u1^4 - u1^3 - u1^2 - u1 + 1", 1));
    CHECK(pal.kind == SymmetryKind::symmetric);
    CHECK(pal.shift == Exponent{-4});
    // Skew case: u - u^-1.
    const auto skew = essential_symmetry(LaurentPoly::parse("u1 - u1^-1", 1));
    CHECK(skew.kind == SymmetryKind::skew);

    CHECK_THROWS_AS(essential_symmetry(LaurentPoly(1)), Error);
}

TEST_CASE("arithmetic and derivative fixtures", "[laurent]") {
    const LaurentPoly a = LaurentPoly::parse("u1 - 1", 1);
    const LaurentPoly b = LaurentPoly::parse("u1 + 1", 1);
    CHECK(a * b == LaurentPoly::parse("u1^2 - 1", 1));

    CHECK(LaurentPoly::parse("2 - u1 - u2", 2).derivative(1) ==
          LaurentPoly::parse("0 - 1", 2));
    CHECK(LaurentPoly::parse("u1 + u1^-1", 1).derivative(1) ==
          LaurentPoly::parse("1 - u1^-2", 1));
    CHECK_THROWS_AS(a + LaurentPoly(2), Error);
}

TEST_CASE("eval_angles fixtures", "[laurent]") {
    const LaurentPoly f = LaurentPoly::parse("2 - u1 - u2", 2);
    CHECK(std::abs(f.eval_angles({0.0, 0.0})) < 1e-15);

    const LaurentPoly g = LaurentPoly::parse("u1^2 - u1 - 1", 1);
    CHECK(g.eval_angles({0.0}).real() == Catch::Approx(-1.0).margin(1e-15));
    CHECK(std::abs(g.eval_angles({0.0}).imag()) < 1e-15);

    const LaurentPoly h = LaurentPoly::parse("1 + u1 + u2 + u3", 3);
    for (double s : {0.1, 0.27, 0.5, 0.83}) {
        const double sp = s + 0.5 < 1.0 ? s + 0.5 : s - 0.5;
        CHECK(std::abs(h.eval_angles({0.5, s, sp})) < 1e-14);
    }
}

TEST_CASE("adjoint is an involution and preserves |f| on the torus", "[laurent]") {
    testutil::Rng rng(20240817);
    std::uniform_real_distribution<double> ang(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const LaurentPoly f = testutil::random_poly(rng, d);
        CHECK(f.adjoint().adjoint() == f);
        std::vector<double> t(d);
        for (double& x : t) x = ang(rng);
        const double lhs = std::abs(f.adjoint().eval_angles(t));
        const double rhs = std::abs(f.eval_angles(t));
        CHECK(lhs == Catch::Approx(rhs).margin(1e-10 * (1 + f.l1_norm())));
    }
}

TEST_CASE("symmetric classification implies the termwise identity", "[laurent]") {
    testutil::Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 2);
        // Build a symmetric polynomial g = h + h* and check the reported shift.
        const LaurentPoly h = testutil::random_poly(rng, d);
        if (h.is_zero()) continue;
        const LaurentPoly g = h + h.adjoint();
        if (g.is_zero()) continue;
        const auto sym = essential_symmetry(g);
        REQUIRE(sym.kind == SymmetryKind::symmetric);
        for (const auto& [n, c] : g.terms()) {
            Exponent r(d);
            for (int j = 0; j < d; ++j) r[j] = -n[j] - sym.shift[j];
            CHECK(g.coeff(r) == c);
        }
    }
}

TEST_CASE("multiplication is commutative and distributes over addition", "[laurent]") {
    testutil::Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const LaurentPoly a = testutil::random_poly(rng, d);
        const LaurentPoly b = testutil::random_poly(rng, d);
        const LaurentPoly c = testutil::random_poly(rng, d);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

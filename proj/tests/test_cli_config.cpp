#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "alab/config.hpp"
#include "alab/mahler.hpp"

using namespace alab;

TEST_CASE("config defaults validate", "[cli]") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.zero_tol == 1e-8);
    CHECK(c.seed == 42);
}

TEST_CASE("config rejects out-of-range zero_tol", "[cli]") {
    RunConfig c;
    c.zero_tol = 1e-3;
    CHECK_THROWS_AS(c.validate(), Error);
    c.zero_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("config file parsing with comments and overrides", "[cli]") {
    const std::string path = "alab_test_config.tmp";
    {
        std::ofstream out(path);
        out << "# tolerances\n";
        out << "zero_tol = 1e-9\n";
        out << "threads=3   # budget\n";
        out << "format = json\n";
        out << "seed = 7\n";
    }
    RunConfig c;
    c.load_file(path);
    std::remove(path.c_str());
    CHECK(c.zero_tol == 1e-9);
    CHECK(c.threads == 3);
    CHECK(c.format == OutputFormat::json);
    CHECK(c.seed == 7);
}

TEST_CASE("config file errors", "[cli]") {
    const std::string path = "alab_bad_config.tmp";
    {
        std::ofstream out(path);
        out << "zero_tol 1e-9\n";
    }
    RunConfig c;
    CHECK_THROWS_AS(c.load_file(path), Error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(c.set("no_such_key", "1"), Error);
    CHECK_THROWS_AS(c.set("format", "yaml"), Error);
}

TEST_CASE("library results are identical across thread budgets", "[cli]") {
    const LaurentPoly f = LaurentPoly::parse("4+u1-u2+u1*u2^2", 2);
    const MahlerEstimate a = mahler_quadrature(f, 128, 1);
    const MahlerEstimate b = mahler_quadrature(f, 128, 3);
    CHECK(a.value == b.value);
    CHECK(a.excluded_zeros == b.excluded_zeros);
}

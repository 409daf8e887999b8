#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "alab/common.hpp"

namespace alab {

enum class OutputFormat { json, csv, table };

/// Tool-wide knobs: tolerances, caps, parallelism budget, output format and
/// the seed for the randomized property suites. Flags override file values;
/// ALAB_THREADS caps parallelism from the environment.
struct RunConfig {
    double zero_tol = 1e-8;           // numeric screening band scale, in (0, 1e-4]
    double quad_tol = 1e-6;           // documentation of the quadrature target
    long long max_cyclo_order = 100000;
    int max_grid = 1 << 14;
    int threads = 1;
    OutputFormat format = OutputFormat::table;
    unsigned long long seed = 42;

    void validate() const {
        if (!(zero_tol > 0 && zero_tol <= 1e-4))
            fail("config", "zero_tol must lie in (0, 1e-4]");
        if (max_cyclo_order < 1 || max_grid < 2 || threads < 1)
            fail("config", "caps and thread count must be positive");
    }

    void apply_env() {
        if (const char* t = std::getenv("ALAB_THREADS")) {
            const int v = std::atoi(t);
            if (v >= 1) threads = std::min(threads < 1 ? v : threads, v);
        }
    }

    void set(const std::string& key, const std::string& value) {
        if (key == "zero_tol") zero_tol = std::stod(value);
        else if (key == "quad_tol") quad_tol = std::stod(value);
        else if (key == "max_cyclo_order") max_cyclo_order = std::stoll(value);
        else if (key == "max_grid") max_grid = std::stoi(value);
        else if (key == "threads") threads = std::stoi(value);
        else if (key == "seed") seed = std::stoull(value);
        else if (key == "format") {
            if (value == "json") format = OutputFormat::json;
            else if (value == "csv") format = OutputFormat::csv;
            else if (value == "table") format = OutputFormat::table;
            else fail("config", "unknown format: " + value);
        } else {
            fail("config", "unknown config key: " + key);
        }
    }

    /// key=value per line; '#' starts a comment.
    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) fail("config", "cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                const auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                fail("config", "missing '=' on line " + std::to_string(lineno));
            set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
        validate();
    }
};

}  // namespace alab

#pragma once

#include <string>

#include "alab/common.hpp"

namespace alab {

/// Reduced rational in [0,1), used for torsion-point angles. The denominator
/// is always positive and coprime to the numerator.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;

    /// Reduces n/d and wraps into [0,1).
    Rat(long long n, long long d) {
        if (d == 0) fail("domain", "rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        n %= d;
        if (n < 0) n += d;
        const long long g = gcd_ll(n, d);
        num = n / g;
        den = d / g;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    /// 1 - t mod 1, the angle of the complex-conjugate coordinate.
    Rat conjugate() const { return Rat(den - num, den); }

    bool is_zero() const { return num == 0; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rat& a, const Rat& b) {
        // Exact cross-multiplication compare; desk-scale denominators cannot overflow __int128.
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace alab

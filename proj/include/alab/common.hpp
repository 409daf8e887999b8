#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <limits>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace alab {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

/// Library error carrying a short machine-readable kind ("parse", "domain",
/// "degenerate", ...) next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
    throw Error(kind, message);
}

/// log of |x| for arbitrary-size integers. Values beyond double range are
/// handled through the top 53 bits plus a power-of-two exponent.
inline double big_log_abs(const BigInt& x) {
    if (x == 0) fail("domain", "big_log_abs: argument is zero");
    BigInt a = abs(x);
    const unsigned bits = msb(a);
    if (bits <= 62) return std::log(a.convert_to<double>());
    BigInt top = a >> (bits - 52);
    return std::log(top.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
}

/// Checked narrowing; exact 64-bit range or error.
inline long long to_ll(const BigInt& x) {
    static const BigInt lo = std::numeric_limits<long long>::min();
    static const BigInt hi = std::numeric_limits<long long>::max();
    if (x < lo || x > hi) fail("overflow", "integer exceeds 64-bit range: " + x.str());
    return x.convert_to<long long>();
}

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long long lcm_ll(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_ll(a, b) * b;
}

}  // namespace alab

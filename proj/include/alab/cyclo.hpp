#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "alab/common.hpp"
#include "alab/laurent.hpp"
#include "alab/lattice.hpp"

namespace alab {

/// Dense integer polynomial, coefficient of x^i at index i.
using IntPoly = std::vector<BigInt>;

namespace intpoly {

inline void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool is_zero(const IntPoly& p) { return p.empty(); }

inline int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// Quotient of an exact division by a monic divisor; errors if not exact.
inline IntPoly div_exact(IntPoly num, const IntPoly& den) {
    if (den.empty() || den.back() != 1) fail("domain", "div_exact: divisor must be monic");
    trim(num);
    if (num.size() < den.size()) {
        if (num.empty()) return {};
        fail("domain", "div_exact: not divisible");
    }
    IntPoly q(num.size() - den.size() + 1, BigInt(0));
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        const BigInt c = num[i + den.size() - 1];
        if (c == 0) continue;
        q[i] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const BigInt& c : num)
        if (c != 0) fail("domain", "div_exact: not divisible");
    return q;
}

/// Remainder mod a monic divisor.
inline IntPoly rem(IntPoly num, const IntPoly& den) {
    if (den.empty() || den.back() != 1) fail("domain", "rem: divisor must be monic");
    trim(num);
    while (num.size() >= den.size()) {
        const BigInt c = num.back();
        const std::size_t shift = num.size() - den.size();
        if (c != 0)
            for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
        num.pop_back();
        trim(num);
    }
    return num;
}

inline bool divides(const IntPoly& den, const IntPoly& num) {
    return is_zero(rem(num, den));
}

/// Horner evaluation at a complex point.
inline Complex eval(const IntPoly& p, const Complex& x) {
    Complex acc{0.0, 0.0};
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + Complex(it->convert_to<double>(), 0.0);
    return acc;
}

}  // namespace intpoly

inline constexpr long long kDefaultCyclotomicCap = 100000;

/// N-th cyclotomic polynomial by iterated exact division of x^N - 1 by
/// Phi_e over the proper divisors e | N. Memoized process-wide; the cache is
/// read-mostly with locked insertion.
inline std::shared_ptr<const IntPoly> cyclotomic(long long n,
                                                 long long cap = kDefaultCyclotomicCap) {
    if (n < 1) fail("domain", "cyclotomic: order must be positive");
    if (n > cap) fail("cap", "cyclotomic order " + std::to_string(n) + " exceeds cap");
    static std::mutex mu;
    static std::map<long long, std::shared_ptr<const IntPoly>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
    }
    IntPoly value;
    if (n == 1) {
        value = {BigInt(-1), BigInt(1)};  // x - 1
    } else {
        IntPoly num(static_cast<std::size_t>(n) + 1, BigInt(0));
        num[0] = -1;
        num[static_cast<std::size_t>(n)] = 1;  // x^N - 1
        for (long long e = 1; e * e <= n; ++e) {
            if (n % e != 0) continue;
            if (e < n) num = intpoly::div_exact(num, *cyclotomic(e, cap));
            const long long f = n / e;
            if (f != e && f < n) num = intpoly::div_exact(num, *cyclotomic(f, cap));
        }
        value = std::move(num);
    }
    auto sp = std::make_shared<const IntPoly>(std::move(value));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = memo.emplace(n, sp);
    return it->second;
}

/// Value of f at a torsion point, carried exactly in Z[x]/(x^N - 1).
/// exact_zero is decided by Phi_N-divisibility, a sound and complete
/// criterion for vanishing in Z[zeta_N]; approx is the numeric image at
/// x = e^{2 pi i / N}.
struct CycloValue {
    long long order = 1;
    IntPoly residue;
    bool exact_zero = false;
    Complex approx{0.0, 0.0};
};

inline CycloValue torsion_eval(const LaurentPoly& f, const TorsionPoint& w,
                               long long cap = kDefaultCyclotomicCap) {
    if (static_cast<int>(w.angles.size()) != f.dims())
        fail("domain", "torsion_eval: arity mismatch");
    const long long n = w.order;
    if (n > cap) fail("cap", "torsion order exceeds cyclotomic cap");
    // u_j maps to x^{a_j} with a_j = N * angle_j mod N.
    std::vector<long long> a(f.dims());
    for (int j = 0; j < f.dims(); ++j) a[j] = w.angles[j].num * (n / w.angles[j].den);

    CycloValue out;
    out.order = n;
    out.residue.assign(static_cast<std::size_t>(n), BigInt(0));
    for (const auto& [m, c] : f.terms()) {
        long long e = 0;
        for (int j = 0; j < f.dims(); ++j) e += ((m[j] % n) + n) % n * (a[j] % n);
        out.residue[static_cast<std::size_t>(e % n)] += c;
    }
    intpoly::trim(out.residue);
    out.exact_zero =
        intpoly::is_zero(out.residue) || intpoly::divides(*cyclotomic(n, cap), out.residue);
    out.approx = intpoly::eval(out.residue, std::polar(1.0, kTwoPi / static_cast<double>(n)));
    return out;
}

/// Numeric screening band below which exact arbitration is required:
/// an exact zero always has |approx| < 1e-8 * (1 + |f|_1).
inline double zero_band(const LaurentPoly& f) { return 1e-8 * (1.0 + f.l1_norm()); }

/// Exact "f(omega) = 0" decision with a cheap numeric screen first.
inline bool vanishes_at(const LaurentPoly& f, const TorsionPoint& w,
                        long long cap = kDefaultCyclotomicCap) {
    const Complex v = f.eval_angles(w.angle_doubles());
    if (std::abs(v) > zero_band(f)) return false;
    return torsion_eval(f, w, cap).exact_zero;
}

}  // namespace alab

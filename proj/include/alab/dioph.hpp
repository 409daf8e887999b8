#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "alab/cyclo.hpp"
#include "alab/laurent.hpp"
#include "alab/lattice.hpp"
#include "alab/mahler.hpp"
#include "alab/variety.hpp"

namespace alab {

using ComplexL = std::complex<long double>;

namespace detail {

/// Aberth-Ehrlich simultaneous root refinement in 80-bit precision,
/// polished with Newton steps. Degrees here are desk scale (<= ~32).
inline std::vector<ComplexL> aberth_roots(const IntPoly& poly) {
    const int deg = intpoly::degree(poly);
    if (deg < 1) return {};
    std::vector<ComplexL> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = ComplexL(poly[i].convert_to<long double>(), 0.0L);

    auto eval = [&](const ComplexL& x, ComplexL& p, ComplexL& dp) {
        p = c[deg];
        dp = ComplexL(0.0L, 0.0L);
        for (int i = deg - 1; i >= 0; --i) {
            dp = dp * x + p;
            p = p * x + c[i];
        }
    };

    long double radius = 0.0L;
    for (int i = 0; i < deg; ++i)
        radius = std::max(radius, std::abs(c[i] / c[deg]));
    radius = 1.0L + radius;

    std::vector<ComplexL> z(deg);
    for (int i = 0; i < deg; ++i)
        z[i] = std::polar(radius * 0.8L,
                          static_cast<long double>(kTwoPi) * (i + 0.37L) / deg);

    for (int iter = 0; iter < 400; ++iter) {
        long double worst = 0.0L;
        for (int i = 0; i < deg; ++i) {
            ComplexL p, dp;
            eval(z[i], p, dp);
            if (std::abs(p) == 0.0L) continue;
            ComplexL newton = p / dp;
            ComplexL repel(0.0L, 0.0L);
            for (int j = 0; j < deg; ++j)
                if (j != i) repel += ComplexL(1.0L, 0.0L) / (z[i] - z[j]);
            const ComplexL step = newton / (ComplexL(1.0L, 0.0L) - newton * repel);
            z[i] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-19L * radius) break;
    }
    for (int i = 0; i < deg; ++i)
        for (int polish = 0; polish < 4; ++polish) {
            ComplexL p, dp;
            eval(z[i], p, dp);
            if (std::abs(dp) == 0.0L) break;
            z[i] -= p / dp;
        }
    return z;
}

}  // namespace detail

struct GelfondRow {
    long long n = 0;
    double min_abs = 0.0;     // min over unit-circle roots of |lambda^n - 1|
    double bound = 0.0;       // e^{-eps n}
    bool below_bound = false; // pointwise comparison, reported as data
};

struct GelfondTable {
    std::vector<double> root_angles;  // arguments/2pi of the unit-circle roots kept
    std::vector<GelfondRow> rows;
    long long below_bound_count = 0;  // pointwise failures anywhere in the scan
    long long last_below_n = 0;       // largest n with min_abs <= bound (0 if none)
    long long violations = 0;         // failures in the asymptotic regime (see below)
    bool degenerate = false;          // some unit root is itself torsion
    std::string note;
};

/// Scan of |lambda^n - 1| against e^{-eps n} for the unit-circle roots of a
/// univariate polynomial. Roots are found numerically at 80-bit precision
/// and projected onto the circle; powers are then 2|sin(n theta / 2)|, which
/// stays exact on the circle. A root whose angle hits a root of unity is
/// arbitrated exactly: the bound concerns non-torsion lambda only.
///
/// The inequality is asymptotic ("for all sufficiently large n"): at small n
/// the bound e^{-eps n} is close to 1 and |lambda^n - 1| <= 2 falls below it
/// for any lambda on the circle. The table therefore reports every pointwise
/// comparison (`below_bound`), and counts as `violations` only the failures
/// in the second half of the scan range, the operational reading of the
/// tail inequality at depth n_max.
inline GelfondTable gelfond_table(const LaurentPoly& f, long long n_max, double eps,
                                  long long cap = kDefaultCyclotomicCap) {
    if (f.dims() != 1) fail("domain", "gelfond_table: univariate polynomial expected");
    if (f.is_zero()) fail("domain", "gelfond_table: zero polynomial");
    if (eps <= 0) fail("domain", "gelfond_table: eps must be positive");
    IntPoly p = laurent_to_intpoly(f);
    intpoly::trim(p);

    GelfondTable out;
    std::vector<long double> thetas;
    for (const ComplexL& z : detail::aberth_roots(p)) {
        if (std::fabs(static_cast<double>(std::abs(z)) - 1.0) >= 1e-12) continue;
        long double theta = std::arg(z);
        if (theta < 0) theta += static_cast<long double>(kTwoPi);
        // Exact torsion arbitration: an angle numerically at a root of unity
        // is believed only if the corresponding cyclotomic divides f.
        bool torsion = false;
        for (long long n = 1; n <= std::min<long long>(n_max, 360); ++n) {
            const long double s = 2.0L * std::fabs(std::sin(0.5L * n * theta));
            if (s < 1e-9L) {
                if (intpoly::divides(*cyclotomic(n, cap), p)) {
                    torsion = true;
                } else {
                    out.note = "near-torsion angle without cyclotomic factor at n=" +
                               std::to_string(n) + "; kept as non-torsion";
                }
                break;
            }
        }
        if (torsion) {
            out.degenerate = true;
            continue;
        }
        thetas.push_back(theta);
        out.root_angles.push_back(static_cast<double>(theta / static_cast<long double>(kTwoPi)));
    }
    if (out.root_angles.empty() && !out.degenerate)
        fail("domain", "gelfond_table: no unitary roots");

    for (long long n = 1; n <= n_max; ++n) {
        GelfondRow row;
        row.n = n;
        row.bound = std::exp(-eps * static_cast<double>(n));
        long double best = 4.0L;
        for (long double theta : thetas)
            best = std::min(best, 2.0L * std::fabs(std::sin(0.5L * n * theta)));
        row.min_abs = static_cast<double>(best);
        row.below_bound = !thetas.empty() && row.min_abs <= row.bound;
        if (row.below_bound) {
            ++out.below_bound_count;
            out.last_below_n = n;
            if (n > n_max / 2) ++out.violations;
        }
        out.rows.push_back(row);
    }
    return out;
}

struct RatioRow {
    long long index = 0;    // |Omega_Gamma|
    double r = 0.0;
    long long near_count = 0;  // M_f
    double ratio = 0.0;        // M_f * log(1/r) / |Omega_Gamma|
};

struct RatioSeries {
    std::vector<RatioRow> rows;
    bool trend_ok = false;  // last < first and decreasing on the final third
};

/// The quantitative counting ratio M_f(Omega_Gamma_n, r_n) log(1/r_n) /
/// |Omega_Gamma_n| along a sequence with r_n -> 0 and <Gamma_n> increasing.
inline RatioSeries quantitative_ratio(const LaurentPoly& f,
                                      const std::vector<SubgroupLattice>& gammas,
                                      const std::vector<double>& radii,
                                      const VarietySample& sample,
                                      long long cap = kDefaultCyclotomicCap) {
    if (gammas.size() != radii.size())
        fail("domain", "quantitative_ratio: sequence length mismatch");
    if (gammas.empty()) fail("domain", "quantitative_ratio: empty sequence");
    RatioSeries out;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        const auto counts = proximity_counts(f, gammas[i], radii[i], sample, cap);
        RatioRow row;
        row.index = gammas[i].index();
        row.r = radii[i];
        row.near_count = counts.near_variety;
        row.ratio = counts.near_variety * std::log(1.0 / radii[i]) / row.index;
        out.rows.push_back(row);
    }
    const auto& rows = out.rows;
    bool decreasing_tail = true;
    const std::size_t tail_start = rows.size() - rows.size() / 3;
    for (std::size_t i = std::max<std::size_t>(tail_start, 1); i < rows.size(); ++i)
        if (rows[i].ratio > rows[i - 1].ratio) decreasing_tail = false;
    out.trend_ok = rows.back().ratio <= rows.front().ratio && decreasing_tail;
    return out;
}

/// h(u_1..u_{d+1}) = f f* + (u_{d+1}-1)(u_{d+1}^{-1}-1): the lift with
/// U(h) = U(f) x {1}, hence atoral in d+1 variables.
inline LaurentPoly lift_to_atoral(const LaurentPoly& f) {
    if (f.is_zero()) fail("domain", "lift_to_atoral: zero polynomial");
    const int d = f.dims();
    const LaurentPoly fe = f.extended();
    LaurentPoly h = fe * fe.adjoint();
    const LaurentPoly gpart =
        (laurent_monomial(d + 1, d + 1, 1) - laurent_constant(d + 1, 1)) *
        (laurent_monomial(d + 1, d + 1, -1) - laurent_constant(d + 1, 1));
    return h + gpart;
}

}  // namespace alab

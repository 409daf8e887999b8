#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "alab/cyclo.hpp"
#include "alab/laurent.hpp"
#include "alab/lattice.hpp"
#include "alab/numeric.hpp"

namespace alab {

/// Grid offset scheme: half-step on every axis (quadrature grids), on the
/// first axis only (homoclinic DFT grids, where a double offset would cancel
/// in sum coordinates), or none (plain scans).
enum class GridOffset { none, half_all, half_first };

inline double axis_offset(GridOffset off, int axis) {
    switch (off) {
        case GridOffset::none: return 0.0;
        case GridOffset::half_all: return 0.5;
        case GridOffset::half_first: return axis == 0 ? 0.5 : 0.0;
    }
    return 0.0;
}

/// Evaluates a Laurent polynomial on the N^d angle grid t_k = (k + off)/N
/// through per-term per-axis tables of unit complex numbers, so a node costs
/// O(terms * d) multiplications and no trigonometry.
class GridEvaluator {
public:
    GridEvaluator(const LaurentPoly& f, int grid_n, GridOffset offset)
        : dims_(f.dims()), grid_(grid_n) {
        if (grid_n < 1) fail("domain", "GridEvaluator: grid must be positive");
        if (dims_ > 8) fail("cap", "GridEvaluator: dims > 8 not supported");
        for (const auto& [m, c] : f.terms()) {
            coefs_.push_back(c.convert_to<double>());
            std::vector<std::vector<Complex>> axes(dims_);
            for (int j = 0; j < dims_; ++j) {
                const double off = axis_offset(offset, j);
                axes[j].resize(grid_n);
                for (int k = 0; k < grid_n; ++k)
                    axes[j][k] = std::polar(1.0, kTwoPi * m[j] * (k + off) / grid_n);
            }
            tables_.push_back(std::move(axes));
        }
    }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (int j = 0; j < dims_; ++j) n *= static_cast<std::size_t>(grid_);
        return n;
    }

    /// Value at the node with lexicographic flat index (last axis fastest).
    Complex eval_flat(std::size_t flat) const {
        int k[8];
        for (int j = dims_ - 1; j >= 0; --j) {
            k[j] = static_cast<int>(flat % static_cast<std::size_t>(grid_));
            flat /= static_cast<std::size_t>(grid_);
        }
        Complex sum{0.0, 0.0};
        for (std::size_t t = 0; t < coefs_.size(); ++t) {
            Complex v = tables_[t][0][k[0]];
            for (int j = 1; j < dims_; ++j) v *= tables_[t][j][k[j]];
            sum += coefs_[t] * v;
        }
        return sum;
    }

    int dims() const { return dims_; }
    int grid() const { return grid_; }

private:
    int dims_;
    int grid_;
    std::vector<double> coefs_;
    std::vector<std::vector<std::vector<Complex>>> tables_;
};

enum class MahlerMethod { quadrature, riemann, resultant };

struct MahlerEstimate {
    double value = 0.0;
    MahlerMethod method = MahlerMethod::quadrature;
    std::string resolution;       // grid size or lattice descriptor
    long long excluded_zeros = 0; // exact zeros skipped (riemann) / near-zero nodes (quadrature)
};

namespace detail {

struct LogSumBlock {
    double sum = 0.0;
    long long skipped = 0;
};

inline LogSumBlock combine_logsum(const LogSumBlock& a, const LogSumBlock& b) {
    return {a.sum + b.sum, a.skipped + b.skipped};
}

}  // namespace detail

/// Mean of log|f| over the half-step-offset N^d grid. The offset keeps every
/// torsion point of order dividing N off the grid; nodes with
/// |f| < 1e-14 * |f|_1 are skipped and counted. Lexicographic Kahan blocks
/// plus a fixed-shape tree keep parallel and serial runs bit-identical.
inline MahlerEstimate mahler_quadrature(const LaurentPoly& f, int grid_n, int threads = 1) {
    if (f.is_zero()) fail("domain", "mahler_quadrature: zero polynomial");
    if (grid_n < 2) fail("domain", "mahler_quadrature: grid must be >= 2");
    const GridEvaluator ev(f, grid_n, GridOffset::half_all);
    const double floor = 1e-14 * f.l1_norm();
    const std::size_t n = ev.node_count();

    auto blocks = map_blocks<detail::LogSumBlock>(
        n, 1 << 15, threads, [&](std::size_t lo, std::size_t hi) {
            detail::LogSumBlock b;
            KahanSum acc;
            for (std::size_t i = lo; i < hi; ++i) {
                const double a = std::abs(ev.eval_flat(i));
                if (a < floor) {
                    ++b.skipped;
                } else {
                    acc.add(std::log(a));
                }
            }
            b.sum = acc.value();
            return b;
        });
    const auto total = tree_combine(std::move(blocks), detail::combine_logsum,
                                    detail::LogSumBlock{});
    const std::size_t used = n - static_cast<std::size_t>(total.skipped);
    if (used == 0) fail("degenerate", "mahler_quadrature: every node skipped");
    MahlerEstimate est;
    est.value = total.sum / static_cast<double>(used);
    est.method = MahlerMethod::quadrature;
    est.resolution = "grid:" + std::to_string(grid_n);
    est.excluded_zeros = total.skipped;
    return est;
}

namespace detail {

/// Sum of log|f| over the non-vanishing part of Omega_Gamma plus the exact
/// zero count. Numeric screen first, cyclotomic arbitration inside the band.
inline LogSumBlock omega_log_sum(const LaurentPoly& f, const SubgroupLattice& gamma,
                                 int threads, long long cap) {
    if (f.is_zero()) fail("domain", "omega_log_sum: zero polynomial");
    if (gamma.dims() != f.dims()) fail("domain", "omega_log_sum: dims mismatch");
    const DualRange dual = gamma.dual();
    const double band = zero_band(f);
    auto blocks = map_blocks<LogSumBlock>(
        dual.size(), 1 << 12, threads, [&](std::size_t lo, std::size_t hi) {
            LogSumBlock b;
            KahanSum acc;
            for (std::size_t i = lo; i < hi; ++i) {
                const TorsionPoint w = dual[i];
                const double a = std::abs(f.eval_angles(w.angle_doubles()));
                if (a > band) {
                    acc.add(std::log(a));
                    continue;
                }
                const CycloValue cv = torsion_eval(f, w, cap);
                if (cv.exact_zero) {
                    ++b.skipped;
                } else {
                    acc.add(std::log(std::abs(cv.approx)));
                }
            }
            b.sum = acc.value();
            return b;
        });
    return tree_combine(std::move(blocks), combine_logsum, LogSumBlock{});
}

}  // namespace detail

/// Riemann sum (1/|Omega_Gamma|) sum log|f(omega)| over the dual group,
/// excluding the exact zeros (arbitrated through the cyclotomic layer).
inline MahlerEstimate riemann_sum_log(const LaurentPoly& f, const SubgroupLattice& gamma,
                                      int threads = 1,
                                      long long cap = kDefaultCyclotomicCap) {
    const DualRange dual = gamma.dual();
    const auto total = detail::omega_log_sum(f, gamma, threads, cap);
    if (total.skipped == static_cast<long long>(dual.size()))
        fail("degenerate", "riemann_sum_log: f vanishes on all of Omega_Gamma");
    MahlerEstimate est;
    est.value = total.sum / static_cast<double>(dual.size());
    est.method = MahlerMethod::riemann;
    est.resolution = "gamma:" + gamma.str();
    est.excluded_zeros = total.skipped;
    return est;
}

// --------------------------- exact d=1 oracle ------------------------------

/// Clears the minimal exponent of a univariate Laurent polynomial; unit
/// factors u^k have modulus 1 on the circle, so products over roots of unity
/// are unchanged.
inline IntPoly laurent_to_intpoly(const LaurentPoly& f) {
    if (f.dims() != 1) fail("domain", "laurent_to_intpoly: dims must be 1");
    if (f.is_zero()) return {};
    const int lo = f.support_min()[0];
    const int hi = f.support_max()[0];
    IntPoly p(static_cast<std::size_t>(hi - lo) + 1, BigInt(0));
    for (const auto& [m, c] : f.terms()) p[static_cast<std::size_t>(m[0] - lo)] = c;
    return p;
}

/// Res(a, b) via the Sylvester matrix and fraction-free elimination.
inline BigInt resultant(const IntPoly& a, const IntPoly& b) {
    const int da = intpoly::degree(a);
    const int db = intpoly::degree(b);
    if (da < 0 || db < 0) fail("domain", "resultant: zero polynomial");
    if (da == 0) return boost::multiprecision::pow(a[0], db);
    if (db == 0) return boost::multiprecision::pow(b[0], da);
    const int n = da + db;
    IntMat s(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j <= da; ++j) s[i][i + j] = a[static_cast<std::size_t>(da - j)];
    for (int i = 0; i < da; ++i)
        for (int j = 0; j <= db; ++j) s[db + i][i + j] = b[static_cast<std::size_t>(db - j)];
    return intmat::determinant(s);
}

struct ResultantGrowth {
    double value = 0.0;        // (1/n) log of the product over nonzero factors
    double log_product = 0.0;  // exact log |prod f(omega)|, zero factors excluded
    long long excluded_roots = 0;
};

/// Exact growth oracle for d=1: prod over n-th roots of unity of |f(omega)|
/// equals |Res(u^n - 1, f)| up to unit factors. Cyclotomic factors of f are
/// exact zeros of the product and are excluded, mirroring the periodic-point
/// sum; divisor-wise resultants keep the remaining product exact.
inline ResultantGrowth resultant_growth(const LaurentPoly& f, long long n,
                                        long long cap = kDefaultCyclotomicCap) {
    if (f.dims() != 1) fail("domain", "resultant_growth: dims must be 1");
    if (f.is_zero()) fail("domain", "resultant_growth: zero polynomial");
    if (n < 1) fail("domain", "resultant_growth: n must be positive");
    IntPoly p = laurent_to_intpoly(f);
    intpoly::trim(p);
    ResultantGrowth out;
    double logsum = 0.0;
    for (long long e = 1; e <= n; ++e) {
        if (n % e != 0) continue;
        const auto phi = cyclotomic(e, cap);
        if (intpoly::divides(*phi, p)) {
            out.excluded_roots += intpoly::degree(*phi);
            continue;
        }
        const BigInt r = resultant(*phi, p);
        logsum += big_log_abs(r);
    }
    out.log_product = logsum;
    out.value = logsum / static_cast<double>(n);
    return out;
}

/// Entropy of the principal action: h(alpha_f) = m(f) for nonzero f; the
/// zero polynomial has infinite entropy and is signaled, not returned.
inline MahlerEstimate entropy_principal(const LaurentPoly& f, int grid_n = 0, int threads = 1) {
    if (f.is_zero()) fail("infinite", "infinite entropy: the zero ideal has h = infinity");
    if (grid_n <= 0) {
        switch (f.dims()) {
            case 1: grid_n = 4096; break;
            case 2: grid_n = 512; break;
            case 3: grid_n = 256; break;
            default: grid_n = 48; break;
        }
    }
    return mahler_quadrature(f, grid_n, threads);
}

}  // namespace alab

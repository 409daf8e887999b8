#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "alab/cyclo.hpp"
#include "alab/laurent.hpp"
#include "alab/mahler.hpp"
#include "alab/numeric.hpp"
#include "alab/variety.hpp"

namespace alab {

/// Dense box of indices |n|_inf <= R in lex order.
struct WindowBox {
    int dims = 1;
    int radius = 0;

    int side() const { return 2 * radius + 1; }
    std::size_t size() const {
        std::size_t s = 1;
        for (int j = 0; j < dims; ++j) s *= static_cast<std::size_t>(side());
        return s;
    }
    std::size_t flat(const Exponent& n) const {
        std::size_t idx = 0;
        for (int j = 0; j < dims; ++j) {
            if (n[j] < -radius || n[j] > radius) fail("domain", "WindowBox: index outside window");
            idx = idx * side() + static_cast<std::size_t>(n[j] + radius);
        }
        return idx;
    }
    Exponent unflat(std::size_t idx) const {
        Exponent n(dims);
        for (int j = dims - 1; j >= 0; --j) {
            n[j] = static_cast<int>(idx % side()) - radius;
            idx /= side();
        }
        return n;
    }
};

/// Finite window of Fourier coefficients of g(s)^k / f*(s): the function
/// whose coefficient sequence v satisfies f (*) v = g^k and whose image mod 1
/// is a homoclinic point of the principal action when the sequence is
/// summable. Coefficients are stored for |n|_inf <= radius.
struct HomoclinicWindow {
    LaurentPoly f;
    LaurentPoly multiplier;
    int power = 1;
    WindowBox box;
    int grid_n = 0;
    bool offset = true;           // half-step offset on the first grid axis
    std::vector<Complex> coeffs;  // box.size() entries, lex order
    double alias_estimate = 0.0;  // max probe change under grid doubling; <0 if not probed

    HomoclinicWindow(LaurentPoly ff, LaurentPoly gg) : f(std::move(ff)), multiplier(std::move(gg)) {}

    Complex coeff(const Exponent& n) const { return coeffs[box.flat(n)]; }
};

namespace detail {

/// phi(s) = g(s)^k / f*(s) on the offset grid; errors out if f* vanishes at
/// a node (the caller re-offsets or enlarges the grid). The half-step offset
/// sits on the first axis only: offsetting every axis would cancel in sum
/// coordinates like t1 + t2 and park grid lines on quadratically small
/// values of f*.
class QuotientEvaluator {
public:
    QuotientEvaluator(const LaurentPoly& f, const LaurentPoly& g, int k, int grid)
        : fstar_(f.adjoint(), grid, GridOffset::half_first),
          g_(g, grid, GridOffset::half_first),
          k_(k),
          vanish_floor_(1e-13 * f.l1_norm()) {}

    Complex operator()(std::size_t flat) const {
        const Complex den = fstar_.eval_flat(flat);
        if (std::abs(den) < vanish_floor_)
            fail("grid_zero",
                 "f* vanishes at grid node " + std::to_string(flat) +
                     "; enlarge the grid or re-offset");
        Complex num{1.0, 0.0};
        const Complex gv = g_.eval_flat(flat);
        for (int i = 0; i < k_; ++i) num *= gv;
        return num / den;
    }

private:
    GridEvaluator fstar_;
    GridEvaluator g_;
    int k_;
    double vanish_floor_;
};

/// Window DFT by successive axis reduction: v_n = (1/G^d) sum phi(t_j)
/// prod_a conj-weights. The first stage streams the full grid; later stages
/// contract one grid axis against the window weights each.
template <class Phi>
std::vector<Complex> window_dft(const Phi& phi, int dims, int grid, int radius, int threads) {
    const int side = 2 * radius + 1;
    // weights per axis: e^{-2 pi i (w - radius)(j + off_axis) / grid},
    // contiguous in w; the offset matches GridOffset::half_first.
    auto axis_weights = [&](int axis) {
        std::vector<Complex> weights(static_cast<std::size_t>(grid) * side);
        const double off = axis_offset(GridOffset::half_first, axis);
        for (int j = 0; j < grid; ++j)
            for (int w = 0; w < side; ++w)
                weights[static_cast<std::size_t>(j) * side + w] =
                    std::polar(1.0, -kTwoPi * (w - radius) * (j + off) / grid);
        return weights;
    };
    std::vector<Complex> weights = axis_weights(dims - 1);

    std::size_t prefix_count = 1;
    for (int a = 0; a < dims - 1; ++a) prefix_count *= static_cast<std::size_t>(grid);

    // Stage 0: contract the last axis while streaming phi.
    std::vector<Complex> buf(prefix_count * static_cast<std::size_t>(side));
    {
        const std::size_t block = std::max<std::size_t>(1, 4096 / static_cast<std::size_t>(grid));
        const std::size_t blocks = prefix_count == 0 ? 0 : (prefix_count - 1) / block + 1;
        run_block_workers(blocks, threads, [&](std::size_t b) {
            const std::size_t lo = b * block;
            const std::size_t hi = std::min(prefix_count, lo + block);
            std::vector<Complex> acc(side);
            for (std::size_t p = lo; p < hi; ++p) {
                std::fill(acc.begin(), acc.end(), Complex{0.0, 0.0});
                const std::size_t base = p * static_cast<std::size_t>(grid);
                for (int j = 0; j < grid; ++j) {
                    const Complex v = phi(base + j);
                    const Complex* wrow = &weights[static_cast<std::size_t>(j) * side];
                    for (int w = 0; w < side; ++w) acc[w] += v * wrow[w];
                }
                std::copy(acc.begin(), acc.end(), buf.begin() + p * side);
            }
        });
    }

    // Later stages: contract axis (dims-2-s) against the weights.
    std::size_t done = static_cast<std::size_t>(side);  // window entries accumulated so far
    for (int axis = dims - 2; axis >= 0; --axis) {
        weights = axis_weights(axis);
        prefix_count /= static_cast<std::size_t>(grid);
        std::vector<Complex> next(prefix_count * static_cast<std::size_t>(side) * done);
        for (std::size_t p = 0; p < prefix_count; ++p) {
            for (int j = 0; j < grid; ++j) {
                const Complex* in = &buf[(p * grid + j) * done];
                const Complex* wrow = &weights[static_cast<std::size_t>(j) * side];
                for (int w = 0; w < side; ++w) {
                    Complex* out = &next[(p * side + w) * done];
                    const Complex ww = wrow[w];
                    for (std::size_t q = 0; q < done; ++q) out[q] += ww * in[q];
                }
            }
        }
        buf = std::move(next);
        done *= static_cast<std::size_t>(side);
    }

    double scale = 1.0;
    for (int a = 0; a < dims; ++a) scale /= static_cast<double>(grid);
    for (Complex& c : buf) c *= scale;
    return buf;
}

}  // namespace detail

/// Samples g^k / f* on the half-step-offset grid_n^d grid and inverse-DFTs,
/// keeping the coefficients with |n|_inf <= radius. With alias_probe the
/// result is compared against grid 2*grid_n at up to 16 diagonal probe
/// indices and the largest change recorded.
inline HomoclinicWindow fourier_window(const LaurentPoly& f, const LaurentPoly& g, int power,
                                       int radius, int grid_n, int threads = 1,
                                       bool alias_probe = true) {
    if (f.is_zero()) fail("domain", "fourier_window: f must be nonzero");
    if (f.dims() != g.dims()) fail("domain", "fourier_window: dims mismatch");
    if (power < 1) fail("domain", "fourier_window: power must be >= 1");
    if (radius < 0) fail("domain", "fourier_window: negative radius");
    if (grid_n <= 2 * radius)
        fail("domain", "fourier_window: need grid_n > 2*radius to avoid window aliasing");

    HomoclinicWindow w(f, g);
    w.power = power;
    w.box = WindowBox{f.dims(), radius};
    w.grid_n = grid_n;
    w.offset = true;
    const detail::QuotientEvaluator phi(f, g, power, grid_n);
    w.coeffs = detail::window_dft(phi, f.dims(), grid_n, radius, threads);
    w.alias_estimate = -1.0;

    if (alias_probe) {
        // Up to 16 probes on the two diagonal rays, nearest the window edge.
        std::vector<Exponent> probes;
        for (int r = radius; r >= 1 && static_cast<int>(probes.size()) < 16; --r) {
            probes.emplace_back(Exponent(static_cast<std::size_t>(f.dims()), r));
            if (static_cast<int>(probes.size()) < 16)
                probes.emplace_back(Exponent(static_cast<std::size_t>(f.dims()), -r));
        }
        const detail::QuotientEvaluator phi2(f, g, power, 2 * grid_n);
        const auto fine = detail::window_dft(phi2, f.dims(), 2 * grid_n, radius, threads);
        double worst = 0.0;
        for (const Exponent& n : probes)
            worst = std::max(worst, std::abs(fine[w.box.flat(n)] - w.coeffs[w.box.flat(n)]));
        w.alias_estimate = worst;
    }
    return w;
}

// ----------------------------- closed forms --------------------------------

enum class OracleName { fibonacci, harmonic };

inline BigInt binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

/// Exact coefficient formulas for the two classical fixtures:
/// fibonacci (d=1, f = u^2-u-1, g=1) and harmonic (d=2, f = 2-u-v, g=1).
inline double closed_form_oracle(OracleName name, const Exponent& n) {
    switch (name) {
        case OracleName::fibonacci: {
            if (n.size() != 1) fail("domain", "fibonacci oracle: arity 1 expected");
            const double s5 = std::sqrt(5.0);
            const double lambda = (1.0 + s5) / 2.0;
            const double mu = (1.0 - s5) / 2.0;
            const int idx = n[0];
            if (idx >= 1) return -std::pow(mu, idx - 1) / s5;
            return -std::pow(lambda, idx - 1) / s5;
        }
        case OracleName::harmonic: {
            if (n.size() != 2) fail("domain", "harmonic oracle: arity 2 expected");
            const long long m = -static_cast<long long>(n[0]);
            const long long k = -static_cast<long long>(n[1]);
            if (m < 0 || k < 0) return 0.0;
            const BigInt num = binomial(m + k, k);
            return num.convert_to<double>() / std::ldexp(1.0, static_cast<int>(m + k + 1));
        }
    }
    fail("domain", "closed_form_oracle: unknown oracle");
}

// --------------------------- summability report ----------------------------

struct SummabilityReport {
    std::vector<double> l1_partial_sums;  // over boxes |n|_inf <= r, r = 0..R
    std::vector<double> tail_increments;  // consecutive differences, r = 1..R
    double decay_exponent = 0.0;          // slope of log shell-max vs log r
    double power_fit_residual = 0.0;      // rms residual of the power-law fit
    double exp_fit_residual = 0.0;        // rms residual of the log-linear fit
};

/// l^1 partial sums over growing boxes plus a decay fit along the dominant
/// (diagonal) shells. Power-law vs exponential residuals let callers tell
/// 1/sqrt(n)-type decay from geometric decay.
inline SummabilityReport summability_report(const HomoclinicWindow& w) {
    const int R = w.box.radius;
    if (R < 4) fail("domain", "summability_report: window radius must be >= 4");
    SummabilityReport rep;
    std::vector<double> shell_sum(R + 1, 0.0), shell_max(R + 1, 0.0);
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) {
        const Exponent n = w.box.unflat(i);
        int norm = 0;
        for (int e : n) norm = std::max(norm, e < 0 ? -e : e);
        const double a = std::abs(w.coeffs[i]);
        shell_sum[norm] += a;
        shell_max[norm] = std::max(shell_max[norm], a);
    }
    rep.l1_partial_sums.resize(R + 1);
    double acc = 0.0;
    for (int r = 0; r <= R; ++r) {
        acc += shell_sum[r];
        rep.l1_partial_sums[r] = acc;
    }
    rep.tail_increments.resize(R);
    for (int r = 1; r <= R; ++r) rep.tail_increments[r - 1] = shell_sum[r];

    std::vector<double> xs_log, xs_lin, ys;
    for (int r = 2; r <= R; ++r) {
        if (shell_max[r] < 1e-300) continue;
        xs_log.push_back(std::log(static_cast<double>(r)));
        xs_lin.push_back(static_cast<double>(r));
        ys.push_back(std::log(shell_max[r]));
    }
    if (ys.size() >= 2) {
        const LineFit pw = fit_line(xs_log, ys);
        const LineFit ex = fit_line(xs_lin, ys);
        rep.decay_exponent = pw.slope;
        rep.power_fit_residual = pw.rms_residual;
        rep.exp_fit_residual = ex.rms_residual;
    }
    return rep;
}

/// Acceptance heuristic for a power k, on the l^1 mass added per box
/// doubling: I(a) = l1(2a) - l1(a). Shell sums scaling like r^{-alpha} give
/// I(2a)/I(a) -> 2^{1-alpha}, so summability (alpha > 1) is exactly
/// "doubling increments decrease". The drop factor 1.25 sits between the
/// non-summable boundary (ratio 1, e.g. (u-1)^2/(2-u-v)* with alpha = 1)
/// and the first summable case of the harmonic model ((u-1)^3, alpha = 3/2,
/// ratio sqrt 2 ~ 1.41).
inline constexpr double kIncrementDropFactor = 1.25;

inline bool summability_heuristic(const SummabilityReport& rep) {
    const int R = static_cast<int>(rep.l1_partial_sums.size()) - 1;
    if (R < 8) fail("domain", "summability_heuristic: radius too small");
    const auto& s = rep.l1_partial_sums;
    const double inc1 = s[R / 2] - s[R / 4];
    const double inc2 = s[R] - s[R / 2];
    const double slack = 1e-12 * std::max(1.0, s[R]);
    return inc2 * kIncrementDropFactor <= inc1 + slack;
}

// ------------------------- defining identity check -------------------------

struct VerifyReport {
    double max_residual = 0.0;     // max |(f (*) v)_p - (g^k)_p| over the interior
    double max_off_integer = 0.0;  // max distance of the convolution from Z
    long long interior_count = 0;
};

/// Convolves the adjoint coefficient sequence of f with the window on its
/// interior and checks the result against the integer coefficients of g^k.
inline VerifyReport verify_homoclinic(const HomoclinicWindow& w) {
    const int d = w.f.dims();
    const int R = w.box.radius;
    const Exponent lo = w.f.support_min();
    const Exponent hi = w.f.support_max();
    Exponent plo(d), phi_(d);
    for (int j = 0; j < d; ++j) {
        plo[j] = -R - lo[j];
        phi_[j] = R - hi[j];
        if (plo[j] > phi_[j]) fail("domain", "verify_homoclinic: window too small for supp f");
    }
    const LaurentPoly target = w.multiplier.pow(w.power);
    if (!target.is_zero()) {
        const Exponent tlo = target.support_min();
        const Exponent thi = target.support_max();
        for (int j = 0; j < d; ++j)
            if (tlo[j] < plo[j] || thi[j] > phi_[j])
                fail("domain", "verify_homoclinic: window too small for supp g^k");
    }

    VerifyReport rep;
    Exponent p(plo);
    for (;;) {
        Complex conv{0.0, 0.0};
        for (const auto& [m, c] : w.f.terms()) {
            Exponent q(d);
            for (int j = 0; j < d; ++j) q[j] = p[j] + m[j];
            conv += c.convert_to<double>() * w.coeff(q);
        }
        const double tgt = target.coeff(p).convert_to<double>();
        rep.max_residual = std::max(rep.max_residual, std::abs(conv - Complex(tgt, 0.0)));
        const double off = std::max(std::fabs(conv.real() - std::round(conv.real())),
                                    std::fabs(conv.imag()));
        rep.max_off_integer = std::max(rep.max_off_integer, off);
        ++rep.interior_count;
        int j = d - 1;
        while (j >= 0 && p[j] == phi_[j]) {
            p[j] = plo[j];
            --j;
        }
        if (j < 0) break;
        ++p[j];
    }
    return rep;
}

// ----------------------------- multiplier search ---------------------------

struct MultiplierResult {
    LaurentPoly g;
    int power = 1;
};

namespace detail {

inline std::vector<LaurentPoly> multiplier_templates(const LaurentPoly& f,
                                                     const VarietySample& sample,
                                                     long long torsion_cap) {
    const int d = f.dims();
    std::vector<LaurentPoly> out;
    if (sample.empty()) {
        out.push_back(laurent_constant(d, 1));
        return out;
    }
    // Linear factors u_j^q - 1 anchored at the coordinate denominators of the
    // low-order torsion zeros.
    std::set<long long> denoms;
    for (const TorsionPoint& w : torsion_scan(f, torsion_cap)) {
        for (const Rat& a : w.angles) denoms.insert(a.den);
    }
    for (long long q : denoms)
        for (int j = 1; j <= d; ++j)
            out.push_back(laurent_monomial(d, j, static_cast<int>(q)) - laurent_constant(d, 1));
    if (d >= 2) {
        // Elementary-symmetric template e_{d-1} + e_d (vanishes on the
        // coordinate-circle families that arise from asymmetric fixtures).
        LaurentPoly esym(d);
        for (int skip = 1; skip <= d; ++skip) {
            Exponent m(d, 1);
            m[skip - 1] = 0;
            esym.add_term(m, 1);
        }
        esym.add_term(Exponent(d, 1), 1);
        out.push_back(esym);
        // Pairwise difference product.
        LaurentPoly diff = laurent_constant(d, 1);
        for (int i = 1; i <= d; ++i)
            for (int j = i + 1; j <= d; ++j)
                diff = diff * (laurent_monomial(d, i, 1) - laurent_monomial(d, j, 1));
        out.push_back(diff);
    }
    for (int j = 1; j <= d; ++j) {
        const LaurentPoly der = f.derivative(j);
        if (!der.is_zero()) out.push_back(der);
    }
    const LaurentPoly skew = f - f.adjoint();
    if (!skew.is_zero()) out.push_back(skew);
    return out;
}

inline bool vanishes_on_sample(const LaurentPoly& g, const VarietySample& sample) {
    const double tol = 1e-5 * (1.0 + g.l1_norm());
    for (const VarietyPoint& p : sample.points)
        if (std::abs(g.eval_angles(p.angles)) > tol) return false;
    return true;
}

}  // namespace detail

/// Best-effort search over a finite template family for a multiplier g
/// vanishing on the sampled variety together with the least power k whose
/// windowed l^1 diagnostics pass; `nullopt` when the family is exhausted.
/// No minimality claim is made for k beyond the template family.
inline std::optional<MultiplierResult> multiplier_search(const LaurentPoly& f,
                                                         const VarietySample& sample,
                                                         int max_power, int radius = 0,
                                                         int grid_n = 0, int threads = 1,
                                                         long long torsion_cap = 12) {
    if (max_power < 1) fail("domain", "multiplier_search: max_power must be >= 1");
    const int d = f.dims();
    if (radius <= 0) radius = d >= 3 ? 16 : 32;
    if (grid_n <= 0) grid_n = d >= 3 ? 64 : 256;

    for (const LaurentPoly& g : detail::multiplier_templates(f, sample, torsion_cap)) {
        if (!sample.empty() && !detail::vanishes_on_sample(g, sample)) continue;
        for (int k = 1; k <= max_power; ++k) {
            try {
                const HomoclinicWindow w =
                    fourier_window(f, g, k, radius, grid_n, threads, /*alias_probe=*/false);
                if (summability_heuristic(summability_report(w)))
                    return MultiplierResult{g, k};
            } catch (const Error& e) {
                if (e.kind() == "grid_zero") break;  // f* vanishes on the grid: hopeless here
                throw;
            }
        }
    }
    return std::nullopt;
}

// ------------------------------- symbolic cover ----------------------------

struct CoverImage {
    Exponent lo, hi;                 // valid output box (intersection of shifts)
    std::map<Exponent, double> values;  // torus values in [0,1)
};

/// xi_x(v) = sum_n v_n alpha^{-n}(x) on the window: finite sum of shifted
/// copies of the (real parts of the) homoclinic coefficients, reduced mod 1.
inline CoverImage cover_image(const HomoclinicWindow& w,
                              const std::map<Exponent, long long>& v) {
    if (v.empty()) fail("domain", "cover_image: empty input array");
    const int d = w.f.dims();
    const int R = w.box.radius;
    CoverImage out;
    out.lo.assign(d, -R);
    out.hi.assign(d, R);
    for (const auto& [n, c] : v) {
        if (static_cast<int>(n.size()) != d) fail("domain", "cover_image: arity mismatch");
        for (int j = 0; j < d; ++j) {
            out.lo[j] = std::max(out.lo[j], -R + n[j]);
            out.hi[j] = std::min(out.hi[j], R + n[j]);
        }
    }
    for (int j = 0; j < d; ++j)
        if (out.lo[j] > out.hi[j]) fail("domain", "cover_image: shifts exhaust the window");

    Exponent k(out.lo);
    for (;;) {
        double acc = 0.0;
        for (const auto& [n, c] : v) {
            Exponent q(d);
            for (int j = 0; j < d; ++j) q[j] = k[j] - n[j];
            acc += static_cast<double>(c) * w.coeff(q).real();
        }
        out.values[k] = detail::wrap_unit(acc);
        int j = d - 1;
        while (j >= 0 && k[j] == out.hi[j]) {
            k[j] = out.lo[j];
            --j;
        }
        if (j < 0) break;
        ++k[j];
    }
    return out;
}

}  // namespace alab

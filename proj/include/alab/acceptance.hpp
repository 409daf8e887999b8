#pragma once

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "alab/config.hpp"
#include "alab/dioph.hpp"
#include "alab/homoclinic.hpp"
#include "alab/lattice.hpp"
#include "alab/laurent.hpp"
#include "alab/mahler.hpp"
#include "alab/periodic.hpp"
#include "alab/variety.hpp"

// The paper-example acceptance suite: every criterion pinned with its
// tolerance, one result row per criterion. Output never contains wall-clock
// values, so repeated runs with the same seed serialize byte-identically;
// the runtime caps still gate the pass flags.

namespace alab::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string example;  // paper-example tag(s), "-" when none applies
    bool pass = false;
    std::vector<std::string> details;
};

struct Report {
    std::vector<CriterionResult> rows;

    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

namespace detail {

inline std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline constexpr double kSmythConstant = 0.4262783988;  // 7 zeta(3) / 2 pi^2

inline CriterionResult mahler_closed_forms(const RunConfig& cfg) {
    CriterionResult r{1, "Mahler closed forms (quadrature)", "4.1,4.6"};
    using clock = std::chrono::steady_clock;

    const auto t0 = clock::now();
    const double smyth =
        mahler_quadrature(LaurentPoly::parse("1+u1+u2+u3", 3), 256, cfg.threads).value;
    const double smyth_time = detail::seconds_since(t0);

    const auto t1 = clock::now();
    const double golden =
        mahler_quadrature(LaurentPoly::parse("u1^2-u1-1", 1), 4096, cfg.threads).value;
    const double golden_time = detail::seconds_since(t1);

    const double golden_target = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    const bool smyth_ok = std::fabs(smyth - kSmythConstant) <= 2e-3;
    const bool golden_ok = std::fabs(golden - golden_target) <= 1e-4;
    const bool time_ok = smyth_time < 60.0 && golden_time < 60.0;
    r.pass = smyth_ok && golden_ok && time_ok;
    r.details.push_back("m(1+u+v+w) = " + detail::num(smyth) + ", |err| = " +
                        detail::num(std::fabs(smyth - kSmythConstant)) + " (tol 2e-3)");
    r.details.push_back("m(u^2-u-1) = " + detail::num(golden) + ", |err| = " +
                        detail::num(std::fabs(golden - golden_target)) + " (tol 1e-4)");
    if (!time_ok) r.details.push_back("runtime cap 60 s exceeded");
    return r;
}

inline CriterionResult torsion_census(const RunConfig& cfg) {
    CriterionResult r{2, "Torsion census 3n-3 / 0 on nZ^3", "4.6"};
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const LaurentPoly f = LaurentPoly::parse("1+u1+u2+u3", 3);
    bool ok = true;
    for (long long n = 1; n <= 20; ++n) {
        const long long got =
            fix_component_dim(f, SubgroupLattice::scaled(3, n), cfg.threads);
        const long long want = n % 2 == 0 ? 3 * n - 3 : 0;
        if (got != want) {
            ok = false;
            r.details.push_back("n = " + std::to_string(n) + ": got " + std::to_string(got) +
                                ", want " + std::to_string(want));
        }
    }
    const double t = detail::seconds_since(t0);
    if (t >= 120.0) {
        ok = false;
        r.details.push_back("runtime cap 120 s exceeded");
    }
    if (ok) r.details.push_back("all n <= 20 match 3n-3 (even) / 0 (odd)");
    r.pass = ok;
    return r;
}

inline CriterionResult exact_order_30_scan(const RunConfig&) {
    CriterionResult r{3, "Exact order-30 torsion scan", "4.4"};
    const LaurentPoly f = LaurentPoly::parse("3-u1-u1^-1-u2-u2^-1", 2);
    const auto hits = torsion_scan(f, 30);
    std::vector<TorsionPoint> want;
    want.push_back(TorsionPoint::from_angles({Rat(1, 6), Rat(0, 1)}));
    want.push_back(TorsionPoint::from_angles({Rat(5, 6), Rat(0, 1)}));
    want.push_back(TorsionPoint::from_angles({Rat(0, 1), Rat(1, 6)}));
    want.push_back(TorsionPoint::from_angles({Rat(0, 1), Rat(5, 6)}));
    std::sort(want.begin(), want.end());
    r.pass = hits == want;
    std::string pts;
    for (const TorsionPoint& w : hits) pts += w.str() + " ";
    r.details.push_back("scan found " + std::to_string(hits.size()) + " points: " + pts);
    return r;
}

inline CriterionResult d1_exact_growth(const RunConfig& cfg) {
    CriterionResult r{4, "d=1 exact growth of u-2 vs big-integer 2^n-1", "-"};
    const LaurentPoly f = LaurentPoly::parse("u1-2", 1);
    bool ok = true;
    double worst_gate = 0.0, worst_rel = 0.0;
    for (long long n = 1; n <= 40; ++n) {
        const double sum = fix_log_count(f, SubgroupLattice::scaled(1, n), cfg.threads);
        const double rate = sum / static_cast<double>(n);
        const double exact =
            big_log_abs(boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(n)) - 1) /
            static_cast<double>(n);
        const double gate = std::fabs(rate - std::log(2.0)) / std::ldexp(4.0, -static_cast<int>(n));
        const double rel = std::fabs(rate - exact) / std::max(1.0, std::fabs(exact));
        worst_gate = std::max(worst_gate, gate);
        worst_rel = std::max(worst_rel, rel);
        if (gate > 1.0 || rel > 1e-9) ok = false;
    }
    r.pass = ok;
    r.details.push_back("max |rate - log 2| / 2^{-n+2} = " + detail::num(worst_gate) +
                        " (must be <= 1)");
    r.details.push_back("max float-vs-exact relative error = " + detail::num(worst_rel) +
                        " (tol 1e-9)");
    return r;
}

inline CriterionResult homoclinic_closed_forms(const RunConfig& cfg) {
    CriterionResult r{5, "Homoclinic windows vs closed forms", "4.1,4.3"};
    const LaurentPoly harm = LaurentPoly::parse("2-u1-u2", 2);
    const LaurentPoly one2 = laurent_constant(2, 1);
    auto window_error = [&](int grid) {
        const HomoclinicWindow w =
            fourier_window(harm, one2, 1, 8, grid, cfg.threads, /*alias_probe=*/grid == 4096);
        double worst = 0.0;
        for (std::size_t i = 0; i < w.coeffs.size(); ++i)
            worst = std::max(worst, std::abs(w.coeffs[i] -
                                             Complex(closed_form_oracle(OracleName::harmonic,
                                                                        w.box.unflat(i)),
                                                     0.0)));
        return worst;
    };
    const double e1 = window_error(4096);
    const double e2 = window_error(8192);

    const HomoclinicWindow wf =
        fourier_window(LaurentPoly::parse("u1^2-u1-1", 1), laurent_constant(1, 1), 1, 8, 4096,
                       cfg.threads, false);
    double fib_err = 0.0;
    for (std::size_t i = 0; i < wf.coeffs.size(); ++i)
        fib_err = std::max(fib_err, std::abs(wf.coeffs[i] -
                                             Complex(closed_form_oracle(OracleName::fibonacci,
                                                                        wf.box.unflat(i)),
                                                     0.0)));

    const bool harm_ok = e1 <= 1e-2;
    const bool halve_ok = e2 <= 0.6 * e1;
    const bool fib_ok = fib_err <= 1e-6;
    r.pass = harm_ok && halve_ok && fib_ok;
    r.details.push_back("harmonic max err at 4096 = " + detail::num(e1) + " (tol 1e-2)");
    r.details.push_back("harmonic max err at 8192 = " + detail::num(e2) + " (halving: <= 0.6x)");
    r.details.push_back("fibonacci max err at 4096 = " + detail::num(fib_err) + " (tol 1e-6)");
    return r;
}

inline CriterionResult homoclinic_identity(const RunConfig& cfg) {
    CriterionResult r{6, "Homoclinic defining identity f (*) v = g^k", "4.1,4.3"};
    const HomoclinicWindow wf =
        fourier_window(LaurentPoly::parse("u1^2-u1-1", 1), laurent_constant(1, 1), 1, 8, 2048,
                       cfg.threads, false);
    const double fib_res = verify_homoclinic(wf).max_residual;

    const LaurentPoly harm = LaurentPoly::parse("2-u1-u2", 2);
    const LaurentPoly g3 = LaurentPoly::parse("u1-1", 2).pow(3);
    const bool g3_coeffs = g3.coeff({3, 0}) == 1 && g3.coeff({2, 0}) == -3 &&
                           g3.coeff({1, 0}) == 3 && g3.coeff({0, 0}) == -1;
    const HomoclinicWindow wh = fourier_window(harm, g3, 1, 8, 1024, cfg.threads, false);
    const double harm_res = verify_homoclinic(wh).max_residual;

    r.pass = fib_res <= 1e-6 && harm_res <= 1e-6 && g3_coeffs;
    r.details.push_back("fibonacci interior residual = " + detail::num(fib_res) + " (tol 1e-6)");
    r.details.push_back("(u-1)^3 interior residual = " + detail::num(harm_res) + " (tol 1e-6)");
    r.details.push_back(std::string("(u-1)^3 coefficient line {1,-3,3,-1}: ") +
                        (g3_coeffs ? "confirmed" : "MISMATCH"));
    return r;
}

inline CriterionResult summability_contrast(const RunConfig& cfg) {
    CriterionResult r{7, "Summability: decay exponent and 3x increments", "4.3"};
    const LaurentPoly harm = LaurentPoly::parse("2-u1-u2", 2);
    const HomoclinicWindow w1 =
        fourier_window(harm, laurent_constant(2, 1), 1, 8, 4096, cfg.threads, false);
    const SummabilityReport rep1 = summability_report(w1);
    const bool exponent_ok = rep1.decay_exponent >= -0.6 && rep1.decay_exponent <= -0.4;

    const HomoclinicWindow w3 =
        fourier_window(harm, LaurentPoly::parse("u1-1", 2), 3, 32, 256, cfg.threads, false);
    const SummabilityReport rep3 = summability_report(w3);
    // tail_increments[r-1] is the l^1 mass added at box radius r; across the
    // final two box doublings (R/4 -> R) it must drop by at least 3x.
    const int R = static_cast<int>(rep3.l1_partial_sums.size()) - 1;
    const double inc_early = rep3.tail_increments[R / 4 - 1];
    const double inc_late = rep3.tail_increments[R - 1];
    const bool inc_ok = inc_late * 3.0 <= inc_early;

    r.pass = exponent_ok && inc_ok;
    r.details.push_back("g=1 diagonal decay exponent = " + detail::num(rep1.decay_exponent) +
                        " (want within [-0.6,-0.4])");
    r.details.push_back("(u-1)^3 tail increment at box R/4 = " + detail::num(inc_early) +
                        ", at box R = " + detail::num(inc_late) + " (want >= 3x drop)");
    return r;
}

inline CriterionResult classification_matrix(const RunConfig&) {
    CriterionResult r{8, "Atoral/toral classification matrix", "4.1,4.2,4.3,4.4,4.6,4.7,4.8"};
    struct Fixture {
        const char* tag;
        const char* text;
        int dims;
        Verdict want;
    };
    const Fixture fixtures[] = {
        {"4.1", "u1^2-u1-1", 1, Verdict::atoral},
        {"4.2", "u1^4-u1^3-u1^2-u1+1", 1, Verdict::toral},
        {"4.3", "2-u1-u2", 2, Verdict::atoral},
        {"4.4", "3-u1-u1^-1-u2-u2^-1", 2, Verdict::toral},
        {"4.6", "1+u1+u2+u3", 3, Verdict::atoral},
        {"4.7", "2+u1+u2+u3", 3, Verdict::atoral},
        {"4.8",
         "23+u1^2+u1^-2-9u1-9u1^-1+u2^2+u2^-2-9u2-9u2^-1+2u1u2+2u1^-1u2^-1+2u1u2^-1+2u1^-1u2", 2,
         Verdict::toral},
    };
    bool ok = true;
    for (const Fixture& fx : fixtures) {
        const AtoralVerdict v = classify_atoral(LaurentPoly::parse(fx.text, fx.dims));
        const bool match = v.verdict == fx.want;
        ok = ok && match;
        r.details.push_back(std::string(fx.tag) + ": " + to_string(v.verdict) + " (" +
                            to_string(v.reason) + ")" + (match ? "" : "  <-- MISMATCH"));
    }
    r.pass = ok;
    return r;
}

inline CriterionResult slice_lemma_suite(const RunConfig& cfg) {
    CriterionResult r{9, "Slice lemma bound on 200 random (Gamma, m)", "-"};
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long long> entry(-6, 6);
    long long violations = 0;
    int tested = 0;
    while (tested < 200) {
        const int d = 2 + static_cast<int>(rng() % 2);
        std::vector<std::vector<long long>> b(d, std::vector<long long>(d));
        for (auto& row : b)
            for (auto& v : row) v = entry(rng);
        std::vector<long long> m(d);
        bool nonzero = false;
        for (auto& v : m) {
            v = entry(rng);
            nonzero |= v != 0;
        }
        if (!nonzero) continue;
        try {
            const SubgroupLattice g(d, b);
            if (g.index() > 20000) continue;
            const long long slice = g.slice_count(Subtorus{m});
            long long sup = 0;
            for (long long v : m) sup = std::max(sup, std::llabs(v));
            // slice <= (|m| / <Gamma>) |Omega|, exact integer comparison
            if (slice * g.norm() > sup * g.index()) ++violations;
            ++tested;
        } catch (const Error&) {
            continue;  // singular draw
        }
    }
    r.pass = violations == 0;
    r.details.push_back("tested 200 random pairs, violations = " + std::to_string(violations));
    return r;
}

inline CriterionResult growth_trend(const RunConfig& cfg) {
    CriterionResult r{10, "Growth convergence trend for 1+u+v+w", "4.6"};
    const LaurentPoly f = LaurentPoly::parse("1+u1+u2+u3", 3);
    std::vector<SubgroupLattice> gammas;
    for (long long n = 3; n <= 21; n += 2) gammas.push_back(SubgroupLattice::scaled(3, n));
    const GrowthTable t = growth_series(f, gammas, 256, cfg.threads);
    const auto err = [&](std::size_t i) {
        return std::fabs(t.rows[i].rate - kSmythConstant);
    };
    const std::size_t last = t.rows.size() - 1;
    auto fluct = [&](std::size_t lo) {
        double mn = t.rows[lo].rate, mx = t.rows[lo].rate;
        for (std::size_t i = lo; i < lo + 3; ++i) {
            mn = std::min(mn, t.rows[i].rate);
            mx = std::max(mx, t.rows[i].rate);
        }
        return mx - mn;
    };
    const bool err_ok = err(last) < err(0);
    const bool fluct_ok = fluct(last - 2) < fluct(0);
    r.pass = err_ok && fluct_ok;
    for (const GrowthRow& row : t.rows)
        r.details.push_back("n = " + std::to_string(row.gamma_norm) + ": rate = " +
                            detail::num(row.rate) + ", excluded = " +
                            std::to_string(row.excluded_zeros));
    r.details.push_back("|rate-target| at n=21: " + detail::num(err(last)) + " vs at n=3: " +
                        detail::num(err(0)));
    r.details.push_back("fluctuation last three " + detail::num(fluct(last - 2)) +
                        " vs first three " + detail::num(fluct(0)));
    return r;
}

inline CriterionResult gelfond_scan(const RunConfig&) {
    CriterionResult r{11, "Gelfond scan of u^4-u^3-u^2-u+1", "4.2"};
    const GelfondTable t =
        gelfond_table(LaurentPoly::parse("u1^4-u1^3-u1^2-u1+1", 1), 512, 0.05);
    r.pass = t.violations == 0 && !t.degenerate;
    r.details.push_back("tail violations (n in (256,512]) = " + std::to_string(t.violations));
    r.details.push_back("pointwise below-bound rows = " + std::to_string(t.below_bound_count) +
                        ", last at n = " + std::to_string(t.last_below_n) +
                        " (small-n rows sit below e^{-eps n} for every unit lambda;"
                        " the inequality is asymptotic)");
    return r;
}

inline Report run_criteria_1_to_11(const RunConfig& cfg) {
    Report rep;
    rep.rows.push_back(mahler_closed_forms(cfg));
    rep.rows.push_back(torsion_census(cfg));
    rep.rows.push_back(exact_order_30_scan(cfg));
    rep.rows.push_back(d1_exact_growth(cfg));
    rep.rows.push_back(homoclinic_closed_forms(cfg));
    rep.rows.push_back(homoclinic_identity(cfg));
    rep.rows.push_back(summability_contrast(cfg));
    rep.rows.push_back(classification_matrix(cfg));
    rep.rows.push_back(slice_lemma_suite(cfg));
    rep.rows.push_back(growth_trend(cfg));
    rep.rows.push_back(gelfond_scan(cfg));
    return rep;
}

inline std::string render_criteria(const Report& rep) {
    std::string out;
    for (const CriterionResult& r : rep.rows) {
        out += "criterion " + std::to_string(r.id) + " [" + (r.pass ? "PASS" : "FAIL") + "] " +
               r.name + "\n";
        for (const std::string& d : r.details) out += "    " + d + "\n";
    }
    out += rep.all_pass() ? "ALL CRITERIA PASS\n" : "SOME CRITERIA FAIL\n";
    return out;
}

/// Pass/fail matrix keyed to the paper-example tags.
inline std::string render_fixture_matrix(const Report& rep) {
    const char* tags[] = {"4.1", "4.2", "4.3", "4.4", "4.6", "4.7", "4.8", "-"};
    std::string out = "example | status | criteria\n";
    for (const char* tag : tags) {
        bool any = false, pass = true;
        std::string ids;
        for (const CriterionResult& r : rep.rows) {
            if (r.example.find(tag) == std::string::npos) continue;
            any = true;
            pass = pass && r.pass;
            if (!ids.empty()) ids += ",";
            ids += std::to_string(r.id);
        }
        if (!any) continue;
        out += std::string(tag) + "     | " + (pass ? "PASS" : "FAIL") + "   | " + ids + "\n";
    }
    return out;
}

/// Full fixtures run: criteria 1-11 plus the in-process determinism check
/// (the entire suite recomputed from scratch and byte-compared).
inline Report run_fixtures(const RunConfig& cfg) {
    Report rep = run_criteria_1_to_11(cfg);
    const std::string first = render_criteria(rep) + render_fixture_matrix(rep);
    const Report again = run_criteria_1_to_11(cfg);
    const std::string second = render_criteria(again) + render_fixture_matrix(again);
    CriterionResult det{12, "Determinism: suite recomputed byte-identically", "-"};
    det.pass = first == second;
    det.details.push_back(det.pass ? "two in-process runs serialize identically"
                                   : "RERUN DIFFERS");
    rep.rows.push_back(std::move(det));
    return rep;
}

}  // namespace alab::acceptance

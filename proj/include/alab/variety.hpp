#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alab/cyclo.hpp"
#include "alab/laurent.hpp"
#include "alab/lattice.hpp"
#include "alab/mahler.hpp"

namespace alab {

struct VarietyPoint {
    std::vector<double> angles;  // in [0,1)^d
    double residual = 0.0;       // |f(e^{2 pi i t})|
};

/// Refined point cloud approximating U(f) on the angle torus. Resolution
/// error of any distance computed against it is bounded by the scan spacing
/// plus the refinement residual.
struct VarietySample {
    std::vector<VarietyPoint> points;
    int grid_n = 0;
    double tol = 0.0;
    bool refined = false;

    bool empty() const { return points.empty(); }
};

namespace detail {

inline double wrap_unit(double t) {
    t -= std::floor(t);
    if (t >= 1.0) t -= 1.0;
    return t;
}

/// Shortest signed representative of a - b on the angle circle.
inline double wrap_delta(double a, double b) {
    double d = a - b;
    d -= std::round(d);
    return d;
}

/// f and its angle-gradient: df/dt_j = 2 pi i * sum m_j f_m e^{2 pi i m t}.
inline void eval_with_gradient(const LaurentPoly& f, const std::vector<double>& t,
                               Complex& value, std::vector<Complex>& grad) {
    const int d = f.dims();
    value = {0.0, 0.0};
    grad.assign(d, {0.0, 0.0});
    for (const auto& [m, c] : f.terms()) {
        double phase = 0.0;
        for (int j = 0; j < d; ++j) phase += m[j] * t[j];
        const Complex e = std::polar(c.convert_to<double>(), kTwoPi * phase);
        value += e;
        for (int j = 0; j < d; ++j)
            if (m[j] != 0) grad[j] += Complex(0.0, kTwoPi * m[j]) * e;
    }
}

/// One damped Gauss-Newton step on |f|^2 seen as two real equations in the
/// d angle unknowns; returns false when no decrease could be found.
inline bool gauss_newton_step(const LaurentPoly& f, std::vector<double>& t, double& fabs2) {
    const int d = f.dims();
    Complex v;
    std::vector<Complex> g;
    eval_with_gradient(f, t, v, g);
    fabs2 = std::norm(v);
    // Normal equations: (J^T J + lambda I) s = -J^T r with rows Re f, Im f.
    std::array<std::array<double, 8>, 8> a{};
    std::array<double, 8> b{};
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
            a[i][j] = g[i].real() * g[j].real() + g[i].imag() * g[j].imag();
        b[i] = -(g[i].real() * v.real() + g[i].imag() * v.imag());
    }
    double trace = 0.0;
    for (int i = 0; i < d; ++i) trace += a[i][i];
    const double damp = 1e-12 * (trace > 0 ? trace : 1.0);
    for (int i = 0; i < d; ++i) a[i][i] += damp;
    // Gaussian elimination with partial pivoting (d <= 8).
    std::array<int, 8> piv{};
    for (int i = 0; i < d; ++i) piv[i] = i;
    for (int col = 0; col < d; ++col) {
        int best = col;
        for (int r = col + 1; r < d; ++r)
            if (std::fabs(a[piv[r]][col]) > std::fabs(a[piv[best]][col])) best = r;
        std::swap(piv[col], piv[best]);
        const double p = a[piv[col]][col];
        if (p == 0.0) return false;
        for (int r = col + 1; r < d; ++r) {
            const double m = a[piv[r]][col] / p;
            if (m == 0.0) continue;
            for (int cc = col; cc < d; ++cc) a[piv[r]][cc] -= m * a[piv[col]][cc];
            b[piv[r]] -= m * b[piv[col]];
        }
    }
    std::array<double, 8> s{};
    for (int i = d - 1; i >= 0; --i) {
        double acc = b[piv[i]];
        for (int j = i + 1; j < d; ++j) acc -= a[piv[i]][j] * s[j];
        s[i] = acc / a[piv[i]][i];
    }
    // Backtracking line search on |f|^2.
    double step = 1.0;
    for (int half = 0; half < 12; ++half, step *= 0.5) {
        std::vector<double> cand(t);
        for (int j = 0; j < d; ++j) cand[j] = wrap_unit(cand[j] + step * s[j]);
        const double c2 = std::norm(f.eval_angles(cand));
        if (c2 < fabs2) {
            t = std::move(cand);
            fabs2 = c2;
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Coarse |f|^2 scan on the angle torus followed by damped Gauss-Newton
/// refinement per candidate node; points with residual <= tol are kept,
/// deduplicated at resolution 1/(4 grid_n). An empty sample is a valid result.
inline VarietySample sample_variety(const LaurentPoly& f, int grid_n, int refine_steps = 40,
                                    double tol = 1e-7) {
    if (f.is_zero()) fail("domain", "sample_variety: zero polynomial");
    if (grid_n < 2) fail("domain", "sample_variety: grid too small");
    const int d = f.dims();
    const GridEvaluator ev(f, grid_n, GridOffset::none);
    // Any point of U(f) within one cell diagonal of a node keeps |f| at the
    // node below lip * d / grid_n; such nodes seed the refinement.
    const double seed_band = std::max(tol * 4.0, f.lipschitz() * d / grid_n);

    std::map<std::vector<long long>, VarietyPoint> dedup;
    const std::size_t n = ev.node_count();
    for (std::size_t flat = 0; flat < n; ++flat) {
        if (std::abs(ev.eval_flat(flat)) > seed_band) continue;
        std::vector<double> t(d);
        std::size_t rest = flat;
        for (int j = d - 1; j >= 0; --j) {
            t[j] = static_cast<double>(rest % grid_n) / grid_n;
            rest /= grid_n;
        }
        double f2 = std::norm(f.eval_angles(t));
        for (int it = 0; it < refine_steps && f2 > tol * tol * 1e-4; ++it)
            if (!detail::gauss_newton_step(f, t, f2)) break;
        const double res = std::sqrt(f2);
        if (res > tol) continue;
        std::vector<long long> cell(d);
        for (int j = 0; j < d; ++j)
            cell[j] = static_cast<long long>(std::floor(detail::wrap_unit(t[j]) * 4.0 * grid_n));
        auto it = dedup.find(cell);
        if (it == dedup.end() || res < it->second.residual)
            dedup[cell] = VarietyPoint{t, res};
    }

    VarietySample s;
    s.grid_n = grid_n;
    s.tol = tol;
    s.refined = true;
    s.points.reserve(dedup.size());
    for (auto& [cell, pt] : dedup) s.points.push_back(std::move(pt));
    return s;
}

namespace detail {

/// Eigenvalues of a symmetric d x d matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(std::array<std::array<double, 8>, 8> a, int d) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < d; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(d);
    for (int i = 0; i < d; ++i) ev[i] = a[i][i];
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

}  // namespace detail

/// Local dimension at one sample point: PCA of the neighbors within `radius`
/// (angle metric with wraparound); counts singular values above
/// `rel_threshold * radius`.
inline int local_dimension(const VarietySample& s, std::size_t center, double radius,
                           double rel_threshold = 0.15) {
    const int d = static_cast<int>(s.points[center].angles.size());
    std::array<std::array<double, 8>, 8> cov{};
    std::vector<double> mean(d, 0.0);
    std::vector<std::vector<double>> deltas;
    for (const VarietyPoint& p : s.points) {
        std::vector<double> delta(d);
        double dist2 = 0.0;
        for (int j = 0; j < d; ++j) {
            delta[j] = detail::wrap_delta(p.angles[j], s.points[center].angles[j]);
            dist2 += delta[j] * delta[j];
        }
        if (dist2 > radius * radius) continue;
        for (int j = 0; j < d; ++j) mean[j] += delta[j];
        deltas.push_back(std::move(delta));
    }
    if (deltas.size() < 2) return 0;
    for (int j = 0; j < d; ++j) mean[j] /= static_cast<double>(deltas.size());
    for (const auto& delta : deltas)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                cov[i][j] += (delta[i] - mean[i]) * (delta[j] - mean[j]);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cov[i][j] /= static_cast<double>(deltas.size());
    const auto eig = detail::symmetric_eigenvalues(cov, d);
    const double cut = rel_threshold * radius;
    int dim = 0;
    for (double e : eig)
        if (e > 0 && std::sqrt(e) > cut) ++dim;
    return dim;
}

namespace detail {

/// Connected components of the sample under the radius graph.
inline std::vector<std::vector<std::size_t>> clusters(const VarietySample& s, double radius) {
    const std::size_t n = s.points.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const int d = static_cast<int>(s.points.empty() ? 0 : s.points[0].angles.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double dist2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double delta = wrap_delta(s.points[i].angles[a], s.points[j].angles[a]);
                dist2 += delta * delta;
            }
            if (dist2 <= radius * radius) parent[find(i)] = find(j);
        }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

}  // namespace detail

struct ClusterDimension {
    std::vector<std::size_t> members;
    int dim = 0;
};

/// Per-cluster dimension: the upper median of the members' local PCA
/// dimensions. The median keeps measure-zero artifacts (curve crossings,
/// square-root cusps) from inflating a cluster's dimension.
inline std::vector<ClusterDimension> cluster_dimensions(const VarietySample& s) {
    if (!s.refined) fail("domain", "cluster_dimensions: sample must be refined");
    const double radius = 4.0 / s.grid_n;
    std::vector<ClusterDimension> out;
    for (auto& members : detail::clusters(s, radius)) {
        ClusterDimension c;
        std::vector<int> dims;
        dims.reserve(members.size());
        for (std::size_t i : members) dims.push_back(local_dimension(s, i, radius));
        std::sort(dims.begin(), dims.end());
        c.dim = dims[dims.size() / 2];
        c.members = std::move(members);
        out.push_back(std::move(c));
    }
    return out;
}

/// Maximum cluster dimension over the sample (PCA heuristic; -1 encodes the
/// empty sample, dim(empty) = -infinity).
inline int dimension_estimate(const VarietySample& s) {
    if (!s.refined) fail("domain", "dimension_estimate: sample must be refined");
    if (s.points.empty()) return -1;
    int best = 0;
    for (const ClusterDimension& c : cluster_dimensions(s)) best = std::max(best, c.dim);
    return best;
}

enum class Verdict { atoral, toral, unknown };
enum class VerdictReason {
    empty_variety,
    asymmetric,
    dimension_le_d_minus_2,
    dimension_d_minus_1,
    inconclusive
};

struct AtoralVerdict {
    Verdict verdict = Verdict::unknown;
    VerdictReason reason = VerdictReason::inconclusive;
    int dim_estimate = -1;  // -1 encodes empty / not computed
    bool dim_computed = false;
};

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::atoral: return "atoral";
        case Verdict::toral: return "toral";
        default: return "unknown";
    }
}

inline const char* to_string(VerdictReason r) {
    switch (r) {
        case VerdictReason::empty_variety: return "empty_variety";
        case VerdictReason::asymmetric: return "asymmetric";
        case VerdictReason::dimension_le_d_minus_2: return "dimension_le_d_minus_2";
        case VerdictReason::dimension_d_minus_1: return "dimension_d_minus_1";
        default: return "inconclusive";
    }
}

inline int default_scan_grid(int dims) {
    switch (dims) {
        case 1: return 512;
        case 2: return 64;
        case 3: return 32;
        default: return 12;
    }
}

/// Atoral/toral decision ladder for irreducible f (irreducibility is
/// asserted by the caller): empty variety => atoral; not essentially
/// symmetric => atoral; otherwise the PCA dimension against d-2 / d-1,
/// with `unknown` when the maximal dimension looks unstable.
inline AtoralVerdict classify_atoral(const LaurentPoly& f, int grid_n = 0) {
    if (f.is_zero()) fail("domain", "classify_atoral: zero polynomial");
    const int d = f.dims();
    if (grid_n <= 0) grid_n = default_scan_grid(d);
    AtoralVerdict out;

    const VarietySample s = sample_variety(f, grid_n);
    if (s.empty()) {
        out.verdict = Verdict::atoral;
        out.reason = VerdictReason::empty_variety;
        out.dim_estimate = -1;
        out.dim_computed = true;
        return out;
    }
    if (essential_symmetry(f).kind == SymmetryKind::none) {
        out.verdict = Verdict::atoral;
        out.reason = VerdictReason::asymmetric;
        return out;
    }

    int best = 0;
    std::size_t witness_size = 0;  // members of the cluster attaining the max
    for (const ClusterDimension& c : cluster_dimensions(s)) {
        if (c.dim > best || witness_size == 0) {
            best = std::max(best, c.dim);
            witness_size = c.members.size();
        } else if (c.dim == best) {
            witness_size = std::max(witness_size, c.members.size());
        }
    }
    out.dim_estimate = best;
    out.dim_computed = true;
    if (best <= d - 2) {
        out.verdict = Verdict::atoral;
        out.reason = VerdictReason::dimension_le_d_minus_2;
    } else if (best == d - 1 && (best == 0 || witness_size >= 5)) {
        out.verdict = Verdict::toral;
        out.reason = VerdictReason::dimension_d_minus_1;
    } else {
        // A positive-dimension claim from a handful of points is not trusted.
        out.verdict = Verdict::unknown;
        out.reason = VerdictReason::inconclusive;
    }
    return out;
}

/// All torsion points of order <= max_order lying exactly on U(f): numeric
/// prefilter on each candidate, exact confirmation through the cyclotomic
/// layer. Deterministic (sorted) output.
inline std::vector<TorsionPoint> torsion_scan(const LaurentPoly& f, long long max_order,
                                              long long cap = kDefaultCyclotomicCap) {
    if (f.is_zero()) fail("domain", "torsion_scan: zero polynomial");
    if (max_order < 1 || max_order > cap)
        fail("domain", "torsion_scan: max_order outside configured cap");
    const int d = f.dims();
    const double band = zero_band(f);
    std::vector<TorsionPoint> hits;
    for (long long n = 1; n <= max_order; ++n) {
        std::vector<long long> k(d, 0);
        for (;;) {
            long long order = 1;
            for (int j = 0; j < d; ++j) {
                const long long g = gcd_ll(k[j], n);
                order = lcm_ll(order, n / (g == 0 ? n : g));
            }
            if (order == n) {
                std::vector<Rat> angles(d);
                for (int j = 0; j < d; ++j) angles[j] = Rat(k[j], n);
                TorsionPoint w = TorsionPoint::from_angles(std::move(angles));
                if (std::abs(f.eval_angles(w.angle_doubles())) <= band &&
                    torsion_eval(f, w, cap).exact_zero)
                    hits.push_back(std::move(w));
            }
            int j = 0;
            while (j < d && k[j] == n - 1) k[j++] = 0;
            if (j == d) break;
            ++k[j];
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

/// Chordal (Euclidean in C^d) distance between angle vectors.
inline double chordal_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const Complex d = std::polar(1.0, kTwoPi * a[j]) - std::polar(1.0, kTwoPi * b[j]);
        s += std::norm(d);
    }
    return std::sqrt(s);
}

inline double distance_to_sample(const std::vector<double>& angles, const VarietySample& s) {
    double best = std::numeric_limits<double>::infinity();
    for (const VarietyPoint& p : s.points)
        best = std::min(best, chordal_distance(angles, p.angles));
    return best;
}

struct ProximityCounts {
    long long near_variety = 0;  // M_f(Omega_Gamma, r)
    long long small_value = 0;   // N_f(Omega_Gamma, r)
    double lipschitz = 0.0;      // K with M_f(., r) <= N_f(., K r)
};

/// The two counting functions of the diophantine experiments. Exact zeros
/// are excluded from both counts; distance is measured against the refined
/// sample as the U(f) proxy.
inline ProximityCounts proximity_counts(const LaurentPoly& f, const SubgroupLattice& gamma,
                                        double r, const VarietySample& sample,
                                        long long cap = kDefaultCyclotomicCap) {
    if (r <= 0) fail("domain", "proximity_counts: r must be positive");
    if (!sample.refined) fail("domain", "proximity_counts: sample must be refined");
    ProximityCounts out;
    out.lipschitz = f.lipschitz();
    const double band = zero_band(f);
    const DualRange dual = gamma.dual();
    for (std::size_t i = 0; i < dual.size(); ++i) {
        const TorsionPoint w = dual[i];
        const std::vector<double> t = w.angle_doubles();
        double a = std::abs(f.eval_angles(t));
        if (a <= band) {
            const CycloValue cv = torsion_eval(f, w, cap);
            if (cv.exact_zero) continue;
            a = std::abs(cv.approx);
        }
        if (a < r) ++out.small_value;
        if (!sample.empty() && distance_to_sample(t, sample) < r) ++out.near_variety;
    }
    return out;
}

/// Minimum chordal distance from the non-vanishing part of Omega_Gamma to
/// the sampled variety (Cor. dist(Omega_Gamma, U(f) \ Omega_Gamma) style).
inline double min_distance_to_variety(const SubgroupLattice& gamma, const LaurentPoly& f,
                                      const VarietySample& sample,
                                      long long cap = kDefaultCyclotomicCap) {
    if (sample.empty()) fail("degenerate", "min_distance_to_variety: empty sample");
    double best = std::numeric_limits<double>::infinity();
    const double band = zero_band(f);
    const DualRange dual = gamma.dual();
    for (std::size_t i = 0; i < dual.size(); ++i) {
        const TorsionPoint w = dual[i];
        const std::vector<double> t = w.angle_doubles();
        if (std::abs(f.eval_angles(t)) <= band && torsion_eval(f, w, cap).exact_zero) continue;
        best = std::min(best, distance_to_sample(t, sample));
    }
    return best;
}

}  // namespace alab

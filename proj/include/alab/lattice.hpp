#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "alab/common.hpp"
#include "alab/rational.hpp"

namespace alab {

using IntMat = std::vector<std::vector<BigInt>>;

namespace intmat {

inline IntMat identity(int d) {
    IntMat m(d, std::vector<BigInt>(d, 0));
    for (int i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

/// Exact determinant by fraction-free Bareiss elimination.
inline BigInt determinant(IntMat a) {
    const int n = static_cast<int>(a.size());
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Round-to-nearest integer quotient (ties toward zero); keeps remainders
/// small during normal-form reductions.
inline BigInt rounded_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    BigInt r = a - q * b;
    BigInt half = abs(b);
    if (2 * abs(r) > half) q += (r < 0) == (b < 0) ? 1 : -1;
    return q;
}

struct SmithForm {
    std::vector<BigInt> diag;  // positive, diag[i] divides diag[i+1]
    IntMat row_ops;            // P with P * basis * Q = diag(diag)
};

/// Smith normal form of a nonsingular square integer matrix, tracking only
/// the row-operation accumulator P (column operations never change the dual
/// coordinates we need).
inline SmithForm smith_form(IntMat a) {
    const int d = static_cast<int>(a.size());
    IntMat p = identity(d);

    auto row_sub = [&](int dst, int src, const BigInt& q) {
        for (int j = 0; j < d; ++j) {
            a[dst][j] -= q * a[src][j];
            p[dst][j] -= q * p[src][j];
        }
    };
    auto col_sub = [&](int dst, int src, const BigInt& q) {
        for (int i = 0; i < d; ++i) a[i][dst] -= q * a[i][src];
    };

    auto eliminate = [&](int t) {
        for (;;) {
            int bi = -1, bj = -1;
            for (int i = t; i < d; ++i)
                for (int j = t; j < d; ++j)
                    if (a[i][j] != 0 &&
                        (bi < 0 || abs(a[i][j]) < abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) fail("domain", "smith_form: singular basis");
            if (bi != t) {
                std::swap(a[bi], a[t]);
                std::swap(p[bi], p[t]);
            }
            if (bj != t)
                for (int i = 0; i < d; ++i) std::swap(a[i][bj], a[i][t]);
            bool clean = true;
            for (int i = t + 1; i < d; ++i)
                if (a[i][t] != 0) {
                    row_sub(i, t, rounded_div(a[i][t], a[t][t]));
                    if (a[i][t] != 0) clean = false;
                }
            for (int j = t + 1; j < d; ++j)
                if (a[t][j] != 0) {
                    col_sub(j, t, rounded_div(a[t][j], a[t][t]));
                    if (a[t][j] != 0) clean = false;
                }
            if (clean) {
                bool zeroed = true;
                for (int i = t + 1; i < d && zeroed; ++i) zeroed = a[i][t] == 0;
                for (int j = t + 1; j < d && zeroed; ++j) zeroed = a[t][j] == 0;
                if (zeroed) return;
            }
        }
    };

    for (int t = 0; t < d; ++t) eliminate(t);
    for (int t = 0; t < d; ++t)
        if (a[t][t] < 0)
            for (int j = 0; j < d; ++j) {
                a[t][j] = -a[t][j];
                p[t][j] = -p[t][j];
            }

    // Enforce the divisibility chain diag[t] | diag[t+1].
    for (bool changed = true; changed;) {
        changed = false;
        for (int t = 0; t + 1 < d; ++t) {
            if (a[t + 1][t + 1] % a[t][t] != 0) {
                for (int i = 0; i < d; ++i) a[i][t] += a[i][t + 1];
                eliminate(t);
                eliminate(t + 1);
                if (a[t][t] < 0 || a[t + 1][t + 1] < 0)
                    for (int s = t; s <= t + 1; ++s)
                        if (a[s][s] < 0)
                            for (int j = 0; j < d; ++j) {
                                a[s][j] = -a[s][j];
                                p[s][j] = -p[s][j];
                            }
                changed = true;
            }
        }
    }

    SmithForm out;
    out.diag.resize(d);
    for (int i = 0; i < d; ++i) out.diag[i] = a[i][i];
    out.row_ops = std::move(p);
    return out;
}

/// Column-style Hermite normal form: lower triangular, positive pivots,
/// entries left of each pivot reduced into [0, pivot). Canonical, so it
/// doubles as an equality test for the generated lattice.
inline IntMat hermite_form(IntMat a) {
    const int d = static_cast<int>(a.size());
    for (int i = 0; i < d; ++i) {
        for (;;) {
            int pivot = -1;
            for (int j = i; j < d; ++j)
                if (a[i][j] != 0 && (pivot < 0 || abs(a[i][j]) < abs(a[i][pivot]))) pivot = j;
            if (pivot < 0) fail("domain", "hermite_form: singular basis");
            if (pivot != i)
                for (int r = 0; r < d; ++r) std::swap(a[r][pivot], a[r][i]);
            bool clean = true;
            for (int j = i + 1; j < d; ++j)
                if (a[i][j] != 0) {
                    const BigInt q = rounded_div(a[i][j], a[i][i]);
                    for (int r = 0; r < d; ++r) a[r][j] -= q * a[r][i];
                    if (a[i][j] != 0) clean = false;
                }
            if (clean) break;
        }
        if (a[i][i] < 0)
            for (int r = 0; r < d; ++r) a[r][i] = -a[r][i];
        for (int j = 0; j < i; ++j) {
            const BigInt q = (a[i][j] % a[i][i] + a[i][i]) % a[i][i];
            const BigInt k = (a[i][j] - q) / a[i][i];
            if (k != 0)
                for (int r = 0; r < d; ++r) a[r][j] -= k * a[r][i];
        }
    }
    return a;
}

}  // namespace intmat

/// Element of the torsion subgroup of S^d: omega = e^{2 pi i angles} with
/// exact rational angles and order the lcm of the reduced denominators.
struct TorsionPoint {
    std::vector<Rat> angles;
    long long order = 1;

    static TorsionPoint from_angles(std::vector<Rat> a) {
        TorsionPoint t;
        t.order = 1;
        for (const Rat& r : a) t.order = lcm_ll(t.order, r.den);
        t.angles = std::move(a);
        return t;
    }

    std::vector<double> angle_doubles() const {
        std::vector<double> v(angles.size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = angles[j].value();
        return v;
    }

    TorsionPoint conjugate() const {
        std::vector<Rat> a(angles.size());
        for (std::size_t j = 0; j < a.size(); ++j) a[j] = angles[j].conjugate();
        return from_angles(std::move(a));
    }

    friend bool operator==(const TorsionPoint& x, const TorsionPoint& y) {
        return x.angles == y.angles;
    }
    friend bool operator<(const TorsionPoint& x, const TorsionPoint& y) {
        return std::lexicographical_compare(x.angles.begin(), x.angles.end(),
                                            y.angles.begin(), y.angles.end());
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t j = 0; j < angles.size(); ++j) {
            if (j) s += ",";
            s += angles[j].str();
        }
        return s + ")";
    }
};

/// Rational subtorus H_m = {s in S^d : s^m = 1} for a nonzero integer vector m.
struct Subtorus {
    std::vector<long long> m;

    explicit Subtorus(std::vector<long long> mm) : m(std::move(mm)) {
        if (std::all_of(m.begin(), m.end(), [](long long e) { return e == 0; }))
            fail("domain", "Subtorus: m must be nonzero");
    }
};

class SubgroupLattice;

/// Random-access view of the dual group Omega_Gamma in a fixed order
/// (lexicographic in the Smith coordinates). Points are decoded on demand so
/// large dual groups never materialize; disjoint index ranges may be consumed
/// from different threads.
class DualRange {
public:
    std::size_t size() const { return size_; }
    TorsionPoint operator[](std::size_t idx) const;

    class iterator {
    public:
        iterator(const DualRange* r, std::size_t i) : r_(r), i_(i) {}
        TorsionPoint operator*() const { return (*r_)[i_]; }
        iterator& operator++() {
            ++i_;
            return *this;
        }
        bool operator!=(const iterator& o) const { return i_ != o.i_; }

    private:
        const DualRange* r_;
        std::size_t i_;
    };

    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, size_}; }

private:
    friend class SubgroupLattice;
    int dims_ = 0;
    std::size_t size_ = 1;
    std::vector<long long> radix_;                 // Smith diagonal entries > 1
    std::vector<std::vector<long long>> weights_;  // weights_[i][j]: P[i][j] * (L / D_i)
    long long denom_ = 1;                          // L = largest elementary divisor
};

/// Finite-index subgroup Gamma of Z^d given by the columns of a nonsingular
/// integer matrix. |Z^d/Gamma| = |det|. Immutable after construction.
class SubgroupLattice {
public:
    /// `basis` is row-major: basis[i][j] = i-th coordinate of the j-th generator.
    SubgroupLattice(int dims, std::vector<std::vector<long long>> basis)
        : dims_(dims), basis_(std::move(basis)) {
        if (dims_ < 1) fail("domain", "SubgroupLattice: dims must be >= 1");
        if (static_cast<int>(basis_.size()) != dims_)
            fail("domain", "SubgroupLattice: basis must be square");
        for (const auto& row : basis_)
            if (static_cast<int>(row.size()) != dims_)
                fail("domain", "SubgroupLattice: basis must be square");
        IntMat a(dims_, std::vector<BigInt>(dims_));
        for (int i = 0; i < dims_; ++i)
            for (int j = 0; j < dims_; ++j) a[i][j] = basis_[i][j];
        det_ = intmat::determinant(a);
        if (det_ == 0) fail("domain", "SubgroupLattice: singular basis");
        smith_ = intmat::smith_form(a);
    }

    static SubgroupLattice diagonal(int dims, const std::vector<long long>& ns) {
        if (static_cast<int>(ns.size()) != dims)
            fail("domain", "diagonal lattice: arity mismatch");
        std::vector<std::vector<long long>> b(dims, std::vector<long long>(dims, 0));
        for (int i = 0; i < dims; ++i) b[i][i] = ns[i];
        return SubgroupLattice(dims, b);
    }

    static SubgroupLattice scaled(int dims, long long n) {
        return diagonal(dims, std::vector<long long>(dims, n));
    }

    int dims() const { return dims_; }
    const std::vector<std::vector<long long>>& basis() const { return basis_; }

    /// |Z^d/Gamma| = |det basis|.
    long long index() const { return to_ll(abs(det_)); }

    /// m in Gamma, exactly (Cramer solve of basis*c = m over Q).
    bool contains(const std::vector<long long>& m) const {
        IntMat a(dims_, std::vector<BigInt>(dims_));
        for (int i = 0; i < dims_; ++i)
            for (int j = 0; j < dims_; ++j) a[i][j] = basis_[i][j];
        for (int col = 0; col < dims_; ++col) {
            IntMat b = a;
            for (int i = 0; i < dims_; ++i) b[i][col] = m[i];
            if (intmat::determinant(b) % det_ != 0) return false;
        }
        return true;
    }

    /// Order of m in Z^d/Gamma via the Smith coordinates of m.
    long long element_order(const std::vector<long long>& m) const {
        if (static_cast<int>(m.size()) != dims_) fail("domain", "element_order: arity mismatch");
        long long k = 1;
        for (int i = 0; i < dims_; ++i) {
            BigInt y = 0;
            for (int j = 0; j < dims_; ++j) y += smith_.row_ops[i][j] * m[j];
            const long long di = to_ll(smith_.diag[i]);
            const long long r = to_ll((y % di + di) % di);
            k = lcm_ll(k, di / gcd_ll(di, r == 0 ? di : r));
        }
        return k;
    }

    /// |Omega_Gamma intersect H_m| = |Omega_Gamma| / order(m).
    long long slice_count(const Subtorus& h) const {
        if (static_cast<int>(h.m.size()) != dims_) fail("domain", "slice_count: arity mismatch");
        return index() / element_order(h.m);
    }

    struct NormResult {
        long long value = 0;          // <Gamma> = min sup-norm of nonzero vectors
        long long search_radius = 0;  // exhaustive box radius used (provably sufficient)
    };

    /// <Gamma> by exhaustive search of the sup-norm box of radius R, where R
    /// is the smallest sup-norm among the basis columns (an upper bound on
    /// the minimum, so the box provably contains a minimizer).
    NormResult norm_with_audit() const {
        long long radius = 0;
        for (int j = 0; j < dims_; ++j) {
            long long colnorm = 0;
            for (int i = 0; i < dims_; ++i) colnorm = std::max(colnorm, std::llabs(basis_[i][j]));
            radius = j == 0 ? colnorm : std::min(radius, colnorm);
        }
        long long best = radius;
        std::vector<long long> x(dims_, -radius);
        for (;;) {
            bool nonzero = std::any_of(x.begin(), x.end(), [](long long v) { return v != 0; });
            if (nonzero) {
                long long norm = 0;
                for (long long v : x) norm = std::max(norm, std::llabs(v));
                if (norm < best && contains(x)) best = norm;
            }
            int j = 0;
            while (j < dims_ && x[j] == radius) x[j++] = -radius;
            if (j == dims_) break;
            ++x[j];
        }
        return {best, radius};
    }

    long long norm() const { return norm_with_audit().value; }

    /// Streaming view of the dual group; |range| = index().
    DualRange dual() const {
        DualRange r;
        r.dims_ = dims_;
        const long long L = to_ll(smith_.diag[dims_ - 1]);
        r.denom_ = L;
        for (int i = 0; i < dims_; ++i) {
            const long long di = to_ll(smith_.diag[i]);
            if (di == 1) continue;
            r.radix_.push_back(di);
            std::vector<long long> w(dims_);
            for (int j = 0; j < dims_; ++j)
                w[j] = to_ll(smith_.row_ops[i][j] * (L / di));
            r.weights_.push_back(std::move(w));
        }
        r.size_ = 1;
        for (long long d : r.radix_) r.size_ *= static_cast<std::size_t>(d);
        return r;
    }

    /// Materializes the dual group (deterministic order).
    std::vector<TorsionPoint> enumerate_dual() const {
        DualRange r = dual();
        std::vector<TorsionPoint> out;
        out.reserve(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) out.push_back(r[i]);
        return out;
    }

    IntMat hermite() const {
        IntMat a(dims_, std::vector<BigInt>(dims_));
        for (int i = 0; i < dims_; ++i)
            for (int j = 0; j < dims_; ++j) a[i][j] = basis_[i][j];
        return intmat::hermite_form(a);
    }

    friend bool operator==(const SubgroupLattice& a, const SubgroupLattice& b) {
        return a.dims_ == b.dims_ && a.hermite() == b.hermite();
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < dims_; ++i) {
            if (i) s += ";";
            for (int j = 0; j < dims_; ++j) {
                if (j) s += ",";
                s += std::to_string(basis_[i][j]);
            }
        }
        return s + "]";
    }

private:
    int dims_;
    std::vector<std::vector<long long>> basis_;
    BigInt det_;
    intmat::SmithForm smith_;
};

inline TorsionPoint DualRange::operator[](std::size_t idx) const {
    if (idx >= size_) fail("domain", "DualRange: index out of range");
    std::vector<Rat> angles(dims_);
    std::vector<__int128> nums(dims_, 0);
    for (std::size_t level = 0; level < radix_.size(); ++level) {
        const long long k = static_cast<long long>(idx % static_cast<std::size_t>(radix_[level]));
        idx /= static_cast<std::size_t>(radix_[level]);
        if (k == 0) continue;
        for (int j = 0; j < dims_; ++j)
            nums[j] += static_cast<__int128>(weights_[level][j]) * k;
    }
    for (int j = 0; j < dims_; ++j) {
        __int128 n = nums[j] % denom_;
        if (n < 0) n += denom_;
        angles[j] = Rat(static_cast<long long>(n), denom_);
    }
    return TorsionPoint::from_angles(std::move(angles));
}

}  // namespace alab

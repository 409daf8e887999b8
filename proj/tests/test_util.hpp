#pragma once

#include <random>
#include <vector>

#include "alab/lattice.hpp"
#include "alab/laurent.hpp"

namespace testutil {

using Rng = std::mt19937_64;

inline alab::LaurentPoly random_poly(Rng& rng, int dims, int max_terms = 4, int max_exp = 3,
                                     int max_coef = 9) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> exp(-max_exp, max_exp);
    std::uniform_int_distribution<int> coef(-max_coef, max_coef);
    alab::LaurentPoly f(dims);
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        alab::Exponent m(dims);
        for (int j = 0; j < dims; ++j) m[j] = exp(rng);
        int c = coef(rng);
        if (c == 0) c = 1;
        f.add_term(m, c);
    }
    return f;
}

/// Random nonsingular lattice basis with entries in [-bound, bound].
inline alab::SubgroupLattice random_lattice(Rng& rng, int dims, int bound = 6) {
    std::uniform_int_distribution<long long> entry(-bound, bound);
    for (;;) {
        std::vector<std::vector<long long>> b(dims, std::vector<long long>(dims));
        for (int i = 0; i < dims; ++i)
            for (int j = 0; j < dims; ++j) b[i][j] = entry(rng);
        try {
            return alab::SubgroupLattice(dims, b);
        } catch (const alab::Error&) {
            // singular draw; retry
        }
    }
}

/// Random unimodular matrix as a short product of elementary operations.
inline std::vector<std::vector<long long>> random_unimodular(Rng& rng, int dims, int ops = 6) {
    std::vector<std::vector<long long>> u(dims, std::vector<long long>(dims, 0));
    for (int i = 0; i < dims; ++i) u[i][i] = 1;
    std::uniform_int_distribution<int> pick(0, dims - 1);
    std::uniform_int_distribution<int> shear(-2, 2);
    for (int t = 0; t < ops; ++t) {
        const int i = pick(rng);
        int j = pick(rng);
        if (i == j) j = (j + 1) % dims;
        const int s = shear(rng);
        // column j += s * column i
        for (int r = 0; r < dims; ++r) u[r][j] += s * u[r][i];
    }
    return u;
}

inline std::vector<std::vector<long long>> mat_mul(const std::vector<std::vector<long long>>& a,
                                                   const std::vector<std::vector<long long>>& b) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

}  // namespace testutil

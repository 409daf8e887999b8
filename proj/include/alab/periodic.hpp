#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "alab/cyclo.hpp"
#include "alab/lattice.hpp"
#include "alab/mahler.hpp"

namespace alab {

/// Dimension of the identity component of the Gamma-periodic points: every
/// omega in Omega_Gamma with f(omega) = 0 contributes one dimension, so this
/// is the exact count of such omega.
inline long long fix_component_dim(const LaurentPoly& f, const SubgroupLattice& gamma,
                                   int threads = 1, long long cap = kDefaultCyclotomicCap) {
    return detail::omega_log_sum(f, gamma, threads, cap).skipped;
}

/// log of the periodic-point product prod |f(omega)| over the non-vanishing
/// part of Omega_Gamma. This is the asymptotic logarithm of the component
/// count P_Gamma, not an exact count: the correction factor c_Gamma(f) is
/// subexponential and out of scope.
inline double fix_log_count(const LaurentPoly& f, const SubgroupLattice& gamma,
                            int threads = 1, long long cap = kDefaultCyclotomicCap) {
    const auto total = detail::omega_log_sum(f, gamma, threads, cap);
    if (total.skipped == static_cast<long long>(gamma.dual().size()))
        fail("degenerate", "fix_log_count: f vanishes on all of Omega_Gamma");
    return total.sum;
}

struct GrowthRow {
    std::string gamma;            // lattice descriptor
    long long index = 0;          // |Z^d/Gamma|
    long long gamma_norm = 0;     // <Gamma>
    long long excluded_zeros = 0; // = dim Fix^o for this Gamma
    double log_count = 0.0;       // full sum over the nonzero part
    double rate = 0.0;            // log_count / index
};

struct GrowthTable {
    std::vector<GrowthRow> rows;
    double target = 0.0;          // m(f) from quadrature
    double final_abs_error = 0.0; // |last rate - target|
};

/// Normalized growth rates along a sequence of lattices with strictly
/// increasing <Gamma>, against the quadrature value of m(f).
inline GrowthTable growth_series(const LaurentPoly& f,
                                 const std::vector<SubgroupLattice>& gammas,
                                 int quad_grid = 0, int threads = 1,
                                 long long cap = kDefaultCyclotomicCap) {
    if (gammas.empty()) fail("domain", "growth_series: empty lattice sequence");
    GrowthTable table;
    long long prev_norm = 0;
    for (const SubgroupLattice& g : gammas) {
        GrowthRow row;
        row.gamma = g.str();
        row.index = g.index();
        row.gamma_norm = g.norm();
        if (row.gamma_norm <= prev_norm)
            fail("domain", "growth_series: <Gamma> must be strictly increasing");
        prev_norm = row.gamma_norm;
        const auto total = detail::omega_log_sum(f, g, threads, cap);
        row.excluded_zeros = total.skipped;
        row.log_count = total.sum;
        row.rate = total.sum / static_cast<double>(row.index);
        table.rows.push_back(std::move(row));
    }
    table.target = entropy_principal(f, quad_grid, threads).value;
    table.final_abs_error = std::fabs(table.rows.back().rate - table.target);
    return table;
}

}  // namespace alab

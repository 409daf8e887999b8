#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

#include "alab/common.hpp"

namespace alab {

/// Compensated (Kahan) accumulator. Summation order must be fixed by the
/// caller; together with the fixed-shape tree combine below this makes large
/// reductions bit-reproducible regardless of thread count.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

namespace detail {

inline void run_block_workers(std::size_t blocks, int threads,
                              const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || blocks <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) work(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= blocks) break;
            work(b);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(blocks));
    pool.reserve(n - 1);
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

}  // namespace detail

/// Splits [0,count) into fixed-size blocks, maps each block with `fn`
/// (possibly on several threads), and returns the per-block results in block
/// order. The partition depends only on `count` and `block_size`, never on
/// the thread count, so downstream combining is deterministic.
template <class T, class BlockFn>
std::vector<T> map_blocks(std::size_t count, std::size_t block_size, int threads, BlockFn fn) {
    if (block_size == 0) block_size = 1;
    const std::size_t blocks = count == 0 ? 0 : (count - 1) / block_size + 1;
    std::vector<T> out(blocks);
    detail::run_block_workers(blocks, threads, [&](std::size_t b) {
        const std::size_t lo = b * block_size;
        const std::size_t hi = std::min(count, lo + block_size);
        out[b] = fn(lo, hi);
    });
    return out;
}

/// Fixed-shape pairwise tree combine (adjacent pairs per round).
template <class T, class Combine>
T tree_combine(std::vector<T> v, Combine comb, T identity) {
    if (v.empty()) return identity;
    while (v.size() > 1) {
        std::size_t w = 0;
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) v[w++] = comb(v[i], v[i + 1]);
        if (v.size() % 2 == 1) v[w++] = v.back();
        v.resize(w);
    }
    return v.front();
}

/// Least-squares line fit y = a + b*x; returns {a, b, rms residual}.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rms_residual = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) fail("domain", "fit_line: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    if (d == 0) fail("domain", "fit_line: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / d;
    f.intercept = (sy - f.slope * sx) / n;
    double r2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        r2 += e * e;
    }
    f.rms_residual = std::sqrt(r2 / n);
    return f;
}

}  // namespace alab

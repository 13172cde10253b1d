#pragma once

// Test-only brute-force oracles. They evaluate the combined-SNR objective from
// per-BS tables built here, independent of the library's solvers and kernels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct GridMax {
    double snr = 0.0;
    std::vector<double> alphas;
};

// Per-BS contributions for each grid ratio: useful[i] and noise[i] such that
// SNR = sum useful / (sum noise + M).
struct BsTable {
    std::vector<double> useful;
    std::vector<double> noise;
};

inline std::vector<double> interior_grid(double step) {
    std::vector<double> g;
    for (int k = 1;; ++k) {
        const double a = k * step;
        if (a >= 1.0 - 1e-12) break;
        g.push_back(a);
    }
    return g;
}

inline BsTable make_table(double snr_m, double L, const std::vector<double>& grid) {
    BsTable t;
    for (double a : grid) {
        const double est = a * L * snr_m;
        t.useful.push_back((1.0 - a) * snr_m * est / (1.0 + est));
        t.noise.push_back(snr_m / (1.0 + est));
    }
    return t;
}

inline double direct_snr(const std::vector<double>& alphas, const std::vector<double>& snr, double L) {
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < snr.size(); ++m) {
        const double est = alphas[m] * L * snr[m];
        num += (1.0 - alphas[m]) * snr[m] * est / (1.0 + est);
        den += snr[m] / (1.0 + est);
    }
    return num / (den + static_cast<double>(snr.size()));
}

/// Exhaustive search over the full ratio grid for M <= 3.
inline GridMax full_grid_max(const std::vector<double>& snr, double L, double step) {
    const auto grid = interior_grid(step);
    const std::size_t n = grid.size();
    const double M = static_cast<double>(snr.size());
    std::vector<BsTable> tables;
    for (double s : snr) tables.push_back(make_table(s, L, grid));

    GridMax best;
    best.snr = -1.0;
    std::vector<std::size_t> idx(snr.size(), 0);
    if (snr.size() == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const double v = tables[0].useful[i] / (tables[0].noise[i] + M);
            if (v > best.snr) best = {v, {grid[i]}};
        }
    } else if (snr.size() == 2) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double v = (tables[0].useful[i] + tables[1].useful[j]) /
                                 (tables[0].noise[i] + tables[1].noise[j] + M);
                if (v > best.snr) best = {v, {grid[i], grid[j]}};
            }
    } else {
        const auto& t0 = tables[0];
        const auto& t1 = tables[1];
        const auto& t2 = tables[2];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double u01 = t0.useful[i] + t1.useful[j];
                const double n01 = t0.noise[i] + t1.noise[j] + M;
                double local = -1.0;
                std::size_t local_k = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double v = (u01 + t2.useful[k]) / (n01 + t2.noise[k]);
                    if (v > local) {
                        local = v;
                        local_k = k;
                    }
                }
                if (local > best.snr) best = {local, {grid[i], grid[j], grid[local_k]}};
            }
    }
    return best;
}

/// Search along the diagonal alpha_1 = ... = alpha_M.
inline GridMax diagonal_grid_max(const std::vector<double>& snr, double L, double step) {
    GridMax best;
    best.snr = -1.0;
    for (double a : interior_grid(step)) {
        std::vector<double> alphas(snr.size(), a);
        const double v = direct_snr(alphas, snr, L);
        if (v > best.snr) best = {v, alphas};
    }
    return best;
}

/// Discrete-difference shape summary after 3-point moving-average smoothing.
struct Shape {
    int sign_changes = 0;
    double max_rise = 0.0;
    double max_fall = 0.0;
};

inline Shape smoothed_shape(const std::vector<double>& v) {
    std::vector<double> sm;
    for (std::size_t i = 0; i + 2 < v.size(); ++i) sm.push_back((v[i] + v[i + 1] + v[i + 2]) / 3.0);
    Shape s;
    int last = 0;
    for (std::size_t i = 0; i + 1 < sm.size(); ++i) {
        const double d = sm[i + 1] - sm[i];
        s.max_rise = std::max(s.max_rise, d);
        s.max_fall = std::max(s.max_fall, -d);
        const int sign = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (sign == 0) continue;
        if (last != 0 && sign != last) ++s.sign_changes;
        last = sign;
    }
    return s;
}

/// Local maxima of a raw sequence counted by sign changes of differences.
inline int local_maxima(const std::vector<double>& v) {
    int count = 0;
    int last = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double d = v[i + 1] - v[i];
        const int sign = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (sign == 0) continue;
        if (last == 1 && sign == -1) ++count;
        last = sign;
    }
    return count;
}

}  // namespace oracle

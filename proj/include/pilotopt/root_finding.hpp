#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pilotopt/errors.hpp"

namespace pilotopt {

struct BisectionResult {
    double root = 0.0;
    double lo = 0.0;  // final bracket
    double hi = 0.0;
    int iterations = 0;
};

/// Bisection for a function that is positive at `lo` and negative at `hi`,
/// or the other way round. Stops once the bracket is narrower than
/// `abs_tol` or an exact zero is hit. Throws SolverError if the endpoints do
/// not bracket a root or the iteration cap is reached first.
template <class F>
BisectionResult bisect(F&& f, double lo, double hi, double abs_tol, int max_iterations = 200) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (std::isnan(f_lo) || std::isnan(f_hi) || (f_lo > 0.0) == (f_hi > 0.0) || f_lo == 0.0 || f_hi == 0.0) {
        if (f_lo == 0.0) return {lo, lo, lo, 0};
        if (f_hi == 0.0) return {hi, hi, hi, 0};
        throw SolverError("bisection: no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                          {{lo, f_lo}, {hi, f_hi}}, std::abs(f_lo) < std::abs(f_hi) ? lo : hi);
    }
    const bool positive_at_lo = f_lo > 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return {mid, lo, hi, it};  // bracket at floating-point resolution
        const double f_mid = f(mid);
        if (f_mid == 0.0) return {mid, mid, mid, it};
        if ((f_mid > 0.0) == positive_at_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= abs_tol) return {0.5 * (lo + hi), lo, hi, it};
    }
    throw SolverError("bisection: no convergence after " + std::to_string(max_iterations) + " iterations",
                      {{lo, f(lo)}, {hi, f(hi)}}, 0.5 * (lo + hi));
}

/// Number of strict sign changes across the sampled values, ignoring zeros.
inline int count_sign_changes(const std::vector<double>& values) {
    int changes = 0;
    int last = 0;
    for (double v : values) {
        const int sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        if (sign == 0) continue;
        if (last != 0 && sign != last) ++changes;
        last = sign;
    }
    return changes;
}

}  // namespace pilotopt

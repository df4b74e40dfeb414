#pragma once

#include <cmath>

namespace advmean {

struct BisectResult {
    double root = 0.0;
    double value = 0.0;
    int iterations = 0;
    // Target exceeds f(hi); root is hi.
    bool saturated = false;
};

// Solves f(x) = target for nondecreasing continuous f on [lo, hi], stopping
// once |f(x) - target| <= rel_tol * |target| or after max_iter halvings.
// Assumes f(lo) <= target.
template <typename F>
BisectResult bisect_increasing(F&& f, double lo, double hi, double target, double rel_tol,
                               int max_iter) {
    const double tol = rel_tol * std::fabs(target);
    double f_lo = f(lo);
    if (std::fabs(f_lo - target) <= tol) return {lo, f_lo, 0, false};
    double f_hi = f(hi);
    if (f_hi < target - tol) return {hi, f_hi, 0, true};
    if (std::fabs(f_hi - target) <= tol) return {hi, f_hi, 0, false};

    int it = 0;
    while (it < max_iter) {
        ++it;
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (std::fabs(f_mid - target) <= tol) return {mid, f_mid, it, false};
        if (f_mid < target) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    // Bracket collapsed to adjacent doubles: return the closer endpoint.
    if (std::fabs(f_lo - target) <= std::fabs(f_hi - target)) return {lo, f_lo, it, false};
    return {hi, f_hi, it, false};
}

}  // namespace advmean

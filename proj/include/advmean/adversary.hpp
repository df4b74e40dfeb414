#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "advmean/distribution.hpp"

namespace advmean {

enum class ConstructionCase {
    LargeMeanShift,  // trimmed core mean far from p's mean: mix p with its core
    SmallMeanShift,  // skew p by a clamped linear density ratio
};

enum class SkewSign { Plus, Minus };

std::string_view to_string(ConstructionCase c) noexcept;
std::string_view to_string(SkewSign s) noexcept;

// Parameter regime in which the construction's guarantees are asserted:
// delta <= 0.1 and ln(1/delta)/n <= 0.01.
struct Regime {
    bool delta_ok = false;
    bool ratio_ok = false;

    bool ok() const noexcept { return delta_ok && ratio_ok; }
};

Regime regime(double n, double delta);

struct DensityRatio {
    // One entry per atom of p: q-mass / p-mass (0 where q has no atom).
    std::vector<double> ratios;
    // +infinity when q charges a position p does not.
    double sup = 0.0;
    std::optional<double> offending_position;
};

DensityRatio density_ratio(const AtomicDistribution& q, const AtomicDistribution& p);

struct AdversaryDiagnostics {
    double epsilon_p = 0.0;
    double mu_p = 0.0;
    double mu_q = 0.0;
    double sup_ratio = 0.0;
    double hellinger_sq = 0.0;

    double core_mean = 0.0;
    double core_stddev = 0.0;
    double trim_radius = 0.0;
    double mean_gap = 0.0;   // |mu_p - mu_core|
    double threshold = 0.0;  // sigma_core sqrt(4.5 ln(1/delta)/n)
    double variance_p = 0.0;
    double variance_q = 0.0;

    // Small-shift case only.
    double target_shift = 0.0;
    double mass_plus = 0.0;
    double mass_minus = 0.0;

    bool postconditions_hold = false;
};

struct AdversaryResult {
    AtomicDistribution q;
    ConstructionCase kind = ConstructionCase::LargeMeanShift;
    double lambda = 0.0;
    double a = 0.0;
    SkewSign sign = SkewSign::Plus;
    double b = 1.0;
    bool in_regime = false;
    // The skew equation had no root below the bracket's upper end.
    bool solver_saturated = false;
    AdversaryDiagnostics diagnostics;
};

/// First-moment shift of the skewed measure dq/dp = 1 + clamp(a (x - center)),
/// i.e. sum_i w_i (x_i - center) clamp(a (x_i - center), -1, 1).
/// Strictly increasing and continuous in a > 0.
double mean_shift(const AtomicDistribution& p, double center, double a);

// Requires mean(p_centered) == 0 up to rounding.
double mean_shift(const AtomicDistribution& p_centered, double a);

// Unnormalized skewed measure 1 + clamp(+-a (x - center), -1, 1) times p.
WeightedMeasure skewed_measure(const AtomicDistribution& p, double center, double a,
                               SkewSign sign);

struct SkewSolution {
    double a = 0.0;
    double target = 0.0;
    double upper = 0.0;  // sqrt(ln(1/delta)/n) / sigma_core
    double residual = 0.0;
    int iterations = 0;
    bool saturated = false;
};

/// Root of mean_shift(p - mu_p, a) = sigma_core sqrt(ln(1/delta)/n) / 8 on
/// (0, sqrt(ln(1/delta)/n) / sigma_core], by bisection.
SkewSolution solve_skew(const AtomicDistribution& p, double n, double delta);

/// Builds the partner q of p. Throws DegenerateError for a single-atom p,
/// and for a point-mass trimmed core in the small-shift case. Outside the
/// asserted regime the result is still produced but in_regime is false.
AdversaryResult construct_q(const AtomicDistribution& p, double n, double delta);

}  // namespace advmean

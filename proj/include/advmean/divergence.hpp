#pragma once

#include <span>

#include "advmean/distribution.hpp"

namespace advmean {

struct HellingerReport {
    double h_sq = 0.0;
    // ln(1 - h_sq); -infinity when the supports are disjoint.
    double log_one_minus = 0.0;
    // (1 / 2n) ln(4 delta)
    double rhs = 0.0;
    bool indistinguishable = false;
};

// Squared Hellinger distance (1/2) sum (sqrt p_i - sqrt q_i)^2 over the union
// of positions. Positions are matched bitwise; the value for two
// distributions is clamped to [0, 1]. Non-unit measures give the
// extended distance, which may exceed 1.
double hellinger_sq(std::span<const Atom> p, std::span<const Atom> q);
double hellinger_sq(const AtomicDistribution& p, const AtomicDistribution& q);
double hellinger_sq(const AtomicDistribution& p, const WeightedMeasure& q);

double bhattacharyya(std::span<const Atom> p, std::span<const Atom> q);
double bhattacharyya(const AtomicDistribution& p, const AtomicDistribution& q);

/// Two-point testing criterion: no test on n samples separates p from q
/// with probability 1 - delta when ln(1 - H^2) >= ln(4 delta) / (2n).
/// Requires delta in (0, 1/4) so that the right-hand side is negative.
HellingerReport indistinguishable(const AtomicDistribution& p, const AtomicDistribution& q,
                                  double n, double delta);

}  // namespace advmean

#include "advmean/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "advmean/errors.hpp"
#include "summation.hpp"

namespace advmean {
namespace {

// Walks both sorted supports once, calling f(p_mass, q_mass) per position.
template <typename F>
void for_each_aligned(std::span<const Atom> p, std::span<const Atom> q, F&& f) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < p.size() || j < q.size()) {
        if (j == q.size() || (i < p.size() && p[i].x < q[j].x)) {
            f(p[i++].w, 0.0);
        } else if (i == p.size() || q[j].x < p[i].x) {
            f(0.0, q[j++].w);
        } else {
            f(p[i++].w, q[j++].w);
        }
    }
}

}  // namespace

double hellinger_sq(std::span<const Atom> p, std::span<const Atom> q) {
    detail::CompensatedSum s;
    for_each_aligned(p, q, [&](double pw, double qw) {
        const double diff = std::sqrt(pw) - std::sqrt(qw);
        s.add(diff * diff);
    });
    return 0.5 * s.value();
}

double hellinger_sq(const AtomicDistribution& p, const AtomicDistribution& q) {
    // Unit masses bound the true value to [0, 1]; only rounding leaves it.
    return std::clamp(hellinger_sq(p.atoms(), q.atoms()), 0.0, 1.0);
}

double hellinger_sq(const AtomicDistribution& p, const WeightedMeasure& q) {
    return hellinger_sq(p.atoms(), q.atoms());
}

double bhattacharyya(std::span<const Atom> p, std::span<const Atom> q) {
    detail::CompensatedSum s;
    for_each_aligned(p, q, [&](double pw, double qw) { s.add(std::sqrt(pw * qw)); });
    return s.value();
}

double bhattacharyya(const AtomicDistribution& p, const AtomicDistribution& q) {
    return bhattacharyya(p.atoms(), q.atoms());
}

HellingerReport indistinguishable(const AtomicDistribution& p, const AtomicDistribution& q,
                                  double n, double delta) {
    if (!(delta > 0.0 && delta < 0.25)) {
        throw DomainError("indistinguishability needs delta in (0, 1/4)");
    }
    if (!(n > 0.0)) throw DomainError("sample count must be positive");
    HellingerReport r;
    r.h_sq = std::clamp(hellinger_sq(p, q), 0.0, 1.0);
    r.log_one_minus =
        r.h_sq >= 1.0 ? -std::numeric_limits<double>::infinity() : std::log1p(-r.h_sq);
    r.rhs = std::log(4.0 * delta) / (2.0 * n);
    r.indistinguishable = r.log_one_minus >= r.rhs;
    return r;
}

}  // namespace advmean

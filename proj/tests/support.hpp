#pragma once

// Random instance generators for the property tests. Everything is driven by
// CounterStream so failures reproduce from the printed case index.

#include <cmath>
#include <cstddef>
#include <vector>

#include "advmean/distribution.hpp"
#include "advmean/random.hpp"

namespace advmean::testing {

inline double uniform(CounterStream& s, double lo, double hi) { return lo + (hi - lo) * s.uniform(); }

inline std::size_t uniform_int(CounterStream& s, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(s.next_u64() % (hi - lo + 1));
}

// 2..max_atoms atoms at distinct positions in [-span, span], masses bounded
// away from zero.
inline AtomicDistribution random_distribution(CounterStream& s, std::size_t max_atoms,
                                              double span = 10.0) {
    const std::size_t count = uniform_int(s, 2, max_atoms);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < count; ++i) {
        atoms.push_back({uniform(s, -span, span), uniform(s, 0.05, 1.0)});
    }
    return AtomicDistribution::normalized(std::move(atoms));
}

// Mirror-symmetric about `center`, positions on a dyadic grid so x - center
// is exact.
inline AtomicDistribution random_symmetric(CounterStream& s, std::size_t pairs, double center) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < pairs; ++i) {
        const double offset = std::ldexp(static_cast<double>(uniform_int(s, 1, 4096)), -6);
        const double w = uniform(s, 0.05, 1.0);
        atoms.push_back({center - offset, w});
        atoms.push_back({center + offset, w});
    }
    if (uniform_int(s, 0, 1) == 1) atoms.push_back({center, uniform(s, 0.05, 1.0)});
    return AtomicDistribution::normalized(std::move(atoms));
}

// Same support, masses perturbed: for divergence identities.
inline AtomicDistribution reweighted_copy(CounterStream& s, const AtomicDistribution& d) {
    std::vector<Atom> atoms(d.atoms().begin(), d.atoms().end());
    for (Atom& a : atoms) a.w *= uniform(s, 0.1, 2.0);
    return AtomicDistribution::normalized(std::move(atoms));
}

}  // namespace advmean::testing

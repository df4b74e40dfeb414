#include "advmean/corpus.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "advmean/errors.hpp"

namespace advmean {
namespace {

constexpr std::array<std::string_view, 6> kNames = {
    "two_point",  "asym_two_point", "gaussian_grid",
    "pareto_1_5", "pareto_2_5",     "contaminated_gaussian",
};

std::vector<Atom> gaussian_atoms(int half, double step, double sigma, double total) {
    std::vector<Atom> atoms;
    double z = 0.0;
    for (int i = -half; i <= half; ++i) {
        // i * step is exact in sign, so the grid is mirror-symmetric bitwise.
        const double x = static_cast<double>(i) * step;
        const double w = std::exp(-0.5 * (x / sigma) * (x / sigma));
        atoms.push_back({x, w});
        z += w;
    }
    for (Atom& a : atoms) a.w *= total / z;
    return atoms;
}

}  // namespace

std::span<const std::string_view> corpus_names() noexcept { return kNames; }

AtomicDistribution gaussian_grid(int half_width_steps, double step, double sigma) {
    return AtomicDistribution::normalized(gaussian_atoms(half_width_steps, step, sigma, 1.0));
}

AtomicDistribution discretized_pareto(double tail_index, int bins, double decades) {
    if (!(tail_index > 1.0)) throw DomainError("Pareto tail index must exceed 1 for a finite mean");
    const double alpha = tail_index;
    const auto edge = [&](int i) { return std::pow(10.0, decades * i / bins); };
    std::vector<Atom> atoms;
    for (int i = 0; i < bins; ++i) {
        const double lo = edge(i);
        const bool open = i + 1 == bins;
        const double hi = open ? 0.0 : edge(i + 1);
        // Survival function S(x) = x^-alpha; partial first moment uses x^(1-alpha).
        const double mass = std::pow(lo, -alpha) - (open ? 0.0 : std::pow(hi, -alpha));
        const double moment = alpha / (alpha - 1.0) *
                              (std::pow(lo, 1.0 - alpha) - (open ? 0.0 : std::pow(hi, 1.0 - alpha)));
        atoms.push_back({moment / mass, mass});
    }
    return AtomicDistribution::normalized(std::move(atoms));
}

AtomicDistribution corpus_distribution(std::string_view name) {
    if (name == "two_point") return AtomicDistribution({{-1.0, 0.5}, {1.0, 0.5}});
    if (name == "asym_two_point") return AtomicDistribution({{0.0, 0.999}, {1000.0, 0.001}});
    if (name == "gaussian_grid") return gaussian_grid(100, 0.05, 1.0);
    if (name == "pareto_1_5") return discretized_pareto(1.5, 200, 8.0);
    if (name == "pareto_2_5") return discretized_pareto(2.5, 200, 8.0);
    if (name == "contaminated_gaussian") {
        std::vector<Atom> atoms = gaussian_atoms(24, 5.0 / 24.0, 1.0, 0.99);
        atoms.push_back({50.0, 0.01});
        return AtomicDistribution::normalized(std::move(atoms));
    }
    throw DomainError("unknown corpus distribution '" + std::string(name) + "'");
}

}  // namespace advmean

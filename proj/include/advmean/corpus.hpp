#pragma once

#include <span>
#include <string_view>

#include "advmean/distribution.hpp"

namespace advmean {

// Reference distributions covering both construction cases and finite and
// infinite variance tails:
//   two_point              {-1, +1} with equal mass
//   asym_two_point         {0: 0.999, 1000: 0.001}
//   gaussian_grid          201 atoms on [-5, 5], step 0.05, mass ~ exp(-x^2/2)
//   pareto_1_5, pareto_2_5 200 log-spaced bins over [1, 1e8] of a Pareto law
//                          with that tail index, last bin open-ended, each
//                          atom at its bin's conditional mean
//   contaminated_gaussian  49-atom Gaussian grid with mass 0.99 plus 0.01 at 50
std::span<const std::string_view> corpus_names() noexcept;

// Throws DomainError for an unknown name.
AtomicDistribution corpus_distribution(std::string_view name);

AtomicDistribution gaussian_grid(int half_width_steps, double step, double sigma);
AtomicDistribution discretized_pareto(double tail_index, int bins, double decades);

}  // namespace advmean

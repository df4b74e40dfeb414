#include "advmean/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "advmean/errors.hpp"

namespace advmean {
namespace {

// Group mean clamped to the group's range, which rounding could otherwise
// leave by an ulp.
double block_mean(std::span<const double> xs) {
    const double first = xs.front();
    double lo = first;
    double hi = first;
    double acc = 0.0;
    for (double x : xs) {
        acc += x - first;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return std::clamp(first + acc / static_cast<double>(xs.size()), lo, hi);
}

}  // namespace

std::size_t group_count(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    const double k = std::ceil(4.5 * -std::log(delta));
    return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

double sample_mean(std::span<const double> samples) {
    if (samples.empty()) throw DomainError("sample_mean needs at least one sample");
    return block_mean(samples);
}

double median_of_means_k(std::span<const double> samples, std::size_t groups) {
    const std::size_t n = samples.size();
    if (groups == 0) throw DomainError("group count must be positive");
    if (n < groups) throw InsufficientSamplesError(n, groups);

    const std::size_t base = n / groups;
    const std::size_t extra = n % groups;
    std::vector<double> means;
    means.reserve(groups);
    std::size_t offset = 0;
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t len = base + (g < extra ? 1 : 0);
        means.push_back(block_mean(samples.subspan(offset, len)));
        offset += len;
    }

    const auto mid = means.begin() + static_cast<std::ptrdiff_t>(groups / 2);
    std::nth_element(means.begin(), mid, means.end());
    const double upper = *mid;
    if (groups % 2 == 1) return upper;
    const double lower = *std::max_element(means.begin(), mid);
    // Halving each term first commutes with power-of-two scaling.
    return 0.5 * lower + 0.5 * upper;
}

double median_of_means(std::span<const double> samples, double delta) {
    return median_of_means_k(samples, group_count(delta));
}

}  // namespace advmean

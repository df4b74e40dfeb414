#pragma once

#include <cstddef>
#include <span>

namespace advmean {

// k = max(1, ceil(4.5 ln(1/delta))).
std::size_t group_count(double delta);

// Arithmetic mean. Accumulates deviations from the first sample in input
// order, so constant data returns that constant exactly.
double sample_mean(std::span<const double> samples);

/// Median-of-means with group_count(delta) groups.
///
/// Samples are split in input order into contiguous groups; when k does not
/// divide n the first n mod k groups take one extra sample. An even group
/// count returns the midpoint of the two central group means. Throws
/// InsufficientSamplesError when n < k.
double median_of_means(std::span<const double> samples, double delta);

// Same, with an explicit group count.
double median_of_means_k(std::span<const double> samples, std::size_t groups);

}  // namespace advmean

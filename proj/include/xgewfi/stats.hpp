#pragma once

#include <span>

namespace xgewfi {

double mean(std::span<const double> values);

// Population standard deviation (denominator n). The whole toolkit uses
// this convention wherever a spread estimate is needed.
double stddev(std::span<const double> values);

// Quantile by linear interpolation at position q * (n - 1) over an
// already-sorted sample, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace xgewfi

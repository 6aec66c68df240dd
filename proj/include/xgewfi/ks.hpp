#pragma once

#include <cstddef>
#include <span>

namespace xgewfi {

struct KsResult {
    double d_statistic = 0.0;
    double p_value = 1.0;
    std::size_t n_original = 0;
    std::size_t n_generated = 0;
};

// Two-sample Kolmogorov-Smirnov D plus the asymptotic p-value.
// D is the supremum of |ECDF_original - ECDF_generated| over the pooled
// sample points, computed with a sorted sweep that consumes all tied
// values from both sides before comparing the step heights.
KsResult ks_two_sample(std::span<const double> original, std::span<const double> generated);

// Kolmogorov survival function Q(lambda) = 2 * sum_{j>=1} (-1)^{j-1}
// exp(-2 j^2 lambda^2), truncated when a term drops below 1e-12 and
// clamped to [0, 1]. Q(0) is taken as 1.
double kolmogorov_survival(double lambda);

}  // namespace xgewfi

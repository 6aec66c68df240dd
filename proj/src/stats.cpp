#include "xgewfi/stats.hpp"

#include <cmath>
#include <cstddef>

#include "xgewfi/errors.hpp"

namespace xgewfi {

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw DataError("mean of empty sample");
    }
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
    const double m = mean(values);
    double sq = 0.0;
    for (const double v : values) {
        const double d = v - m;
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(values.size()));
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) {
        throw DataError("quantile of empty sample");
    }
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace xgewfi

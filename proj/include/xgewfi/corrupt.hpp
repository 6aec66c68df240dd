#pragma once

#include <cstdint>
#include <vector>

#include "xgewfi/dataset.hpp"

namespace xgewfi {

struct CorruptConfig {
    double outlier_rate = 0.05;
    double missing_rate = 0.30;
    double outlier_magnitude = 6.0;  // offset in feature standard deviations
    std::uint64_t seed = 1;
};

// Corruption output plus the injected positions per feature (the ground
// truth detection tests measure recall against).
struct CorruptResult {
    Dataset data;
    std::vector<std::vector<std::size_t>> positions;  // [feature] -> rows, in draw order
};

// Replaces floor(outlier_rate * n_rows) distinct cells per feature with
// mean +- magnitude * stddev (sign uniform), computed from the
// pre-corruption column. The target is never touched.
CorruptResult inject_outliers(const Dataset& ds, const CorruptConfig& cfg);

// Masks floor(missing_rate * n_rows) distinct cells per feature,
// uniformly at random (MCAR), skipping the positions inject_outliers
// selects under the same seed so the two corruptions never collide.
CorruptResult inject_missing(const Dataset& ds, const CorruptConfig& cfg);

}  // namespace xgewfi

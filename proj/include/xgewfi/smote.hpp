#pragma once

#include <cstdint>
#include <vector>

#include "xgewfi/dataset.hpp"
#include "xgewfi/exec.hpp"

namespace xgewfi {

struct AugmentConfig {
    std::size_t k = 5;
    double target_ratio = 1.0;  // >= 1; 1 means no growth
    std::uint64_t seed = 1;
};

// Provenance of one synthetic row: the interpolation endpoints (dataset
// row indices) and the interpolation parameter.
struct SyntheticRowOrigin {
    std::size_t base_row = 0;
    std::size_t neighbor_row = 0;
    double u = 0.0;  // in [0, 1)
};

struct ClassGrowth {
    double class_label = 0.0;
    std::size_t original_count = 0;
    std::size_t added = 0;
};

struct AugmentSummary {
    std::size_t original_rows = 0;
    std::size_t synthetic_rows = 0;
    std::vector<ClassGrowth> per_class;          // classification only
    std::vector<SyntheticRowOrigin> origins;     // one per synthetic row
};

struct AugmentResult {
    Dataset data;  // originals verbatim, synthetic rows appended
    AugmentSummary summary;
};

// Oversampling by linear interpolation between nearest neighbors. For
// classification every class below the majority size grows to
// min(floor(target_ratio * size), majority size); for regression the
// whole table is the pool and grows to floor(target_ratio * n).
//
// Each synthetic row draws (base, neighbor choice, u) from a substream
// keyed by its output index: x + u * (x~ - x) with u in [0, 1), where x~
// is uniform among the base's k nearest pool members (plain Euclidean,
// ties to the lower row). Regression targets interpolate with the same u;
// classification targets copy the base class.
AugmentResult augment(const Dataset& ds, const AugmentConfig& cfg, Exec exec = Exec::Parallel);

}  // namespace xgewfi

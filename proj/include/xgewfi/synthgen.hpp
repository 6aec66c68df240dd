#pragma once

#include <cstdint>

#include "xgewfi/dataset.hpp"

namespace xgewfi {

struct GenConfig {
    std::size_t n_samples = 1000;
    std::size_t n_features = 5;
    std::size_t n_informative = 0;  // 0 = auto: max(1, n_features - 2)
    std::size_t n_classes = 2;      // classification only
    bool shuffle = true;
    double noise = 0.0;             // target noise scale (regression only)
    std::uint64_t random_state = 1;

    std::size_t resolved_informative() const;
};

// Features are i.i.d. standard normal; the target is a sparse linear
// combination of the first n_informative features with coefficients drawn
// uniformly from [1, 100), plus optional Gaussian noise. Equal configs
// produce bitwise-equal datasets.
Dataset make_regression(const GenConfig& cfg);

// One Gaussian cluster per class, centered on a vertex of the hypercube
// {-1, +1}^n_informative chosen by the class index bits; remaining
// features are pure noise. Class counts are balanced within one row.
Dataset make_classification(const GenConfig& cfg);

}  // namespace xgewfi

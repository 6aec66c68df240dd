#pragma once

#include <span>
#include <vector>

#include "xgewfi/dataset.hpp"
#include "xgewfi/exec.hpp"

namespace xgewfi {

// Interquartile-range fences for one feature. Quartiles are linear
// interpolations at positions 0.25*(n-1) and 0.75*(n-1) of the sorted
// sample; the fences extend 1.5 IQR past them.
struct IqrFences {
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

IqrFences compute_fences(std::span<const double> values);

struct FeatureOutlierStats {
    IqrFences fences;
    double median = 0.0;
    std::size_t nulled = 0;
};

struct OutlierSummary {
    std::vector<FeatureOutlierStats> features;
    std::size_t total_nulled = 0;
};

struct OutlierResult {
    Dataset data;
    OutlierSummary summary;
};

// Flags every cell strictly outside its feature's fences as missing.
// Fences come from the input's non-missing cells and are applied in a
// single pass; values exactly on a fence are kept.
OutlierResult null_outliers(const Dataset& ds, Exec exec = Exec::Parallel);

}  // namespace xgewfi

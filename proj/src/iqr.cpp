#include "xgewfi/iqr.hpp"

#include <algorithm>
#include <cstdint>

#include "xgewfi/errors.hpp"
#include "xgewfi/stats.hpp"

namespace xgewfi {

IqrFences compute_fences(std::span<const double> values) {
    if (values.empty()) {
        throw DataError("compute_fences: empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    IqrFences f;
    f.q1 = quantile_sorted(sorted, 0.25);
    f.q3 = quantile_sorted(sorted, 0.75);
    f.iqr = f.q3 - f.q1;
    f.lower = f.q1 - 1.5 * f.iqr;
    f.upper = f.q3 + 1.5 * f.iqr;
    return f;
}

OutlierResult null_outliers(const Dataset& ds, Exec exec) {
    OutlierResult result{ds, {}};
    const auto n_features = static_cast<std::int64_t>(ds.n_features());
    result.summary.features.resize(ds.n_features());

    std::vector<std::string> feature_errors(ds.n_features());
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (std::int64_t f = 0; f < n_features; ++f) {
        const auto view = column_view(ds, static_cast<std::size_t>(f));
        if (view.present_values.empty()) {
            feature_errors[f] = ds.feature_names[f];
            continue;
        }
        auto& stats = result.summary.features[f];
        stats.fences = compute_fences(view.present_values);

        std::vector<double> sorted = view.present_values;
        std::sort(sorted.begin(), sorted.end());
        stats.median = quantile_sorted(sorted, 0.5);

        auto& mask = result.data.missing[f];
        const auto& values = ds.columns[f];
        for (std::size_t r = 0; r < values.size(); ++r) {
            if (mask[r]) {
                continue;
            }
            if (values[r] < stats.fences.lower || values[r] > stats.fences.upper) {
                mask[r] = 1;
                ++stats.nulled;
            }
        }
    }
    for (const auto& name : feature_errors) {
        if (!name.empty()) {
            throw DataError("null_outliers: feature '" + name + "' has no observed values");
        }
    }
    for (const auto& stats : result.summary.features) {
        result.summary.total_nulled += stats.nulled;
    }
    return result;
}

}  // namespace xgewfi

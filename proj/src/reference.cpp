#include "xgewfi/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "xgewfi/errors.hpp"

namespace xgewfi::reference {

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw DataError("reference::ks_statistic: empty sample");
    }
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    double d = 0.0;
    for (const double x : pooled) {
        std::size_t below_a = 0;
        for (const double v : a) {
            below_a += v <= x;
        }
        std::size_t below_b = 0;
        for (const double v : b) {
            below_b += v <= x;
        }
        d = std::max(d, std::abs(static_cast<double>(below_a) / static_cast<double>(a.size()) -
                                 static_cast<double>(below_b) / static_cast<double>(b.size())));
    }
    return d;
}

double kolmogorov_series(double lambda) {
    if (lambda <= 0.0) {
        return 1.0;
    }
    double total = 0.0;
    double term = 1.0;
    for (int j = 1; term >= 1e-12; ++j) {
        term = std::exp(-2.0 * lambda * lambda * static_cast<double>(j) * static_cast<double>(j));
        total += (j % 2 == 1 ? term : -term);
    }
    const double q = 2.0 * total;
    return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

double quantile(std::span<const double> values, double q) {
    if (values.empty()) {
        throw DataError("reference::quantile: empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double position = q * static_cast<double>(sorted.size() - 1);
    const double lower_index = std::floor(position);
    const double fraction = position - lower_index;
    const auto lo = static_cast<std::size_t>(lower_index);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] * (1.0 - fraction) + sorted[hi] * fraction;
}

IqrFences fences(std::span<const double> values) {
    IqrFences f;
    f.q1 = quantile(values, 0.25);
    f.q3 = quantile(values, 0.75);
    f.iqr = f.q3 - f.q1;
    f.lower = f.q1 - 1.5 * f.iqr;
    f.upper = f.q3 + 1.5 * f.iqr;
    return f;
}

ImputeResult impute_knn(const Dataset& ds, const ImputeConfig& cfg) {
    if (cfg.k < 1) {
        throw ConfigError("reference::impute_knn: k must be >= 1");
    }
    const std::size_t n = ds.n_rows();
    const std::size_t p = ds.n_features();

    ImputeResult result{ds, {}};
    result.summary.imputed_per_feature.assign(p, 0);
    result.summary.fallback_per_feature.assign(p, 0);

    std::vector<std::vector<double>> rows(n, std::vector<double>(p));
    std::vector<std::vector<std::uint8_t>> masks(n, std::vector<std::uint8_t>(p));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t f = 0; f < p; ++f) {
            rows[r][f] = ds.columns[f][r];
            masks[r][f] = ds.missing[f][r];
        }
    }

    for (std::size_t f = 0; f < p; ++f) {
        const auto view = column_view(ds, f);
        if (view.present_values.empty()) {
            throw DataError("reference::impute_knn: feature '" + ds.feature_names[f] +
                            "' has no observed values");
        }
        double mean = 0.0;
        for (const double v : view.present_values) {
            mean += v;
        }
        mean /= static_cast<double>(view.present_values.size());

        for (std::size_t r = 0; r < n; ++r) {
            if (!ds.missing[f][r]) {
                continue;
            }
            ++result.summary.imputed_per_feature[f];
            std::vector<std::pair<double, std::size_t>> candidates;
            for (std::size_t c = 0; c < n; ++c) {
                if (ds.missing[f][c]) {
                    continue;
                }
                const double d = masked_distance(rows[r], masks[r], rows[c], masks[c]);
                if (!std::isinf(d)) {
                    candidates.emplace_back(d, c);
                }
            }
            if (candidates.empty()) {
                result.data.columns[f][r] = mean;
                ++result.summary.fallback_per_feature[f];
            } else {
                std::sort(candidates.begin(), candidates.end());
                const std::size_t take = std::min(cfg.k, candidates.size());
                double sum = 0.0;
                for (std::size_t i = 0; i < take; ++i) {
                    sum += ds.columns[f][candidates[i].second];
                }
                result.data.columns[f][r] = sum / static_cast<double>(take);
            }
            result.data.missing[f][r] = 0;
        }
    }
    return result;
}

}  // namespace xgewfi::reference

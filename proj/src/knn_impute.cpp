#include "xgewfi/knn_impute.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "xgewfi/errors.hpp"

namespace xgewfi {

double masked_distance(std::span<const double> a, std::span<const std::uint8_t> a_missing,
                       std::span<const double> b, std::span<const std::uint8_t> b_missing) {
    if (a.size() != b.size() || a.size() != a_missing.size() || b.size() != b_missing.size()) {
        throw DataError("masked_distance: row width mismatch");
    }
    double sum = 0.0;
    std::size_t overlap = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a_missing[i] && !b_missing[i]) {
            const double d = a[i] - b[i];
            sum += d * d;
            ++overlap;
        }
    }
    if (overlap == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::sqrt(static_cast<double>(a.size()) / static_cast<double>(overlap) * sum);
}

std::size_t ImputeSummary::total_imputed() const {
    return std::accumulate(imputed_per_feature.begin(), imputed_per_feature.end(), std::size_t{0});
}

namespace {

// Keeps the k lexicographically smallest (distance, row) pairs, ascending.
class NearestSet {
public:
    explicit NearestSet(std::size_t k) : k_(k) { entries_.reserve(k + 1); }

    void offer(double distance, std::size_t row) {
        const std::pair<double, std::size_t> entry{distance, row};
        if (entries_.size() == k_ && entries_.back() < entry) {
            return;
        }
        entries_.insert(std::upper_bound(entries_.begin(), entries_.end(), entry), entry);
        if (entries_.size() > k_) {
            entries_.pop_back();
        }
    }

    const std::vector<std::pair<double, std::size_t>>& entries() const { return entries_; }

private:
    std::size_t k_;
    std::vector<std::pair<double, std::size_t>> entries_;
};

}  // namespace

ImputeResult impute(const Dataset& ds, const ImputeConfig& cfg, Exec exec) {
    if (cfg.k < 1) {
        throw ConfigError("impute: k must be >= 1");
    }
    const std::size_t n = ds.n_rows();
    const std::size_t p = ds.n_features();

    std::vector<double> column_means(p, 0.0);
    for (std::size_t f = 0; f < p; ++f) {
        const auto view = column_view(ds, f);
        if (view.present_values.empty()) {
            throw DataError("impute: feature '" + ds.feature_names[f] + "' has no observed values");
        }
        double sum = 0.0;
        for (const double v : view.present_values) {
            sum += v;
        }
        column_means[f] = sum / static_cast<double>(view.present_values.size());
    }

    ImputeResult result{ds, {}};
    result.summary.imputed_per_feature.assign(p, 0);
    result.summary.fallback_per_feature.assign(p, 0);

    std::vector<std::size_t> rows_with_missing;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t f = 0; f < p; ++f) {
            if (ds.missing[f][r]) {
                rows_with_missing.push_back(r);
                break;
            }
        }
    }
    if (rows_with_missing.empty()) {
        return result;
    }

    // Row-major copies keep the distance loop cache-friendly.
    std::vector<double> values(n * p);
    std::vector<std::uint8_t> mask(n * p);
    for (std::size_t f = 0; f < p; ++f) {
        for (std::size_t r = 0; r < n; ++r) {
            values[r * p + f] = ds.columns[f][r];
            mask[r * p + f] = ds.missing[f][r];
        }
    }

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> fallbacks(rows_with_missing.size());
    const auto n_work = static_cast<std::int64_t>(rows_with_missing.size());
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::Parallel)
    for (std::int64_t w = 0; w < n_work; ++w) {
        const std::size_t r = rows_with_missing[static_cast<std::size_t>(w)];
        const double* row = values.data() + r * p;
        const std::uint8_t* row_mask = mask.data() + r * p;

        // One distance pass per row; shared by all its missing features.
        std::vector<double> distances(n);
        for (std::size_t c = 0; c < n; ++c) {
            const double* other = values.data() + c * p;
            const std::uint8_t* other_mask = mask.data() + c * p;
            double sum = 0.0;
            std::size_t overlap = 0;
            for (std::size_t f = 0; f < p; ++f) {
                if (!row_mask[f] && !other_mask[f]) {
                    const double d = row[f] - other[f];
                    sum += d * d;
                    ++overlap;
                }
            }
            distances[c] = overlap == 0
                               ? std::numeric_limits<double>::infinity()
                               : std::sqrt(static_cast<double>(p) / static_cast<double>(overlap) * sum);
        }

        for (std::size_t f = 0; f < p; ++f) {
            if (!row_mask[f]) {
                continue;
            }
            NearestSet nearest(cfg.k);
            for (std::size_t c = 0; c < n; ++c) {
                if (!mask[c * p + f] && !std::isinf(distances[c])) {
                    nearest.offer(distances[c], c);
                }
            }
            if (nearest.entries().empty()) {
                result.data.columns[f][r] = column_means[f];
                fallbacks[static_cast<std::size_t>(w)].emplace_back(f, r);
            } else {
                double sum = 0.0;
                for (const auto& [dist, c] : nearest.entries()) {
                    sum += ds.columns[f][c];
                }
                result.data.columns[f][r] = sum / static_cast<double>(nearest.entries().size());
            }
            result.data.missing[f][r] = 0;
        }
    }

    for (std::size_t f = 0; f < p; ++f) {
        for (std::size_t r = 0; r < n; ++r) {
            result.summary.imputed_per_feature[f] += ds.missing[f][r] != 0;
        }
    }
    for (const auto& row_fallbacks : fallbacks) {
        for (const auto& [f, r] : row_fallbacks) {
            ++result.summary.fallback_per_feature[f];
        }
    }
    return result;
}

}  // namespace xgewfi

#include "xgewfi/corrupt.hpp"

#include <algorithm>

#include "xgewfi/errors.hpp"
#include "xgewfi/rng.hpp"
#include "xgewfi/stats.hpp"

namespace xgewfi {

namespace {

void check_config(const CorruptConfig& cfg) {
    if (cfg.outlier_rate < 0.0 || cfg.outlier_rate > 1.0 || cfg.missing_rate < 0.0 ||
        cfg.missing_rate > 1.0) {
        throw ConfigError("corrupt: rates must lie in [0, 1]");
    }
    if (cfg.outlier_rate + cfg.missing_rate >= 1.0) {
        throw ConfigError("corrupt: outlier_rate + missing_rate must stay below 1");
    }
    if (cfg.outlier_magnitude <= 0.0) {
        throw ConfigError("corrupt: outlier_magnitude must be positive");
    }
}

// The positions inject_outliers uses for one feature; inject_missing
// re-derives them from the same substream to keep the corruptions
// disjoint without any side channel.
std::vector<std::size_t> outlier_rows(const CorruptConfig& cfg, std::size_t n_rows,
                                      std::size_t feature) {
    const auto count = static_cast<std::size_t>(cfg.outlier_rate * static_cast<double>(n_rows));
    Rng rng(derive_seed(cfg.seed, "outlier-rows", feature));
    return rng.sample_without_replacement(n_rows, count);
}

}  // namespace

CorruptResult inject_outliers(const Dataset& ds, const CorruptConfig& cfg) {
    check_config(cfg);
    CorruptResult result{ds, {}};
    result.positions.resize(ds.n_features());
    for (std::size_t f = 0; f < ds.n_features(); ++f) {
        const auto view = column_view(ds, f);
        if (view.present_values.empty()) {
            throw DataError("inject_outliers: feature '" + ds.feature_names[f] +
                            "' has no observed values");
        }
        const double mu = mean(view.present_values);
        const double sigma = stddev(view.present_values);

        auto rows = outlier_rows(cfg, ds.n_rows(), f);
        Rng sign_rng(derive_seed(cfg.seed, "outlier-sign", f));
        for (const std::size_t r : rows) {
            if (ds.missing[f][r]) {
                throw DataError("inject_outliers: selected cell is already missing in feature '" +
                                ds.feature_names[f] + "'");
            }
            const double sign = sign_rng.uniform_below(2) == 0 ? 1.0 : -1.0;
            result.data.columns[f][r] = mu + sign * cfg.outlier_magnitude * sigma;
        }
        result.positions[f] = std::move(rows);
    }
    return result;
}

CorruptResult inject_missing(const Dataset& ds, const CorruptConfig& cfg) {
    check_config(cfg);
    CorruptResult result{ds, {}};
    result.positions.resize(ds.n_features());
    const std::size_t n = ds.n_rows();
    const auto count = static_cast<std::size_t>(cfg.missing_rate * static_cast<double>(n));
    for (std::size_t f = 0; f < ds.n_features(); ++f) {
        // Complement of the outlier rows, ascending.
        std::vector<std::uint8_t> reserved(n, 0);
        for (const std::size_t r : outlier_rows(cfg, n, f)) {
            reserved[r] = 1;
        }
        std::vector<std::size_t> candidates;
        candidates.reserve(n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!reserved[r]) {
                candidates.push_back(r);
            }
        }
        if (candidates.size() < count) {
            throw ConfigError("inject_missing: not enough cells left after outliers");
        }

        Rng rng(derive_seed(cfg.seed, "missing-rows", f));
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(candidates.size() - i));
            std::swap(candidates[i], candidates[j]);
            result.data.missing[f][candidates[i]] = 1;
            result.positions[f].push_back(candidates[i]);
        }
    }
    return result;
}

}  // namespace xgewfi

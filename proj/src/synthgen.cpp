#include "xgewfi/synthgen.hpp"

#include <numeric>
#include <string>

#include "xgewfi/errors.hpp"
#include "xgewfi/rng.hpp"

namespace xgewfi {

namespace {

void check_common(const GenConfig& cfg) {
    if (cfg.n_samples < 1 || cfg.n_features < 1) {
        throw ConfigError("synthgen: n_samples and n_features must be positive");
    }
    if (cfg.n_informative > cfg.n_features) {
        throw ConfigError("synthgen: n_informative exceeds n_features");
    }
    if (cfg.noise < 0.0) {
        throw ConfigError("synthgen: noise must be non-negative");
    }
}

Dataset blank_dataset(const GenConfig& cfg, DatasetKind kind) {
    Dataset ds;
    ds.kind = kind;
    ds.columns.assign(cfg.n_features, std::vector<double>(cfg.n_samples, 0.0));
    ds.missing.assign(cfg.n_features, std::vector<std::uint8_t>(cfg.n_samples, 0));
    ds.target.assign(cfg.n_samples, 0.0);
    ds.feature_names.reserve(cfg.n_features);
    for (std::size_t f = 0; f < cfg.n_features; ++f) {
        ds.feature_names.push_back("f" + std::to_string(f));
    }
    return ds;
}

void fill_normal_columns(Dataset& ds, const GenConfig& cfg, std::string_view tag) {
    for (std::size_t f = 0; f < cfg.n_features; ++f) {
        Rng rng(derive_seed(cfg.random_state, tag, f));
        for (auto& cell : ds.columns[f]) {
            cell = rng.normal();
        }
    }
}

void shuffle_rows(Dataset& ds, const GenConfig& cfg) {
    if (!cfg.shuffle) {
        return;
    }
    std::vector<std::size_t> perm(cfg.n_samples);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.random_state, "shuffle"));
    rng.shuffle(perm);
    for (auto& column : ds.columns) {
        std::vector<double> reordered(column.size());
        for (std::size_t r = 0; r < column.size(); ++r) {
            reordered[r] = column[perm[r]];
        }
        column = std::move(reordered);
    }
    std::vector<double> target(ds.target.size());
    for (std::size_t r = 0; r < target.size(); ++r) {
        target[r] = ds.target[perm[r]];
    }
    ds.target = std::move(target);
}

}  // namespace

std::size_t GenConfig::resolved_informative() const {
    if (n_informative == 0) {
        return std::max<std::size_t>(1, n_features > 2 ? n_features - 2 : 1);
    }
    return n_informative;
}

Dataset make_regression(const GenConfig& cfg) {
    check_common(cfg);
    const std::size_t informative = cfg.resolved_informative();

    Dataset ds = blank_dataset(cfg, DatasetKind::Regression);
    fill_normal_columns(ds, cfg, "reg-feature");

    std::vector<double> coefficients(informative);
    {
        Rng rng(derive_seed(cfg.random_state, "reg-coef"));
        for (auto& w : coefficients) {
            w = 1.0 + 99.0 * rng.next_double();
        }
    }
    for (std::size_t j = 0; j < informative; ++j) {
        for (std::size_t r = 0; r < cfg.n_samples; ++r) {
            ds.target[r] += coefficients[j] * ds.columns[j][r];
        }
    }
    if (cfg.noise > 0.0) {
        Rng rng(derive_seed(cfg.random_state, "reg-noise"));
        for (auto& t : ds.target) {
            t += cfg.noise * rng.normal();
        }
    }

    shuffle_rows(ds, cfg);
    return ds;
}

Dataset make_classification(const GenConfig& cfg) {
    check_common(cfg);
    if (cfg.n_classes < 2) {
        throw ConfigError("synthgen: classification needs n_classes >= 2");
    }
    if (cfg.n_samples < cfg.n_classes) {
        throw ConfigError("synthgen: fewer samples than classes");
    }
    const std::size_t informative = cfg.resolved_informative();
    if (informative < 64 && cfg.n_classes > (std::size_t{1} << informative)) {
        throw ConfigError("synthgen: hypercube too small, need n_classes <= 2^n_informative");
    }

    Dataset ds = blank_dataset(cfg, DatasetKind::Classification);
    fill_normal_columns(ds, cfg, "cls-feature");

    // Balanced class blocks: the first (n % k) classes get one extra row.
    const std::size_t base = cfg.n_samples / cfg.n_classes;
    const std::size_t remainder = cfg.n_samples % cfg.n_classes;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cfg.n_classes; ++c) {
        const std::size_t count = base + (c < remainder ? 1 : 0);
        for (std::size_t i = 0; i < count; ++i, ++row) {
            ds.target[row] = static_cast<double>(c);
            for (std::size_t j = 0; j < informative; ++j) {
                ds.columns[j][row] += ((c >> j) & 1) ? 1.0 : -1.0;
            }
        }
    }

    shuffle_rows(ds, cfg);
    return ds;
}

}  // namespace xgewfi

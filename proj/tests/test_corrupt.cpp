#include <doctest.h>

#include <set>

#include "test_util.hpp"
#include "xgewfi/corrupt.hpp"
#include "xgewfi/errors.hpp"
#include "xgewfi/iqr.hpp"
#include "xgewfi/synthgen.hpp"

using namespace xgewfi;

namespace {

Dataset clean_dataset(std::size_t rows, std::size_t features, std::uint64_t seed) {
    GenConfig cfg;
    cfg.n_samples = rows;
    cfg.n_features = features;
    cfg.random_state = seed;
    return make_regression(cfg);
}

}  // namespace

TEST_CASE("zero rates leave the dataset unchanged") {
    const Dataset ds = clean_dataset(200, 3, 1);
    CorruptConfig cfg;
    cfg.outlier_rate = 0.0;
    cfg.missing_rate = 0.0;
    CHECK(testutil::same_dataset(inject_outliers(ds, cfg).data, ds));
    CHECK(testutil::same_dataset(inject_missing(ds, cfg).data, ds));
}

TEST_CASE("cell counts match the floor arithmetic exactly") {
    const Dataset ds = clean_dataset(25000, 5, 1);
    CorruptConfig cfg;  // 5% outliers, 30% missing

    const CorruptResult outliers = inject_outliers(ds, cfg);
    for (std::size_t f = 0; f < 5; ++f) {
        CHECK(outliers.positions[f].size() == 1250);
        std::set<std::size_t> unique(outliers.positions[f].begin(), outliers.positions[f].end());
        CHECK(unique.size() == 1250);
    }

    const CorruptResult missing = inject_missing(outliers.data, cfg);
    for (std::size_t f = 0; f < 5; ++f) {
        CHECK(missing.positions[f].size() == 7500);
        std::size_t masked = 0;
        for (const auto m : missing.data.missing[f]) {
            masked += m;
        }
        CHECK(masked == 7500);
    }
}

TEST_CASE("outlier and missing positions are disjoint under one seed") {
    const Dataset ds = clean_dataset(2000, 4, 7);
    CorruptConfig cfg;
    cfg.seed = 99;
    const CorruptResult outliers = inject_outliers(ds, cfg);
    const CorruptResult missing = inject_missing(outliers.data, cfg);
    for (std::size_t f = 0; f < 4; ++f) {
        std::set<std::size_t> outlier_rows(outliers.positions[f].begin(),
                                           outliers.positions[f].end());
        for (const std::size_t r : missing.positions[f]) {
            CHECK(outlier_rows.count(r) == 0);
        }
        // every injected outlier survives the masking
        for (const std::size_t r : outliers.positions[f]) {
            CHECK(missing.data.missing[f][r] == 0);
        }
    }
}

TEST_CASE("corruption never touches the target") {
    const Dataset ds = clean_dataset(500, 3, 5);
    CorruptConfig cfg;
    const Dataset corrupted = inject_missing(inject_outliers(ds, cfg).data, cfg).data;
    CHECK(corrupted.target == ds.target);
}

TEST_CASE("corruption is deterministic under the seed") {
    const Dataset ds = clean_dataset(500, 3, 5);
    CorruptConfig cfg;
    cfg.seed = 1234;
    const CorruptResult a = inject_outliers(ds, cfg);
    const CorruptResult b = inject_outliers(ds, cfg);
    CHECK(testutil::same_dataset(a.data, b.data));
    CHECK(a.positions == b.positions);
}

TEST_CASE("invalid corruption configs are rejected") {
    const Dataset ds = clean_dataset(50, 2, 3);
    CorruptConfig cfg;
    cfg.outlier_rate = -0.1;
    CHECK_THROWS_AS(inject_outliers(ds, cfg), ConfigError);
    cfg.outlier_rate = 0.5;
    cfg.missing_rate = 0.6;
    CHECK_THROWS_AS(inject_missing(ds, cfg), ConfigError);
    cfg.missing_rate = 0.3;
    cfg.outlier_magnitude = 0.0;
    CHECK_THROWS_AS(inject_outliers(ds, cfg), ConfigError);
}

TEST_CASE("six-sigma outliers land outside the fences") {
    const Dataset ds = clean_dataset(5000, 3, 11);
    CorruptConfig cfg;  // magnitude 6.0
    const CorruptResult outliers = inject_outliers(ds, cfg);
    const CorruptResult missing = inject_missing(outliers.data, cfg);
    const OutlierResult nulled = null_outliers(missing.data);

    std::size_t injected = 0;
    std::size_t detected = 0;
    for (std::size_t f = 0; f < 3; ++f) {
        for (const std::size_t r : outliers.positions[f]) {
            ++injected;
            detected += nulled.data.missing[f][r] != 0;
        }
    }
    CHECK(static_cast<double>(detected) / static_cast<double>(injected) >= 0.99);
}

#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "xgewfi/errors.hpp"
#include "xgewfi/knn_impute.hpp"
#include "xgewfi/reference.hpp"

using namespace xgewfi;

namespace {

constexpr std::uint8_t kPresent = 0;
constexpr std::uint8_t kMissing = 1;

}  // namespace

TEST_CASE("masked distance on fully observed rows is plain Euclidean") {
    const std::vector<double> a{0.0, 0.0};
    const std::vector<double> b{3.0, 4.0};
    const std::vector<std::uint8_t> observed{kPresent, kPresent};
    CHECK(masked_distance(a, observed, a, observed) == 0.0);
    CHECK(masked_distance(a, observed, b, observed) == 5.0);
}

TEST_CASE("masked distance rescales by the observed overlap") {
    const std::vector<double> a{1.0, 0.0, 1.0};
    const std::vector<std::uint8_t> a_mask{kPresent, kMissing, kPresent};
    const std::vector<double> b{4.0, 7.0, 5.0};
    const std::vector<std::uint8_t> b_mask{kPresent, kPresent, kPresent};
    CHECK(masked_distance(a, a_mask, b, b_mask) == std::sqrt(37.5));
}

TEST_CASE("masked distance without overlap is infinite") {
    const std::vector<double> a{1.0, 0.0};
    const std::vector<std::uint8_t> a_mask{kPresent, kMissing};
    const std::vector<double> b{0.0, 2.0};
    const std::vector<std::uint8_t> b_mask{kMissing, kPresent};
    CHECK(std::isinf(masked_distance(a, a_mask, b, b_mask)));
}

TEST_CASE("masked distance rejects width mismatches") {
    const std::vector<double> a{1.0};
    const std::vector<double> b{1.0, 2.0};
    const std::vector<std::uint8_t> ma{kPresent};
    const std::vector<std::uint8_t> mb{kPresent, kPresent};
    CHECK_THROWS_AS(masked_distance(a, ma, b, mb), DataError);
}

TEST_CASE("imputing a complete dataset is the identity") {
    const Dataset ds = testutil::random_dataset(60, 4, 0.0, 5);
    const ImputeResult result = impute(ds, {});
    CHECK(testutil::same_dataset(result.data, ds));
    CHECK(result.summary.total_imputed() == 0);
}

TEST_CASE("three-row toy imputes the neighbor mean exactly") {
    Dataset ds;
    ds.feature_names = {"x", "y"};
    ds.columns = {{0.0, 2.0, 1.0}, {0.0, 2.0, 0.0}};
    ds.missing = {{0, 0, 0}, {0, 0, 1}};
    ds.target = {0.0, 0.0, 0.0};

    ImputeConfig cfg;
    cfg.k = 2;
    const ImputeResult result = impute(ds, cfg);
    CHECK(result.data.columns[1][2] == 1.0);
    CHECK(result.data.missing_count() == 0);
    CHECK(result.summary.imputed_per_feature[1] == 1);
}

TEST_CASE("imputed values stay within the observed range") {
    const Dataset ds = testutil::random_dataset(300, 5, 0.3, 17);
    const ImputeResult result = impute(ds, {});
    CHECK(result.data.missing_count() == 0);
    for (std::size_t f = 0; f < ds.n_features(); ++f) {
        const auto view = column_view(ds, f);
        const auto [lo, hi] =
            std::minmax_element(view.present_values.begin(), view.present_values.end());
        for (std::size_t r = 0; r < ds.n_rows(); ++r) {
            if (ds.missing[f][r]) {
                CHECK(result.data.columns[f][r] >= *lo);
                CHECK(result.data.columns[f][r] <= *hi);
            }
        }
    }
}

TEST_CASE("observed cells are never modified") {
    const Dataset ds = testutil::random_dataset(150, 4, 0.25, 23);
    const ImputeResult result = impute(ds, {});
    for (std::size_t f = 0; f < ds.n_features(); ++f) {
        for (std::size_t r = 0; r < ds.n_rows(); ++r) {
            if (!ds.missing[f][r]) {
                CHECK(result.data.columns[f][r] == ds.columns[f][r]);
            }
        }
    }
}

TEST_CASE("optimized, serial and reference imputation agree bitwise") {
    const Dataset ds = testutil::random_dataset(250, 5, 0.3, 29);
    ImputeConfig cfg;
    cfg.k = 4;
    const ImputeResult parallel = impute(ds, cfg, Exec::Parallel);
    const ImputeResult serial = impute(ds, cfg, Exec::Serial);
    const ImputeResult naive = reference::impute_knn(ds, cfg);
    CHECK(testutil::same_dataset(parallel.data, serial.data));
    CHECK(testutil::same_dataset(parallel.data, naive.data));
    CHECK(parallel.summary.imputed_per_feature == naive.summary.imputed_per_feature);
    CHECK(parallel.summary.fallback_per_feature == naive.summary.fallback_per_feature);
}

TEST_CASE("no usable neighbor falls back to the column mean") {
    Dataset ds;
    ds.feature_names = {"a", "b"};
    ds.columns = {{1.0, 0.0}, {0.0, 2.0}};
    ds.missing = {{0, 1}, {1, 0}};
    ds.target = {0.0, 0.0};

    const ImputeResult result = impute(ds, {});
    // rows observe disjoint features, every distance is infinite
    CHECK(result.data.columns[1][0] == 2.0);
    CHECK(result.data.columns[0][1] == 1.0);
    CHECK(result.summary.fallback_per_feature[0] == 1);
    CHECK(result.summary.fallback_per_feature[1] == 1);
}

TEST_CASE("a feature without observed cells is an error") {
    Dataset ds;
    ds.feature_names = {"a"};
    ds.columns = {{1.0, 2.0}};
    ds.missing = {{1, 1}};
    ds.target = {0.0, 0.0};
    CHECK_THROWS_AS(impute(ds, {}), DataError);
}

TEST_CASE("k must be positive") {
    const Dataset ds = testutil::random_dataset(10, 2, 0.1, 1);
    CHECK_THROWS_AS(impute(ds, ImputeConfig{0}), ConfigError);
}

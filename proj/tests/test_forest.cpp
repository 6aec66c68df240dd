#include <doctest.h>

#include <cmath>
#include <numeric>

#include "test_util.hpp"
#include "xgewfi/errors.hpp"
#include "xgewfi/forest.hpp"
#include "xgewfi/rng.hpp"

using namespace xgewfi;

namespace {

// y = x0 exactly, the remaining features are noise.
Dataset linear_dataset(std::size_t rows, std::size_t features, std::uint64_t seed) {
    Dataset ds = testutil::random_dataset(rows, features, 0.0, seed);
    ds.target = ds.columns[0];
    return ds;
}

// two classes split cleanly at x0 = 0
Dataset separable_dataset(std::size_t rows, std::uint64_t seed) {
    Dataset ds = testutil::random_dataset(rows, 3, 0.0, seed);
    ds.kind = DatasetKind::Classification;
    for (std::size_t r = 0; r < rows; ++r) {
        const bool positive = r % 2 == 0;
        ds.columns[0][r] = positive ? 3.0 + ds.columns[0][r] * 0.2 : -3.0 + ds.columns[0][r] * 0.2;
        ds.target[r] = positive ? 1.0 : 0.0;
    }
    return ds;
}

Forest leaf_only_forest(std::size_t n_trees, const std::vector<double>& predictions,
                        DatasetKind kind, std::size_t n_classes) {
    Forest forest;
    forest.kind = kind;
    forest.n_features = 2;
    forest.n_classes = n_classes;
    for (std::size_t t = 0; t < n_trees; ++t) {
        Tree tree;
        TreeNode leaf;
        leaf.n_samples = 10;
        leaf.prediction = predictions[t % predictions.size()];
        tree.nodes.push_back(leaf);
        forest.trees.push_back(tree);
    }
    return forest;
}

bool same_trees(const Forest& a, const Forest& b) {
    if (a.trees.size() != b.trees.size()) {
        return false;
    }
    for (std::size_t t = 0; t < a.trees.size(); ++t) {
        const auto& ta = a.trees[t].nodes;
        const auto& tb = b.trees[t].nodes;
        if (ta.size() != tb.size()) {
            return false;
        }
        for (std::size_t i = 0; i < ta.size(); ++i) {
            if (ta[i].feature != tb[i].feature || ta[i].threshold != tb[i].threshold ||
                ta[i].left != tb[i].left || ta[i].right != tb[i].right ||
                ta[i].n_samples != tb[i].n_samples || ta[i].impurity != tb[i].impurity ||
                ta[i].prediction != tb[i].prediction) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("constant targets are rejected") {
    Dataset ds = testutil::random_dataset(50, 2, 0.0, 1);
    ds.kind = DatasetKind::Classification;
    ds.target.assign(50, 0.0);
    CHECK_THROWS_AS(train(ds, {}), DataError);
}

TEST_CASE("tiny datasets are rejected") {
    Dataset ds = testutil::random_dataset(1, 2, 0.0, 1);
    CHECK_THROWS_AS(train(ds, {}), DataError);

    Dataset holey = testutil::random_dataset(20, 2, 0.3, 1);
    holey.target[0] = 1.0;
    CHECK_THROWS_AS(train(holey, {}), DataError);
}

TEST_CASE("an exact linear dependence concentrates the importances") {
    const Dataset ds = linear_dataset(2000, 5, 42);
    ForestConfig cfg;
    cfg.n_trees = 30;
    cfg.max_features = MaxFeatures::All;
    const ImportanceVector imp = feature_importances(train(ds, cfg));
    CHECK(imp.weights[0] > 0.9);
    const double sum = std::accumulate(imp.weights.begin(), imp.weights.end(), 0.0);
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    for (const double w : imp.weights) {
        CHECK(w >= 0.0);
    }
}

TEST_CASE("a single split yields a one-hot importance") {
    // only feature 2 varies, so only it can ever split
    Dataset ds;
    ds.feature_names = {"a", "b", "c"};
    ds.columns = {std::vector<double>(20, 1.0), std::vector<double>(20, 2.0), {}};
    for (int i = 0; i < 20; ++i) {
        ds.columns[2].push_back(static_cast<double>(i));
        ds.target.push_back(i < 10 ? 0.0 : 5.0);
    }
    ds.missing.assign(3, std::vector<std::uint8_t>(20, 0));

    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 1;
    cfg.bootstrap = false;
    cfg.max_features = MaxFeatures::All;
    const Forest forest = train(ds, cfg);
    const ImportanceVector imp = feature_importances(forest);
    CHECK(imp.weights == std::vector<double>{0.0, 0.0, 1.0});
    REQUIRE(forest.trees[0].nodes.size() == 3);
    CHECK(forest.trees[0].nodes[0].feature == 2);
}

TEST_CASE("a depth-1 tree fits separable data") {
    const Dataset ds = separable_dataset(400, 7);
    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 1;
    cfg.bootstrap = false;
    cfg.max_features = MaxFeatures::All;
    const Forest forest = train(ds, cfg);

    std::size_t correct = 0;
    std::vector<double> row(3);
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        for (std::size_t f = 0; f < 3; ++f) {
            row[f] = ds.columns[f][r];
        }
        correct += predict(forest, row) == ds.target[r];
    }
    CHECK(static_cast<double>(correct) / static_cast<double>(ds.n_rows()) > 0.95);
}

TEST_CASE("forest voting on held-in separable rows") {
    const Dataset ds = separable_dataset(300, 10);
    ForestConfig cfg;
    cfg.n_trees = 20;
    const Forest forest = train(ds, cfg);
    std::size_t correct = 0;
    std::vector<double> row(3);
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        for (std::size_t f = 0; f < 3; ++f) {
            row[f] = ds.columns[f][r];
        }
        correct += predict(forest, row) == ds.target[r];
    }
    CHECK(static_cast<double>(correct) / static_cast<double>(ds.n_rows()) > 0.95);
}

TEST_CASE("prediction aggregates leaves") {
    const Forest constant = leaf_only_forest(4, {3.0}, DatasetKind::Regression, 0);
    CHECK(predict(constant, std::vector<double>{0.0, 0.0}) == 3.0);

    // two votes for class 1, two for class 2: the tie goes low
    const Forest tie = leaf_only_forest(4, {1.0, 2.0}, DatasetKind::Classification, 3);
    CHECK(predict(tie, std::vector<double>{0.0, 0.0}) == 1.0);

    CHECK_THROWS_AS(predict(constant, std::vector<double>{1.0}), DataError);
}

TEST_CASE("leaf-only forests have no importances") {
    const Forest leaves = leaf_only_forest(3, {1.0}, DatasetKind::Regression, 0);
    CHECK_THROWS_AS(feature_importances(leaves), DataError);
}

TEST_CASE("training is deterministic and execution-policy independent") {
    const Dataset ds = linear_dataset(400, 4, 77);
    ForestConfig cfg;
    cfg.n_trees = 8;
    cfg.seed = 123;
    const Forest a = train(ds, cfg, Exec::Parallel);
    const Forest b = train(ds, cfg, Exec::Parallel);
    const Forest c = train(ds, cfg, Exec::Serial);
    CHECK(same_trees(a, b));
    CHECK(same_trees(a, c));
    CHECK(feature_importances(a).weights == feature_importances(c).weights);
}

TEST_CASE("the dominant feature tracks a column permutation") {
    const Dataset ds = linear_dataset(800, 5, 31);
    Dataset permuted = ds;
    // move the informative column to position 3
    permuted.columns[3] = ds.columns[0];
    permuted.columns[0] = ds.columns[3];

    ForestConfig cfg;
    cfg.n_trees = 15;
    cfg.max_features = MaxFeatures::All;
    const auto imp = feature_importances(train(permuted, cfg)).weights;
    const auto argmax = static_cast<std::size_t>(
        std::max_element(imp.begin(), imp.end()) - imp.begin());
    CHECK(argmax == 3);
}

TEST_CASE("per-tree importance normalization") {
    const Dataset ds = linear_dataset(200, 3, 9);
    ForestConfig cfg;
    cfg.n_trees = 5;
    const ImportanceVector imp = feature_importances(train(ds, cfg));
    const double sum = std::accumulate(imp.weights.begin(), imp.weights.end(), 0.0);
    CHECK(std::abs(sum - 1.0) <= 1e-9);
}

TEST_CASE("invalid forest configs are rejected") {
    const Dataset ds = linear_dataset(50, 2, 3);
    ForestConfig cfg;
    cfg.n_trees = 0;
    CHECK_THROWS_AS(train(ds, cfg), ConfigError);
    cfg.n_trees = 1;
    cfg.min_samples_split = 1;
    CHECK_THROWS_AS(train(ds, cfg), ConfigError);
}

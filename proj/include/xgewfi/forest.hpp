#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xgewfi/dataset.hpp"
#include "xgewfi/exec.hpp"

namespace xgewfi {

enum class MaxFeatures {
    Auto,   // Sqrt for classification, Third for regression
    Sqrt,   // max(1, floor(sqrt(p)))
    Third,  // max(1, floor(p / 3))
    All,
};

struct ForestConfig {
    std::size_t n_trees = 100;
    std::size_t max_depth = 0;  // 0 = unlimited
    std::size_t min_samples_split = 2;
    MaxFeatures max_features = MaxFeatures::Auto;
    bool bootstrap = true;
    std::uint64_t seed = 1;
};

// Flat CART node. feature < 0 marks a leaf; children are indices into the
// owning tree's node vector. prediction holds the node's mean target
// (regression) or majority class index (classification).
struct TreeNode {
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::size_t n_samples = 0;
    double impurity = 0.0;
    double prediction = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct Forest {
    DatasetKind kind = DatasetKind::Regression;
    std::size_t n_features = 0;
    std::size_t n_classes = 0;  // classification only
    std::vector<Tree> trees;
};

// Normalized per-feature weights; non-negative, summing to 1.
struct ImportanceVector {
    std::vector<double> weights;
};

// Trains n_trees CART trees on bootstrap resamples. Splits are exact: at
// each node a random feature subset is scanned over every midpoint
// between consecutive distinct values, maximizing impurity decrease
// (variance for regression, Gini for classification). Ties break toward
// the lower feature index, then the lower threshold. Each tree draws from
// a substream derived from (seed, tree index), so parallel training is
// bitwise-identical to serial.
Forest train(const Dataset& ds, const ForestConfig& cfg, Exec exec = Exec::Parallel);

// Mean decrease in impurity: each split contributes its impurity decrease
// (weighted by node share) to its feature; per-tree vectors are
// normalized, averaged over trees with at least one split, and
// re-normalized.
ImportanceVector feature_importances(const Forest& forest);

// Mean of tree predictions (regression) or majority vote with
// lowest-index tie-breaking (classification).
double predict(const Forest& forest, std::span<const double> row);

}  // namespace xgewfi

#include "xgewfi/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "xgewfi/errors.hpp"
#include "xgewfi/rng.hpp"

namespace xgewfi {

namespace {

std::size_t resolve_max_features(MaxFeatures mf, std::size_t p, DatasetKind kind) {
    switch (mf) {
        case MaxFeatures::Sqrt:
            return std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(p))));
        case MaxFeatures::Third:
            return std::max<std::size_t>(1, p / 3);
        case MaxFeatures::All:
            return p;
        case MaxFeatures::Auto:
            return resolve_max_features(
                kind == DatasetKind::Classification ? MaxFeatures::Sqrt : MaxFeatures::Third, p, kind);
    }
    return p;
}

struct NodeWork {
    std::int32_t node_id;
    std::size_t begin;
    std::size_t end;
    std::size_t depth;
};

struct SplitChoice {
    bool found = false;
    double proxy = 0.0;  // impurity-decrease proxy, larger is better
    std::int32_t feature = -1;
    double threshold = 0.0;
};

// Shared per-tree state. `samples` holds bootstrap row indices; node
// ranges index into it and children are stable partitions of the parent
// range, which keeps every downstream accumulation order deterministic.
class TreeBuilder {
public:
    TreeBuilder(const Dataset& ds, const ForestConfig& cfg, std::size_t n_classes,
                std::size_t max_features, std::uint64_t tree_seed)
        : ds_(ds),
          cfg_(cfg),
          n_classes_(n_classes),
          max_features_(max_features),
          rng_(tree_seed),
          classification_(ds.kind == DatasetKind::Classification) {}

    Tree build() {
        const std::size_t n = ds_.n_rows();
        samples_.resize(n);
        if (cfg_.bootstrap) {
            for (auto& s : samples_) {
                s = static_cast<std::size_t>(rng_.uniform_below(n));
            }
        } else {
            std::iota(samples_.begin(), samples_.end(), std::size_t{0});
        }

        Tree tree;
        tree.nodes.emplace_back();
        std::vector<NodeWork> stack;
        stack.push_back({0, 0, n, 0});
        while (!stack.empty()) {
            const NodeWork work = stack.back();
            stack.pop_back();
            process_node(tree, work, stack);
        }
        return tree;
    }

private:
    void process_node(Tree& tree, const NodeWork& work, std::vector<NodeWork>& stack) {
        const std::size_t m = work.end - work.begin;
        TreeNode& node = tree.nodes[work.node_id];
        node.n_samples = m;

        bool pure = true;
        if (classification_) {
            counts_.assign(n_classes_, 0);
            for (std::size_t i = work.begin; i < work.end; ++i) {
                ++counts_[static_cast<std::size_t>(ds_.target[samples_[i]])];
            }
            double sq = 0.0;
            std::size_t best_count = 0;
            std::size_t best_class = 0;
            for (std::size_t c = 0; c < n_classes_; ++c) {
                const auto cnt = static_cast<double>(counts_[c]);
                sq += cnt * cnt;
                if (counts_[c] > best_count) {
                    best_count = counts_[c];
                    best_class = c;
                }
            }
            pure = best_count == m;
            node.impurity = pure ? 0.0 : std::max(0.0, 1.0 - sq / (static_cast<double>(m) * static_cast<double>(m)));
            node.prediction = static_cast<double>(best_class);
        } else {
            double sum = 0.0;
            double sumsq = 0.0;
            double lo = ds_.target[samples_[work.begin]];
            double hi = lo;
            for (std::size_t i = work.begin; i < work.end; ++i) {
                const double y = ds_.target[samples_[i]];
                sum += y;
                sumsq += y * y;
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
            const double mean = sum / static_cast<double>(m);
            pure = lo == hi;
            node.impurity = pure ? 0.0 : std::max(0.0, sumsq / static_cast<double>(m) - mean * mean);
            node.prediction = mean;
        }

        if (pure || m < cfg_.min_samples_split ||
            (cfg_.max_depth > 0 && work.depth >= cfg_.max_depth)) {
            return;
        }

        const SplitChoice split = find_best_split(work);
        if (!split.found) {
            return;
        }
        node.feature = split.feature;
        node.threshold = split.threshold;

        const auto& column = ds_.columns[static_cast<std::size_t>(split.feature)];
        const auto mid = std::stable_partition(
            samples_.begin() + static_cast<std::ptrdiff_t>(work.begin),
            samples_.begin() + static_cast<std::ptrdiff_t>(work.end),
            [&](std::size_t row) { return column[row] <= split.threshold; });
        const auto mid_pos = static_cast<std::size_t>(mid - samples_.begin());

        const auto left_id = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        const auto right_id = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[work.node_id].left = left_id;
        tree.nodes[work.node_id].right = right_id;
        stack.push_back({right_id, mid_pos, work.end, work.depth + 1});
        stack.push_back({left_id, work.begin, mid_pos, work.depth + 1});
    }

    // The proxy compared across candidate splits omits the per-node
    // constant: sum_L^2/m_L + sum_R^2/m_R for variance, and
    // sum_c cL_c^2/m_L + sum_c cR_c^2/m_R for Gini. Ordering by proxy
    // equals ordering by impurity decrease, including exact ties.
    SplitChoice find_best_split(const NodeWork& work) {
        const std::size_t m = work.end - work.begin;
        const std::size_t p = ds_.n_features();
        const auto candidates = rng_.sample_without_replacement(p, max_features_);

        SplitChoice best;
        double node_constant = 0.0;  // proxy value of the unsplit node
        if (classification_) {
            double sq = 0.0;
            for (const std::size_t c : counts_) {
                sq += static_cast<double>(c) * static_cast<double>(c);
            }
            node_constant = sq / static_cast<double>(m);
        } else {
            double sum = 0.0;
            for (std::size_t i = work.begin; i < work.end; ++i) {
                sum += ds_.target[samples_[i]];
            }
            node_constant = sum * sum / static_cast<double>(m);
        }

        for (const std::size_t f : candidates) {
            scan_feature(work, f, node_constant, best);
        }
        return best;
    }

    void scan_feature(const NodeWork& work, std::size_t feature, double node_constant,
                      SplitChoice& best) {
        const std::size_t m = work.end - work.begin;
        const auto& column = ds_.columns[feature];
        pairs_.clear();
        pairs_.reserve(m);
        for (std::size_t i = work.begin; i < work.end; ++i) {
            const std::size_t row = samples_[i];
            pairs_.emplace_back(column[row], ds_.target[row]);
        }
        std::sort(pairs_.begin(), pairs_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (pairs_.front().first == pairs_.back().first) {
            return;  // constant feature in this node
        }

        const auto consider = [&](double proxy, double threshold) {
            if (!best.found || proxy > best.proxy ||
                (proxy == best.proxy &&
                 (static_cast<std::int32_t>(feature) < best.feature ||
                  (static_cast<std::int32_t>(feature) == best.feature && threshold < best.threshold)))) {
                if (proxy > node_constant) {
                    best.found = true;
                    best.proxy = proxy;
                    best.feature = static_cast<std::int32_t>(feature);
                    best.threshold = threshold;
                }
            }
        };

        if (classification_) {
            left_counts_.assign(n_classes_, 0);
            double left_sq = 0.0;
            double right_sq = 0.0;
            right_counts_ = counts_;
            for (const std::size_t c : right_counts_) {
                right_sq += static_cast<double>(c) * static_cast<double>(c);
            }
            for (std::size_t i = 0; i + 1 < m; ++i) {
                const auto cls = static_cast<std::size_t>(pairs_[i].second);
                // incremental update of sum of squared counts
                left_sq += 2.0 * static_cast<double>(left_counts_[cls]) + 1.0;
                right_sq -= 2.0 * static_cast<double>(right_counts_[cls]) - 1.0;
                ++left_counts_[cls];
                --right_counts_[cls];
                if (pairs_[i + 1].first == pairs_[i].first) {
                    continue;
                }
                const auto m_left = static_cast<double>(i + 1);
                const auto m_right = static_cast<double>(m - i - 1);
                consider(left_sq / m_left + right_sq / m_right, midpoint(pairs_[i].first, pairs_[i + 1].first));
            }
        } else {
            double total = 0.0;
            for (const auto& pr : pairs_) {
                total += pr.second;
            }
            double left_sum = 0.0;
            for (std::size_t i = 0; i + 1 < m; ++i) {
                left_sum += pairs_[i].second;
                if (pairs_[i + 1].first == pairs_[i].first) {
                    continue;
                }
                const auto m_left = static_cast<double>(i + 1);
                const auto m_right = static_cast<double>(m - i - 1);
                const double right_sum = total - left_sum;
                consider(left_sum * left_sum / m_left + right_sum * right_sum / m_right,
                         midpoint(pairs_[i].first, pairs_[i + 1].first));
            }
        }
    }

    static double midpoint(double a, double b) {
        // a < b. The partition sends x <= mid left, so mid must stay
        // strictly below b; with adjacent representables fall back to a.
        const double mid = a + (b - a) / 2.0;
        return mid >= b ? a : mid;
    }

    const Dataset& ds_;
    const ForestConfig& cfg_;
    std::size_t n_classes_;
    std::size_t max_features_;
    Rng rng_;
    bool classification_;
    std::vector<std::size_t> samples_;
    std::vector<std::size_t> counts_;
    std::vector<std::size_t> left_counts_;
    std::vector<std::size_t> right_counts_;
    std::vector<std::pair<double, double>> pairs_;
};

double predict_tree(const Tree& tree, std::span<const double> row) {
    const TreeNode* node = &tree.nodes[0];
    while (!node->is_leaf()) {
        const std::size_t f = static_cast<std::size_t>(node->feature);
        node = row[f] <= node->threshold ? &tree.nodes[static_cast<std::size_t>(node->left)]
                                         : &tree.nodes[static_cast<std::size_t>(node->right)];
    }
    return node->prediction;
}

}  // namespace

Forest train(const Dataset& ds, const ForestConfig& cfg, Exec exec) {
    if (cfg.n_trees < 1) {
        throw ConfigError("forest: n_trees must be >= 1");
    }
    if (cfg.min_samples_split < 2) {
        throw ConfigError("forest: min_samples_split must be >= 2");
    }
    if (ds.n_rows() < 2) {
        throw DataError("forest: need at least 2 rows");
    }
    if (ds.any_missing()) {
        throw DataError("forest: dataset has missing cells; impute first");
    }
    const auto [lo, hi] = std::minmax_element(ds.target.begin(), ds.target.end());
    if (*lo == *hi) {
        throw DataError("forest: constant target, no split possible");
    }

    Forest forest;
    forest.kind = ds.kind;
    forest.n_features = ds.n_features();
    forest.n_classes = ds.kind == DatasetKind::Classification ? ds.n_classes() : 0;
    forest.trees.resize(cfg.n_trees);

    const std::size_t max_features = resolve_max_features(cfg.max_features, ds.n_features(), ds.kind);
    const auto n_trees = static_cast<std::int64_t>(cfg.n_trees);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (std::int64_t t = 0; t < n_trees; ++t) {
        TreeBuilder builder(ds, cfg, forest.n_classes, max_features,
                            derive_seed(cfg.seed, "tree", static_cast<std::uint64_t>(t)));
        forest.trees[static_cast<std::size_t>(t)] = builder.build();
    }
    return forest;
}

ImportanceVector feature_importances(const Forest& forest) {
    const std::size_t p = forest.n_features;
    std::vector<double> mean_weights(p, 0.0);
    std::size_t trees_with_splits = 0;
    std::vector<double> tree_weights(p);
    for (const Tree& tree : forest.trees) {
        std::fill(tree_weights.begin(), tree_weights.end(), 0.0);
        const auto total = static_cast<double>(tree.nodes[0].n_samples);
        double tree_total = 0.0;
        for (const TreeNode& node : tree.nodes) {
            if (node.is_leaf()) {
                continue;
            }
            const TreeNode& left = tree.nodes[static_cast<std::size_t>(node.left)];
            const TreeNode& right = tree.nodes[static_cast<std::size_t>(node.right)];
            const double decrease =
                (static_cast<double>(node.n_samples) * node.impurity -
                 static_cast<double>(left.n_samples) * left.impurity -
                 static_cast<double>(right.n_samples) * right.impurity) /
                total;
            const double contribution = std::max(0.0, decrease);
            tree_weights[static_cast<std::size_t>(node.feature)] += contribution;
            tree_total += contribution;
        }
        if (tree_total <= 0.0) {
            continue;  // leaf-only tree contributes nothing
        }
        ++trees_with_splits;
        for (std::size_t f = 0; f < p; ++f) {
            mean_weights[f] += tree_weights[f] / tree_total;
        }
    }
    if (trees_with_splits == 0) {
        throw DataError("feature_importances: no tree produced a split");
    }
    double sum = 0.0;
    for (auto& w : mean_weights) {
        w /= static_cast<double>(trees_with_splits);
        sum += w;
    }
    for (auto& w : mean_weights) {
        w /= sum;
    }
    return ImportanceVector{std::move(mean_weights)};
}

double predict(const Forest& forest, std::span<const double> row) {
    if (row.size() != forest.n_features) {
        throw DataError("predict: row width " + std::to_string(row.size()) +
                        " does not match training width " + std::to_string(forest.n_features));
    }
    if (forest.kind == DatasetKind::Regression) {
        double sum = 0.0;
        for (const Tree& tree : forest.trees) {
            sum += predict_tree(tree, row);
        }
        return sum / static_cast<double>(forest.trees.size());
    }
    std::vector<std::size_t> votes(forest.n_classes, 0);
    for (const Tree& tree : forest.trees) {
        ++votes[static_cast<std::size_t>(predict_tree(tree, row))];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c) {
        if (votes[c] > votes[best]) {
            best = c;
        }
    }
    return static_cast<double>(best);
}

}  // namespace xgewfi

#include "xgewfi/metric.hpp"

#include <algorithm>
#include <numeric>

#include "xgewfi/errors.hpp"

namespace xgewfi {

ScoreResult score(const ImportanceVector& importances, std::span<const KsResult> ks_errors) {
    if (importances.weights.empty() || importances.weights.size() != ks_errors.size()) {
        throw DataError("score: importance and KS vectors must have equal non-zero length");
    }
    ScoreResult result;
    result.features.reserve(ks_errors.size());
    for (std::size_t f = 0; f < ks_errors.size(); ++f) {
        FeatureScore s;
        s.feature_index = f;
        s.importance = importances.weights[f];
        s.ks_error = ks_errors[f].d_statistic;
        s.weighted_error = s.importance * s.ks_error;
        result.globals.ks_global += s.ks_error;
        result.globals.xgewfi += s.weighted_error;
        result.features.push_back(s);
    }
    return result;
}

std::vector<std::size_t> rank_features(std::span<const FeatureScore> scores) {
    if (scores.empty()) {
        throw DataError("rank_features: empty score list");
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a].weighted_error > scores[b].weighted_error;
    });
    return order;
}

}  // namespace xgewfi

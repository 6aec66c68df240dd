#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "xgewfi/forest.hpp"
#include "xgewfi/ks.hpp"

namespace xgewfi {

struct FeatureScore {
    std::size_t feature_index = 0;
    double importance = 0.0;
    double ks_error = 0.0;
    double weighted_error = 0.0;  // importance * ks_error
};

struct GlobalScores {
    double ks_global = 0.0;  // sum of per-feature KS errors
    double xgewfi = 0.0;     // sum of importance-weighted KS errors
};

struct ScoreResult {
    std::vector<FeatureScore> features;
    GlobalScores globals;
};

// Combines per-feature distribution errors with importance weights.
// Inputs are used as given; no rescaling.
ScoreResult score(const ImportanceVector& importances, std::span<const KsResult> ks_errors);

// Feature indices sorted by weighted error, descending; ties keep the
// lower index first.
std::vector<std::size_t> rank_features(std::span<const FeatureScore> scores);

}  // namespace xgewfi

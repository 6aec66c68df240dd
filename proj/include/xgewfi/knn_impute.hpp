#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xgewfi/dataset.hpp"
#include "xgewfi/exec.hpp"

namespace xgewfi {

struct ImputeConfig {
    std::size_t k = 5;
    // When a missing cell has no candidate at finite distance the column
    // mean of the observed cells fills it (the only fallback mode).
};

// Missing-aware Euclidean distance between two equally wide rows: with S
// the coordinates observed in both rows, returns
//   sqrt( (width / |S|) * sum_{i in S} (a_i - b_i)^2 )
// and +infinity when S is empty. The rescaling keeps distances comparable
// across rows with different observed counts.
double masked_distance(std::span<const double> a, std::span<const std::uint8_t> a_missing,
                       std::span<const double> b, std::span<const std::uint8_t> b_missing);

struct ImputeSummary {
    std::vector<std::size_t> imputed_per_feature;
    std::vector<std::size_t> fallback_per_feature;

    std::size_t total_imputed() const;
};

struct ImputeResult {
    Dataset data;
    ImputeSummary summary;
};

// Fills every missing cell with the mean of its feature over the k
// nearest rows that observe that feature (ties broken by lower row
// index). Distances read only the original observed values, so the pass
// never chains on freshly imputed cells and the output is reproducible
// bit for bit under any execution policy.
ImputeResult impute(const Dataset& ds, const ImputeConfig& cfg, Exec exec = Exec::Parallel);

}  // namespace xgewfi

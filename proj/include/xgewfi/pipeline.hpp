#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "xgewfi/corrupt.hpp"
#include "xgewfi/dataset.hpp"
#include "xgewfi/exec.hpp"
#include "xgewfi/forest.hpp"
#include "xgewfi/knn_impute.hpp"
#include "xgewfi/report.hpp"
#include "xgewfi/smote.hpp"
#include "xgewfi/synthgen.hpp"

namespace xgewfi {

// End-to-end configuration: input -> corruption (optional) -> outlier
// nulling -> imputation -> augmentation (optional) -> forest importances
// -> per-feature distribution errors -> weighted scores -> report bundle.
//
// A single master seed derives the corruption, augmentation and forest
// seeds by tagged hashing unless an explicit override is set, so one
// integer reproduces a whole run. The generator keeps its own
// random_state (part of GenConfig), which makes a generated-then-saved
// dataset interchangeable with an in-process generated one.
struct PipelineConfig {
    std::optional<GenConfig> generate;               // exactly one input source
    std::optional<std::filesystem::path> load_path;  // must be set
    DatasetKind kind = DatasetKind::Regression;

    bool corrupt_enabled = false;
    CorruptConfig corrupt;
    ImputeConfig impute;
    bool augment_enabled = false;
    AugmentConfig augment;
    ForestConfig forest;

    EvaluateMode evaluate = EvaluateMode::Imputation;
    std::filesystem::path out_dir = "out";
    bool percent_display = true;
    std::uint64_t master_seed = 1;
    std::optional<std::uint64_t> corrupt_seed;  // overrides the derived seed
    std::optional<std::uint64_t> augment_seed;
    std::optional<std::uint64_t> forest_seed;
    Exec exec = Exec::Parallel;

    std::uint64_t effective_corrupt_seed() const;
    std::uint64_t effective_augment_seed() const;
    std::uint64_t effective_forest_seed() const;
};

ReportBundle run(const PipelineConfig& cfg);

// The same pipeline with its intermediate products exposed; run() wraps
// this and the CLI uses the scores for its console table.
struct PipelineDetail {
    ReportBundle bundle;
    OutlierSummary outliers;
    ImputeSummary imputation;
    std::optional<AugmentSummary> augmentation;
    ImportanceVector importance;
    std::optional<EvaluationOutput> imputation_eval;
    std::optional<EvaluationOutput> augmentation_eval;
};

PipelineDetail run_detailed(const PipelineConfig& cfg);

}  // namespace xgewfi

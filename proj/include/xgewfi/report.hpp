#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xgewfi/corrupt.hpp"
#include "xgewfi/dataset.hpp"
#include "xgewfi/forest.hpp"
#include "xgewfi/iqr.hpp"
#include "xgewfi/knn_impute.hpp"
#include "xgewfi/ks.hpp"
#include "xgewfi/metric.hpp"
#include "xgewfi/smote.hpp"

namespace xgewfi {

enum class EvaluateMode {
    Imputation,
    Augmentation,
    Both,
};

const char* to_string(EvaluateMode mode);
EvaluateMode evaluate_mode_from_string(const std::string& text);

struct ReportBundle {
    std::filesystem::path json_path;
    std::filesystem::path latex_results_path;
    std::filesystem::path latex_explain_path;
    std::vector<std::filesystem::path> svg_paths;
};

// Histogram in standard-deviation units of the original sample: 20 equal
// bins across [-4, 4] plus an underflow and an overflow bin, so
// bin_edges = {-inf, -4.0, -3.6, ..., 4.0, +inf} and both count vectors
// have 22 entries summing to their sample sizes.
struct HistogramSpec {
    std::size_t feature_index = 0;
    std::vector<double> bin_edges;
    std::vector<std::size_t> original_counts;
    std::vector<std::size_t> generated_counts;
};

// One box per feature: median line, Q1-Q3 box, whiskers at the IQR fences
// clipped to the data extremes, dots beyond the whiskers. Quantiles use
// the same convention as compute_fences.
void boxplot_svg(const Dataset& ds, const std::filesystem::path& path);

// Overlaid original/generated histogram for one feature; both samples are
// standardized by the original's mean and (population) standard
// deviation. Throws DataError when the original has zero variance.
HistogramSpec histogram_svg(std::span<const double> original, std::span<const double> generated,
                            std::size_t feature_index, const std::filesystem::path& path);

// Grouped bars per feature: importance (red), KS error (blue) and the
// weighted error (magenta), all in raw units.
void combined_chart_svg(std::span<const FeatureScore> scores, const std::filesystem::path& path);

// Two standalone tabular fragments: a metrics summary (weighted global
// and KS global) and the per-feature breakdown. With percent=true the
// weighted-error values are displayed x100; importances and KS errors
// stay raw. Numbers are rounded to 2 decimals.
void latex_tables(std::span<const FeatureScore> scores, const GlobalScores& globals, bool percent,
                  const std::filesystem::path& results_path,
                  const std::filesystem::path& explain_path);

// Everything the JSON report serializes. Raw values only; the percent
// flag is echoed so consumers know how the LaTeX tables were rendered.
struct EvaluationOutput {
    std::vector<KsResult> ks;
    ScoreResult scores;
};

struct ReportInputs {
    DatasetKind kind = DatasetKind::Regression;
    std::size_t n_rows = 0;
    std::size_t n_features = 0;
    std::vector<std::string> feature_names;

    std::uint64_t master_seed = 1;
    bool corrupt_enabled = false;
    CorruptConfig corrupt;
    ImputeConfig impute;
    bool augment_enabled = false;
    AugmentConfig augment;
    ForestConfig forest;
    std::string max_features_name;
    EvaluateMode evaluate = EvaluateMode::Imputation;
    bool percent_display = true;

    OutlierSummary outliers;
    ImputeSummary imputation;
    std::optional<AugmentSummary> augmentation;
    ImportanceVector importance;
    std::optional<EvaluationOutput> imputation_eval;
    std::optional<EvaluationOutput> augmentation_eval;

    std::string timestamp;  // ISO 8601; injected so callers control it
};

// Single ordered JSON document with the sections config, outliers,
// imputation, augmentation, importance, ks, scores and provenance,
// 2-space indented.
void json_report(const ReportInputs& inputs, const std::filesystem::path& path);

}  // namespace xgewfi

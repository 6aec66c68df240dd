#include "xgewfi/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "xgewfi/errors.hpp"
#include "xgewfi/iqr.hpp"
#include "xgewfi/ks.hpp"
#include "xgewfi/metric.hpp"
#include "xgewfi/rng.hpp"

namespace xgewfi {

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&seconds, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

const char* max_features_name(MaxFeatures mf, DatasetKind kind) {
    switch (mf) {
        case MaxFeatures::Sqrt:
            return "sqrt";
        case MaxFeatures::Third:
            return "third";
        case MaxFeatures::All:
            return "all";
        case MaxFeatures::Auto:
            return kind == DatasetKind::Classification ? "sqrt" : "third";
    }
    return "auto";
}

bool evaluates_imputation(EvaluateMode mode) {
    return mode == EvaluateMode::Imputation || mode == EvaluateMode::Both;
}

bool evaluates_augmentation(EvaluateMode mode) {
    return mode == EvaluateMode::Augmentation || mode == EvaluateMode::Both;
}

// Per-feature comparison of imputed cell values against the values that
// were genuinely observed before imputation. A feature with nothing
// imputed contributes a zero error: the imputation changed nothing there.
EvaluationOutput evaluate_imputation(const Dataset& nulled, const Dataset& imputed,
                                     const ImportanceVector& importance) {
    EvaluationOutput out;
    out.ks.reserve(nulled.n_features());
    for (std::size_t f = 0; f < nulled.n_features(); ++f) {
        const auto observed = column_view(nulled, f);
        std::vector<double> generated;
        for (std::size_t r = 0; r < nulled.n_rows(); ++r) {
            if (nulled.missing[f][r]) {
                generated.push_back(imputed.columns[f][r]);
            }
        }
        if (generated.empty()) {
            out.ks.push_back({0.0, 1.0, observed.present_values.size(), 0});
        } else {
            out.ks.push_back(ks_two_sample(observed.present_values, generated));
        }
    }
    out.scores = score(importance, out.ks);
    return out;
}

// Synthetic rows against the pre-augmentation table, per feature.
EvaluationOutput evaluate_augmentation(const Dataset& pre, const Dataset& augmented,
                                       const ImportanceVector& importance) {
    EvaluationOutput out;
    out.ks.reserve(pre.n_features());
    for (std::size_t f = 0; f < pre.n_features(); ++f) {
        const std::vector<double>& full = augmented.columns[f];
        const std::vector<double> synthetic(full.begin() + static_cast<std::ptrdiff_t>(pre.n_rows()),
                                            full.end());
        out.ks.push_back(ks_two_sample(pre.columns[f], synthetic));
    }
    out.scores = score(importance, out.ks);
    return out;
}

}  // namespace

std::uint64_t PipelineConfig::effective_corrupt_seed() const {
    return corrupt_seed.value_or(derive_seed(master_seed, "corrupt"));
}

std::uint64_t PipelineConfig::effective_augment_seed() const {
    return augment_seed.value_or(derive_seed(master_seed, "augment"));
}

std::uint64_t PipelineConfig::effective_forest_seed() const {
    return forest_seed.value_or(derive_seed(master_seed, "forest"));
}

PipelineDetail run_detailed(const PipelineConfig& cfg) {
    if (cfg.generate.has_value() == cfg.load_path.has_value()) {
        throw ConfigError("pipeline: exactly one input source (generate or load) required");
    }
    if (evaluates_augmentation(cfg.evaluate) && !cfg.augment_enabled) {
        throw ConfigError("pipeline: augmentation evaluation requires the augmentation stage");
    }

    Dataset data = cfg.generate.has_value()
                       ? (cfg.kind == DatasetKind::Regression ? make_regression(*cfg.generate)
                                                              : make_classification(*cfg.generate))
                       : load_csv(*cfg.load_path, cfg.kind);

    CorruptConfig corrupt_cfg = cfg.corrupt;
    corrupt_cfg.seed = cfg.effective_corrupt_seed();
    if (cfg.corrupt_enabled) {
        if (corrupt_cfg.outlier_rate > 0.0) {
            data = inject_outliers(data, corrupt_cfg).data;
        }
        if (corrupt_cfg.missing_rate > 0.0) {
            data = inject_missing(data, corrupt_cfg).data;
        }
    }

    OutlierResult nulled = null_outliers(data, cfg.exec);

    if (evaluates_imputation(cfg.evaluate) && !nulled.data.any_missing()) {
        throw ConfigError("pipeline: imputation evaluation requested but the dataset is complete");
    }

    ImputeResult imputed = impute(nulled.data, cfg.impute, cfg.exec);

    ForestConfig forest_cfg = cfg.forest;
    forest_cfg.seed = cfg.effective_forest_seed();
    const Forest forest = train(imputed.data, forest_cfg, cfg.exec);
    const ImportanceVector importance = feature_importances(forest);

    std::optional<AugmentResult> augmented;
    if (cfg.augment_enabled) {
        AugmentConfig augment_cfg = cfg.augment;
        augment_cfg.seed = cfg.effective_augment_seed();
        augmented = augment(imputed.data, augment_cfg, cfg.exec);
        if (evaluates_augmentation(cfg.evaluate) && augmented->summary.synthetic_rows == 0) {
            throw DataError("pipeline: augmentation produced no synthetic rows to evaluate");
        }
    }

    PipelineDetail detail;
    detail.outliers = nulled.summary;
    detail.imputation = imputed.summary;
    detail.importance = importance;
    if (augmented.has_value()) {
        detail.augmentation = augmented->summary;
    }
    if (evaluates_imputation(cfg.evaluate)) {
        detail.imputation_eval = evaluate_imputation(nulled.data, imputed.data, importance);
    }
    if (evaluates_augmentation(cfg.evaluate)) {
        detail.augmentation_eval = evaluate_augmentation(imputed.data, augmented->data, importance);
    }

    // --- report bundle ---
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + cfg.out_dir.string() + "'");
    }
    ReportBundle bundle;
    bundle.json_path = cfg.out_dir / "report.json";
    bundle.latex_results_path = cfg.out_dir / "results.tex";
    bundle.latex_explain_path = cfg.out_dir / "explain.tex";

    const auto boxplot_path = cfg.out_dir / "boxplot.svg";
    boxplot_svg(data, boxplot_path);  // data as received, outliers included
    bundle.svg_paths.push_back(boxplot_path);

    // The fixed-name artifacts render the primary mode (imputation when
    // evaluated); in Both mode the augmentation view is emitted alongside
    // with an _aug suffix.
    const EvaluationOutput& primary = evaluates_imputation(cfg.evaluate)
                                          ? *detail.imputation_eval
                                          : *detail.augmentation_eval;
    const bool imputation_primary = evaluates_imputation(cfg.evaluate);

    const auto emit_mode = [&](const EvaluationOutput& eval, bool for_imputation,
                               const std::string& suffix) {
        for (std::size_t f = 0; f < data.n_features(); ++f) {
            const auto hist_path =
                cfg.out_dir / ("hist_" + std::to_string(f) + suffix + ".svg");
            if (for_imputation) {
                const auto observed = column_view(nulled.data, f);
                std::vector<double> generated;
                for (std::size_t r = 0; r < nulled.data.n_rows(); ++r) {
                    if (nulled.data.missing[f][r]) {
                        generated.push_back(imputed.data.columns[f][r]);
                    }
                }
                if (generated.empty()) {
                    generated = observed.present_values;  // nothing imputed: identical overlay
                }
                histogram_svg(observed.present_values, generated, f, hist_path);
            } else {
                const auto& full = augmented->data.columns[f];
                const std::vector<double> synthetic(
                    full.begin() + static_cast<std::ptrdiff_t>(imputed.data.n_rows()), full.end());
                histogram_svg(imputed.data.columns[f], synthetic, f, hist_path);
            }
            bundle.svg_paths.push_back(hist_path);
        }
        const auto combined_path = cfg.out_dir / ("combined" + suffix + ".svg");
        combined_chart_svg(eval.scores.features, combined_path);
        bundle.svg_paths.push_back(combined_path);
        latex_tables(eval.scores.features, eval.scores.globals, cfg.percent_display,
                     cfg.out_dir / ("results" + suffix + ".tex"),
                     cfg.out_dir / ("explain" + suffix + ".tex"));
    };

    emit_mode(primary, imputation_primary, "");
    if (cfg.evaluate == EvaluateMode::Both) {
        emit_mode(*detail.augmentation_eval, false, "_aug");
    }

    ReportInputs inputs;
    inputs.kind = data.kind;
    inputs.n_rows = data.n_rows();
    inputs.n_features = data.n_features();
    inputs.feature_names = data.feature_names;
    inputs.master_seed = cfg.master_seed;
    inputs.corrupt_enabled = cfg.corrupt_enabled;
    inputs.corrupt = corrupt_cfg;
    inputs.impute = cfg.impute;
    inputs.augment_enabled = cfg.augment_enabled;
    inputs.augment = cfg.augment;
    inputs.augment.seed = cfg.effective_augment_seed();
    inputs.forest = forest_cfg;
    inputs.max_features_name = max_features_name(cfg.forest.max_features, data.kind);
    inputs.evaluate = cfg.evaluate;
    inputs.percent_display = cfg.percent_display;
    inputs.outliers = detail.outliers;
    inputs.imputation = detail.imputation;
    inputs.augmentation = detail.augmentation;
    inputs.importance = detail.importance;
    inputs.imputation_eval = detail.imputation_eval;
    inputs.augmentation_eval = detail.augmentation_eval;
    inputs.timestamp = utc_timestamp();
    json_report(inputs, bundle.json_path);

    detail.bundle = std::move(bundle);
    return detail;
}

ReportBundle run(const PipelineConfig& cfg) {
    return run_detailed(cfg).bundle;
}

}  // namespace xgewfi

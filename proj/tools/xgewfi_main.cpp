// Command-line front end: generate synthetic datasets, run the full
// preprocessing pipeline, and evaluate imputation/augmentation quality
// with importance-weighted distribution errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "xgewfi/dataset.hpp"
#include "xgewfi/errors.hpp"
#include "xgewfi/pipeline.hpp"
#include "xgewfi/synthgen.hpp"
#include "xgewfi/version.hpp"

namespace {

using xgewfi::ConfigError;

struct GenFlags {
    std::size_t n_samples = 1000;
    std::size_t n_features = 5;
    std::size_t n_informative = 0;
    std::size_t n_classes = 2;
    bool shuffle = true;
    double noise = 0.0;
    std::uint64_t random_state = 1;

    CLI::Option* n_samples_opt = nullptr;
    CLI::Option* n_features_opt = nullptr;
    CLI::Option* n_informative_opt = nullptr;
    CLI::Option* n_classes_opt = nullptr;
    CLI::Option* shuffle_opt = nullptr;
    CLI::Option* noise_opt = nullptr;
    CLI::Option* random_state_opt = nullptr;
};

void add_gen_flags(CLI::App& app, GenFlags& f) {
    f.n_samples_opt = app.add_option("--n-samples", f.n_samples, "Rows to generate");
    f.n_features_opt = app.add_option("--n-features", f.n_features, "Feature count");
    f.n_informative_opt =
        app.add_option("--n-informative", f.n_informative, "Informative features (0 = auto)");
    f.n_classes_opt = app.add_option("--n-classes", f.n_classes, "Classes (classification)");
    f.shuffle_opt = app.add_flag("--shuffle,!--no-shuffle", f.shuffle, "Shuffle generated rows");
    f.noise_opt = app.add_option("--noise", f.noise, "Target noise scale (regression)");
    f.random_state_opt = app.add_option("--random-state", f.random_state, "Generator seed");
}

xgewfi::GenConfig to_gen_config(const GenFlags& f) {
    xgewfi::GenConfig cfg;
    cfg.n_samples = f.n_samples;
    cfg.n_features = f.n_features;
    cfg.n_informative = f.n_informative;
    cfg.n_classes = f.n_classes;
    cfg.shuffle = f.shuffle;
    cfg.noise = f.noise;
    cfg.random_state = f.random_state;
    return cfg;
}

struct PipelineFlags {
    std::string kind = "regression";
    std::string config_file;
    bool corrupt = false;
    double outlier_rate = 0.05;
    double missing_rate = 0.30;
    double outlier_magnitude = 6.0;
    std::uint64_t corrupt_seed = 0;
    std::size_t k_impute = 5;
    bool augment = false;
    std::size_t k_augment = 5;
    double target_ratio = 1.0;
    std::uint64_t augment_seed = 0;
    std::size_t n_trees = 100;
    std::size_t max_depth = 0;
    std::size_t min_samples_split = 2;
    std::string max_features = "auto";
    bool bootstrap = true;
    std::uint64_t forest_seed = 0;
    std::string evaluate = "imputation";
    std::string out_dir = "out";
    bool percent = true;
    std::uint64_t master_seed = 1;
    bool serial = false;
    bool corrupt_default = false;

    CLI::Option* kind_opt = nullptr;
    CLI::Option* corrupt_opt = nullptr;
    CLI::Option* outlier_rate_opt = nullptr;
    CLI::Option* missing_rate_opt = nullptr;
    CLI::Option* outlier_magnitude_opt = nullptr;
    CLI::Option* corrupt_seed_opt = nullptr;
    CLI::Option* k_impute_opt = nullptr;
    CLI::Option* augment_opt = nullptr;
    CLI::Option* k_augment_opt = nullptr;
    CLI::Option* target_ratio_opt = nullptr;
    CLI::Option* augment_seed_opt = nullptr;
    CLI::Option* n_trees_opt = nullptr;
    CLI::Option* max_depth_opt = nullptr;
    CLI::Option* min_samples_split_opt = nullptr;
    CLI::Option* max_features_opt = nullptr;
    CLI::Option* bootstrap_opt = nullptr;
    CLI::Option* forest_seed_opt = nullptr;
    CLI::Option* evaluate_opt = nullptr;
    CLI::Option* out_dir_opt = nullptr;
    CLI::Option* percent_opt = nullptr;
    CLI::Option* master_seed_opt = nullptr;
    CLI::Option* serial_opt = nullptr;
};

void add_pipeline_flags(CLI::App& app, PipelineFlags& f, bool corrupt_default) {
    f.corrupt = corrupt_default;
    f.corrupt_default = corrupt_default;
    f.kind_opt = app.add_option("--kind", f.kind, "Dataset kind: regression|classification");
    app.add_option("--config", f.config_file, "JSON config file (flags override it)");
    f.corrupt_opt = app.add_flag("--corrupt,!--no-corrupt", f.corrupt, "Inject outliers/missingness");
    f.outlier_rate_opt = app.add_option("--outlier-rate", f.outlier_rate, "Outlier cell rate per feature");
    f.missing_rate_opt = app.add_option("--missing-rate", f.missing_rate, "Missing cell rate per feature");
    f.outlier_magnitude_opt =
        app.add_option("--outlier-magnitude", f.outlier_magnitude, "Outlier offset in stddevs");
    f.corrupt_seed_opt = app.add_option("--corrupt-seed", f.corrupt_seed, "Corruption seed override");
    f.k_impute_opt = app.add_option("--k-impute", f.k_impute, "Neighbors for imputation");
    f.augment_opt = app.add_flag("--augment,!--no-augment", f.augment, "Run the augmentation stage");
    f.k_augment_opt = app.add_option("--k-augment", f.k_augment, "Neighbors for augmentation");
    f.target_ratio_opt = app.add_option("--target-ratio", f.target_ratio, "Oversampling growth ratio");
    f.augment_seed_opt = app.add_option("--augment-seed", f.augment_seed, "Augmentation seed override");
    f.n_trees_opt = app.add_option("--n-trees", f.n_trees, "Trees in the forest");
    f.max_depth_opt = app.add_option("--max-depth", f.max_depth, "Tree depth limit (0 = unlimited)");
    f.min_samples_split_opt =
        app.add_option("--min-samples-split", f.min_samples_split, "Minimum node size to split");
    f.max_features_opt =
        app.add_option("--max-features", f.max_features, "Split candidates: auto|sqrt|third|all");
    f.bootstrap_opt = app.add_flag("--bootstrap,!--no-bootstrap", f.bootstrap, "Bootstrap resampling");
    f.forest_seed_opt = app.add_option("--forest-seed", f.forest_seed, "Forest seed override");
    f.evaluate_opt =
        app.add_option("--evaluate", f.evaluate, "What to score: imputation|augmentation|both");
    f.out_dir_opt = app.add_option("--out-dir", f.out_dir, "Report output directory");
    f.percent_opt = app.add_flag("--percent,!--raw", f.percent, "Display weighted errors x100");
    f.master_seed_opt = app.add_option("--seed", f.master_seed, "Master seed for all stages");
    f.serial_opt = app.add_flag("--serial", f.serial, "Disable parallel kernels");
}

xgewfi::MaxFeatures max_features_from_string(const std::string& text) {
    if (text == "auto") {
        return xgewfi::MaxFeatures::Auto;
    }
    if (text == "sqrt") {
        return xgewfi::MaxFeatures::Sqrt;
    }
    if (text == "third") {
        return xgewfi::MaxFeatures::Third;
    }
    if (text == "all") {
        return xgewfi::MaxFeatures::All;
    }
    throw ConfigError("unknown max-features '" + text + "' (expected auto|sqrt|third|all)");
}

// Layered configuration: code defaults, then the JSON file, then any flag
// the user actually passed.
void apply_config_file(const std::string& path, xgewfi::PipelineConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        throw xgewfi::IoError("cannot open config file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }

    if (doc.contains("kind")) {
        cfg.kind = xgewfi::dataset_kind_from_string(doc["kind"].get<std::string>());
    }
    if (doc.contains("master_seed")) {
        cfg.master_seed = doc["master_seed"].get<std::uint64_t>();
    }
    if (doc.contains("corrupt")) {
        const auto& c = doc["corrupt"];
        if (c.contains("enabled")) cfg.corrupt_enabled = c["enabled"].get<bool>();
        if (c.contains("outlier_rate")) cfg.corrupt.outlier_rate = c["outlier_rate"].get<double>();
        if (c.contains("missing_rate")) cfg.corrupt.missing_rate = c["missing_rate"].get<double>();
        if (c.contains("outlier_magnitude"))
            cfg.corrupt.outlier_magnitude = c["outlier_magnitude"].get<double>();
        if (c.contains("seed")) cfg.corrupt_seed = c["seed"].get<std::uint64_t>();
    }
    if (doc.contains("impute")) {
        const auto& c = doc["impute"];
        if (c.contains("k")) cfg.impute.k = c["k"].get<std::size_t>();
    }
    if (doc.contains("augment")) {
        const auto& c = doc["augment"];
        if (c.contains("enabled")) cfg.augment_enabled = c["enabled"].get<bool>();
        if (c.contains("k")) cfg.augment.k = c["k"].get<std::size_t>();
        if (c.contains("target_ratio")) cfg.augment.target_ratio = c["target_ratio"].get<double>();
        if (c.contains("seed")) cfg.augment_seed = c["seed"].get<std::uint64_t>();
    }
    if (doc.contains("forest")) {
        const auto& c = doc["forest"];
        if (c.contains("n_trees")) cfg.forest.n_trees = c["n_trees"].get<std::size_t>();
        if (c.contains("max_depth")) cfg.forest.max_depth = c["max_depth"].get<std::size_t>();
        if (c.contains("min_samples_split"))
            cfg.forest.min_samples_split = c["min_samples_split"].get<std::size_t>();
        if (c.contains("max_features"))
            cfg.forest.max_features = max_features_from_string(c["max_features"].get<std::string>());
        if (c.contains("bootstrap")) cfg.forest.bootstrap = c["bootstrap"].get<bool>();
        if (c.contains("seed")) cfg.forest_seed = c["seed"].get<std::uint64_t>();
    }
    if (doc.contains("evaluate")) {
        cfg.evaluate = xgewfi::evaluate_mode_from_string(doc["evaluate"].get<std::string>());
    }
    if (doc.contains("out_dir")) {
        cfg.out_dir = doc["out_dir"].get<std::string>();
    }
    if (doc.contains("percent_display")) {
        cfg.percent_display = doc["percent_display"].get<bool>();
    }
    if (doc.contains("generate")) {
        const auto& g = doc["generate"];
        xgewfi::GenConfig gen = cfg.generate.value_or(xgewfi::GenConfig{});
        if (g.contains("n_samples")) gen.n_samples = g["n_samples"].get<std::size_t>();
        if (g.contains("n_features")) gen.n_features = g["n_features"].get<std::size_t>();
        if (g.contains("n_informative")) gen.n_informative = g["n_informative"].get<std::size_t>();
        if (g.contains("n_classes")) gen.n_classes = g["n_classes"].get<std::size_t>();
        if (g.contains("shuffle")) gen.shuffle = g["shuffle"].get<bool>();
        if (g.contains("noise")) gen.noise = g["noise"].get<double>();
        if (g.contains("random_state")) gen.random_state = g["random_state"].get<std::uint64_t>();
        cfg.generate = gen;
    }
}

xgewfi::PipelineConfig build_pipeline_config(const PipelineFlags& f) {
    xgewfi::PipelineConfig cfg;
    cfg.corrupt_enabled = f.corrupt_default;
    if (!f.config_file.empty()) {
        apply_config_file(f.config_file, cfg);
    }
    const auto set = [](const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; };

    if (set(f.kind_opt)) {
        cfg.kind = xgewfi::dataset_kind_from_string(f.kind);
    }
    if (set(f.corrupt_opt)) {
        cfg.corrupt_enabled = f.corrupt;
    }
    if (set(f.outlier_rate_opt)) cfg.corrupt.outlier_rate = f.outlier_rate;
    if (set(f.missing_rate_opt)) cfg.corrupt.missing_rate = f.missing_rate;
    if (set(f.outlier_magnitude_opt)) cfg.corrupt.outlier_magnitude = f.outlier_magnitude;
    if (set(f.corrupt_seed_opt)) cfg.corrupt_seed = f.corrupt_seed;
    if (set(f.k_impute_opt)) cfg.impute.k = f.k_impute;
    if (set(f.k_augment_opt)) cfg.augment.k = f.k_augment;
    if (set(f.target_ratio_opt)) cfg.augment.target_ratio = f.target_ratio;
    if (set(f.augment_seed_opt)) cfg.augment_seed = f.augment_seed;
    if (set(f.n_trees_opt)) cfg.forest.n_trees = f.n_trees;
    if (set(f.max_depth_opt)) cfg.forest.max_depth = f.max_depth;
    if (set(f.min_samples_split_opt)) cfg.forest.min_samples_split = f.min_samples_split;
    if (set(f.max_features_opt)) cfg.forest.max_features = max_features_from_string(f.max_features);
    if (set(f.bootstrap_opt)) cfg.forest.bootstrap = f.bootstrap;
    if (set(f.forest_seed_opt)) cfg.forest_seed = f.forest_seed;
    if (set(f.evaluate_opt)) cfg.evaluate = xgewfi::evaluate_mode_from_string(f.evaluate);
    if (set(f.out_dir_opt)) cfg.out_dir = f.out_dir;
    if (set(f.percent_opt)) cfg.percent_display = f.percent;
    if (set(f.master_seed_opt)) cfg.master_seed = f.master_seed;
    cfg.exec = f.serial ? xgewfi::Exec::Serial : xgewfi::Exec::Parallel;

    // The augmentation stage switches on when asked for explicitly, when a
    // growth ratio is given, or when its evaluation is requested.
    if (set(f.augment_opt)) {
        cfg.augment_enabled = f.augment;
    } else if (set(f.target_ratio_opt) || cfg.evaluate != xgewfi::EvaluateMode::Imputation) {
        cfg.augment_enabled = true;
    }
    return cfg;
}

void print_scores(const char* title, const xgewfi::EvaluationOutput& eval, bool percent) {
    std::printf("== %s ==\n", title);
    std::printf("%-10s %12s %12s %16s\n", "feature", "importance", "ks error", "weighted error");
    for (const auto& s : eval.scores.features) {
        std::printf("f%-9zu %12.4f %12.4f %16.4f\n", s.feature_index, s.importance, s.ks_error,
                    s.weighted_error);
    }
    std::printf("KS global error:     %.4f\n", eval.scores.globals.ks_global);
    if (percent) {
        std::printf("xGEWFI error:        %.4f  (x100: %.2f)\n", eval.scores.globals.xgewfi,
                    eval.scores.globals.xgewfi * 100.0);
    } else {
        std::printf("xGEWFI error:        %.4f\n", eval.scores.globals.xgewfi);
    }
}

int run_pipeline_command(const xgewfi::PipelineConfig& cfg) {
    const xgewfi::PipelineDetail detail = xgewfi::run_detailed(cfg);
    if (detail.imputation_eval.has_value()) {
        print_scores("imputation evaluation", *detail.imputation_eval, cfg.percent_display);
    }
    if (detail.augmentation_eval.has_value()) {
        print_scores("augmentation evaluation", *detail.augmentation_eval, cfg.percent_display);
    }
    std::printf("report: %s\n", detail.bundle.json_path.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"xgewfi - importance-weighted evaluation of data imputation and augmentation"};
    app.require_subcommand(1);

    auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic dataset CSV");
    GenFlags gen_flags;
    std::string gen_kind = "regression";
    std::string gen_out = "dataset.csv";
    gen_cmd->add_option("--kind", gen_kind, "regression|classification");
    gen_cmd->add_option("-o,--output", gen_out, "Output CSV path");
    add_gen_flags(*gen_cmd, gen_flags);

    auto* eval_cmd = app.add_subcommand("evaluate", "Run the pipeline on an existing CSV");
    std::string eval_input;
    eval_cmd->add_option("input", eval_input, "Dataset CSV (last column is the target)")
        ->required();
    PipelineFlags eval_flags;
    add_pipeline_flags(*eval_cmd, eval_flags, /*corrupt_default=*/false);

    auto* run_cmd = app.add_subcommand("run", "Generate a dataset and run the pipeline on it");
    PipelineFlags run_flags;
    GenFlags run_gen_flags;
    add_pipeline_flags(*run_cmd, run_flags, /*corrupt_default=*/true);
    add_gen_flags(*run_cmd, run_gen_flags);

    auto* version_cmd = app.add_subcommand("version", "Print artifact and schema versions");

    try {
        app.parse(argc, argv);

        if (version_cmd->parsed()) {
            std::printf("xgewfi %s (report schema %s)\n", xgewfi::kArtifactVersion,
                        xgewfi::kSchemaVersion);
            return 0;
        }
        if (gen_cmd->parsed()) {
            const auto kind = xgewfi::dataset_kind_from_string(gen_kind);
            const xgewfi::GenConfig cfg = to_gen_config(gen_flags);
            const xgewfi::Dataset ds = kind == xgewfi::DatasetKind::Regression
                                           ? xgewfi::make_regression(cfg)
                                           : xgewfi::make_classification(cfg);
            xgewfi::save_csv(ds, gen_out);
            std::printf("wrote %zu x %zu %s dataset to %s\n", ds.n_rows(), ds.n_features(),
                        xgewfi::to_string(kind), gen_out.c_str());
            return 0;
        }
        if (eval_cmd->parsed()) {
            xgewfi::PipelineConfig cfg = build_pipeline_config(eval_flags);
            cfg.load_path = eval_input;
            return run_pipeline_command(cfg);
        }
        if (run_cmd->parsed()) {
            xgewfi::PipelineConfig cfg = build_pipeline_config(run_flags);
            xgewfi::GenConfig gen = cfg.generate.value_or(xgewfi::GenConfig{});
            const auto set = [](const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; };
            if (set(run_gen_flags.n_samples_opt)) gen.n_samples = run_gen_flags.n_samples;
            if (set(run_gen_flags.n_features_opt)) gen.n_features = run_gen_flags.n_features;
            if (set(run_gen_flags.n_informative_opt)) gen.n_informative = run_gen_flags.n_informative;
            if (set(run_gen_flags.n_classes_opt)) gen.n_classes = run_gen_flags.n_classes;
            if (set(run_gen_flags.shuffle_opt)) gen.shuffle = run_gen_flags.shuffle;
            if (set(run_gen_flags.noise_opt)) gen.noise = run_gen_flags.noise;
            if (set(run_gen_flags.random_state_opt)) gen.random_state = run_gen_flags.random_state;
            cfg.generate = gen;
            cfg.load_path.reset();
            return run_pipeline_command(cfg);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const xgewfi::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const xgewfi::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const xgewfi::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    }
    return 0;
}

#include "xgewfi/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "xgewfi/errors.hpp"
#include "xgewfi/stats.hpp"
#include "xgewfi/version.hpp"

namespace xgewfi {

const char* to_string(EvaluateMode mode) {
    switch (mode) {
        case EvaluateMode::Imputation:
            return "imputation";
        case EvaluateMode::Augmentation:
            return "augmentation";
        case EvaluateMode::Both:
            return "both";
    }
    return "imputation";
}

EvaluateMode evaluate_mode_from_string(const std::string& text) {
    if (text == "imputation") {
        return EvaluateMode::Imputation;
    }
    if (text == "augmentation") {
        return EvaluateMode::Augmentation;
    }
    if (text == "both") {
        return EvaluateMode::Both;
    }
    throw ConfigError("unknown evaluation mode '" + text + "' (expected imputation|augmentation|both)");
}

namespace {

std::string fmt(double v, int decimals = 2) {
    if (v == 0.0) {
        v = 0.0;  // normalize -0
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

// Minimal deterministic SVG emitter; every coordinate goes through fmt()
// so equal inputs yield identical bytes.
class SvgWriter {
public:
    SvgWriter(double width, double height) : width_(width), height_(height) {
        body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width_, 0) +
                 "\" height=\"" + fmt(height_, 0) + "\" viewBox=\"0 0 " + fmt(width_, 0) + " " +
                 fmt(height_, 0) + "\">\n";
        body_ += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width_, 0) + "\" height=\"" +
                 fmt(height_, 0) + "\" fill=\"white\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double stroke = 1.0) {
        body_ += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
                 "\" y2=\"" + fmt(y2) + "\" stroke=\"" + color + "\" stroke-width=\"" +
                 fmt(stroke, 1) + "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "none", double opacity = 1.0) {
        body_ += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
                 "\" height=\"" + fmt(h) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"";
        if (opacity < 1.0) {
            body_ += " fill-opacity=\"" + fmt(opacity) + "\"";
        }
        body_ += "/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& fill) {
        body_ += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r, 1) +
                 "\" fill=\"" + fill + "\"/>\n";
    }

    void text(double x, double y, const std::string& content, double size = 11.0,
              const std::string& anchor = "middle") {
        body_ += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-family=\"sans-serif\" " +
                 "font-size=\"" + fmt(size, 0) + "\" text-anchor=\"" + anchor + "\">" + content +
                 "</text>\n";
    }

    void save(const std::filesystem::path& path) {
        body_ += "</svg>\n";
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + path.string() + "' for writing");
        }
        out << body_;
        if (!out) {
            throw IoError("failed writing '" + path.string() + "'");
        }
    }

private:
    double width_;
    double height_;
    std::string body_;
};

struct Layout {
    double width = 720.0;
    double height = 420.0;
    double left = 64.0;
    double right = 24.0;
    double top = 28.0;
    double bottom = 46.0;

    double plot_w() const { return width - left - right; }
    double plot_h() const { return height - top - bottom; }
};

// value -> pixel, larger values up
double y_pixel(const Layout& layout, double v, double vmin, double vmax) {
    return layout.top + (vmax - v) / (vmax - vmin) * layout.plot_h();
}

void y_axis(SvgWriter& svg, const Layout& layout, double vmin, double vmax) {
    svg.line(layout.left, layout.top, layout.left, layout.top + layout.plot_h(), "#333333");
    for (int i = 0; i <= 4; ++i) {
        const double v = vmin + (vmax - vmin) * static_cast<double>(i) / 4.0;
        const double y = y_pixel(layout, v, vmin, vmax);
        svg.line(layout.left - 4.0, y, layout.left, y, "#333333");
        svg.text(layout.left - 8.0, y + 4.0, fmt(v), 10.0, "end");
    }
}

constexpr const char* kBlue = "#2e6db4";
constexpr const char* kYellow = "#e3b505";
constexpr const char* kRed = "#c23b22";
constexpr const char* kMagenta = "#b4399b";

}  // namespace

void boxplot_svg(const Dataset& ds, const std::filesystem::path& path) {
    const std::size_t p = ds.n_features();
    if (p == 0) {
        throw DataError("boxplot_svg: dataset has no features");
    }

    struct Box {
        IqrFences fences;
        double median;
        double whisker_lo;
        double whisker_hi;
        std::vector<double> dots;
    };
    std::vector<Box> boxes(p);
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < p; ++f) {
        const auto view = column_view(ds, f);
        if (view.present_values.empty()) {
            throw DataError("boxplot_svg: feature '" + ds.feature_names[f] + "' has no observed values");
        }
        Box& box = boxes[f];
        box.fences = compute_fences(view.present_values);
        std::vector<double> sorted = view.present_values;
        std::sort(sorted.begin(), sorted.end());
        box.median = quantile_sorted(sorted, 0.5);
        box.whisker_lo = box.fences.q1;
        box.whisker_hi = box.fences.q3;
        for (const double v : sorted) {
            if (v < box.fences.lower || v > box.fences.upper) {
                box.dots.push_back(v);
            }
        }
        // whiskers: data extremes clipped to the fences
        for (const double v : sorted) {
            if (v >= box.fences.lower) {
                box.whisker_lo = v;
                break;
            }
        }
        for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
            if (*it <= box.fences.upper) {
                box.whisker_hi = *it;
                break;
            }
        }
        vmin = std::min(vmin, sorted.front());
        vmax = std::max(vmax, sorted.back());
    }
    if (vmin == vmax) {
        vmin -= 1.0;
        vmax += 1.0;
    }
    const double pad = 0.05 * (vmax - vmin);
    vmin -= pad;
    vmax += pad;

    Layout layout;
    SvgWriter svg(layout.width, layout.height);
    y_axis(svg, layout, vmin, vmax);
    const double slot = layout.plot_w() / static_cast<double>(p);
    for (std::size_t f = 0; f < p; ++f) {
        const Box& box = boxes[f];
        const double cx = layout.left + (static_cast<double>(f) + 0.5) * slot;
        const double half = 0.22 * slot;
        const double y_q1 = y_pixel(layout, box.fences.q1, vmin, vmax);
        const double y_q3 = y_pixel(layout, box.fences.q3, vmin, vmax);
        const double y_med = y_pixel(layout, box.median, vmin, vmax);
        const double y_lo = y_pixel(layout, box.whisker_lo, vmin, vmax);
        const double y_hi = y_pixel(layout, box.whisker_hi, vmin, vmax);

        svg.line(cx, y_lo, cx, y_q1, "#333333");
        svg.line(cx, y_q3, cx, y_hi, "#333333");
        svg.line(cx - half * 0.6, y_lo, cx + half * 0.6, y_lo, "#333333");
        svg.line(cx - half * 0.6, y_hi, cx + half * 0.6, y_hi, "#333333");
        svg.rect(cx - half, y_q3, 2.0 * half, std::max(0.0, y_q1 - y_q3), "#dce6f2", kBlue);
        svg.line(cx - half, y_med, cx + half, y_med, kRed, 1.5);
        for (const double v : box.dots) {
            svg.circle(cx, y_pixel(layout, v, vmin, vmax), 2.0, "#555555");
        }
        svg.text(cx, layout.height - 18.0, ds.feature_names[f]);
    }
    svg.save(path);
}

namespace {

constexpr std::size_t kHistogramBins = 20;   // plus the two overflow slots
constexpr double kHistogramRange = 4.0;      // in standard deviations

std::size_t histogram_slot(double z) {
    if (z < -kHistogramRange) {
        return 0;
    }
    if (z >= kHistogramRange) {
        return kHistogramBins + 1;
    }
    const double width = 2.0 * kHistogramRange / static_cast<double>(kHistogramBins);
    const auto bin = static_cast<std::size_t>((z + kHistogramRange) / width);
    return 1 + std::min(bin, kHistogramBins - 1);
}

}  // namespace

HistogramSpec histogram_svg(std::span<const double> original, std::span<const double> generated,
                            std::size_t feature_index, const std::filesystem::path& path) {
    if (original.empty() || generated.empty()) {
        throw DataError("histogram_svg: empty sample");
    }
    const double mu = mean(original);
    const double sigma = stddev(original);
    if (sigma == 0.0) {
        throw DataError("histogram_svg: original sample has zero variance");
    }

    HistogramSpec spec;
    spec.feature_index = feature_index;
    const double width = 2.0 * kHistogramRange / static_cast<double>(kHistogramBins);
    spec.bin_edges.push_back(-std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i <= kHistogramBins; ++i) {
        spec.bin_edges.push_back(-kHistogramRange + static_cast<double>(i) * width);
    }
    spec.bin_edges.push_back(std::numeric_limits<double>::infinity());
    spec.original_counts.assign(kHistogramBins + 2, 0);
    spec.generated_counts.assign(kHistogramBins + 2, 0);
    for (const double v : original) {
        ++spec.original_counts[histogram_slot((v - mu) / sigma)];
    }
    for (const double v : generated) {
        ++spec.generated_counts[histogram_slot((v - mu) / sigma)];
    }

    std::size_t max_count = 1;
    for (std::size_t i = 0; i < spec.original_counts.size(); ++i) {
        max_count = std::max({max_count, spec.original_counts[i], spec.generated_counts[i]});
    }

    Layout layout;
    SvgWriter svg(layout.width, layout.height);
    const double vmax = static_cast<double>(max_count) * 1.05;
    y_axis(svg, layout, 0.0, vmax);
    const double slot = layout.plot_w() / static_cast<double>(kHistogramBins + 2);
    const double base_y = layout.top + layout.plot_h();
    for (std::size_t i = 0; i < spec.original_counts.size(); ++i) {
        const double x = layout.left + static_cast<double>(i) * slot;
        const double h_orig =
            static_cast<double>(spec.original_counts[i]) / vmax * layout.plot_h();
        const double h_gen =
            static_cast<double>(spec.generated_counts[i]) / vmax * layout.plot_h();
        if (spec.original_counts[i] > 0) {
            svg.rect(x + 1.0, base_y - h_orig, slot - 2.0, h_orig, kBlue);
        }
        if (spec.generated_counts[i] > 0) {
            svg.rect(x + 1.0, base_y - h_gen, slot - 2.0, h_gen, kYellow, "none", 0.65);
        }
    }
    for (int s = -4; s <= 4; s += 2) {
        const double x = layout.left + slot * (1.0 + (static_cast<double>(s) + kHistogramRange) /
                                                         (2.0 * kHistogramRange) *
                                                         static_cast<double>(kHistogramBins));
        svg.line(x, base_y, x, base_y + 4.0, "#333333");
        svg.text(x, base_y + 16.0, std::to_string(s), 10.0);
    }
    svg.text(layout.left + layout.plot_w() / 2.0, layout.height - 6.0,
             "feature " + std::to_string(feature_index) + " (standard deviations)", 11.0);
    svg.rect(layout.width - 180.0, 8.0, 10.0, 10.0, kBlue);
    svg.text(layout.width - 164.0, 17.0, "original", 10.0, "start");
    svg.rect(layout.width - 100.0, 8.0, 10.0, 10.0, kYellow);
    svg.text(layout.width - 84.0, 17.0, "generated", 10.0, "start");
    svg.save(path);
    return spec;
}

void combined_chart_svg(std::span<const FeatureScore> scores, const std::filesystem::path& path) {
    if (scores.empty()) {
        throw DataError("combined_chart_svg: no scores");
    }
    double vmax = 0.0;
    for (const auto& s : scores) {
        vmax = std::max({vmax, s.importance, s.ks_error, s.weighted_error});
    }
    if (vmax == 0.0) {
        vmax = 1.0;
    }
    vmax *= 1.05;

    Layout layout;
    SvgWriter svg(layout.width, layout.height);
    y_axis(svg, layout, 0.0, vmax);
    const double base_y = layout.top + layout.plot_h();
    const double slot = layout.plot_w() / static_cast<double>(scores.size());
    const double bar = slot / 4.5;
    for (std::size_t f = 0; f < scores.size(); ++f) {
        const double x0 = layout.left + static_cast<double>(f) * slot + 0.5 * bar;
        const double heights[3] = {scores[f].importance, scores[f].ks_error,
                                   scores[f].weighted_error};
        const char* colors[3] = {kRed, kBlue, kMagenta};
        for (int b = 0; b < 3; ++b) {
            const double h = heights[b] / vmax * layout.plot_h();
            svg.rect(x0 + static_cast<double>(b) * bar, base_y - h, bar * 0.9, h, colors[b]);
        }
        svg.text(layout.left + (static_cast<double>(f) + 0.5) * slot, layout.height - 18.0,
                 "f" + std::to_string(scores[f].feature_index));
    }
    const char* labels[3] = {"importance", "ks error", "weighted error"};
    const char* colors[3] = {kRed, kBlue, kMagenta};
    double lx = layout.width - 330.0;
    for (int b = 0; b < 3; ++b) {
        svg.rect(lx, 8.0, 10.0, 10.0, colors[b]);
        svg.text(lx + 14.0, 17.0, labels[b], 10.0, "start");
        lx += 110.0;
    }
    svg.save(path);
}

void latex_tables(std::span<const FeatureScore> scores, const GlobalScores& globals, bool percent,
                  const std::filesystem::path& results_path,
                  const std::filesystem::path& explain_path) {
    if (scores.empty()) {
        throw DataError("latex_tables: no scores");
    }
    const double scale = percent ? 100.0 : 1.0;

    std::string results;
    results += "\\begin{tabular}{l|r}\n";
    results += "Metrics&Values\\\\\n";
    results += "\\hline\n";
    results += "xGEWFI mean error&" + fmt(globals.xgewfi * scale) + "\\\\\n";
    results += "KS mean error&" + fmt(globals.ks_global) + "\\\\\n";
    results += "\\end{tabular}\n";

    std::string explain;
    explain += "\\begin{tabular}{l|r|r|r}\n";
    explain += "Features&Imp.&KS error&xGEWFI error\\\\\n";
    explain += "\\hline\n";
    for (const auto& s : scores) {
        explain += "Feature " + std::to_string(s.feature_index + 1) + "&" + fmt(s.importance) +
                   "&" + fmt(s.ks_error) + "&" + fmt(s.weighted_error * scale) + "\\\\\n";
    }
    explain += "\\end{tabular}\n";

    for (const auto& [path, content] :
         {std::pair{results_path, results}, std::pair{explain_path, explain}}) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + path.string() + "' for writing");
        }
        out << content;
        if (!out) {
            throw IoError("failed writing '" + path.string() + "'");
        }
    }
}

namespace {

nlohmann::ordered_json evaluation_json(const EvaluationOutput& eval,
                                       const std::vector<std::string>& names) {
    nlohmann::ordered_json ks = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < eval.ks.size(); ++f) {
        ks.push_back({{"feature", names[f]},
                      {"d", eval.ks[f].d_statistic},
                      {"p", eval.ks[f].p_value},
                      {"n_o", eval.ks[f].n_original},
                      {"n_g", eval.ks[f].n_generated}});
    }
    return ks;
}

nlohmann::ordered_json scores_json(const EvaluationOutput& eval,
                                   const std::vector<std::string>& names) {
    nlohmann::ordered_json features = nlohmann::ordered_json::array();
    for (const auto& s : eval.scores.features) {
        features.push_back({{"feature", names[s.feature_index]},
                            {"importance", s.importance},
                            {"ks_error", s.ks_error},
                            {"weighted_error", s.weighted_error}});
    }
    return {{"features", features},
            {"ks_global", eval.scores.globals.ks_global},
            {"xgewfi", eval.scores.globals.xgewfi}};
}

}  // namespace

void json_report(const ReportInputs& inputs, const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;

    nlohmann::ordered_json config;
    config["kind"] = to_string(inputs.kind);
    config["n_rows"] = inputs.n_rows;
    config["n_features"] = inputs.n_features;
    config["features"] = inputs.feature_names;
    config["master_seed"] = inputs.master_seed;
    config["corrupt"] = {{"enabled", inputs.corrupt_enabled},
                         {"outlier_rate", inputs.corrupt.outlier_rate},
                         {"missing_rate", inputs.corrupt.missing_rate},
                         {"outlier_magnitude", inputs.corrupt.outlier_magnitude},
                         {"seed", inputs.corrupt.seed}};
    config["impute"] = {{"k", inputs.impute.k}};
    config["augment"] = {{"enabled", inputs.augment_enabled},
                         {"k", inputs.augment.k},
                         {"target_ratio", inputs.augment.target_ratio},
                         {"seed", inputs.augment.seed}};
    config["forest"] = {{"n_trees", inputs.forest.n_trees},
                        {"max_depth", inputs.forest.max_depth},
                        {"min_samples_split", inputs.forest.min_samples_split},
                        {"max_features", inputs.max_features_name},
                        {"bootstrap", inputs.forest.bootstrap},
                        {"seed", inputs.forest.seed}};
    config["evaluate"] = to_string(inputs.evaluate);
    config["percent_display"] = inputs.percent_display;
    doc["config"] = std::move(config);

    nlohmann::ordered_json outlier_features = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < inputs.outliers.features.size(); ++f) {
        const auto& stats = inputs.outliers.features[f];
        outlier_features.push_back({{"feature", inputs.feature_names[f]},
                                    {"q1", stats.fences.q1},
                                    {"q3", stats.fences.q3},
                                    {"iqr", stats.fences.iqr},
                                    {"lower", stats.fences.lower},
                                    {"upper", stats.fences.upper},
                                    {"median", stats.median},
                                    {"nulled", stats.nulled}});
    }
    doc["outliers"] = {{"features", outlier_features},
                       {"total_nulled", inputs.outliers.total_nulled}};

    nlohmann::ordered_json impute_features = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < inputs.imputation.imputed_per_feature.size(); ++f) {
        impute_features.push_back({{"feature", inputs.feature_names[f]},
                                   {"imputed", inputs.imputation.imputed_per_feature[f]},
                                   {"fallback", inputs.imputation.fallback_per_feature[f]}});
    }
    doc["imputation"] = {{"k", inputs.impute.k},
                         {"features", impute_features},
                         {"total_imputed", inputs.imputation.total_imputed()}};

    nlohmann::ordered_json augmentation;
    augmentation["enabled"] = inputs.augment_enabled;
    if (inputs.augmentation.has_value()) {
        const auto& summary = *inputs.augmentation;
        augmentation["original_rows"] = summary.original_rows;
        augmentation["synthetic_rows"] = summary.synthetic_rows;
        nlohmann::ordered_json per_class = nlohmann::ordered_json::array();
        for (const auto& growth : summary.per_class) {
            per_class.push_back({{"class", growth.class_label},
                                 {"original", growth.original_count},
                                 {"added", growth.added}});
        }
        augmentation["per_class"] = std::move(per_class);
        augmentation["synthetic_row_start"] = summary.original_rows;
        augmentation["synthetic_row_end"] = summary.original_rows + summary.synthetic_rows;
    } else {
        augmentation["original_rows"] = inputs.n_rows;
        augmentation["synthetic_rows"] = 0;
        augmentation["per_class"] = nlohmann::ordered_json::array();
        augmentation["synthetic_row_start"] = inputs.n_rows;
        augmentation["synthetic_row_end"] = inputs.n_rows;
    }
    doc["augmentation"] = std::move(augmentation);

    doc["importance"] = {{"weights", inputs.importance.weights}};

    nlohmann::ordered_json ks;
    nlohmann::ordered_json scores;
    if (inputs.imputation_eval.has_value()) {
        ks["imputation"] = evaluation_json(*inputs.imputation_eval, inputs.feature_names);
        scores["imputation"] = scores_json(*inputs.imputation_eval, inputs.feature_names);
    }
    if (inputs.augmentation_eval.has_value()) {
        ks["augmentation"] = evaluation_json(*inputs.augmentation_eval, inputs.feature_names);
        scores["augmentation"] = scores_json(*inputs.augmentation_eval, inputs.feature_names);
    }
    doc["ks"] = std::move(ks);
    doc["scores"] = std::move(scores);

    nlohmann::ordered_json seeds;
    seeds["master"] = inputs.master_seed;
    if (inputs.corrupt_enabled) {
        seeds["corrupt"] = inputs.corrupt.seed;
    }
    if (inputs.augment_enabled) {
        seeds["augment"] = inputs.augment.seed;
    }
    seeds["forest"] = inputs.forest.seed;
    doc["provenance"] = {{"seeds", std::move(seeds)},
                         {"importance_source", "imputed_pre_augmentation"},
                         {"versions", {{"artifact", kArtifactVersion}, {"schema", kSchemaVersion}}},
                         {"timestamp", inputs.timestamp}};

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace xgewfi

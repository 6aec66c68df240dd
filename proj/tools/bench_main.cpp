// Benchmark of the data-parallel kernels against their serial runs and,
// where one exists, the naive reference implementation. Also verifies
// that all routes produce identical bytes before reporting speedups.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "xgewfi/corrupt.hpp"
#include "xgewfi/exec.hpp"
#include "xgewfi/forest.hpp"
#include "xgewfi/iqr.hpp"
#include "xgewfi/knn_impute.hpp"
#include "xgewfi/ks.hpp"
#include "xgewfi/reference.hpp"
#include "xgewfi/rng.hpp"
#include "xgewfi/smote.hpp"
#include "xgewfi/synthgen.hpp"

using namespace xgewfi;

namespace {

template <typename F>
double time_call(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

bool same_dataset(const Dataset& a, const Dataset& b) {
    return a.columns == b.columns && a.missing == b.missing && a.target == b.target;
}

void report(const char* kernel, double serial, double parallel, double reference) {
    if (reference > 0.0) {
        std::printf("%-18s %10.3fs %10.3fs %10.3fs %9.2fx\n", kernel, reference, serial, parallel,
                    serial / parallel);
    } else {
        std::printf("%-18s %10s %10.3fs %10.3fs %9.2fx\n", kernel, "-", serial, parallel,
                    serial / parallel);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"xgewfi kernel benchmark: reference vs serial vs parallel"};
    std::size_t rows = 4000;
    std::size_t features = 5;
    std::size_t trees = 50;
    app.add_option("--rows", rows, "Dataset rows");
    app.add_option("--features", features, "Dataset features");
    app.add_option("--trees", trees, "Forest size");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads available: %d\n", max_threads());
    std::printf("dataset: %zu x %zu\n\n", rows, features);
    std::printf("%-18s %10s %10s %10s %9s\n", "kernel", "reference", "serial", "parallel",
                "speedup");

    GenConfig gen;
    gen.n_samples = rows;
    gen.n_features = features;
    const Dataset clean = make_regression(gen);

    CorruptConfig corrupt;
    const Dataset dirty = inject_missing(inject_outliers(clean, corrupt).data, corrupt).data;
    const Dataset nulled = null_outliers(dirty).data;

    // knn imputation
    ImputeConfig impute_cfg;
    ImputeResult impute_serial{{}, {}};
    ImputeResult impute_parallel{{}, {}};
    ImputeResult impute_reference{{}, {}};
    const double t_imp_ref = time_call([&] { impute_reference = reference::impute_knn(nulled, impute_cfg); });
    const double t_imp_s = time_call([&] { impute_serial = impute(nulled, impute_cfg, Exec::Serial); });
    const double t_imp_p = time_call([&] { impute_parallel = impute(nulled, impute_cfg, Exec::Parallel); });
    report("knn-impute", t_imp_s, t_imp_p, t_imp_ref);
    if (!same_dataset(impute_serial.data, impute_parallel.data) ||
        !same_dataset(impute_serial.data, impute_reference.data)) {
        std::fprintf(stderr, "knn-impute routes disagree\n");
        return 1;
    }

    // forest training
    ForestConfig forest_cfg;
    forest_cfg.n_trees = trees;
    Forest forest_serial;
    Forest forest_parallel;
    const double t_for_s =
        time_call([&] { forest_serial = train(impute_serial.data, forest_cfg, Exec::Serial); });
    const double t_for_p =
        time_call([&] { forest_parallel = train(impute_serial.data, forest_cfg, Exec::Parallel); });
    report("forest-train", t_for_s, t_for_p, 0.0);
    const auto imp_s = feature_importances(forest_serial).weights;
    const auto imp_p = feature_importances(forest_parallel).weights;
    if (imp_s != imp_p) {
        std::fprintf(stderr, "forest routes disagree\n");
        return 1;
    }

    // smote augmentation
    AugmentConfig augment_cfg;
    augment_cfg.target_ratio = 1.5;
    AugmentResult augment_serial{{}, {}};
    AugmentResult augment_parallel{{}, {}};
    const double t_aug_s =
        time_call([&] { augment_serial = augment(impute_serial.data, augment_cfg, Exec::Serial); });
    const double t_aug_p =
        time_call([&] { augment_parallel = augment(impute_serial.data, augment_cfg, Exec::Parallel); });
    report("smote-augment", t_aug_s, t_aug_p, 0.0);
    if (!same_dataset(augment_serial.data, augment_parallel.data)) {
        std::fprintf(stderr, "smote routes disagree\n");
        return 1;
    }

    // ks statistic, optimized sweep vs brute force on a trimmed sample
    const std::size_t ks_n = std::min<std::size_t>(rows, 2000);
    std::vector<double> sample_a(clean.columns[0].begin(),
                                 clean.columns[0].begin() + static_cast<std::ptrdiff_t>(ks_n));
    std::vector<double> sample_b(impute_serial.data.columns[0].begin(),
                                 impute_serial.data.columns[0].begin() + static_cast<std::ptrdiff_t>(ks_n));
    double d_sweep = 0.0;
    double d_brute = 0.0;
    const double t_ks_ref = time_call([&] { d_brute = reference::ks_statistic(sample_a, sample_b); });
    const double t_ks = time_call([&] { d_sweep = ks_two_sample(sample_a, sample_b).d_statistic; });
    std::printf("%-18s %10.3fs %10.3fs %10s %9s\n", "ks-statistic", t_ks_ref, t_ks, "-", "-");
    if (d_sweep != d_brute) {
        std::fprintf(stderr, "ks routes disagree\n");
        return 1;
    }

    std::printf("\nall kernel routes agree bitwise\n");
    return 0;
}

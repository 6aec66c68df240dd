// Exercises the installed command-line surface end to end via
// subprocesses: exit codes, generated files, and the equivalence between
// an in-process run and a generate-then-evaluate round trip.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>

#include "test_util.hpp"
#include "xgewfi/dataset.hpp"

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(XGEWFI_CLI_PATH) + " " + args;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

const std::string kCommonFlags =
    " --seed 5 --corrupt --outlier-rate 0.05 --missing-rate 0.2 --k-impute 5 --n-trees 10"
    " --evaluate imputation";

}  // namespace

TEST_CASE("version exits cleanly") {
    CHECK(run_cli("version > /dev/null") == 0);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help > /dev/null") == 0);
}

TEST_CASE("unknown flags print usage and exit 1") {
    CHECK(run_cli("run --definitely-not-a-flag > /dev/null 2>&1") == 1);
    CHECK(run_cli("frobnicate > /dev/null 2>&1") == 1);
}

TEST_CASE("generate writes a loadable csv") {
    const auto dir = testutil::temp_dir("cli_generate");
    const auto csv = dir / "data.csv";
    CHECK(run_cli("generate --kind regression -o " + csv.string() +
                  " --n-samples 120 --n-features 3 --random-state 2 > /dev/null") == 0);
    const xgewfi::Dataset ds = xgewfi::load_csv(csv, xgewfi::DatasetKind::Regression);
    CHECK(ds.n_rows() == 120);
    CHECK(ds.n_features() == 3);
    CHECK(ds.missing_count() == 0);
}

TEST_CASE("run equals generate followed by evaluate, byte for byte") {
    const auto dir = testutil::temp_dir("cli_equivalence");
    const auto run_out = dir / "run_out";
    const auto eval_out = dir / "eval_out";
    const auto csv = dir / "gen.csv";

    CHECK(run_cli("run --kind regression --n-samples 250 --n-features 4 --random-state 11" +
                  kCommonFlags + " --out-dir " + run_out.string() + " > /dev/null") == 0);
    CHECK(run_cli("generate --kind regression -o " + csv.string() +
                  " --n-samples 250 --n-features 4 --random-state 11 > /dev/null") == 0);
    CHECK(run_cli("evaluate " + csv.string() + " --kind regression" + kCommonFlags +
                  " --out-dir " + eval_out.string() + " > /dev/null") == 0);

    CHECK(testutil::mask_timestamp(testutil::slurp(run_out / "report.json")) ==
          testutil::mask_timestamp(testutil::slurp(eval_out / "report.json")));
    for (const char* name :
         {"boxplot.svg", "combined.svg", "hist_0.svg", "results.tex", "explain.tex"}) {
        CHECK(testutil::slurp(run_out / name) == testutil::slurp(eval_out / name));
    }
}

TEST_CASE("a missing target cell exits 2 and names the row") {
    const auto dir = testutil::temp_dir("cli_bad_target");
    testutil::spit(dir / "bad.csv", "a,target\n1,0\n2,\n");
    const auto err_file = dir / "stderr.txt";
    CHECK(run_cli("evaluate " + (dir / "bad.csv").string() + " --kind regression 2> " +
                  err_file.string() + " > /dev/null") == 2);
    const std::string err = testutil::slurp(err_file);
    CHECK(err.find("row 3") != std::string::npos);
}

TEST_CASE("config errors exit 1") {
    const auto dir = testutil::temp_dir("cli_config_err");
    testutil::spit(dir / "clean.csv", "a,b,target\n1,2,0\n3,4,1\n5,6,0\n7,8,1\n");
    CHECK(run_cli("evaluate " + (dir / "clean.csv").string() +
                  " --kind regression --evaluate imputation --out-dir " + (dir / "o").string() +
                  " > /dev/null 2>&1") == 1);
}

TEST_CASE("a json config file drives the run and flags override it") {
    const auto dir = testutil::temp_dir("cli_config_file");
    testutil::spit(dir / "cfg.json", R"({
  "kind": "regression",
  "master_seed": 5,
  "corrupt": {"enabled": true, "outlier_rate": 0.05, "missing_rate": 0.2},
  "forest": {"n_trees": 10},
  "evaluate": "imputation",
  "out_dir": ")" + (dir / "out_a").string() + R"(",
  "generate": {"n_samples": 250, "n_features": 4, "random_state": 11}
})");
    CHECK(run_cli("run --config " + (dir / "cfg.json").string() + " > /dev/null") == 0);
    CHECK(std::filesystem::exists(dir / "out_a" / "report.json"));

    // the same file with every option as a flag produced identical output
    const auto flag_out = dir / "out_b";
    CHECK(run_cli("run --kind regression --n-samples 250 --n-features 4 --random-state 11" +
                  kCommonFlags + " --out-dir " + flag_out.string() + " > /dev/null") == 0);
    CHECK(testutil::mask_timestamp(testutil::slurp(dir / "out_a" / "report.json")) ==
          testutil::mask_timestamp(testutil::slurp(flag_out / "report.json")));

    // a flag overrides the file
    CHECK(run_cli("run --config " + (dir / "cfg.json").string() + " --out-dir " +
                  (dir / "out_c").string() + " > /dev/null") == 0);
    CHECK(std::filesystem::exists(dir / "out_c" / "report.json"));
}

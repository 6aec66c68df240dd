#include <doctest.h>

#include "test_util.hpp"
#include "xgewfi/dataset.hpp"
#include "xgewfi/errors.hpp"

using namespace xgewfi;

TEST_CASE("csv with one empty cell sets exactly one missing flag") {
    const auto dir = testutil::temp_dir("csv_one_missing");
    testutil::spit(dir / "d.csv", "a,b,target\n1,2,0\n3,,1\n5,6,0\n");
    const Dataset ds = load_csv(dir / "d.csv", DatasetKind::Regression);
    CHECK(ds.n_rows() == 3);
    CHECK(ds.n_features() == 2);
    CHECK(ds.missing_count() == 1);
    CHECK(ds.missing[1][1] == 1);
    CHECK(ds.columns[0][1] == 3.0);
}

TEST_CASE("duplicate header names are rejected") {
    const auto dir = testutil::temp_dir("csv_dup_header");
    testutil::spit(dir / "d.csv", "a,a,target\n1,2,0\n");
    CHECK_THROWS_AS(load_csv(dir / "d.csv", DatasetKind::Regression), DataError);
}

TEST_CASE("save/load round trip is the identity") {
    const auto dir = testutil::temp_dir("csv_roundtrip");
    const Dataset ds = testutil::random_dataset(100, 5, 0.2, 99);
    save_csv(ds, dir / "d.csv");
    const Dataset back = load_csv(dir / "d.csv", DatasetKind::Regression);
    REQUIRE(back.n_rows() == ds.n_rows());
    REQUIRE(back.n_features() == ds.n_features());
    CHECK(back.missing == ds.missing);
    CHECK(back.target == ds.target);
    for (std::size_t f = 0; f < ds.n_features(); ++f) {
        for (std::size_t r = 0; r < ds.n_rows(); ++r) {
            if (!ds.missing[f][r]) {
                CHECK(back.columns[f][r] == ds.columns[f][r]);
            }
        }
    }
}

TEST_CASE("complete dataset serializes without empty fields") {
    const auto dir = testutil::temp_dir("csv_no_missing");
    save_csv(testutil::random_dataset(20, 3, 0.0, 7), dir / "d.csv");
    const std::string text = testutil::slurp(dir / "d.csv");
    CHECK(text.find(",,") == std::string::npos);
    CHECK(text.find(",\n") == std::string::npos);
}

TEST_CASE("an all-missing feature becomes a column of empty fields") {
    const auto dir = testutil::temp_dir("csv_all_missing");
    Dataset ds = testutil::random_dataset(5, 2, 0.0, 3);
    ds.missing[0].assign(5, 1);
    save_csv(ds, dir / "d.csv");
    const Dataset back = load_csv(dir / "d.csv", DatasetKind::Regression);
    for (std::size_t r = 0; r < 5; ++r) {
        CHECK(back.missing[0][r] == 1);
        CHECK(back.missing[1][r] == 0);
    }
}

TEST_CASE("column_view exposes only observed cells in row order") {
    Dataset ds;
    ds.feature_names = {"a"};
    ds.columns = {{1.0, 0.0, 3.0}};
    ds.missing = {{0, 1, 0}};
    ds.target = {0.0, 0.0, 0.0};

    const ColumnView view = column_view(ds, 0);
    CHECK(view.present_values == std::vector<double>{1.0, 3.0});
    CHECK(view.row_indices == std::vector<std::size_t>{0, 2});

    ds.missing[0] = {1, 1, 1};
    CHECK(column_view(ds, 0).present_values.empty());

    ds.missing[0] = {0, 0, 0};
    CHECK(column_view(ds, 0).present_values.size() == 3);

    CHECK_THROWS_AS(column_view(ds, 1), DataError);
}

TEST_CASE("missing target cells are rejected with the row number") {
    const auto dir = testutil::temp_dir("csv_missing_target");
    testutil::spit(dir / "d.csv", "a,target\n1,0\n2,\n");
    try {
        load_csv(dir / "d.csv", DatasetKind::Regression);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("non-numeric cells are rejected with a location") {
    const auto dir = testutil::temp_dir("csv_bad_cell");
    testutil::spit(dir / "d.csv", "a,target\nx,0\n");
    CHECK_THROWS_AS(load_csv(dir / "d.csv", DatasetKind::Regression), DataError);
}

TEST_CASE("classification targets must be non-negative integers") {
    const auto dir = testutil::temp_dir("csv_class_target");
    testutil::spit(dir / "d.csv", "a,target\n1,0.5\n");
    CHECK_THROWS_AS(load_csv(dir / "d.csv", DatasetKind::Classification), DataError);
    testutil::spit(dir / "ok.csv", "a,target\n1,2\n");
    CHECK(load_csv(dir / "ok.csv", DatasetKind::Classification).n_classes() == 3);
}

TEST_CASE("quoted fields and CRLF line endings parse") {
    const auto dir = testutil::temp_dir("csv_quoted");
    testutil::spit(dir / "d.csv", "\"a\",target\r\n\"1.5\",0\r\n");
    const Dataset ds = load_csv(dir / "d.csv", DatasetKind::Regression);
    CHECK(ds.feature_names[0] == "a");
    CHECK(ds.columns[0][0] == 1.5);
}

TEST_CASE("header-only csv is rejected") {
    const auto dir = testutil::temp_dir("csv_empty");
    testutil::spit(dir / "d.csv", "a,target\n");
    CHECK_THROWS_AS(load_csv(dir / "d.csv", DatasetKind::Regression), DataError);
}

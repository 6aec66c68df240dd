#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace xgewfi {

enum class DatasetKind {
    Regression,
    Classification,
};

const char* to_string(DatasetKind kind);
DatasetKind dataset_kind_from_string(const std::string& text);

// Column-major numeric table with a per-cell missingness mask and a
// mandatory target column. Missing cells carry no meaningful value; the
// mask is the only source of truth, never a sentinel payload.
//
// Datasets are immutable by convention: every transformation returns a
// fresh Dataset, so concurrent readers need no synchronization.
struct Dataset {
    DatasetKind kind = DatasetKind::Regression;
    std::vector<std::string> feature_names;           // size n_features
    std::vector<std::vector<double>> columns;         // [feature][row]
    std::vector<std::vector<std::uint8_t>> missing;   // [feature][row], 1 = absent
    std::vector<double> target;                       // size n_rows, never missing
    std::string target_name = "target";

    std::size_t n_rows() const { return target.size(); }
    std::size_t n_features() const { return columns.size(); }

    std::size_t missing_count() const;
    bool any_missing() const { return missing_count() > 0; }

    // Number of distinct classes (max target index + 1). Classification only.
    std::size_t n_classes() const;

    // Throws DataError on any shape or content invariant violation.
    void validate() const;
};

// Non-missing cells of one feature, in row order.
struct ColumnView {
    std::size_t feature_index = 0;
    std::vector<double> present_values;
    std::vector<std::size_t> row_indices;  // strictly increasing
};

ColumnView column_view(const Dataset& ds, std::size_t feature_index);

// CSV exchange format: header row, last column is the target, empty field
// means missing, plain decimal numbers. Values are written with 17
// significant digits so a save/load round trip is bitwise lossless.
Dataset load_csv(const std::filesystem::path& path, DatasetKind kind);
void save_csv(const Dataset& ds, const std::filesystem::path& path);

}  // namespace xgewfi

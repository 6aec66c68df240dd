#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "xgewfi/dataset.hpp"
#include "xgewfi/rng.hpp"

namespace testutil {

inline std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("xgewfi_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void spit(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

// Random regression-style dataset with optional per-cell missingness.
inline xgewfi::Dataset random_dataset(std::size_t rows, std::size_t features, double missing_rate,
                                      std::uint64_t seed) {
    xgewfi::Dataset ds;
    ds.kind = xgewfi::DatasetKind::Regression;
    xgewfi::Rng rng(seed);
    for (std::size_t f = 0; f < features; ++f) {
        ds.feature_names.push_back("f" + std::to_string(f));
        std::vector<double> column(rows);
        std::vector<std::uint8_t> mask(rows, 0);
        for (std::size_t r = 0; r < rows; ++r) {
            column[r] = rng.normal();
            if (missing_rate > 0.0 && rng.next_double() < missing_rate) {
                mask[r] = 1;
                column[r] = 0.0;
            }
        }
        ds.columns.push_back(std::move(column));
        ds.missing.push_back(std::move(mask));
    }
    ds.target.resize(rows);
    for (auto& t : ds.target) {
        t = rng.normal();
    }
    return ds;
}

inline bool same_dataset(const xgewfi::Dataset& a, const xgewfi::Dataset& b) {
    return a.kind == b.kind && a.columns == b.columns && a.missing == b.missing &&
           a.target == b.target && a.feature_names == b.feature_names;
}

// report.json with the provenance timestamp line blanked, for byte
// comparisons across runs.
inline std::string mask_timestamp(std::string text) {
    const std::string key = "\"timestamp\": \"";
    const auto pos = text.find(key);
    if (pos != std::string::npos) {
        const auto end = text.find('"', pos + key.size());
        if (end != std::string::npos) {
            text.replace(pos + key.size(), end - pos - key.size(), "MASKED");
        }
    }
    return text;
}

}  // namespace testutil

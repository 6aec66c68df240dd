#include "xgewfi/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "xgewfi/errors.hpp"

namespace xgewfi {

const char* to_string(DatasetKind kind) {
    return kind == DatasetKind::Regression ? "regression" : "classification";
}

DatasetKind dataset_kind_from_string(const std::string& text) {
    if (text == "regression" || text == "reg") {
        return DatasetKind::Regression;
    }
    if (text == "classification" || text == "class") {
        return DatasetKind::Classification;
    }
    throw ConfigError("unknown dataset kind '" + text + "' (expected regression|classification)");
}

std::size_t Dataset::missing_count() const {
    std::size_t count = 0;
    for (const auto& mask : missing) {
        for (const std::uint8_t m : mask) {
            count += m != 0;
        }
    }
    return count;
}

std::size_t Dataset::n_classes() const {
    double max_class = -1.0;
    for (const double t : target) {
        max_class = std::max(max_class, t);
    }
    return max_class < 0.0 ? 0 : static_cast<std::size_t>(max_class) + 1;
}

void Dataset::validate() const {
    const std::size_t rows = target.size();
    if (columns.size() != feature_names.size() || columns.size() != missing.size()) {
        throw DataError("dataset: feature count mismatch between values, mask and names");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names) {
        if (name.empty()) {
            throw DataError("dataset: empty feature name");
        }
        if (!seen.insert(name).second) {
            throw DataError("dataset: duplicate feature name '" + name + "'");
        }
    }
    for (std::size_t f = 0; f < columns.size(); ++f) {
        if (columns[f].size() != rows || missing[f].size() != rows) {
            throw DataError("dataset: column '" + feature_names[f] + "' length mismatch");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (!missing[f][r] && !std::isfinite(columns[f][r])) {
                throw DataError("dataset: non-finite value in column '" + feature_names[f] + "'");
            }
        }
    }
    for (std::size_t r = 0; r < rows; ++r) {
        const double t = target[r];
        if (!std::isfinite(t)) {
            throw DataError("dataset: non-finite target at row " + std::to_string(r));
        }
        if (kind == DatasetKind::Classification && (t < 0.0 || t != std::floor(t))) {
            throw DataError("dataset: classification target at row " + std::to_string(r) +
                            " is not a non-negative integer");
        }
    }
}

ColumnView column_view(const Dataset& ds, std::size_t feature_index) {
    if (feature_index >= ds.n_features()) {
        throw DataError("column_view: feature index " + std::to_string(feature_index) +
                        " out of range (have " + std::to_string(ds.n_features()) + " features)");
    }
    ColumnView view;
    view.feature_index = feature_index;
    const auto& values = ds.columns[feature_index];
    const auto& mask = ds.missing[feature_index];
    view.present_values.reserve(values.size());
    view.row_indices.reserve(values.size());
    for (std::size_t r = 0; r < values.size(); ++r) {
        if (!mask[r]) {
            view.present_values.push_back(values[r]);
            view.row_indices.push_back(r);
        }
    }
    return view;
}

namespace {

// One RFC 4180 record: comma-separated fields, optional double-quote
// quoting, doubled quotes as escapes, newlines allowed inside quotes.
// Returns false at end of input. `line` tracks the record's first line.
bool read_record(const std::string& text, std::size_t& pos, std::size_t& line,
                 std::vector<std::string>& fields, const std::string& where) {
    fields.clear();
    if (pos >= text.size()) {
        return false;
    }
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    const std::size_t record_line = line;
    while (pos < text.size()) {
        const char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    pos += 2;
                } else {
                    in_quotes = false;
                    ++pos;
                }
            } else {
                if (c == '\n') {
                    ++line;
                }
                field.push_back(c);
                ++pos;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty()) {
                    throw DataError(where + ": row " + std::to_string(record_line) +
                                    ": quote inside unquoted field");
                }
                in_quotes = true;
                field_was_quoted = true;
                ++pos;
                break;
            case ',':
                fields.push_back(std::move(field));
                field.clear();
                field_was_quoted = false;
                ++pos;
                break;
            case '\r':
                ++pos;
                break;
            case '\n':
                ++pos;
                ++line;
                fields.push_back(std::move(field));
                return true;
            default:
                field.push_back(c);
                ++pos;
        }
    }
    if (in_quotes) {
        throw DataError(where + ": row " + std::to_string(record_line) + ": unterminated quote");
    }
    (void)field_was_quoted;
    fields.push_back(std::move(field));
    return true;
}

double parse_number(const std::string& field, std::size_t row, std::size_t col,
                    const std::string& where) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw DataError(where + ": row " + std::to_string(row) + ", column " +
                        std::to_string(col) + ": not a finite number: '" + field + "'");
    }
    return value;
}

void format_value(std::string& out, double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof(buf), "%.17g", v);
    out.append(buf, static_cast<std::size_t>(n));
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, DatasetKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const std::string where = path.filename().string();

    std::size_t pos = 0;
    std::size_t line = 1;
    std::vector<std::string> fields;
    if (!read_record(text, pos, line, fields, where) || fields.size() < 2) {
        throw DataError(where + ": header with at least one feature and a target required");
    }

    Dataset ds;
    ds.kind = kind;
    const std::size_t n_cols = fields.size();
    ds.feature_names.assign(fields.begin(), fields.end() - 1);
    ds.target_name = fields.back();
    ds.columns.resize(n_cols - 1);
    ds.missing.resize(n_cols - 1);

    std::size_t row = 1;  // header is record 1
    while (read_record(text, pos, line, fields, where)) {
        ++row;
        if (fields.size() == 1 && fields[0].empty()) {
            continue;  // trailing blank line
        }
        if (fields.size() != n_cols) {
            throw DataError(where + ": row " + std::to_string(row) + ": expected " +
                            std::to_string(n_cols) + " fields, found " +
                            std::to_string(fields.size()));
        }
        for (std::size_t f = 0; f + 1 < n_cols; ++f) {
            if (fields[f].empty()) {
                ds.columns[f].push_back(0.0);
                ds.missing[f].push_back(1);
            } else {
                ds.columns[f].push_back(parse_number(fields[f], row, f + 1, where));
                ds.missing[f].push_back(0);
            }
        }
        if (fields.back().empty()) {
            throw DataError(where + ": row " + std::to_string(row) + ": missing target value");
        }
        ds.target.push_back(parse_number(fields.back(), row, n_cols, where));
    }
    if (ds.target.empty()) {
        throw DataError(where + ": no data rows");
    }
    ds.validate();
    return ds;
}

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
    ds.validate();
    std::string out;
    out.reserve(ds.n_rows() * ds.n_features() * 12);
    for (std::size_t f = 0; f < ds.n_features(); ++f) {
        out += ds.feature_names[f];
        out += ',';
    }
    out += ds.target_name;
    out += '\n';
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        for (std::size_t f = 0; f < ds.n_features(); ++f) {
            if (!ds.missing[f][r]) {
                format_value(out, ds.columns[f][r]);
            }
            out += ',';
        }
        format_value(out, ds.target[r]);
        out += '\n';
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    file << out;
    if (!file) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace xgewfi

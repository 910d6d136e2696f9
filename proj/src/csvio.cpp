#include "tsh/csvio.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "tsh/errors.hpp"

namespace tsh {

namespace {

// Character-level CSV splitter: quotes, "" escapes and newlines inside
// quoted fields.
std::vector<std::vector<std::string>> parse_csv_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool any_char = false;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
        any_char = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                any_char = true;
                break;
            case ',':
                end_field();
                any_char = true;
                break;
            case '\r':
                break;
            case '\n':
                if (any_char || !field.empty() || !record.empty()) end_record();
                break;
            default:
                field.push_back(c);
                any_char = true;
                break;
        }
    }
    if (any_char || !field.empty() || !record.empty()) end_record();
    return records;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Thousands separators are stripped before parsing, so "1,234.5" inside a
// quoted field reads as 1234.5.
bool parse_value(const std::string& raw, double& out) {
    std::string cleaned;
    cleaned.reserve(raw.size());
    for (char c : trimmed(raw)) {
        if (c == ',') continue;
        cleaned.push_back(c);
    }
    if (cleaned.empty()) return false;
    char* end = nullptr;
    out = std::strtod(cleaned.c_str(), &end);
    return end != nullptr && *end == '\0';
}

std::size_t resolve_column(const std::vector<std::string>& header, const std::string& wanted,
                           const std::string& path) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trimmed(header[i]) == trimmed(wanted)) return i;
    }
    // Fall back to a zero-based index.
    const std::string w = trimmed(wanted);
    if (!w.empty()) {
        char* end = nullptr;
        const long idx = std::strtol(w.c_str(), &end, 10);
        if (end != nullptr && *end == '\0' && idx >= 0 &&
            static_cast<std::size_t>(idx) < header.size()) {
            return static_cast<std::size_t>(idx);
        }
    }
    std::string cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) cols += ", ";
        cols += trimmed(header[i]);
    }
    throw std::invalid_argument("load_csv: column '" + wanted + "' not found in " + path +
                                " (header: " + cols + ")");
}

}  // namespace

CsvLoadResult load_csv(const std::string& path, const std::string& value_column,
                       const std::optional<std::string>& label_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("load_csv: cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto records = parse_csv_records(buf.str());
    if (records.size() < 2) {
        throw std::invalid_argument("load_csv: " + path + " has no data rows below the header");
    }

    const auto& header = records.front();
    const std::size_t value_idx = resolve_column(header, value_column, path);
    std::size_t label_idx = 0;
    if (label_column) label_idx = resolve_column(header, *label_column, path);

    std::vector<double> values;
    std::vector<std::string> labels;
    std::size_t skipped = 0;
    std::string skipped_rows_note;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& row = records[r];
        double v = 0.0;
        if (value_idx >= row.size() || !parse_value(row[value_idx], v)) {
            ++skipped;
            if (skipped <= 5) {
                skipped_rows_note += (skipped_rows_note.empty() ? "" : ", ") + std::to_string(r + 1);
            }
            continue;
        }
        values.push_back(v);
        if (label_column) {
            labels.push_back(label_idx < row.size() ? trimmed(row[label_idx]) : "");
        }
    }

    if (values.size() < 10) {
        throw std::invalid_argument(
            "load_csv: " + path + " yields only " + std::to_string(values.size()) +
            " parseable values (need at least 10); skipped " + std::to_string(skipped) +
            " rows" + (skipped_rows_note.empty() ? "" : " (rows " + skipped_rows_note + ", ...)"));
    }

    CsvLoadResult result{TimeSeries(std::move(values), trimmed(value_column), std::move(labels)),
                         skipped};
    return result;
}

void write_series_csv(const TimeSeries& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("write_series_csv: cannot open " + path + " for writing");
    }
    const bool with_labels = !s.labels.empty();
    out << (with_labels ? "index,value,label\n" : "index,value\n");
    char buf[64];
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g", i, s.values[i]);
        out << buf;
        if (with_labels) out << ',' << s.labels[i];
        out << '\n';
    }
    if (!out) {
        throw IoError("write_series_csv: write failed for " + path);
    }
}

}  // namespace tsh

#include "bplab/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace bplab {

std::string format_real(double v) {
    char buf[40];
    // %.17g is locale-sensitive only through LC_NUMERIC, which this program never sets.
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::write_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
        *out_ << text;
        return;
    }
    *out_ << '"';
    for (char c : text) {
        if (c == '"') *out_ << '"';
        *out_ << c;
    }
    *out_ << '"';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    if (columns_ != 0) throw std::logic_error("CSV header written twice");
    if (columns.empty()) throw std::invalid_argument("CSV header needs at least one column");
    columns_ = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) *out_ << ',';
        write_field(columns[i]);
    }
    *out_ << "\r\n";
}

void CsvWriter::row(const std::vector<CsvField>& fields) {
    if (fields.size() != columns_) throw std::invalid_argument("CSV row width does not match header");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) *out_ << ',';
        std::visit(
            [this](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    write_field(v);
                } else if constexpr (std::is_same_v<T, double>) {
                    write_field(format_real(v));
                } else {
                    write_field(std::to_string(v));
                }
            },
            fields[i]);
    }
    *out_ << "\r\n";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            quoted = true;
            field_started = true;
            break;
        case ',':
            row.push_back(std::move(field));
            field.clear();
            field_started = true;
            break;
        case '\r': break;
        case '\n':
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            field_started = false;
            break;
        default:
            field += c;
            field_started = true;
        }
    }
    if (field_started || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace bplab

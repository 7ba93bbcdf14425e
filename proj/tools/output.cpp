#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fockport::cli {

std::string format_number(double value, int precision) {
    if (!std::isfinite(value)) return "";
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out + '"';
}

std::string csv_cell(const Cell& cell, int precision) {
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) return format_number(v, precision);
            else return csv_escape(v);
        },
        cell);
}

std::string json_cell(const Cell& cell, int precision) {
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "null";
            else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) {
                const std::string s = format_number(v, precision);
                return s.empty() ? "null" : s;
            } else return json_escape(v);
        },
        cell);
}

}  // namespace

void write_csv(const OutputTable& table, int precision, std::ostream& out) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << csv_escape(table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << csv_cell(row[c], precision);
        }
        out << '\n';
    }
}

void write_json(const OutputTable& table, int precision, std::ostream& out) {
    out << "{\"meta\":{";
    for (std::size_t i = 0; i < table.meta.size(); ++i) {
        if (i) out << ',';
        out << json_escape(table.meta[i].first) << ':' << json_cell(table.meta[i].second, precision);
    }
    out << "},\"rows\":[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (r) out << ',';
        out << "\n{";
        const auto& row = table.rows[r];
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
            if (c) out << ',';
            out << json_escape(table.columns[c]) << ':' << json_cell(row[c], precision);
        }
        out << '}';
    }
    out << "\n]}\n";
}

void write(const OutputTable& table, const OutputFormat& format, std::ostream& out) {
    if (format.kind == FormatKind::json) write_json(table, format.precision, out);
    else write_csv(table, format.precision, out);
}

std::vector<Row> to_rows(const Table& table, const std::vector<std::string>& int_columns) {
    std::vector<bool> is_int(table.columns.size(), false);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        is_int[c] = std::find(int_columns.begin(), int_columns.end(), table.columns[c]) != int_columns.end();
    }
    std::vector<Row> rows;
    rows.reserve(table.rows.size());
    for (const auto& src : table.rows) {
        Row row;
        row.reserve(src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            if (!src[c]) row.emplace_back(std::monostate{});
            else if (is_int[c]) row.emplace_back(static_cast<long long>(std::llround(*src[c])));
            else row.emplace_back(*src[c]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace fockport::cli

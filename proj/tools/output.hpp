#pragma once

// CSV / JSON emission for CLI tables. Both formats print numbers through the
// same formatter so they carry identical values at a given precision.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fockport/sweep.hpp"

namespace fockport::cli {

using Cell = std::variant<std::monostate, long long, double, std::string>;
using Row = std::vector<Cell>;

struct OutputTable {
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

enum class FormatKind { csv, json };

struct OutputFormat {
    FormatKind kind = FormatKind::csv;
    int precision = 12;  ///< significant digits
};

[[nodiscard]] std::string format_number(double value, int precision);

void write_csv(const OutputTable& table, int precision, std::ostream& out);
void write_json(const OutputTable& table, int precision, std::ostream& out);
void write(const OutputTable& table, const OutputFormat& format, std::ostream& out);

/// Numeric table to output rows; integral columns named in int_columns print as integers.
[[nodiscard]] std::vector<Row> to_rows(const Table& table, const std::vector<std::string>& int_columns = {});

}  // namespace fockport::cli

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cvtele {

using Cell = std::variant<double, bool>;

/// Column-named rows of numbers and flags; the common shape of every output.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    bool operator==(const Table&) const = default;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits ("%.17g"), so parsing restores the exact double.
/// Infinities print as "inf" / "-inf".
std::string format_real(double value);
std::string format_cell(const Cell& cell);

/// Header row plus one line per row, comma separated, '\n' terminated.
std::string to_csv(const Table& table);

/// Inverse of to_csv. "true"/"false" become flags, everything else must parse
/// as a real. Throws FormatError on ragged rows or bad cells.
Table parse_csv(std::string_view text);

/// One JSON object per row, keys in column order. Non-finite reals become the
/// strings "inf" / "-inf" / "nan".
std::string to_json_lines(const Table& table);

/// Index of a named column; throws FormatError when absent.
std::size_t column_index(const Table& table, std::string_view name);

}  // namespace cvtele

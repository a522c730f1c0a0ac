#include "cvtele/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace cvtele {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

Cell parse_cell(std::string_view text) {
    if (text == "true")
        return true;
    if (text == "false")
        return false;
    const std::string owned(text);
    if (owned.empty())
        throw FormatError("empty CSV cell");
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size())
        throw FormatError("not a number: '" + owned + "'");
    return value;
}

}  // namespace

std::string format_real(double value) {
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (std::isnan(value))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_cell(const Cell& cell) {
    if (const bool* flag = std::get_if<bool>(&cell))
        return *flag ? "true" : "false";
    return format_real(std::get<double>(cell));
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_cell(row[i]);
        out << '\n';
    }
    return out.str();
}

Table parse_csv(std::string_view text) {
    Table table;
    bool have_header = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;

        const auto fields = split(line, ',');
        if (!have_header) {
            for (auto f : fields)
                table.columns.emplace_back(f);
            have_header = true;
            continue;
        }
        if (fields.size() != table.columns.size())
            throw FormatError("line " + std::to_string(line_no) + ": expected "
                              + std::to_string(table.columns.size()) + " fields, got "
                              + std::to_string(fields.size()));
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (auto f : fields)
            row.push_back(parse_cell(f));
        table.rows.push_back(std::move(row));
    }
    if (!have_header)
        throw FormatError("missing CSV header");
    return table;
}

std::string to_json_lines(const Table& table) {
    std::string out;
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string& key = table.columns[i];
            if (const bool* flag = std::get_if<bool>(&row[i])) {
                obj[key] = *flag;
            } else {
                const double v = std::get<double>(row[i]);
                if (std::isfinite(v))
                    obj[key] = v;
                else
                    obj[key] = format_real(v);
            }
        }
        out += obj.dump();
        out += '\n';
    }
    return out;
}

std::size_t column_index(const Table& table, std::string_view name) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        if (table.columns[i] == name)
            return i;
    throw FormatError("no column named '" + std::string(name) + "'");
}

}  // namespace cvtele

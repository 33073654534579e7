#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace riskwave {

/// A missing value renders as an empty field.
using Cell = std::variant<std::monostate, double, long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// 17 significant digits, '.' separator, independent of the C locale.
std::string format_number(double v);

/// RFC 4180 text with LF line endings.
std::string render_csv(const Table& table);

/// Writes `content` to a temporary file beside `path`, then renames it over
/// `path`.
void write_file_atomic(const std::string& path, const std::string& content);

void emit_csv(const Table& table, const std::string& path);

} // namespace riskwave

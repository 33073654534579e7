#include "riskwave/csv.hpp"

#include "riskwave/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace riskwave {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw Error(ErrorCode::invalid_argument, "row has " + std::to_string(row.size()) + " cells, table has " +
                                                     std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0; // drop the sign of -0
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string render_cell(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
    if (std::holds_alternative<std::string>(c)) return quote(std::get<std::string>(c));
    return {};
}

} // namespace

std::string render_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + quote(t.columns[i]);
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + render_cell(row[i]);
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::io, "cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error(ErrorCode::io, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::io, "cannot rename onto '" + path + "'");
    }
}

void emit_csv(const Table& table, const std::string& path) { write_file_atomic(path, render_csv(table)); }

} // namespace riskwave

#pragma once
// table.hpp - row-oriented report emission as CSV or JSON Lines.

#include <ternary/error.hpp>

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ternary {

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(std::string_view s) {
    if (s == "csv") {
        return OutputFormat::csv;
    }
    if (s == "json") {
        return OutputFormat::json;
    }
    throw config_error("unknown format '" + std::string(s) + "' (expected csv or json)");
}

inline std::string format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

// File extension for a table in the given format.
inline std::string table_extension(OutputFormat f) { return f == OutputFormat::csv ? ".csv" : ".jsonl"; }

// Cells carry preformatted text; numeric cells are emitted bare in JSON
// (null when empty or nan).
struct Cell {
    std::string text;
    bool numeric = true;
};

inline Cell num(std::string text) { return {std::move(text), true}; }
inline Cell num(std::uint64_t v) { return {std::to_string(v), true}; }
inline Cell txt(std::string text) { return {std::move(text), false}; }

inline std::string format_sci(double x, int places = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", places, x);
    return buf;
}

class TableWriter {
public:
    TableWriter(std::ostream& os, OutputFormat format, std::vector<std::string> columns, bool write_header = true)
        : os_(&os), format_(format), columns_(std::move(columns)) {
        if (write_header && format_ == OutputFormat::csv) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                *os_ << (i ? "," : "") << columns_[i];
            }
            *os_ << '\n';
        }
    }

    void row(const std::vector<Cell>& cells) {
        if (cells.size() != columns_.size()) {
            throw domain_error("table row has " + std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(columns_.size()));
        }
        if (format_ == OutputFormat::csv) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                *os_ << (i ? "," : "") << cells[i].text;
            }
            *os_ << '\n';
            return;
        }
        *os_ << '{';
        for (std::size_t i = 0; i < cells.size(); ++i) {
            *os_ << (i ? "," : "") << nlohmann::json(columns_[i]).dump() << ':' << json_value(cells[i]);
        }
        *os_ << "}\n";
    }

private:
    static std::string json_value(const Cell& c) {
        if (!c.numeric) {
            return nlohmann::json(c.text).dump();
        }
        return c.text.empty() || c.text == "nan" ? "null" : c.text;
    }

    std::ostream* os_;
    OutputFormat format_;
    std::vector<std::string> columns_;
};

} // namespace ternary

#pragma once

// Minimal CSV emission with deterministic formatting: fixed column order,
// '%.10g' for floating point, commas in cell text replaced by semicolons.
// Identical rows always serialize to identical bytes.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "hymul/errors.hpp"

namespace hymul {

inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::string csv_num(std::uint64_t v) { return std::to_string(v); }

inline std::string csv_cell(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw ConfigError("cannot open output file " + path);
        columns_ = header.size();
        row(header);
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_)
            throw ConfigError("csv row width does not match the header");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << csv_cell(cells[i]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
    std::size_t columns_;
};

} // namespace hymul

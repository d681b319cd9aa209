#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "declab/error.hpp"

namespace declab {

/// Deterministic decimal formatting used everywhere a number enters a
/// report, so identical runs produce byte-identical files.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::string format_number(std::uint64_t v) { return std::to_string(v); }
inline std::string format_number(int v) { return std::to_string(v); }

/// One experiment's tabular result: a header plus one row per sweep point.
/// notes carry human-readable findings for the summary; they are not part
/// of the CSV, which stays a pure function of (config, master_seed).
struct SimReport {
    std::string scenario;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
    double wall_seconds = 0.0;

    void add_row(std::vector<std::string> row) {
        if (row.size() != columns.size())
            throw DimensionError("SimReport: row width does not match header");
        rows.push_back(std::move(row));
    }
};

inline void write_csv(const SimReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_csv: cannot open " + path + " for writing");
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        out << (i ? "," : "") << report.columns[i];
    out << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    if (!out) throw IoError("write_csv: write failed for " + path);
}

/// Parse-back of the CSV form; cells come back as the exact strings that
/// were written.
inline SimReport read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_csv: cannot open " + path);
    SimReport report;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(s);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!s.empty() && s.back() == ',') cells.push_back("");
        return cells;
    };
    if (!std::getline(in, line)) throw IoError("read_csv: empty file " + path);
    report.columns = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        report.rows.push_back(split(line));
    }
    return report;
}

}  // namespace declab

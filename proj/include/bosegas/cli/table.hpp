#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "bosegas/errors.hpp"

namespace bosegas {

// Rectangular numeric table with named columns, the one shape every CSV
// emitting subcommand produces.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// FNV-1a over the canonical config line. Stable across runs and platforms,
// which is all the output header needs it for.
inline std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// 17 significant digits: enough to round-trip any double exactly
inline std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// CSV writer: one comment line recording the config hash and the seed (plus
// optional extra metadata), the header row, then the data. LF endings only;
// the stream is opened in binary mode so no platform translation sneaks in.
inline void emit_table(const Table& t, const std::string& path, const std::string& config_line,
                       unsigned long seed, const std::string& extra = "") {
    for (const auto& r : t.rows)
        if (r.size() != t.columns.size())
            throw IoError("emit_table: rows must be rectangular");
    std::string out = "# config " + config_hash(config_line) + " seed " + std::to_string(seed);
    if (!extra.empty())
        out += " " + extra;
    out += "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out += (i ? "," : "") + t.columns[i];
    out += "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out += (i ? "," : "") + format_full(r[i]);
        out += "\n";
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("emit_table: cannot open " + path);
    f << out;
    f.close();
    if (!f)
        throw IoError("emit_table: write to " + path + " failed");
}

// Inverse of emit_table, for round-trips and downstream consumption.
// Comment lines are skipped; the first remaining line names the columns.
inline Table parse_table(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("parse_table: cannot open " + path);
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            parts.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (!have_header) {
            t.columns = parts;
            have_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(parts.size());
        for (const auto& p : parts) {
            std::size_t used = 0;
            double x = 0.0;
            try {
                x = std::stod(p, &used);
            } catch (const std::exception&) {
                throw IoError("parse_table: bad number '" + p + "' in " + path);
            }
            if (used != p.size())
                throw IoError("parse_table: bad number '" + p + "' in " + path);
            row.push_back(x);
        }
        if (row.size() != t.columns.size())
            throw IoError("parse_table: ragged row in " + path);
        t.rows.push_back(std::move(row));
    }
    if (!have_header)
        throw IoError("parse_table: no header row in " + path);
    return t;
}

} // namespace bosegas

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "curve.hpp"

namespace sffdl {

// All CSV emitted by the library starts with "# schema=1" followed by a
// header row naming the columns.
inline void write_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "# schema=1\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    char buf[32];
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.12g", row[c]);
            out << buf << (c + 1 < row.size() ? "," : "\n");
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline void write_curve_csv(const std::filesystem::path& path, const Curve& c,
                            const std::string& value_name = "value") {
    std::vector<std::string> cols = {"t", value_name};
    if (!c.stderrs.empty()) cols.push_back(value_name + "_stderr");
    std::vector<std::vector<double>> rows;
    rows.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::vector<double> row = {c.times[i], c.values[i]};
        if (!c.stderrs.empty()) row.push_back(c.stderrs[i]);
        rows.push_back(std::move(row));
    }
    write_csv(path, cols, rows);
}

// Binary snapshot record stream for checkpoint/resume of long ensembles.
// Layout (little-endian): magic "SFDLSNP1", then records of
//   u64 trajectory_id, f64 tau, u32 n, n x f64 energies.
struct SnapshotWriter {
    std::ofstream out;

    explicit SnapshotWriter(const std::filesystem::path& path)
        : out(path, std::ios::binary) {
        if (!out) throw std::runtime_error("cannot open " + path.string());
        out.write("SFDLSNP1", 8);
    }

    void write(uint64_t trajectory_id, double tau, const std::vector<double>& energies) {
        const auto n = static_cast<uint32_t>(energies.size());
        out.write(reinterpret_cast<const char*>(&trajectory_id), 8);
        out.write(reinterpret_cast<const char*>(&tau), 8);
        out.write(reinterpret_cast<const char*>(&n), 4);
        out.write(reinterpret_cast<const char*>(energies.data()), 8 * n);
    }
};

struct SnapshotRecord {
    uint64_t trajectory_id = 0;
    double tau = 0.0;
    std::vector<double> energies;
};

struct SnapshotReader {
    std::ifstream in;

    explicit SnapshotReader(const std::filesystem::path& path)
        : in(path, std::ios::binary) {
        if (!in) throw std::runtime_error("cannot open " + path.string());
        char magic[8];
        in.read(magic, 8);
        if (in.gcount() != 8 || std::string(magic, 8) != "SFDLSNP1")
            throw std::runtime_error("bad snapshot header: " + path.string());
    }

    bool next(SnapshotRecord& rec) {
        uint32_t n = 0;
        in.read(reinterpret_cast<char*>(&rec.trajectory_id), 8);
        if (in.gcount() == 0) return false;
        in.read(reinterpret_cast<char*>(&rec.tau), 8);
        in.read(reinterpret_cast<char*>(&n), 4);
        rec.energies.resize(n);
        in.read(reinterpret_cast<char*>(rec.energies.data()), 8 * n);
        if (!in) throw std::runtime_error("truncated snapshot record");
        return true;
    }
};

}  // namespace sffdl

#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sffdl {

// Running sums for ensemble means with standard errors.
struct Accum {
    std::vector<double> sum, sumsq;

    void ensure(std::size_t n) {
        if (sum.empty()) {
            sum.assign(n, 0.0);
            sumsq.assign(n, 0.0);
        } else if (sum.size() != n) {
            throw std::logic_error("Accum: length mismatch");
        }
    }

    void add(const std::vector<double>& v) {
        ensure(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            sum[i] += v[i];
            sumsq[i] += v[i] * v[i];
        }
    }

    void merge(const Accum& o) {
        ensure(o.sum.size());
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += o.sum[i];
            sumsq[i] += o.sumsq[i];
        }
    }

    double mean(std::size_t i, long n) const { return sum[i] / n; }

    double stderr_of_mean(std::size_t i, long n) const {
        if (n < 2) return 0.0;
        const double m = sum[i] / n;
        const double var = std::max(0.0, sumsq[i] / n - m * m);
        return std::sqrt(var / (n - 1));
    }
};

// Named accumulators advancing together, one entry per realization, with a
// binary checkpoint keyed by a caller-supplied hash of the run parameters.
struct AccumSet {
    uint64_t key_hash = 0;
    long n_done = 0;
    std::map<std::string, Accum> accums;

    void add_realization(const std::vector<std::pair<std::string, std::vector<double>>>& obs) {
        for (const auto& [name, vec] : obs) accums[name].add(vec);
        ++n_done;
    }

    void merge(const AccumSet& o) {
        if (o.key_hash != key_hash) throw std::logic_error("AccumSet: key mismatch in merge");
        for (const auto& [name, acc] : o.accums) accums[name].merge(acc);
        n_done += o.n_done;
    }

    void save(const std::filesystem::path& path) const {
        const auto tmp = path.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + tmp);
            out.write("SFDLACC1", 8);
            out.write(reinterpret_cast<const char*>(&key_hash), 8);
            const auto n64 = static_cast<int64_t>(n_done);
            out.write(reinterpret_cast<const char*>(&n64), 8);
            const auto count = static_cast<uint32_t>(accums.size());
            out.write(reinterpret_cast<const char*>(&count), 4);
            for (const auto& [name, acc] : accums) {
                const auto len = static_cast<uint32_t>(name.size());
                out.write(reinterpret_cast<const char*>(&len), 4);
                out.write(name.data(), len);
                const auto m = static_cast<uint64_t>(acc.sum.size());
                out.write(reinterpret_cast<const char*>(&m), 8);
                out.write(reinterpret_cast<const char*>(acc.sum.data()), 8 * m);
                out.write(reinterpret_cast<const char*>(acc.sumsq.data()), 8 * m);
            }
            if (!out) throw std::runtime_error("write failed: " + tmp);
        }
        std::filesystem::rename(tmp, path);
    }

    static std::optional<AccumSet> load(const std::filesystem::path& path,
                                        uint64_t expected_hash) {
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        char magic[8];
        in.read(magic, 8);
        if (in.gcount() != 8 || std::memcmp(magic, "SFDLACC1", 8) != 0) return std::nullopt;
        AccumSet set;
        int64_t n64 = 0;
        uint32_t count = 0;
        in.read(reinterpret_cast<char*>(&set.key_hash), 8);
        in.read(reinterpret_cast<char*>(&n64), 8);
        in.read(reinterpret_cast<char*>(&count), 4);
        if (!in || set.key_hash != expected_hash) return std::nullopt;
        set.n_done = n64;
        for (uint32_t k = 0; k < count; ++k) {
            uint32_t len = 0;
            in.read(reinterpret_cast<char*>(&len), 4);
            std::string name(len, '\0');
            in.read(name.data(), len);
            uint64_t m = 0;
            in.read(reinterpret_cast<char*>(&m), 8);
            Accum acc;
            acc.sum.resize(m);
            acc.sumsq.resize(m);
            in.read(reinterpret_cast<char*>(acc.sum.data()), 8 * m);
            in.read(reinterpret_cast<char*>(acc.sumsq.data()), 8 * m);
            if (!in) return std::nullopt;
            set.accums.emplace(std::move(name), std::move(acc));
        }
        return set;
    }
};

// FNV-1a over raw bytes; used to key checkpoints to their run parameters.
struct KeyHasher {
    uint64_t h = 0xcbf29ce484222325ull;

    void bytes(const void* p, std::size_t n) {
        auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ull;
        }
    }

    KeyHasher& operator<<(double v) { bytes(&v, sizeof v); return *this; }
    KeyHasher& operator<<(int64_t v) { bytes(&v, sizeof v); return *this; }
    KeyHasher& operator<<(uint64_t v) { bytes(&v, sizeof v); return *this; }
    KeyHasher& operator<<(const std::string& s) { bytes(s.data(), s.size()); return *this; }
    KeyHasher& operator<<(const std::vector<double>& v) {
        bytes(v.data(), v.size() * sizeof(double));
        return *this;
    }
};

}  // namespace sffdl

// io.hpp - file formats: observable time series (CSV), plane snapshots
// (binary), run manifests (key = value text).
//
// Snapshot format, byte-exact:
//   offset  0: 8-byte magic "DFDTSNAP"
//   offset  8: u16 little-endian version = 1
//   offset 10: 6 zero bytes (header padded to 16 bytes)
//   offset 16: u32 LE rows, u32 LE cols
//   offset 24: rows*cols f64 LE, row-major (column index fastest)
//   trailer (24 bytes): f64 LE time, u32 LE plane axis (0=x,1=y,2=z),
//                       u32 LE plane index, u64 LE scenario-name hash
//                       (FNV-1a 64).
// Total size = 16 + 8 + 8*rows*cols + 24.
//
// Series format: CSV with the fixed header
//   t,norm,x,y,z,vx,vy,vz,energy,pmx,pmy,pmz,pcx,pcy,pcz
// written with 17 significant digits and LF line endings.

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diracfdtd/observables.hpp"
#include "diracfdtd/spinor_field.hpp"

namespace dfdtd {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace detail {

inline void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

inline void put_u64(std::string& out, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

inline void put_f64(std::string& out, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, sizeof v);
    put_u64(out, v);
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw std::runtime_error("snapshot: truncated file");
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<unsigned char>(buf[pos]) |
                          (static_cast<std::uint16_t>(static_cast<unsigned char>(buf[pos + 1])) << 8);
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int b = 3; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(buf[pos + b]);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int b = 7; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(buf[pos + b]);
        pos += 8;
        return v;
    }
    double f64() {
        const std::uint64_t v = u64();
        double d;
        std::memcpy(&d, &v, sizeof d);
        return d;
    }
};

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

struct SnapshotMeta {
    double time = 0.0;
    Axis axis = Axis::Y;
    std::uint32_t plane_index = 0;
    std::uint64_t scenario_hash = 0;
};

inline constexpr char snapshot_magic[9] = "DFDTSNAP";
inline constexpr std::uint16_t snapshot_version = 1;

inline void write_snapshot(const std::string& path, const DensitySlice& slice,
                           const SnapshotMeta& meta) {
    std::string out;
    out.reserve(48 + 8 * slice.values.size());
    out.append(snapshot_magic, 8);
    detail::put_u16(out, snapshot_version);
    out.append(6, '\0');
    detail::put_u32(out, static_cast<std::uint32_t>(slice.rows));
    detail::put_u32(out, static_cast<std::uint32_t>(slice.cols));
    for (double v : slice.values) detail::put_f64(out, v);
    detail::put_f64(out, meta.time);
    detail::put_u32(out, static_cast<std::uint32_t>(meta.axis));
    detail::put_u32(out, meta.plane_index);
    detail::put_u64(out, meta.scenario_hash);
    detail::write_file(path, out);
}

struct Snapshot {
    DensitySlice slice;
    SnapshotMeta meta;
};

inline Snapshot read_snapshot(const std::string& path) {
    const std::string bytes = detail::read_file(path);
    detail::Reader r{bytes};
    r.need(16);
    if (std::memcmp(bytes.data(), snapshot_magic, 8) != 0)
        throw std::runtime_error("snapshot: bad magic in " + path);
    r.pos = 8;
    const auto version = r.u16();
    if (version != snapshot_version)
        throw std::runtime_error("snapshot: unsupported version in " + path);
    r.pos = 16;
    Snapshot snap;
    snap.slice.rows = static_cast<int>(r.u32());
    snap.slice.cols = static_cast<int>(r.u32());
    const std::size_t n = static_cast<std::size_t>(snap.slice.rows) * snap.slice.cols;
    snap.slice.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) snap.slice.values[i] = r.f64();
    snap.meta.time = r.f64();
    snap.meta.axis = static_cast<Axis>(r.u32());
    snap.meta.plane_index = r.u32();
    snap.meta.scenario_hash = r.u64();
    if (r.pos != bytes.size()) throw std::runtime_error("snapshot: trailing bytes in " + path);
    return snap;
}

inline constexpr const char* series_header =
    "t,norm,x,y,z,vx,vy,vz,energy,pmx,pmy,pmz,pcx,pcy,pcz";

inline void write_series(const std::string& path, const ObservableSeries& series) {
    std::string out;
    out += series_header;
    out += '\n';
    for (const auto& r : series.records) {
        using detail::fmt17;
        out += fmt17(r.t) + ',' + fmt17(r.norm) + ',' + fmt17(r.center.x) + ',' +
               fmt17(r.center.y) + ',' + fmt17(r.center.z) + ',' + fmt17(r.velocity.x) + ',' +
               fmt17(r.velocity.y) + ',' + fmt17(r.velocity.z) + ',' + fmt17(r.energy) + ',' +
               fmt17(r.p_mech.x) + ',' + fmt17(r.p_mech.y) + ',' + fmt17(r.p_mech.z) + ',' +
               fmt17(r.p_canon.x) + ',' + fmt17(r.p_canon.y) + ',' + fmt17(r.p_canon.z);
        out += '\n';
    }
    detail::write_file(path, out);
}

inline ObservableSeries read_series(const std::string& path) {
    const std::string bytes = detail::read_file(path);
    std::istringstream in(bytes);
    std::string line;
    if (!std::getline(in, line) || line != series_header)
        throw std::runtime_error("series: missing or wrong header in " + path);
    ObservableSeries s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != 15) throw std::runtime_error("series: bad column count in " + path);
        ObservableRecord r;
        r.t = vals[0];
        r.norm = vals[1];
        r.center = {vals[2], vals[3], vals[4]};
        r.velocity = {vals[5], vals[6], vals[7]};
        r.energy = vals[8];
        r.p_mech = {vals[9], vals[10], vals[11]};
        r.p_canon = {vals[12], vals[13], vals[14]};
        s.records.push_back(r);
    }
    return s;
}

/// Ordered key = value text file.
struct Manifest {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
    void add(const std::string& key, double value) { entries.emplace_back(key, detail::fmt17(value)); }
    void add(const std::string& key, long value) { entries.emplace_back(key, std::to_string(value)); }

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return &v;
        return nullptr;
    }

    void write(const std::string& path) const {
        std::string out;
        for (const auto& [k, v] : entries) {
            out += k;
            out += " = ";
            out += v;
            out += '\n';
        }
        detail::write_file(path, out);
    }
};

} // namespace dfdtd

#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"

// Section files and CSV emission.
//
// Section file layout (FKG1), little-endian:
//   bytes 0-3    magic "FKG1"
//   bytes 4-7    u32 n_t
//   bytes 8-11   u32 n_x
//   bytes 12-51  f64 dt, dx, t_start, x_start, h
//   bytes 52-    n_t * n_x float32 samples, trace-major
// The 52-byte header carries the full geometry, so a file round trip needs
// no sidecar; samples are float32, the working precision of the archives
// this format feeds.

namespace logdmo {

/// Malformed content in an otherwise readable stream.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The stream itself failed (missing file, short write, ...).
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr char kSectionMagic[4] = {'F', 'K', 'G', '1'};
inline constexpr std::size_t kSectionHeaderBytes = 52;

namespace detail {

inline void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

inline void put_f64(std::string& buf, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) buf.push_back(char((bits >> (8 * i)) & 0xff));
}

inline void put_f32(std::string& buf, float v) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) buf.push_back(char((bits >> (8 * i)) & 0xff));
}

[[nodiscard]] inline std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    return v;
}

[[nodiscard]] inline double get_f64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

[[nodiscard]] inline float get_f32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    return std::bit_cast<float>(v);
}

}  // namespace detail

/// Serialize to the section file layout. Validation failures throw
/// std::invalid_argument before anything is produced.
[[nodiscard]] inline std::string serialize_section(const Section& s) {
    validate_section(s);
    std::string buf;
    buf.reserve(kSectionHeaderBytes + 4 * s.data.size());
    buf.append(kSectionMagic, 4);
    detail::put_u32(buf, std::uint32_t(s.n_t));
    detail::put_u32(buf, std::uint32_t(s.n_x));
    detail::put_f64(buf, s.dt);
    detail::put_f64(buf, s.dx);
    detail::put_f64(buf, s.t_start);
    detail::put_f64(buf, s.x_start);
    detail::put_f64(buf, s.h);
    for (double v : s.data) detail::put_f32(buf, float(v));
    return buf;
}

inline void write_section(const std::string& path, const Section& s) {
    const std::string buf = serialize_section(s);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(buf.data(), std::streamsize(buf.size()));
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

[[nodiscard]] inline Section parse_section(const std::string& buf,
                                           const std::string& origin) {
    if (buf.size() < kSectionHeaderBytes)
        throw FormatError("truncated header: " + origin);
    if (std::memcmp(buf.data(), kSectionMagic, 4) != 0)
        throw FormatError("bad magic: " + origin);
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
    const std::uint32_t n_t = detail::get_u32(p + 4);
    const std::uint32_t n_x = detail::get_u32(p + 8);
    if (n_t == 0 || n_x == 0) throw FormatError("zero dimension: " + origin);
    Section s;
    s.n_t = n_t;
    s.n_x = n_x;
    s.dt = detail::get_f64(p + 12);
    s.dx = detail::get_f64(p + 20);
    s.t_start = detail::get_f64(p + 28);
    s.x_start = detail::get_f64(p + 36);
    s.h = detail::get_f64(p + 44);
    const std::size_t need = kSectionHeaderBytes + 4 * std::size_t(n_t) * n_x;
    if (buf.size() < need) throw FormatError("truncated payload: " + origin);
    s.data.resize(std::size_t(n_t) * n_x);
    for (std::size_t i = 0; i < s.data.size(); ++i) {
        s.data[i] = double(detail::get_f32(p + kSectionHeaderBytes + 4 * i));
    }
    try {
        validate_section(s);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string(e.what()) + ": " + origin);
    }
    return s;
}

[[nodiscard]] inline Section read_section(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    std::string buf((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());
    if (f.bad()) throw IoError("read failed: " + path);
    return parse_section(buf, path);
}

/// Numeric table with a header row. Cells print as %.17g: the shortest
/// fixed format that survives a double round trip.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

[[nodiscard]] inline std::string format_csv(const CsvTable& t) {
    for (const auto& r : t.rows) {
        if (r.size() != t.header.size())
            throw std::invalid_argument("format_csv: ragged row");
    }
    std::string out;
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (c) out.push_back(',');
        out += t.header[c];
    }
    out.push_back('\n');
    char cell[40];
    for (const auto& r : t.rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) out.push_back(',');
            std::snprintf(cell, sizeof cell, "%.17g", r[c]);
            out += cell;
        }
        out.push_back('\n');
    }
    return out;
}

inline void write_csv(const std::string& path, const CsvTable& t) {
    const std::string buf = format_csv(t);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(buf.data(), std::streamsize(buf.size()));
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace logdmo

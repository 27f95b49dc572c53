#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpdata/field.hpp"

namespace mpdata {

/// Flat little-endian field dump: magic "MPD1", then uint32 nx, ny, nz and
/// the precision flag (bytes per value, 4 or 8), then the interior values
/// in x-fastest order. A plain-text .meta companion describes the payload.
template <class T>
void write_field_dump(const Field3<T>& f, const std::string& path)
{
    static_assert(sizeof(T) == 4 || sizeof(T) == 8);
    const Grid3<T>& g = *f.grid;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_field_dump: cannot open " + path);

    const char magic[4] = {'M', 'P', 'D', '1'};
    out.write(magic, 4);
    const std::uint32_t head[4] = {static_cast<std::uint32_t>(g.nx),
                                   static_cast<std::uint32_t>(g.ny),
                                   static_cast<std::uint32_t>(g.nz),
                                   static_cast<std::uint32_t>(sizeof(T))};
    out.write(reinterpret_cast<const char*>(head), sizeof head);
    std::vector<T> row(static_cast<std::size_t>(g.nx));
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) row[static_cast<std::size_t>(i)] = f(i, j, k);
            out.write(reinterpret_cast<const char*>(row.data()),
                      static_cast<std::streamsize>(row.size() * sizeof(T)));
        }
    if (!out)
        throw std::runtime_error("write_field_dump: write failed for " + path);

    std::ofstream meta(path + ".meta");
    if (!meta)
        throw std::runtime_error("write_field_dump: cannot open " + path + ".meta");
    meta << "format: MPD1\n"
         << "dims: " << g.nx << " " << g.ny << " " << g.nz << "\n"
         << "precision_bytes: " << sizeof(T) << "\n"
         << "spacing: " << g.dx << " " << g.dy << " " << g.dz << "\n"
         << "order: x-fastest\n"
         << "byte_order: little-endian\n";
}

template <class T>
struct FieldDump {
    int nx = 0, ny = 0, nz = 0;
    std::vector<T> values; // x-fastest
};

template <class T>
FieldDump<T> read_field_dump(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_field_dump: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "MPD1", 4) != 0)
        throw std::runtime_error("read_field_dump: bad magic in " + path);
    std::uint32_t head[4];
    in.read(reinterpret_cast<char*>(head), sizeof head);
    if (!in)
        throw std::runtime_error("read_field_dump: truncated header in " + path);
    if (head[3] != sizeof(T))
        throw std::runtime_error("read_field_dump: precision mismatch in " + path);
    FieldDump<T> d;
    d.nx = static_cast<int>(head[0]);
    d.ny = static_cast<int>(head[1]);
    d.nz = static_cast<int>(head[2]);
    d.values.resize(static_cast<std::size_t>(d.nx) * d.ny * d.nz);
    in.read(reinterpret_cast<char*>(d.values.data()),
            static_cast<std::streamsize>(d.values.size() * sizeof(T)));
    if (!in)
        throw std::runtime_error("read_field_dump: truncated payload in " + path);
    return d;
}

} // namespace mpdata

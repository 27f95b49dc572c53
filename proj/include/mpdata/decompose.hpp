#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mpdata/field.hpp"

namespace mpdata {

struct Box3 {
    int x0 = 0, y0 = 0, z0 = 0;
    int nx = 0, ny = 0, nz = 0;
};

/// One tile of the global grid: its position in the process grid, the owned
/// cell range, and the adjacent tile per axis/side (-1 at a physical edge;
/// periodic wrap partners are resolved at exchange time).
struct Subdomain {
    int index = 0;
    int px = 0, py = 0, pz = 0;
    Box3 box;
    int neighbor[3][2] = {{-1, -1}, {-1, -1}, {-1, -1}};
};

struct Decomposition {
    int npx = 1, npy = 1, npz = 1;
    int gnx = 0, gny = 0, gnz = 0;
    std::vector<Subdomain> parts;

    int id(int px, int py, int pz) const { return px + npx * (py + npy * pz); }
    int count() const { return npx * npy * npz; }
};

/// Split a gnx x gny x gnz grid into npx*npy*npz equal tiles. Counts that do
/// not divide the extents are rejected so every tile allocates identically.
inline Decomposition decompose(int gnx, int gny, int gnz, int npx, int npy, int npz)
{
    if (npx < 1 || npy < 1 || npz < 1)
        throw std::invalid_argument("decompose: subdomain counts must be >= 1");
    const int np[3] = {npx, npy, npz};
    const int gn[3] = {gnx, gny, gnz};
    const char* axis_name[3] = {"nx", "ny", "nz"};
    const char* proc_name[3] = {"nprocx", "nprocy", "nprocz"};
    for (int a = 0; a < 3; ++a)
        if (gn[a] % np[a] != 0)
            throw std::invalid_argument(std::string("decompose: ") + proc_name[a] + "=" +
                                        std::to_string(np[a]) + " must divide " + axis_name[a] +
                                        "=" + std::to_string(gn[a]));

    Decomposition d;
    d.npx = npx; d.npy = npy; d.npz = npz;
    d.gnx = gnx; d.gny = gny; d.gnz = gnz;
    const int bx = gnx / npx, by = gny / npy, bz = gnz / npz;
    d.parts.resize(static_cast<std::size_t>(d.count()));
    for (int pz = 0; pz < npz; ++pz)
        for (int py = 0; py < npy; ++py)
            for (int px = 0; px < npx; ++px) {
                Subdomain& s = d.parts[static_cast<std::size_t>(d.id(px, py, pz))];
                s.index = d.id(px, py, pz);
                s.px = px; s.py = py; s.pz = pz;
                s.box = {px * bx, py * by, pz * bz, bx, by, bz};
                s.neighbor[0][0] = px > 0 ? d.id(px - 1, py, pz) : -1;
                s.neighbor[0][1] = px < npx - 1 ? d.id(px + 1, py, pz) : -1;
                s.neighbor[1][0] = py > 0 ? d.id(px, py - 1, pz) : -1;
                s.neighbor[1][1] = py < npy - 1 ? d.id(px, py + 1, pz) : -1;
                s.neighbor[2][0] = pz > 0 ? d.id(px, py, pz - 1) : -1;
                s.neighbor[2][1] = pz < npz - 1 ? d.id(px, py, pz + 1) : -1;
            }
    return d;
}

template <class T>
Decomposition decompose(const Grid3<T>& grid, int npx, int npy, int npz)
{
    return decompose(grid.nx, grid.ny, grid.nz, npx, npy, npz);
}

namespace detail {

// dst(i,j,k) = src(x0+i, y0+j, z0+k) over dst's full extended range.
template <class T>
void copy_window(Array3<T>& dst, const Array3<T>& src, int x0, int y0, int z0)
{
    const int h = dst.halo();
    for (int k = -h; k < dst.nz() + h; ++k)
        for (int j = -h; j < dst.ny() + h; ++j)
            for (int i = -h; i < dst.nx() + h; ++i)
                dst(i, j, k) = src(x0 + i, y0 + j, z0 + k);
}

} // namespace detail

/// Per-subdomain grids sliced out of the global geometry. Halo values come
/// from the global arrays, so every tile sees bit-identical metric terms.
template <class T>
std::vector<Grid3<T>> partition(const Grid3<T>& global, const Decomposition& dec)
{
    std::vector<Grid3<T>> local;
    local.reserve(dec.parts.size());
    for (const Subdomain& s : dec.parts) {
        Grid3<T> g(s.box.nx, s.box.ny, s.box.nz, global.dx, global.dy, global.dz, global.halo);
        detail::copy_window(g.h, global.h, s.box.x0, s.box.y0, s.box.z0);
        detail::copy_window(g.hi, global.hi, s.box.x0, s.box.y0, s.box.z0);
        detail::copy_window(g.rhr, global.rhr, s.box.x0, s.box.y0, s.box.z0);
        detail::copy_window(g.g, global.g, s.box.x0, s.box.y0, s.box.z0);
        detail::copy_window(g.w, global.w, s.box.x0, s.box.y0, s.box.z0);
        detail::copy_window(g.wi, global.wi, s.box.x0, s.box.y0, s.box.z0);
        if (global.g_rate) {
            g.g_rate.emplace(s.box.nx, s.box.ny, s.box.nz, global.halo);
            detail::copy_window(*g.g_rate, *global.g_rate, s.box.x0, s.box.y0, s.box.z0);
        }
        local.push_back(std::move(g));
    }
    return local;
}

} // namespace mpdata

#pragma once

#include <optional>
#include <stdexcept>

#include "mpdata/array3.hpp"

namespace mpdata {

/// Structured grid geometry: extents, spacings and the per-cell weights the
/// transport kernels divide by.
///
/// `h` is the fluid density and `g` the metric factor (Jacobian of the
/// coordinate transformation; proportional to cos(latitude) on a lon-lat
/// sphere). The kernels always see the combined cell weight w = g*h and its
/// inverse wi; on cartesian uniform grids both reduce to h and hi. `rhr` is
/// the ratio of densities between two consecutive timesteps, kept per cell
/// so the memory traffic of the full model is reproduced.
template <class T>
struct Grid3 {
    int nx = 0, ny = 0, nz = 0;
    int halo = 0;
    T dx = T(1), dy = T(1), dz = T(1);

    Array3<T> h;    // density, > 0
    Array3<T> hi;   // 1/h
    Array3<T> rhr;  // density ratio between consecutive steps, default 1
    Array3<T> g;    // metric factor, > 0, default 1
    Array3<T> w;    // cached g*h
    Array3<T> wi;   // cached 1/(g*h)

    // Time rate of the metric factor. Static grids leave it unset; the
    // solver treats an absent array as identically zero.
    std::optional<Array3<T>> g_rate;

    Grid3() = default;

    Grid3(int nx_, int ny_, int nz_, T dx_, T dy_, T dz_, int halo_)
        : nx(nx_), ny(ny_), nz(nz_), halo(halo_), dx(dx_), dy(dy_), dz(dz_),
          h(nx_, ny_, nz_, halo_), hi(nx_, ny_, nz_, halo_),
          rhr(nx_, ny_, nz_, halo_), g(nx_, ny_, nz_, halo_),
          w(nx_, ny_, nz_, halo_), wi(nx_, ny_, nz_, halo_)
    {
        if (dx <= T(0) || dy <= T(0) || dz <= T(0))
            throw std::invalid_argument("Grid3: spacings must be positive");
        h.fill(T(1));
        hi.fill(T(1));
        rhr.fill(T(1));
        g.fill(T(1));
        w.fill(T(1));
        wi.fill(T(1));
    }

    T cell_volume() const { return dx * dy * dz; }

    /// Recompute hi, w and wi from h and g over the full extended range.
    /// Call after editing the density or metric arrays.
    void rebuild_inverses()
    {
        for (int k = -halo; k < nz + halo; ++k)
            for (int j = -halo; j < ny + halo; ++j)
                for (int i = -halo; i < nx + halo; ++i) {
                    hi(i, j, k) = T(1) / h(i, j, k);
                    w(i, j, k) = g(i, j, k) * h(i, j, k);
                    wi(i, j, k) = T(1) / w(i, j, k);
                }
    }
};

} // namespace mpdata

#pragma once

#include "mpdata/grid.hpp"

namespace mpdata {

/// One scalar tracer on a grid, halo cells included. The referenced grid
/// must outlive the field.
template <class T>
struct Field3 {
    const Grid3<T>* grid = nullptr;
    Array3<T> data;

    Field3() = default;

    explicit Field3(const Grid3<T>& g)
        : grid(&g), data(g.nx, g.ny, g.nz, g.halo) {}

    T& operator()(int i, int j, int k) { return data(i, j, k); }
    const T& operator()(int i, int j, int k) const { return data(i, j, k); }
};

/// C-grid face-normal transport components in Courant form: each entry is
/// the volume advected through the face per timestep, divided by the cell
/// volume. u1(i,j,k) lives on the x face between cells i-1 and i, so the
/// array carries one extra plane along its own axis.
template <class T>
struct FaceVelocity {
    const Grid3<T>* grid = nullptr;
    Array3<T> u1, u2, u3;

    FaceVelocity() = default;

    explicit FaceVelocity(const Grid3<T>& g)
        : grid(&g),
          u1(g.nx + 1, g.ny, g.nz, g.halo),
          u2(g.nx, g.ny + 1, g.nz, g.halo),
          u3(g.nx, g.ny, g.nz + 1, g.halo) {}
};

/// Interior sum of g*h*psi*cell_volume. Accumulated in double and in a
/// fixed order, so the result measures the scheme rather than the summation
/// and does not depend on how the domain is decomposed.
template <class T>
double total_mass(const Field3<T>& f)
{
    const Grid3<T>& g = *f.grid;
    double sum = 0;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                sum += static_cast<double>(g.w(i, j, k)) * static_cast<double>(f(i, j, k));
    return sum * static_cast<double>(g.cell_volume());
}

} // namespace mpdata

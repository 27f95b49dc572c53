#pragma once

#include <stdexcept>

#include "mpdata/field.hpp"

namespace mpdata {

/// Halo fill rule for one side of one axis.
///   copy:     halo takes the nearest interior value
///   negate:   halo takes the mirrored interior value, sign flipped
///   zero:     halo is zeroed
///   periodic: halo wraps around to the opposite interior
enum class BoundaryKind { copy, negate, zero, periodic };

/// Per-axis-side rules for one run. When polar_y is set the y sides ignore
/// the stored kinds and are filled by the 180-degree shifted mirror across
/// the poles instead (lon-lat sphere).
struct BoundarySet {
    BoundaryKind x_lo = BoundaryKind::periodic;
    BoundaryKind x_hi = BoundaryKind::periodic;
    BoundaryKind y_lo = BoundaryKind::periodic;
    BoundaryKind y_hi = BoundaryKind::periodic;
    BoundaryKind z_lo = BoundaryKind::periodic;
    BoundaryKind z_hi = BoundaryKind::periodic;
    bool polar_y = false;

    BoundaryKind side(int axis, int hi) const
    {
        switch (axis) {
        case 0: return hi ? x_hi : x_lo;
        case 1: return hi ? y_hi : y_lo;
        default: return hi ? z_hi : z_lo;
        }
    }
};

inline BoundarySet periodic_bounds()
{
    return BoundarySet{};
}

namespace detail {

struct Span {
    int lo, hi; // half-open
};

// Fill the halo rings of one side of one axis from the array's own values.
// Spans select the transverse coverage; callers widen them axis by axis so
// edge and corner halos come out consistent.
template <class T>
void fill_cell_side(Array3<T>& a, int axis, int hi_side, BoundaryKind kind,
                    Span sx, Span sy, Span sz)
{
    const int n = axis == 0 ? a.nx() : axis == 1 ? a.ny() : a.nz();
    const int h = a.halo();
    for (int m = 1; m <= h; ++m) {
        const int dst = hi_side ? n - 1 + m : -m;
        int src;
        T sign = T(1);
        switch (kind) {
        case BoundaryKind::copy: src = hi_side ? n - 1 : 0; break;
        case BoundaryKind::negate:
            src = hi_side ? n - m : m - 1;
            sign = T(-1);
            break;
        case BoundaryKind::zero: src = 0; break;
        case BoundaryKind::periodic: src = hi_side ? m - 1 : n - m; break;
        default: src = 0; break;
        }
        Span spans[3] = {sx, sy, sz};
        spans[axis] = {dst, dst + 1};
        for (int k = spans[2].lo; k < spans[2].hi; ++k)
            for (int j = spans[1].lo; j < spans[1].hi; ++j)
                for (int i = spans[0].lo; i < spans[0].hi; ++i) {
                    int is = i, js = j, ks = k;
                    if (axis == 0) is = src;
                    if (axis == 1) js = src;
                    if (axis == 2) ks = src;
                    T v = kind == BoundaryKind::zero ? T(0) : sign * a(is, js, ks);
                    a(i, j, k) = v;
                }
    }
}

// 180-degree shifted mirror across a pole. Halo row m beyond the pole reads
// the interior row m-1 counted back from the pole, at the longitude shifted
// by half the zonal period. `sign` is -1 for meridional face components.
template <class T>
void fill_polar_side(Array3<T>& a, int hi_side, int lon_period, T sign,
                     Span sx, Span sz)
{
    const int n = a.ny();
    const int h = a.halo();
    const int shift = lon_period / 2;
    for (int m = 1; m <= h; ++m) {
        const int dst = hi_side ? n - 1 + m : -m;
        const int src = hi_side ? n - m : m - 1;
        for (int k = sz.lo; k < sz.hi; ++k)
            for (int i = sx.lo; i < sx.hi; ++i) {
                int iw = (i % lon_period + lon_period) % lon_period;
                int is = (iw + shift) % lon_period;
                a(i, dst, k) = sign * a(is, src, k);
            }
    }
}

} // namespace detail

/// Fill every halo cell of a single-domain cell array from its own
/// interior, per-side rules as given. Axes are processed x, y, z with
/// widening spans so edge and corner halos match what a decomposed
/// exchange produces.
template <class T>
void apply_boundary(Array3<T>& a, const BoundarySet& b)
{
    const int h = a.halo();
    if (h == 0)
        throw std::runtime_error("apply_boundary: no halo allocated");
    if (b.polar_y && a.nx() % 2 != 0)
        throw std::invalid_argument("apply_boundary: polar mirror needs an even zonal extent");

    using detail::Span;
    const Span ix{0, a.nx()}, iy{0, a.ny()}, iz{0, a.nz()};
    const Span ex{-h, a.nx() + h};

    detail::fill_cell_side(a, 0, 0, b.x_lo, ix, iy, iz);
    detail::fill_cell_side(a, 0, 1, b.x_hi, ix, iy, iz);
    if (b.polar_y) {
        detail::fill_polar_side(a, 0, a.nx(), T(1), ex, iz);
        detail::fill_polar_side(a, 1, a.nx(), T(1), ex, iz);
    } else {
        detail::fill_cell_side(a, 1, 0, b.y_lo, ex, iy, iz);
        detail::fill_cell_side(a, 1, 1, b.y_hi, ex, iy, iz);
    }
    const Span ey{-h, a.ny() + h};
    detail::fill_cell_side(a, 2, 0, b.z_lo, ex, ey, iz);
    detail::fill_cell_side(a, 2, 1, b.z_hi, ex, ey, iz);
}

template <class T>
void apply_boundary(Field3<T>& f, const BoundarySet& b)
{
    apply_boundary(f.data, b);
}

/// Periodic wrap for a face-centred array: the extent along `axis` is n+1
/// with entry n identified with entry 0; transverse axes wrap with their
/// cell period. Fills the full extended range.
template <class T>
void fill_face_halos_periodic(Array3<T>& a, int axis)
{
    const int h = a.halo();
    int ext[3] = {a.nx(), a.ny(), a.nz()};
    int period[3] = {ext[0], ext[1], ext[2]};
    period[axis] -= 1; // own-axis period excludes the duplicated face

    using detail::Span;
    Span spans[3] = {{0, ext[0]}, {0, ext[1]}, {0, ext[2]}};
    spans[axis] = {0, period[axis]}; // canonical faces 0..n-1

    for (int ax = 0; ax < 3; ++ax) {
        const int n = period[ax];
        Span s[3] = {spans[0], spans[1], spans[2]};
        for (int side = 0; side < 2; ++side) {
            const int extra = (ax == axis && side == 1) ? 1 : 0; // duplicated face n
            for (int m = 1 - extra; m <= h; ++m) {
                const int dst = side ? (ax == axis ? n : ext[ax] - 1) + m : -m;
                const int src = ((dst % n) + n) % n;
                if (dst == src) continue;
                s[ax] = {dst, dst + 1};
                Span col[3] = {s[0], s[1], s[2]};
                for (int k = col[2].lo; k < col[2].hi; ++k)
                    for (int j = col[1].lo; j < col[1].hi; ++j)
                        for (int i = col[0].lo; i < col[0].hi; ++i) {
                            int is = i, js = j, ks = k;
                            if (ax == 0) is = src;
                            if (ax == 1) js = src;
                            if (ax == 2) ks = src;
                            a(i, j, k) = a(is, js, ks);
                        }
            }
        }
        spans[ax] = {-h, ext[ax] + h}; // widen for the next axis
    }
}

/// Periodic wrap of all three components of a face velocity.
template <class T>
void fill_velocity_halos_periodic(FaceVelocity<T>& v)
{
    fill_face_halos_periodic(v.u1, 0);
    fill_face_halos_periodic(v.u2, 1);
    fill_face_halos_periodic(v.u3, 2);
}

} // namespace mpdata

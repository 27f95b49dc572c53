#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mpdata/boundary.hpp"
#include "mpdata/decompose.hpp"
#include "mpdata/timers.hpp"
#include "mpdata/workers.hpp"

namespace mpdata {

/// A run's fixed frame: the global grid, how it is tiled, the per-tile
/// geometry, and the halo fill rules at the physical edges.
template <class T>
struct Domain {
    std::shared_ptr<const Grid3<T>> global;
    BoundarySet bounds;
    Decomposition dec;
    std::vector<Grid3<T>> local;
};

template <class T>
Domain<T> make_domain(std::shared_ptr<const Grid3<T>> global, const BoundarySet& bounds,
                      int npx = 1, int npy = 1, int npz = 1)
{
    if (bounds.polar_y && npy != 1)
        throw std::invalid_argument("make_domain: polar grids decompose in longitude only");
    if (bounds.polar_y && global->nx % 2 != 0)
        throw std::invalid_argument("make_domain: polar mirror needs an even zonal extent");
    Domain<T> d;
    d.global = std::move(global);
    d.bounds = bounds;
    d.dec = decompose(*d.global, npx, npy, npz);
    d.local = partition(*d.global, d.dec);
    return d;
}

/// One scalar tracer split across the subdomains of a Domain.
template <class T>
struct DistField {
    std::vector<Field3<T>> blocks;

    Field3<T>& operator[](std::size_t b) { return blocks[b]; }
    const Field3<T>& operator[](std::size_t b) const { return blocks[b]; }
    std::size_t size() const { return blocks.size(); }
};

template <class T>
DistField<T> make_dist_field(const Domain<T>& dom)
{
    DistField<T> f;
    f.blocks.reserve(dom.local.size());
    for (const Grid3<T>& g : dom.local) f.blocks.emplace_back(g);
    return f;
}

template <class T>
DistField<T> scatter(const Field3<T>& global, const Domain<T>& dom)
{
    DistField<T> f = make_dist_field(dom);
    for (std::size_t b = 0; b < f.size(); ++b) {
        const Box3& box = dom.dec.parts[b].box;
        detail::copy_window(f[b].data, global.data, box.x0, box.y0, box.z0);
    }
    return f;
}

template <class T>
void gather(const DistField<T>& f, const Domain<T>& dom, Field3<T>& global)
{
    for (std::size_t b = 0; b < f.size(); ++b) {
        const Box3& box = dom.dec.parts[b].box;
        for (int k = 0; k < box.nz; ++k)
            for (int j = 0; j < box.ny; ++j)
                for (int i = 0; i < box.nx; ++i)
                    global(box.x0 + i, box.y0 + j, box.z0 + k) = f[b](i, j, k);
    }
}

template <class T>
Field3<T> gather(const DistField<T>& f, const Domain<T>& dom)
{
    Field3<T> global(*dom.global);
    gather(f, dom, global);
    return global;
}

/// Courant-form winds for every subdomain, sliced from a global field whose
/// halos are already populated.
template <class T>
std::vector<FaceVelocity<T>> slice_velocity(const FaceVelocity<T>& global, const Domain<T>& dom)
{
    std::vector<FaceVelocity<T>> out;
    out.reserve(dom.local.size());
    for (std::size_t b = 0; b < dom.local.size(); ++b) {
        const Box3& box = dom.dec.parts[b].box;
        FaceVelocity<T> v(dom.local[b]);
        detail::copy_window(v.u1, global.u1, box.x0, box.y0, box.z0);
        detail::copy_window(v.u2, global.u2, box.x0, box.y0, box.z0);
        detail::copy_window(v.u3, global.u3, box.x0, box.y0, box.z0);
        out.push_back(std::move(v));
    }
    return out;
}

namespace detail {

// Exchange or boundary-fill one side of one axis for one block. Transverse
// spans cover axes already processed halo-deep and pending axes interior
// only, which fills edge and corner halos after all three axes ran.
template <class T>
void fill_block_side(DistField<T>& f, const Domain<T>& dom, std::size_t b, int axis, int side)
{
    const Subdomain& sub = dom.dec.parts[b];
    Array3<T>& dst = f[b].data;
    const int h = dst.halo();
    const int n[3] = {dst.nx(), dst.ny(), dst.nz()};

    Span spans[3];
    for (int a = 0; a < 3; ++a)
        spans[a] = a < axis ? Span{-h, n[a] + h} : Span{0, n[a]};

    // Polar mirror across the poles: source columns shifted by half the
    // zonal period, rows reflected, read from whichever block owns them.
    if (axis == 1 && dom.bounds.polar_y) {
        const int gnx = dom.dec.gnx;
        const int shift = gnx / 2;
        const int bnx = gnx / dom.dec.npx;
        for (int m = 1; m <= h; ++m) {
            const int dj = side ? n[1] - 1 + m : -m;
            const int sj = side ? n[1] - m : m - 1;
            for (int k = spans[2].lo; k < spans[2].hi; ++k)
                for (int i = spans[0].lo; i < spans[0].hi; ++i) {
                    int gx = sub.box.x0 + i;
                    gx = (gx % gnx + gnx) % gnx;
                    const int sx = (gx + shift) % gnx;
                    const std::size_t owner = static_cast<std::size_t>(dom.dec.id(sx / bnx, sub.py, sub.pz));
                    dst(i, dj, k) = f[owner](sx % bnx, sj, k);
                }
        }
        return;
    }

    int src_block = sub.neighbor[axis][side];
    const BoundaryKind kind = dom.bounds.side(axis, side);
    if (src_block < 0 && kind == BoundaryKind::periodic) {
        int pos[3] = {sub.px, sub.py, sub.pz};
        const int np[3] = {dom.dec.npx, dom.dec.npy, dom.dec.npz};
        pos[axis] = side ? 0 : np[axis] - 1;
        src_block = dom.dec.id(pos[0], pos[1], pos[2]);
    }

    if (src_block >= 0) {
        const Array3<T>& src = f[static_cast<std::size_t>(src_block)].data;
        for (int m = 1; m <= h; ++m) {
            const int d = side ? n[axis] - 1 + m : -m;
            const int s = side ? m - 1 : n[axis] - m;
            Span col[3] = {spans[0], spans[1], spans[2]};
            col[axis] = {d, d + 1};
            for (int k = col[2].lo; k < col[2].hi; ++k)
                for (int j = col[1].lo; j < col[1].hi; ++j)
                    for (int i = col[0].lo; i < col[0].hi; ++i) {
                        int is = i, js = j, ks = k;
                        if (axis == 0) is = s;
                        if (axis == 1) js = s;
                        if (axis == 2) ks = s;
                        dst(i, j, k) = src(is, js, ks);
                    }
        }
    } else {
        fill_cell_side(dst, axis, side, kind, spans[0], spans[1], spans[2]);
    }
}

} // namespace detail

namespace detail {

// Same exchange pattern for one face-centred component. Along its own axis
// the array carries faces 0..n, every one of them computed locally (the
// shared boundary faces come out bit-identical on both sides), so only the
// strictly-outside faces are filled here.
template <class T>
void fill_face_side(std::vector<FaceVelocity<T>>& v, const Domain<T>& dom, std::size_t b,
                    int comp, int axis, int side)
{
    const Subdomain& sub = dom.dec.parts[b];
    auto arr = [comp](FaceVelocity<T>& fv) -> Array3<T>& {
        return comp == 0 ? fv.u1 : comp == 1 ? fv.u2 : fv.u3;
    };
    Array3<T>& dst = arr(v[b]);
    const int h = dst.halo();
    const int ncell[3] = {sub.box.nx, sub.box.ny, sub.box.nz};
    const int ext[3] = {dst.nx(), dst.ny(), dst.nz()};

    Span spans[3];
    for (int a = 0; a < 3; ++a)
        spans[a] = a < axis ? Span{-h, ext[a] + h} : Span{0, ext[a]};

    if (axis == 1 && dom.bounds.polar_y) {
        const int gnx = dom.dec.gnx;
        const int shift = gnx / 2;
        const int bnx = gnx / dom.dec.npx;
        const T sign = comp == 1 ? T(-1) : T(1);
        for (int m = 1; m <= h; ++m) {
            int dj, sj;
            if (comp == 1) { // meridional faces reflect about the pole face
                dj = side ? ncell[1] + m : -m;
                sj = side ? ncell[1] - m : m;
            } else {
                dj = side ? ncell[1] - 1 + m : -m;
                sj = side ? ncell[1] - m : m - 1;
            }
            for (int k = spans[2].lo; k < spans[2].hi; ++k)
                for (int i = spans[0].lo; i < spans[0].hi; ++i) {
                    int gx = sub.box.x0 + i;
                    gx = (gx % gnx + gnx) % gnx;
                    const int sx = (gx + shift) % gnx;
                    const std::size_t owner =
                        static_cast<std::size_t>(dom.dec.id(sx / bnx, sub.py, sub.pz));
                    dst(i, dj, k) = sign * arr(v[owner])(sx % bnx, sj, k);
                }
        }
        return;
    }

    int src_block = sub.neighbor[axis][side];
    const BoundaryKind kind = dom.bounds.side(axis, side);
    if (src_block < 0 && kind == BoundaryKind::periodic) {
        int pos[3] = {sub.px, sub.py, sub.pz};
        const int np[3] = {dom.dec.npx, dom.dec.npy, dom.dec.npz};
        pos[axis] = side ? 0 : np[axis] - 1;
        src_block = dom.dec.id(pos[0], pos[1], pos[2]);
    }

    const int n = ncell[axis];
    for (int m = 1; m <= h; ++m) {
        int d, s;
        T sign = T(1);
        if (src_block >= 0) {
            // neighbour (or wrap partner); face and cell indexing coincide
            // because the canonical face count per tile equals its cell count
            d = side ? (axis == comp ? n : n - 1) + m : -m;
            s = side ? m - (axis == comp ? 0 : 1) : n - m;
        } else {
            switch (kind) {
            case BoundaryKind::copy:
                d = side ? (axis == comp ? n : n - 1) + m : -m;
                s = side ? (axis == comp ? n : n - 1) : 0;
                break;
            case BoundaryKind::negate:
                d = side ? (axis == comp ? n : n - 1) + m : -m;
                s = side ? n - m : (axis == comp ? m : m - 1);
                sign = T(-1);
                break;
            default: // zero
                d = side ? (axis == comp ? n : n - 1) + m : -m;
                s = 0;
                break;
            }
        }
        Array3<T>& src = src_block >= 0 ? arr(v[static_cast<std::size_t>(src_block)]) : dst;
        Span col[3] = {spans[0], spans[1], spans[2]};
        col[axis] = {d, d + 1};
        const bool zero = src_block < 0 && kind == BoundaryKind::zero;
        for (int k = col[2].lo; k < col[2].hi; ++k)
            for (int j = col[1].lo; j < col[1].hi; ++j)
                for (int i = col[0].lo; i < col[0].hi; ++i) {
                    int is = i, js = j, ks = k;
                    if (axis == 0) is = s;
                    if (axis == 1) js = s;
                    if (axis == 2) ks = s;
                    dst(i, j, k) = zero ? T(0) : sign * src(is, js, ks);
                }
    }
}

} // namespace detail

/// Halo refresh for a distributed face velocity (one block per subdomain).
/// Needed between corrective iterations, when the previous pass's
/// pseudo-velocities become the advecting field.
template <class T>
void face_halo_update(std::vector<FaceVelocity<T>>& v, const Domain<T>& dom, WorkerPool& pool,
                      Timers* timers = nullptr)
{
    std::optional<Timers::Scope> scope;
    if (timers) scope.emplace(timers->scope("halo_update", 0));
    const int nb = static_cast<int>(v.size());
    for (int axis = 0; axis < 3; ++axis) {
        pool.parallel_for(nb, [&](int b, int) {
            for (int comp = 0; comp < 3; ++comp) {
                detail::fill_face_side(v, dom, static_cast<std::size_t>(b), comp, axis, 0);
                detail::fill_face_side(v, dom, static_cast<std::size_t>(b), comp, axis, 1);
            }
        });
    }
}

/// Refresh every halo cell of a distributed field: interior subdomain faces
/// copy the neighbour's adjacent interior bit-exactly, physical edges apply
/// the boundary rules. Axes run x, y, z with a barrier in between; the
/// result matches a single-domain apply_boundary cell for cell.
template <class T>
void halo_update(DistField<T>& f, const Domain<T>& dom, WorkerPool& pool, Timers* timers = nullptr)
{
    if (f.size() != dom.local.size())
        throw std::invalid_argument("halo_update: field does not match the decomposition");
    const int h = dom.global->halo;
    if (h == 0)
        throw std::runtime_error("halo_update: no halo allocated");
    for (const Field3<T>& blk : f.blocks)
        if (blk.data.halo() != h)
            throw std::invalid_argument("halo_update: mismatched halo widths");

    std::optional<Timers::Scope> scope;
    if (timers) scope.emplace(timers->scope("halo_update", 0));

    const int nb = static_cast<int>(f.size());
    for (int axis = 0; axis < 3; ++axis) {
        pool.parallel_for(nb, [&](int b, int) {
            detail::fill_block_side(f, dom, static_cast<std::size_t>(b), axis, 0);
            detail::fill_block_side(f, dom, static_cast<std::size_t>(b), axis, 1);
        });
    }
}

} // namespace mpdata

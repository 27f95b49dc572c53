#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "mpdata/halo.hpp"
#include "mpdata/kernels.hpp"

namespace mpdata {

template <class T>
constexpr T default_ep()
{
    return std::is_same_v<T, float> ? T(1e-6) : T(1e-10);
}

/// Thrown when a phase produces a non-finite value; carries the phase name
/// so the driver can report where the solution blew up.
struct NanError : std::runtime_error {
    std::string phase;
    explicit NanError(std::string ph)
        : std::runtime_error("non-finite value after phase '" + ph + "'"), phase(std::move(ph)) {}
};

template <class T>
struct MpdataOptions {
    Variant variant = Variant::gauge;
    bool fct = false;
    int corrective_passes = 1;
    T ep = default_ep<T>();
    bool upwind_only = false; // first-order reference scheme, no correction

    void validate() const
    {
        if (ep <= T(0))
            throw std::invalid_argument("MpdataOptions: ep must be positive");
        if (corrective_passes < 1)
            throw std::invalid_argument("MpdataOptions: corrective_passes must be >= 1");
    }
};

/// Per-run scratch for the step phases, allocated once.
template <class T>
struct StepState {
    DistField<T> x_in;   // the tracer, advanced in place
    DistField<T> xant;   // running solution after the upwind pass
    DistField<T> mx, mn; // local extrema
    DistField<T> cp, cn; // limiting ratios
    DistField<T> xtmp;   // corrective-pass output
    std::vector<FaceVelocity<T>> pv;      // antidiffusive velocities
    std::vector<FaceVelocity<T>> pv_prev; // previous pass, iterated runs only
};

template <class T>
StepState<T> make_step_state(const Domain<T>& dom, const MpdataOptions<T>& opts)
{
    StepState<T> st;
    st.x_in = make_dist_field(dom);
    st.xant = make_dist_field(dom);
    if (!opts.upwind_only) {
        st.mx = make_dist_field(dom);
        st.mn = make_dist_field(dom);
        st.cp = make_dist_field(dom);
        st.cn = make_dist_field(dom);
        st.xtmp = make_dist_field(dom);
        st.pv.reserve(dom.local.size());
        for (const Grid3<T>& g : dom.local) st.pv.emplace_back(g);
        if (opts.corrective_passes > 1) {
            st.pv_prev.reserve(dom.local.size());
            for (const Grid3<T>& g : dom.local) st.pv_prev.emplace_back(g);
        }
    }
    return st;
}

namespace detail {

template <class T>
bool interior_has_nonfinite(const Array3<T>& a, int ex, int ey, int ez)
{
    for (int k = 0; k < ez; ++k)
        for (int j = 0; j < ey; ++j)
            for (int i = 0; i < ex; ++i)
                if (!std::isfinite(a(i, j, k))) return true;
    return false;
}

template <class T>
void check_finite(const DistField<T>& f, const char* phase)
{
    for (const Field3<T>& b : f.blocks)
        if (interior_has_nonfinite(b.data, b.data.nx(), b.data.ny(), b.data.nz()))
            throw NanError(phase);
}

template <class T>
void check_finite(const std::vector<FaceVelocity<T>>& v, const char* phase)
{
    for (const FaceVelocity<T>& b : v) {
        const int nx = b.u2.nx(), ny = b.u1.ny(), nz = b.u1.nz();
        if (interior_has_nonfinite(b.u1, nx + 1, ny, nz) ||
            interior_has_nonfinite(b.u2, nx, ny + 1, nz) ||
            interior_has_nonfinite(b.u3, nx, ny, nz + 1))
            throw NanError(phase);
    }
}

template <class T>
void swap_data(DistField<T>& a, DistField<T>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) swap(a[i].data, b[i].data);
}

} // namespace detail

/// Advance the tracer in st.x_in by one timestep: upwind pass, then
/// corrective upwind iteration(s) with antidiffusive pseudo-velocities,
/// optionally flux-limited. Halos are refreshed wherever the next stencil
/// reads them; everything between exchanges runs per subdomain in parallel.
template <class T>
void mpdata_step(StepState<T>& st, const std::vector<FaceVelocity<T>>& wind,
                 const Domain<T>& dom, const MpdataOptions<T>& opts,
                 WorkerPool& pool, Timers* timers = nullptr)
{
    opts.validate();
    const int need_halo = opts.upwind_only ? 1 : 2;
    if (dom.global->halo < need_halo)
        throw std::invalid_argument("mpdata_step: halo width " +
                                    std::to_string(dom.global->halo) + " is below the stencil reach " +
                                    std::to_string(need_halo));

    const int nb = static_cast<int>(dom.local.size());
    auto timed = [&](const char* name, auto&& body) {
        pool.parallel_for(nb, [&](int b, int w) {
            std::optional<Timers::Scope> s;
            if (timers) s.emplace(timers->scope(name, w));
            body(static_cast<std::size_t>(b));
        });
    };

    halo_update(st.x_in, dom, pool, timers);

    timed("upwind", [&](std::size_t b) {
        upwind_pass(st.x_in[b], wind[b], dom.local[b], st.xant[b]);
    });
    detail::check_finite(st.xant, "upwind");

    if (opts.upwind_only) {
        detail::swap_data(st.x_in, st.xant);
        return;
    }

    for (int pass = 1; pass <= opts.corrective_passes; ++pass) {
        halo_update(st.xant, dom, pool, timers);
        const std::vector<FaceVelocity<T>>& vel = pass == 1 ? wind : st.pv_prev;

        timed("pseudovel", [&](std::size_t b) {
            pseudo_velocities(st.xant[b], vel[b], dom.local[b], opts.variant, opts.ep, st.pv[b]);
        });
        detail::check_finite(st.pv, "pseudovel");

        if (opts.fct) {
            timed("extrema", [&](std::size_t b) {
                local_extrema(st.x_in[b], st.xant[b], dom.local[b], st.mx[b], st.mn[b]);
            });
            detail::check_finite(st.mx, "extrema");
            detail::check_finite(st.mn, "extrema");
            timed("fct", [&](std::size_t b) {
                fct_coefficients(st.xant[b], st.mx[b], st.mn[b], st.pv[b], dom.local[b],
                                 opts.ep, st.cp[b], st.cn[b]);
            });
            detail::check_finite(st.cp, "fct");
            detail::check_finite(st.cn, "fct");
            halo_update(st.cp, dom, pool, timers);
            halo_update(st.cn, dom, pool, timers);
        }

        timed("corrective", [&](std::size_t b) {
            corrective_pass(st.xant[b], st.pv[b], st.cp[b], st.cn[b], dom.local[b],
                            opts.fct, st.xtmp[b], /*apply_rhr=*/pass == 1);
        });
        detail::check_finite(st.xtmp, "corrective");

        detail::swap_data(st.xant, st.xtmp);
        if (pass < opts.corrective_passes) {
            face_halo_update(st.pv, dom, pool, timers);
            std::swap(st.pv, st.pv_prev);
        }
    }

    detail::swap_data(st.x_in, st.xant);
}

} // namespace mpdata

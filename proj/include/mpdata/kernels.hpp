#pragma once

#include <cmath>

#include "mpdata/field.hpp"

namespace mpdata {

/// Which second-pass flavour the pseudo-velocities feed.
///   gauge:    infinite-gauge form, valid for sign-changing tracers
///   standard: sign-preserving ratio form
///   sphere:   infinite-gauge on the lon-lat sphere (metric held in the grid)
enum class Variant { gauge, standard, sphere };

template <class T>
constexpr T pp(T y) { return y > T(0) ? y : T(0); }

template <class T>
constexpr T pn(T y) { return y < T(0) ? -y : T(0); }

/// Net donor-cell flux through one face: takes the upstream value selected
/// by the sign of the Courant number a.
template <class T>
constexpr T donor(T y1, T y2, T a)
{
    return pp(a) * y1 - pn(a) * y2;
}

/// Quarter of the cross-face difference, the transverse-derivative average
/// used by the pseudo-velocity cross terms.
template <class T>
constexpr T rat4(T z0, T z1, T z2, T z3)
{
    return (z3 + z2 - z1 - z0) * T(0.25);
}

/// Face-centred tracer difference entering the pseudo-velocity. The gauge
/// form is the plain half difference (the tracer scale divides out in the
/// infinite-gauge limit); the standard form normalises by the local tracer
/// magnitude, guarded by ep.
template <class T>
inline T rat2(Variant variant, T x1, T x2, T ep)
{
    if (variant == Variant::standard)
        return (x2 - x1) / (std::abs(x1) + std::abs(x2) + ep);
    return T(0.5) * (x2 - x1);
}

/// Diffusive part of the antidiffusive pseudo-velocity at one face.
/// rinv is the inverse of the face-averaged cell weight.
template <class T>
inline T vdyf(T x1, T x2, T a, T rinv, Variant variant, T ep)
{
    return (std::abs(a) - a * a * rinv) * rat2(variant, x1, x2, ep);
}

/// First-order forward-in-time pass: donor fluxes through all six faces,
/// divergence scaled by the inverse cell weight and the density ratio.
/// Writes the interior; x_in and vel must be halo-populated.
template <class T>
void upwind_pass(const Field3<T>& x_in, const FaceVelocity<T>& vel, const Grid3<T>& g,
                 Field3<T>& xant)
{
    const Array3<T>& x = x_in.data;
    const Array3<T>& u1 = vel.u1;
    const Array3<T>& u2 = vel.u2;
    const Array3<T>& u3 = vel.u3;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const T f1p = donor(x(i, j, k), x(i + 1, j, k), u1(i + 1, j, k));
                const T f1 = donor(x(i - 1, j, k), x(i, j, k), u1(i, j, k));
                const T f2p = donor(x(i, j, k), x(i, j + 1, k), u2(i, j + 1, k));
                const T f2 = donor(x(i, j - 1, k), x(i, j, k), u2(i, j, k));
                const T f3p = donor(x(i, j, k), x(i, j, k + 1), u3(i, j, k + 1));
                const T f3 = donor(x(i, j, k - 1), x(i, j, k), u3(i, j, k));
                xant(i, j, k) = g.rhr(i, j, k) *
                                (x(i, j, k) -
                                 (f1p - f1 + f2p - f2 + f3p - f3) * g.wi(i, j, k));
            }
}

/// Antidiffusive pseudo-velocities on the faces of all interior cells. The
/// v2 and v3 stencils are the v1 stencil under the cyclic index permutation
/// x->y->z. One tracer halo ring must be populated (diagonals included).
template <class T>
void pseudo_velocities(const Field3<T>& xant_f, const FaceVelocity<T>& vel, const Grid3<T>& g,
                       Variant variant, T ep, FaceVelocity<T>& pv)
{
    const Array3<T>& xant = xant_f.data;
    const Array3<T>& u1 = vel.u1;
    const Array3<T>& u2 = vel.u2;
    const Array3<T>& u3 = vel.u3;
    const Array3<T>& w = g.w;

    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) {
                const T hmx = T(1) / (T(0.5) * (w(i - 1, j, k) + w(i, j, k)));
                pv.u1(i, j, k) =
                    vdyf(xant(i - 1, j, k), xant(i, j, k), u1(i, j, k), hmx, variant, ep) -
                    T(0.125) * u1(i, j, k) * hmx *
                        ((u2(i - 1, j, k) + u2(i - 1, j + 1, k) +
                          u2(i, j + 1, k) + u2(i, j, k)) *
                             rat4(xant(i - 1, j - 1, k), xant(i, j - 1, k),
                                  xant(i - 1, j + 1, k), xant(i, j + 1, k)) +
                         (u3(i - 1, j, k) + u3(i - 1, j, k + 1) +
                          u3(i, j, k + 1) + u3(i, j, k)) *
                             rat4(xant(i - 1, j, k - 1), xant(i, j, k - 1),
                                  xant(i - 1, j, k + 1), xant(i, j, k + 1)));
            }

    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const T hmy = T(1) / (T(0.5) * (w(i, j - 1, k) + w(i, j, k)));
                pv.u2(i, j, k) =
                    vdyf(xant(i, j - 1, k), xant(i, j, k), u2(i, j, k), hmy, variant, ep) -
                    T(0.125) * u2(i, j, k) * hmy *
                        ((u3(i, j - 1, k) + u3(i, j - 1, k + 1) +
                          u3(i, j, k + 1) + u3(i, j, k)) *
                             rat4(xant(i, j - 1, k - 1), xant(i, j, k - 1),
                                  xant(i, j - 1, k + 1), xant(i, j, k + 1)) +
                         (u1(i, j - 1, k) + u1(i + 1, j - 1, k) +
                          u1(i + 1, j, k) + u1(i, j, k)) *
                             rat4(xant(i - 1, j - 1, k), xant(i - 1, j, k),
                                  xant(i + 1, j - 1, k), xant(i + 1, j, k)));
            }

    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const T hmz = T(1) / (T(0.5) * (w(i, j, k - 1) + w(i, j, k)));
                pv.u3(i, j, k) =
                    vdyf(xant(i, j, k - 1), xant(i, j, k), u3(i, j, k), hmz, variant, ep) -
                    T(0.125) * u3(i, j, k) * hmz *
                        ((u1(i, j, k - 1) + u1(i + 1, j, k - 1) +
                          u1(i + 1, j, k) + u1(i, j, k)) *
                             rat4(xant(i - 1, j, k - 1), xant(i - 1, j, k),
                                  xant(i + 1, j, k - 1), xant(i + 1, j, k)) +
                         (u2(i, j, k - 1) + u2(i, j + 1, k - 1) +
                          u2(i, j + 1, k) + u2(i, j, k)) *
                             rat4(xant(i, j - 1, k - 1), xant(i, j - 1, k),
                                  xant(i, j + 1, k - 1), xant(i, j + 1, k)));
            }
}

/// Local extrema of the tracer over the cell and its six A-grid neighbours,
/// taken jointly for the input field and the post-upwind field.
template <class T>
void local_extrema(const Field3<T>& x_in, const Field3<T>& xant_f, const Grid3<T>& g,
                   Field3<T>& mx, Field3<T>& mn)
{
    const Array3<T>& x = x_in.data;
    const Array3<T>& xa = xant_f.data;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const T mx_o = std::max({x(i - 1, j, k), x(i, j, k), x(i + 1, j, k),
                                         x(i, j - 1, k), x(i, j + 1, k),
                                         x(i, j, k - 1), x(i, j, k + 1)});
                const T mn_o = std::min({x(i - 1, j, k), x(i, j, k), x(i + 1, j, k),
                                         x(i, j - 1, k), x(i, j + 1, k),
                                         x(i, j, k - 1), x(i, j, k + 1)});
                mx(i, j, k) = std::max({xa(i - 1, j, k), xa(i, j, k), xa(i + 1, j, k), mx_o,
                                        xa(i, j - 1, k), xa(i, j + 1, k),
                                        xa(i, j, k - 1), xa(i, j, k + 1)});
                mn(i, j, k) = std::min({xa(i - 1, j, k), xa(i, j, k), xa(i + 1, j, k), mn_o,
                                        xa(i, j - 1, k), xa(i, j + 1, k),
                                        xa(i, j, k - 1), xa(i, j, k + 1)});
            }
}

/// Limiting ratios for flux-corrected transport: the headroom to the local
/// extrema divided by the total antidiffusive inflow (cp) or outflow (cn),
/// ep guarding the division. Both come out non-negative.
template <class T>
void fct_coefficients(const Field3<T>& xant_f, const Field3<T>& mx, const Field3<T>& mn,
                      const FaceVelocity<T>& pv, const Grid3<T>& g, T ep,
                      Field3<T>& cp, Field3<T>& cn)
{
    const Array3<T>& xa = xant_f.data;
    const Array3<T>& v1 = pv.u1;
    const Array3<T>& v2 = pv.u2;
    const Array3<T>& v3 = pv.u3;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                cp(i, j, k) = (mx(i, j, k) - xa(i, j, k)) * g.w(i, j, k) /
                              (pn(v1(i + 1, j, k)) + pp(v1(i, j, k)) +
                               pn(v2(i, j + 1, k)) + pp(v2(i, j, k)) +
                               pn(v3(i, j, k + 1)) + pp(v3(i, j, k)) + ep);
                cn(i, j, k) = (xa(i, j, k) - mn(i, j, k)) * g.w(i, j, k) /
                              (pp(v1(i + 1, j, k)) + pn(v1(i, j, k)) +
                               pp(v2(i, j + 1, k)) + pn(v2(i, j, k)) +
                               pp(v3(i, j, k + 1)) + pn(v3(i, j, k)) + ep);
            }
}

/// Corrective upwind iteration: the pseudo-velocity fluxes (limited by the
/// min(1,cp,cn) factors when fct is on) act as negative diffusion on the
/// post-upwind field. With apply_rhr the density-ratio scaling of the first
/// pass is undone, per the two-pass update form.
template <class T>
void corrective_pass(const Field3<T>& xant_f, const FaceVelocity<T>& pv,
                     const Field3<T>& cp_f, const Field3<T>& cn_f, const Grid3<T>& g,
                     bool fct, Field3<T>& x_out, bool apply_rhr = true)
{
    const Array3<T>& xa = xant_f.data;
    const Array3<T>& v1 = pv.u1;
    const Array3<T>& v2 = pv.u2;
    const Array3<T>& v3 = pv.u3;
    const Array3<T>& cp = cp_f.data;
    const Array3<T>& cn = cn_f.data;
    const T one = T(1);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                T f1, f1p, f2, f2p, f3, f3p;
                if (fct) {
                    f1 = pp(v1(i, j, k)) * std::min({one, cp(i, j, k), cn(i - 1, j, k)}) -
                         pn(v1(i, j, k)) * std::min({one, cp(i - 1, j, k), cn(i, j, k)});
                    f1p = pp(v1(i + 1, j, k)) * std::min({one, cp(i + 1, j, k), cn(i, j, k)}) -
                          pn(v1(i + 1, j, k)) * std::min({one, cp(i, j, k), cn(i + 1, j, k)});
                    f2 = pp(v2(i, j, k)) * std::min({one, cp(i, j, k), cn(i, j - 1, k)}) -
                         pn(v2(i, j, k)) * std::min({one, cp(i, j - 1, k), cn(i, j, k)});
                    f2p = pp(v2(i, j + 1, k)) * std::min({one, cp(i, j + 1, k), cn(i, j, k)}) -
                          pn(v2(i, j + 1, k)) * std::min({one, cp(i, j, k), cn(i, j + 1, k)});
                    f3 = pp(v3(i, j, k)) * std::min({one, cp(i, j, k), cn(i, j, k - 1)}) -
                         pn(v3(i, j, k)) * std::min({one, cp(i, j, k - 1), cn(i, j, k)});
                    f3p = pp(v3(i, j, k + 1)) * std::min({one, cp(i, j, k + 1), cn(i, j, k)}) -
                          pn(v3(i, j, k + 1)) * std::min({one, cp(i, j, k), cn(i, j, k + 1)});
                } else {
                    f1 = v1(i, j, k);
                    f1p = v1(i + 1, j, k);
                    f2 = v2(i, j, k);
                    f2p = v2(i, j + 1, k);
                    f3 = v3(i, j, k);
                    f3p = v3(i, j, k + 1);
                }
                const T base = apply_rhr ? xa(i, j, k) / g.rhr(i, j, k) : xa(i, j, k);
                x_out(i, j, k) = base - (f1p - f1 + f2p - f2 + f3p - f3) * g.wi(i, j, k);
            }
}

} // namespace mpdata

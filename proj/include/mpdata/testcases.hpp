#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <string>

#include "mpdata/halo.hpp"
#include "mpdata/kernels.hpp"
#include "mpdata/sphere.hpp"

namespace mpdata {

/// A named verification configuration: global grid, winds in Courant form
/// with halos populated, the initial tracer, and the exact solution at any
/// step. Every preset is periodic in time with period `period_steps`, and
/// `analytic` at a multiple of the period reproduces step 0 bit for bit.
template <class T>
struct Problem {
    std::string name;
    std::shared_ptr<const Grid3<T>> grid;
    BoundarySet bounds;
    FaceVelocity<T> wind;
    Field3<T> initial;
    int period_steps = 0;
    double dt = 0;
    Variant default_variant = Variant::gauge;
    bool default_fct = false;
    std::function<void(int step, Field3<T>&)> analytic;
};

template <class T>
Field3<T> analytic_solution(const Problem<T>& p, int step)
{
    Field3<T> f(*p.grid);
    p.analytic(step, f);
    return f;
}

/// Largest per-cell sum of face Courant numbers (donor-cell stability
/// measure), with the cell weight divided out.
template <class T>
double max_courant(const FaceVelocity<T>& v, const Grid3<T>& g)
{
    double m = 0;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double c =
                    (std::max(std::abs(static_cast<double>(v.u1(i, j, k))),
                              std::abs(static_cast<double>(v.u1(i + 1, j, k)))) +
                     std::max(std::abs(static_cast<double>(v.u2(i, j, k))),
                              std::abs(static_cast<double>(v.u2(i, j + 1, k)))) +
                     std::max(std::abs(static_cast<double>(v.u3(i, j, k))),
                              std::abs(static_cast<double>(v.u3(i, j, k + 1))))) *
                    static_cast<double>(g.wi(i, j, k));
                m = std::max(m, c);
            }
    return m;
}

/// Largest per-cell net face flux of a static wind; zero for a
/// divergence-free field up to round-off.
template <class T>
double max_flux_divergence(const FaceVelocity<T>& v, const Grid3<T>& g)
{
    double m = 0;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double d = static_cast<double>(v.u1(i + 1, j, k) - v.u1(i, j, k)) +
                                 static_cast<double>(v.u2(i, j + 1, k) - v.u2(i, j, k)) +
                                 static_cast<double>(v.u3(i, j, k + 1) - v.u3(i, j, k));
                m = std::max(m, std::abs(d));
            }
    return m;
}

namespace detail {

using Vec3 = std::array<double, 3>;

inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double dot(const Vec3& a, const Vec3& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Rodrigues rotation of v about the unit axis a.
inline Vec3 rotate(const Vec3& v, const Vec3& a, double angle)
{
    const double c = std::cos(angle), s = std::sin(angle);
    const Vec3 axv = cross(a, v);
    const double ad = dot(a, v) * (1 - c);
    return {v[0] * c + axv[0] * s + a[0] * ad,
            v[1] * c + axv[1] * s + a[1] * ad,
            v[2] * c + axv[2] * s + a[2] * ad};
}

// Populate the global wind halos exactly the way a decomposed exchange
// would, via a single-tile domain.
template <class T>
void finalize_wind(FaceVelocity<T>& wind, std::shared_ptr<const Grid3<T>> grid,
                   const BoundarySet& bounds)
{
    Domain<T> single = make_domain(std::move(grid), bounds, 1, 1, 1);
    std::vector<FaceVelocity<T>> wrap;
    wrap.push_back(std::move(wind));
    WorkerPool pool(1);
    face_halo_update(wrap, single, pool);
    wind = std::move(wrap[0]);
}

} // namespace detail

/// Cubic cartesian box with a dense ball revolving around a tilted axis at
/// constant angular velocity; the flow is a rigid rotation, discretely
/// divergence-free on the C-grid. The classic configuration scales with n:
/// ball radius 7n/59, orbit radius n/4, 556 steps per revolution at n=59.
template <class T>
Problem<T> make_revolving_sphere(int n, const std::string& name)
{
    if (n < 16)
        throw std::invalid_argument("make_revolving_sphere: n must be >= 16");

    auto grid = std::make_shared<Grid3<T>>(n, n, n, T(1), T(1), T(1), 2);
    std::shared_ptr<const Grid3<T>> gc = grid;

    Problem<T> p;
    p.name = name;
    p.grid = gc;
    p.bounds = periodic_bounds();
    p.period_steps = std::max(8, static_cast<int>(std::lround(556.0 * n / 59.0)));
    p.dt = 2.0 * M_PI / p.period_steps;
    p.default_variant = Variant::gauge;
    p.default_fct = false;

    const detail::Vec3 axis = {1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)};
    const detail::Vec3 center = {n / 2.0, n / 2.0, n / 2.0};
    const detail::Vec3 offdir = {1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0.0};
    const double orbit = n / 4.0;
    const double rball = 7.0 * n / 59.0;
    const double amp_in = 4.0, amp_out = 0.0;
    const detail::Vec3 ball0 = {center[0] + orbit * offdir[0], center[1] + orbit * offdir[1],
                                center[2] + orbit * offdir[2]};

    // rigid rotation: each Courant component depends only on the transverse
    // coordinates, so the discrete flux divergence vanishes identically
    FaceVelocity<T> wind(*gc);
    const double dt = p.dt;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i <= n; ++i) {
                const detail::Vec3 d = {i - center[0], j + 0.5 - center[1], k + 0.5 - center[2]};
                wind.u1(i, j, k) = static_cast<T>(dt * (axis[1] * d[2] - axis[2] * d[1]));
            }
        }
    for (int k = 0; k < n; ++k)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i < n; ++i) {
                const detail::Vec3 d = {i + 0.5 - center[0], j - center[1], k + 0.5 - center[2]};
                wind.u2(i, j, k) = static_cast<T>(dt * (axis[2] * d[0] - axis[0] * d[2]));
            }
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const detail::Vec3 d = {i + 0.5 - center[0], j + 0.5 - center[1], k - center[2]};
                wind.u3(i, j, k) = static_cast<T>(dt * (axis[0] * d[1] - axis[1] * d[0]));
            }
    detail::finalize_wind(wind, gc, p.bounds);
    p.wind = std::move(wind);

    const int period = p.period_steps;
    p.analytic = [gc, axis, center, ball0, rball, amp_in, amp_out, period](int step, Field3<T>& f) {
        const double theta = 2.0 * M_PI * (step % period) / period;
        const Grid3<T>& g = *gc;
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const detail::Vec3 d = {i + 0.5 - center[0], j + 0.5 - center[1],
                                            k + 0.5 - center[2]};
                    const detail::Vec3 b = detail::rotate(d, axis, -theta);
                    const double dx = b[0] - (ball0[0] - center[0]);
                    const double dy = b[1] - (ball0[1] - center[1]);
                    const double dz = b[2] - (ball0[2] - center[2]);
                    const double r2 = dx * dx + dy * dy + dz * dz;
                    f(i, j, k) = static_cast<T>(r2 <= rball * rball ? amp_in : amp_out);
                }
    };

    p.initial = analytic_solution(p, 0);
    return p;
}

/// Periodic 1D sine wave advected with a uniform Courant number, embedded
/// as an n x 1 x 1 grid.
template <class T>
Problem<T> make_sine1d(int n, double courant = 0.5)
{
    if (n < 16)
        throw std::invalid_argument("make_sine1d: n must be >= 16");
    if (courant <= 0 || courant > 1)
        throw std::invalid_argument("make_sine1d: courant must be in (0, 1]");

    auto grid = std::make_shared<Grid3<T>>(n, 1, 1, T(1), T(1), T(1), 2);
    std::shared_ptr<const Grid3<T>> gc = grid;

    Problem<T> p;
    p.name = "sine1d";
    p.grid = gc;
    p.bounds = periodic_bounds();
    p.period_steps = static_cast<int>(std::lround(n / courant));
    p.dt = courant; // unit velocity, unit spacing
    p.default_variant = Variant::gauge;
    p.default_fct = false;

    FaceVelocity<T> wind(*gc);
    for (int i = 0; i <= n; ++i) wind.u1(i, 0, 0) = static_cast<T>(courant);
    detail::finalize_wind(wind, gc, p.bounds);
    p.wind = std::move(wind);

    const int period = p.period_steps;
    p.analytic = [gc, n, courant, period](int step, Field3<T>& f) {
        const double shift = courant * (step % period);
        for (int i = 0; i < n; ++i)
            f(i, 0, 0) = static_cast<T>(std::sin(2.0 * M_PI * (i + 0.5 - shift) / n));
    };

    p.initial = analytic_solution(p, 0);
    return p;
}

/// Solid-body rotation of a cosine bell on the lon-lat sphere. The rotation
/// axis is tilted by alpha from the planetary axis: 0 runs along the
/// equator, pi/2 carries the bell across both poles, pi/4 in between. The
/// timestep keeps the worst polar-row Courant sum at 0.5.
template <class T>
Problem<T> make_solid_body_sphere(double alpha, const std::string& name,
                                  int nlon = 128, int nlat = 64, int nlev = 1)
{
    const SphereGrid s = make_sphere_grid(nlon, nlat, nlev);
    auto grid = std::make_shared<Grid3<T>>(build_grid<T>(s, 2));
    std::shared_ptr<const Grid3<T>> gc = grid;

    Problem<T> p;
    p.name = name;
    p.grid = gc;
    p.bounds = sphere_bounds();
    p.default_variant = Variant::sphere;
    p.default_fct = false;

    const double u0 = 1.0;
    FaceVelocity<T> wind = solid_body_wind(s, *gc, static_cast<T>(alpha), static_cast<T>(u0));
    detail::finalize_wind(wind, gc, p.bounds);

    const double unit_courant = max_courant(wind, *gc);
    const double T_rev = 2.0 * M_PI * s.radius / u0;
    p.period_steps = static_cast<int>(std::ceil(T_rev * unit_courant / 0.5));
    p.dt = T_rev / p.period_steps;
    scale_velocity(wind, static_cast<T>(p.dt));
    p.wind = std::move(wind);

    const detail::Vec3 axis = {-std::sin(alpha), 0.0, std::cos(alpha)};
    const double lam0 = M_PI / 2, phi0 = 0.0;
    const detail::Vec3 bell = {std::cos(phi0) * std::cos(lam0), std::cos(phi0) * std::sin(lam0),
                               std::sin(phi0)};
    const double rbell = 7.0 * s.dlon * s.radius;
    const int period = p.period_steps;
    const SphereGrid sg = s;
    p.analytic = [gc, sg, axis, bell, rbell, period](int step, Field3<T>& f) {
        const double theta = 2.0 * M_PI * (step % period) / period;
        const Grid3<T>& g = *gc;
        for (int j = 0; j < g.ny; ++j) {
            const double phi = sg.lat_center(j);
            for (int i = 0; i < g.nx; ++i) {
                const double lam = sg.lon_center(i);
                const detail::Vec3 pos = {std::cos(phi) * std::cos(lam),
                                          std::cos(phi) * std::sin(lam), std::sin(phi)};
                const detail::Vec3 back = detail::rotate(pos, axis, -theta);
                const double c = std::clamp(detail::dot(back, bell), -1.0, 1.0);
                const double dist = sg.radius * std::acos(c);
                const T val = static_cast<T>(
                    dist < rbell ? 0.5 * (1.0 + std::cos(M_PI * dist / rbell)) : 0.0);
                for (int k = 0; k < g.nz; ++k) f(i, j, k) = val;
            }
        }
    };

    p.initial = analytic_solution(p, 0);
    return p;
}

/// Preset lookup by name. Size overrides of zero keep the preset default.
template <class T>
Problem<T> make_preset(const std::string& name, int n = 0, int nlon = 0, int nlat = 0,
                       int nlev = 0, double courant = 0)
{
    if (name == "cart32") return make_revolving_sphere<T>(n ? n : 32, name);
    if (name == "cart59") return make_revolving_sphere<T>(n ? n : 59, name);
    if (name == "sine1d") return make_sine1d<T>(n ? n : 64, courant > 0 ? courant : 0.5);
    const int lo = nlon ? nlon : 128, la = nlat ? nlat : 64, le = nlev ? nlev : 1;
    if (name == "sphere-pole") return make_solid_body_sphere<T>(M_PI / 2, name, lo, la, le);
    if (name == "sphere-equator") return make_solid_body_sphere<T>(0.0, name, lo, la, le);
    if (name == "sphere-diagonal") return make_solid_body_sphere<T>(M_PI / 4, name, lo, la, le);
    throw std::invalid_argument("unknown preset '" + name + "'");
}

} // namespace mpdata

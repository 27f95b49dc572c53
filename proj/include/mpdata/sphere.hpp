#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>

#include "mpdata/boundary.hpp"
#include "mpdata/field.hpp"

namespace mpdata {

/// Regular lon-lat spherical shell. Cell centres are staggered off the
/// poles by half a row, so the metric factor cos(latitude) stays positive
/// everywhere. The zonal extent must be even for the over-pole mirror.
struct SphereGrid {
    int nlon = 0, nlat = 0, nlev = 1;
    double radius = 1.0;
    double dlon = 0.0, dlat = 0.0;

    double lon_center(int i) const { return (i + 0.5) * dlon; }
    double lon_face(int i) const { return i * dlon; }
    double lat_center(int j) const { return -M_PI / 2 + (j + 0.5) * dlat; }
    double lat_face(int j) const { return -M_PI / 2 + j * dlat; }
};

inline SphereGrid make_sphere_grid(int nlon, int nlat, int nlev = 1, double radius = 1.0)
{
    if (nlon < 4 || nlat < 2 || nlev < 1)
        throw std::invalid_argument("make_sphere_grid: grid too small");
    if (nlon % 2 != 0)
        throw std::invalid_argument("make_sphere_grid: nlon must be even for the polar mirror");
    if (radius <= 0)
        throw std::invalid_argument("make_sphere_grid: radius must be positive");
    SphereGrid g;
    g.nlon = nlon;
    g.nlat = nlat;
    g.nlev = nlev;
    g.radius = radius;
    g.dlon = 2.0 * M_PI / nlon;
    g.dlat = M_PI / nlat;
    return g;
}

inline BoundarySet sphere_bounds()
{
    BoundarySet b; // zonal and vertical wrap
    b.polar_y = true;
    return b;
}

/// Cell grid over the spherical shell: the metric factor carries
/// cos(latitude); spacings are arc lengths so g * cell_volume is the true
/// cell volume.
template <class T>
Grid3<T> build_grid(const SphereGrid& s, int halo = 2)
{
    Grid3<T> g(s.nlon, s.nlat, s.nlev,
               static_cast<T>(s.radius * s.dlon),
               static_cast<T>(s.radius * s.dlat), T(1), halo);
    for (int k = 0; k < s.nlev; ++k)
        for (int j = 0; j < s.nlat; ++j)
            for (int i = 0; i < s.nlon; ++i)
                g.g(i, j, k) = static_cast<T>(std::cos(s.lat_center(j)));
    apply_boundary(g.g, sphere_bounds());
    g.rebuild_inverses();
    return g;
}

/// Rotational wind about an axis tilted by alpha from the planetary axis,
/// angular speed u0/radius. Returned in Courant (flux) form for a unit
/// timestep on the faces of `grid`; scale by the actual dt before use.
/// Interior and canonical faces only -- halos are an exchange concern.
template <class T>
FaceVelocity<T> solid_body_wind(const SphereGrid& s, const Grid3<T>& grid, T alpha, T u0)
{
    if (u0 <= T(0))
        throw std::invalid_argument("solid_body_wind: u0 must be positive");
    FaceVelocity<T> v(grid);
    const double ca = std::cos(static_cast<double>(alpha));
    const double sa = std::sin(static_cast<double>(alpha));
    const double U = static_cast<double>(u0);

    for (int k = 0; k < s.nlev; ++k) {
        for (int j = 0; j < s.nlat; ++j) {
            const double phi = s.lat_center(j);
            for (int i = 0; i < s.nlon; ++i) {
                const double lam = s.lon_face(i);
                const double uz = U * (std::cos(phi) * ca + std::sin(phi) * std::cos(lam) * sa);
                v.u1(i, j, k) = static_cast<T>(uz / (s.radius * s.dlon));
            }
            v.u1(s.nlon, j, k) = v.u1(0, j, k); // the 0/2pi face is one face
        }
        for (int j = 0; j <= s.nlat; ++j) {
            const double phif = s.lat_face(j);
            const bool pole = j == 0 || j == s.nlat;
            for (int i = 0; i < s.nlon; ++i) {
                const double lam = s.lon_center(i);
                const double vm = -U * std::sin(lam) * sa;
                // the polar cap faces have zero area; keep them exactly zero
                v.u2(i, j, k) = pole ? T(0)
                                     : static_cast<T>(vm * std::cos(phif) / (s.radius * s.dlat));
            }
        }
    }
    return v;
}

template <class T>
void scale_velocity(FaceVelocity<T>& v, T factor)
{
    for (auto& x : v.u1.raw()) x *= factor;
    for (auto& x : v.u2.raw()) x *= factor;
    for (auto& x : v.u3.raw()) x *= factor;
}

/// Halo treatment for a scalar on the lon-lat sphere: rows beyond each pole
/// come from the interior shifted by 180 degrees in longitude, zonal halos
/// wrap, vertical halos wrap.
template <class T>
void pole_halo_update(Field3<T>& f, const SphereGrid& s)
{
    if (s.nlon % 2 != 0)
        throw std::invalid_argument("pole_halo_update: nlon must be even (the 180-degree shift "
                                    "must be a whole number of cells)");
    apply_boundary(f, sphere_bounds());
}

} // namespace mpdata

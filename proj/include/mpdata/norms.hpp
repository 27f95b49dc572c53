#pragma once

#include <cmath>
#include <stdexcept>

#include "mpdata/field.hpp"

namespace mpdata {

/// Error measures of a numeric field against an exact one.
///   emin/emax: error of the field minimum / maximum
///   err0:      weighted root-mean-square (L2) error
///   err1:      normalised error of the weighted mean
///   err2:      relative error of the weighted variance
///   linf:      maximum pointwise error
/// err1 and err2 are ratios with an ep-guarded denominator; err0 and linf
/// are the two measures used for reference comparisons.
struct ErrorNorms {
    double emin = 0, emax = 0;
    double err0 = 0, err1 = 0, err2 = 0;
    double linf = 0;
};

/// Weighted by the metric factor times the cell volume, which reduces to a
/// plain average on a uniform cartesian grid.
template <class T>
ErrorNorms error_norms(const Field3<T>& num, const Field3<T>& exact, double ep = 1e-10)
{
    const Grid3<T>* g = num.grid;
    if (g != exact.grid &&
        (g->nx != exact.grid->nx || g->ny != exact.grid->ny || g->nz != exact.grid->nz))
        throw std::invalid_argument("error_norms: fields live on different grids");

    const double vol = static_cast<double>(g->cell_volume());
    double wsum = 0, wd2 = 0, wn = 0, we = 0, linf = 0;
    double min_n = num(0, 0, 0), max_n = min_n;
    double min_e = exact(0, 0, 0), max_e = min_e;
    for (int k = 0; k < g->nz; ++k)
        for (int j = 0; j < g->ny; ++j)
            for (int i = 0; i < g->nx; ++i) {
                const double w = static_cast<double>(g->g(i, j, k)) * vol;
                const double a = static_cast<double>(num(i, j, k));
                const double b = static_cast<double>(exact(i, j, k));
                const double d = a - b;
                wsum += w;
                wd2 += w * d * d;
                wn += w * a;
                we += w * b;
                linf = std::max(linf, std::abs(d));
                min_n = std::min(min_n, a);
                max_n = std::max(max_n, a);
                min_e = std::min(min_e, b);
                max_e = std::max(max_e, b);
            }
    const double mean_n = wn / wsum;
    const double mean_e = we / wsum;

    double var_n = 0, var_e = 0;
    for (int k = 0; k < g->nz; ++k)
        for (int j = 0; j < g->ny; ++j)
            for (int i = 0; i < g->nx; ++i) {
                const double w = static_cast<double>(g->g(i, j, k)) * vol;
                const double a = static_cast<double>(num(i, j, k)) - mean_n;
                const double b = static_cast<double>(exact(i, j, k)) - mean_e;
                var_n += w * a * a;
                var_e += w * b * b;
            }
    var_n /= wsum;
    var_e /= wsum;

    ErrorNorms r;
    r.err0 = std::sqrt(wd2 / wsum);
    r.linf = linf;
    r.emin = min_n - min_e;
    r.emax = max_n - max_e;
    r.err1 = (mean_n - mean_e) / (std::abs(mean_e) + ep);
    r.err2 = (var_n - var_e) / (var_e + ep);
    return r;
}

} // namespace mpdata

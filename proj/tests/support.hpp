// Shared test helpers: seeded random fields, seam handling for the truncated
// geometries, and literal index-level summation oracles kept independent of
// the stencil/energy code paths they check.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "lw2d/field.hpp"
#include "lw2d/scheme.hpp"

namespace lw2d::test {

inline Field random_field(const Geometry& g, unsigned seed, double amp = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, amp);
    Field f(g);
    for (int k = 0; k < g.ny; ++k)
        for (int j = 0; j < g.nx; ++j) f(j, k) = dist(rng);
    return f;
}

// zero the two columns (rows) adjacent to a truncated far side so truncated
// sums equal the untruncated ones exactly
inline void zero_far_x(Field& f) {
    for (int k = 0; k < f.ny(); ++k) f(f.nx() - 1, k) = f(f.nx() - 2, k) = 0.0;
}
inline void zero_far_y(Field& f) {
    for (int j = 0; j < f.nx(); ++j) f(j, f.ny() - 1) = f(j, f.ny() - 2) = 0.0;
}

inline Field random_half_space_member(int nx, int ny, unsigned seed) {
    Field f = random_field({GeomKind::HalfSpace, nx, ny}, seed);
    zero_far_x(f);
    return fill_ghosts(f, BoundarySpec::half_space());
}

inline Field random_quarter_space_member(int nx, int ny, unsigned seed) {
    Field f = random_field({GeomKind::QuarterSpace, nx, ny}, seed);
    zero_far_x(f);
    zero_far_y(f);
    return fill_ghosts(f, BoundarySpec::quarter_space());
}

// ---------------------------------------------------------------------------
// literal oracles, written directly from the displayed formulas with explicit
// index arithmetic and plain left-to-right sums

inline double oracle_inner(const Field& u, const Field& v) {
    double s = 0.0;
    for (int k = 0; k < u.ny(); ++k)
        for (int j = 0; j < u.nx(); ++j) s += u(j, k) * v(j, k);
    return s;
}

// read with periodic wrap on periodic axes, ghost reads otherwise
inline double rd(const Field& f, int j, int k) {
    const Geometry& g = f.geometry();
    if (g.periodic_x()) j = (j % g.nx + g.nx) % g.nx;
    if (g.periodic_y()) k = (k % g.ny + g.ny) % g.ny;
    return f(j, k);
}

// one-step update transcribed line by line from the nine-point scheme, as an
// oracle for lw_step / compute_v / compute_w
inline double oracle_lw_update(const Field& u, const Params& p, int j, int k) {
    const double al = p.alpha(), be = p.beta();
    return rd(u, j, k)
        - al / 2.0 * (rd(u, j + 1, k) - rd(u, j - 1, k))
        - be / 2.0 * (rd(u, j, k + 1) - rd(u, j, k - 1))
        + al * al / 2.0 * (rd(u, j + 1, k) - 2.0 * rd(u, j, k) + rd(u, j - 1, k))
        + be * be / 2.0 * (rd(u, j, k + 1) - 2.0 * rd(u, j, k) + rd(u, j, k - 1))
        + al * be / 4.0 *
              (rd(u, j + 1, k + 1) - rd(u, j + 1, k - 1) - rd(u, j - 1, k + 1) + rd(u, j - 1, k - 1))
        - (al * al + be * be) / 8.0 *
              (rd(u, j + 1, k + 1) - 2.0 * rd(u, j + 1, k) + rd(u, j + 1, k - 1)
               - 2.0 * rd(u, j, k + 1) + 4.0 * rd(u, j, k) - 2.0 * rd(u, j, k - 1)
               + rd(u, j - 1, k + 1) - 2.0 * rd(u, j - 1, k) + rd(u, j - 1, k - 1));
}

// the selfadjoint part alone (the second-order and stabilizer lines, negated)
inline double oracle_w(const Field& u, const Params& p, int j, int k) {
    const double al = p.alpha(), be = p.beta();
    return -(al * al / 2.0 * (rd(u, j + 1, k) - 2.0 * rd(u, j, k) + rd(u, j - 1, k))
             + be * be / 2.0 * (rd(u, j, k + 1) - 2.0 * rd(u, j, k) + rd(u, j, k - 1))
             + al * be / 4.0 * (rd(u, j + 1, k + 1) - rd(u, j + 1, k - 1) - rd(u, j - 1, k + 1) +
                                rd(u, j - 1, k - 1))
             - (al * al + be * be) / 8.0 *
                   (rd(u, j + 1, k + 1) - 2.0 * rd(u, j + 1, k) + rd(u, j + 1, k - 1)
                    - 2.0 * rd(u, j, k + 1) + 4.0 * rd(u, j, k) - 2.0 * rd(u, j, k - 1)
                    + rd(u, j - 1, k + 1) - 2.0 * rd(u, j - 1, k) + rd(u, j - 1, k - 1)));
}

inline double oracle_v(const Field& u, const Params& p, int j, int k) {
    const double al = p.alpha(), be = p.beta();
    return -al / 2.0 * (rd(u, j + 1, k) - rd(u, j - 1, k)) -
           be / 2.0 * (rd(u, j, k + 1) - rd(u, j, k - 1));
}

}  // namespace lw2d::test

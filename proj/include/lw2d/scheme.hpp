/// @file scheme.hpp
/// @brief The nine-point Lax-Wendroff update with stabilizer.
///
/// One step splits as u^{n+1} = u^n - w^n + v^n, where v gathers the
/// skew-selfadjoint (first-order) part and w the selfadjoint part:
///
///   v = -lambda*a*D10 u - mu*b*D20 u
///   w = -(lambda*a)^2/2 Lap1 u - (mu*b)^2/2 Lap2 u
///       - lambda*a*mu*b D10 D20 u + ((lambda*a)^2+(mu*b)^2)/8 Lap1 Lap2 u
///
/// Both are evaluated in their explicit nine-point form so only one ghost
/// ring is ever read, with a fixed per-cell summation order (line by line,
/// left to right). lw_step produces exactly u - w + v per interior cell, so
/// the decomposition is bitwise.
#pragma once

#include "lw2d/field.hpp"

namespace lw2d {

struct Params {
    double a = 0.0;       // velocity, x
    double b = 0.0;       // velocity, y
    double lambda = 0.0;  // dt/dx
    double mu = 0.0;      // dt/dy

    double alpha() const { return lambda * a; }  // Courant number, x
    double beta() const { return mu * b; }       // Courant number, y
    double courant_sq() const { return alpha() * alpha() + beta() * beta(); }

    /// (lambda a)^2 + (mu b)^2 <= 1/2
    bool cfl_satisfied() const { return courant_sq() <= 0.5; }

    /// delta in [0,1] with courant_sq == (1-delta)/2; negative means the CFL
    /// condition is violated.
    double cfl_margin() const { return 1.0 - 2.0 * courant_sq(); }
};

/// Throws std::invalid_argument unless lambda,mu > 0 and everything is finite.
void validate(const Params& p);

/// Coefficients c[q+1][p+1] of u_{j+p,k+q} in the full one-step update.
struct UpdateCoeffs {
    double c[3][3];
};
UpdateCoeffs update_coefficients(const Params& p);

/// v on the interior. Precondition: ghosts filled.
Field compute_v(const Field& u, const Params& p);
/// w on the interior. Precondition: ghosts filled.
Field compute_w(const Field& u, const Params& p);

/// One step: interior updated by u - w + v, then ghosts refilled at the new
/// time level. Sign preconditions follow the outgoing-transport setting:
/// HalfSpace needs a < 0, QuarterSpace/Rectangle need a < 0 and b < 0
/// (periodic accepts any signs). Throws BlowupError if an output cell is not
/// finite.
Field lw_step(const Field& u, const Params& p, const BoundarySpec& spec);

}  // namespace lw2d

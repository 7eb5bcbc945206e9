/// @file energy.hpp
/// @brief Interior inner products, boundary traces, and the numerical
/// verification of every energy identity and stability inequality.
///
/// Each verify_* routine computes both sides of every relation it checks
/// through separate code paths: the scheme side through the compact
/// nine-point kernels, the operator side through stencil compositions.
/// Identity residuals are stored relative to max(||u||^2, |lhs|, |rhs|);
/// inequality slacks are stored as (bound - value) / ||u||^2, so nonnegative
/// means satisfied. The zero field reports exact zeros everywhere.
///
/// Truncation caveat: the half-space and quarter-space estimates concern
/// index sets that are unbounded away from the boundary; the truncated sums
/// computed here match them exactly only when the field vanishes on the two
/// cells next to each truncated far side (the seam).
#pragma once

#include <map>
#include <span>
#include <string>

#include "lw2d/field.hpp"
#include "lw2d/scheme.hpp"

namespace lw2d {

/// Fixed-topology pairwise (tree) reduction; deterministic for a given order.
double pairwise_sum(std::span<const double> xs);

/// Sum over interior indices only. Requires matching geometry and both valid
/// boxes to cover the interior.
double inner_product(const Field& f, const Field& g);
double norm_sq(const Field& f);

double trace_x_sq(const Field& f);     // sum_k u(0,k)^2
double trace_y_sq(const Field& f);     // sum_j u(j,0)^2
double trace_lap1_sq(const Field& f);  // sum_j (Lap1 u)(j,0)^2
double trace_lap2_sq(const Field& f);  // sum_k (Lap2 u)(0,k)^2

struct EnergyReport {
    double l2_sq = 0.0;
    double trace_x = 0.0;
    double trace_y = 0.0;
    double trace_lap1 = 0.0;
    double trace_lap2 = 0.0;
    double corner_sq = 0.0;
    std::map<std::string, double> identity_residuals;  // relative
    std::map<std::string, double> inequality_slacks;   // relative to ||u||^2

    double worst_identity() const;
    double worst_slack() const;  // most negative slack (0 if all nonnegative)

    /// Flat key=value text block with stable key names, 17 significant digits.
    std::string serialize() const;
};

struct ProofDiagnostics {
    double A = 0.0;
    double B1 = 0.0;
    double B2 = 0.0;
};

struct VerifyResult {
    EnergyReport report;
    ProofDiagnostics diag;
};

/// Periodic geometry. Checks the one-step energy balance, the v/w identity,
/// the 4||w||^2 bound, the dissipative per-step bound (when the margin delta
/// lies in [0,1]), and the A/B1/B2 bounds.
VerifyResult verify_whole_space(const Field& u, const Params& p);

/// Half-space geometry, u in the extrapolation trace space, a < 0. Checks the
/// boundary-aware antisymmetry identities, the four integration-by-parts
/// relations (on u and on D2Plus u), the v/w identity with boundary terms,
/// the trace-augmented 4||w||^2 bound, and the per-step trace estimate.
VerifyResult verify_half_space(const Field& u, const Params& p);

/// Quarter-space geometry, u in the corner trace space, a < 0 and b < 0.
/// Same program with both boundaries and the corner contributions.
VerifyResult verify_quarter_space(const Field& u, const Params& p);

}  // namespace lw2d

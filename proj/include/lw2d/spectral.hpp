/// @file spectral.hpp
/// @brief Fourier amplification factor of the one-step scheme, the classical
/// cross-check on the energy estimates.
#pragma once

#include <complex>

#include "lw2d/scheme.hpp"

namespace lw2d {

/// Dimensionless dual variables to (j,k), clamped to [-pi,pi].
struct Frequency {
    double xi = 0.0;
    double eta = 0.0;
    static Frequency clamped(double xi, double eta);
};

/// Symbol of the one-step update: substitute u_{j+p,k+q} -> e^{i(p xi + q eta)}
/// into the nine-point coefficients. g(0,0) = 1; g(pi,pi) = 1 - 4(alpha^2+beta^2).
std::complex<double> amplification_factor(const Params& p, Frequency f);

/// max |g| over a uniform tensor grid with at least n_samples points per axis,
/// containing (0,0), (pi,0), (0,pi) and (pi,pi) exactly. n_samples >= 64.
double max_amplification(const Params& p, int n_samples);

}  // namespace lw2d

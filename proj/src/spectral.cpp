#include "lw2d/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lw2d {

Frequency Frequency::clamped(double xi, double eta) {
    constexpr double pi = std::numbers::pi;
    return {std::clamp(xi, -pi, pi), std::clamp(eta, -pi, pi)};
}

std::complex<double> amplification_factor(const Params& p, Frequency f) {
    validate(p);
    // Substituting u_{j+p,k+q} -> e^{i(p xi + q eta)} into the nine-point
    // update and collecting terms: each difference line turns into sines, the
    // Laplacians into -4 sin^2(./2), the stabilizer into their product. Every
    // term carries a sine factor, so g(0,0) = 1 exactly.
    const double al = p.alpha(), be = p.beta();
    const double s1 = std::sin(f.xi / 2.0), s2 = std::sin(f.eta / 2.0);
    const double sx = std::sin(f.xi), sy = std::sin(f.eta);
    const double re = 1.0 - 2.0 * al * al * s1 * s1 - 2.0 * be * be * s2 * s2 -
                      al * be * sx * sy -
                      2.0 * (al * al + be * be) * s1 * s1 * s2 * s2;
    const double im = -(al * sx + be * sy);
    return {re, im};
}

double max_amplification(const Params& p, int n_samples) {
    validate(p);
    if (n_samples < 64)
        throw std::invalid_argument("max_amplification: need at least 64 samples per axis");
    // even count so that 0 and the corners +-pi land on grid points exactly
    const int n = n_samples % 2 == 0 ? n_samples : n_samples + 1;
    constexpr double pi = std::numbers::pi;

    std::vector<double> freq(n + 1);
    for (int i = 0; i <= n; ++i) freq[i] = -pi + 2.0 * pi * i / n;
    freq[0] = -pi;
    freq[n / 2] = 0.0;
    freq[n] = pi;

    double worst = 0.0;
    for (double eta : freq)
        for (double xi : freq) worst = std::max(worst, std::abs(amplification_factor(p, {xi, eta})));
    return worst;
}

}  // namespace lw2d

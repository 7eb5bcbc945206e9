#include "lw2d/scheme.hpp"

#include <cmath>

namespace lw2d {

void validate(const Params& p) {
    if (!(p.lambda > 0.0) || !(p.mu > 0.0))
        throw std::invalid_argument("params: lambda and mu must be positive");
    if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.lambda) ||
        !std::isfinite(p.mu))
        throw std::invalid_argument("params: a, b, lambda, mu must be finite");
}

UpdateCoeffs update_coefficients(const Params& p) {
    const double al = p.alpha(), be = p.beta();
    const double s = (al * al + be * be) / 8.0;
    UpdateCoeffs u{};
    auto& c = u.c;
    c[1][1] = 1.0 - al * al - be * be - 4.0 * s;        // u_{j,k}
    c[1][2] = -al / 2.0 + al * al / 2.0 + 2.0 * s;      // u_{j+1,k}
    c[1][0] = al / 2.0 + al * al / 2.0 + 2.0 * s;       // u_{j-1,k}
    c[2][1] = -be / 2.0 + be * be / 2.0 + 2.0 * s;      // u_{j,k+1}
    c[0][1] = be / 2.0 + be * be / 2.0 + 2.0 * s;       // u_{j,k-1}
    c[2][2] = al * be / 4.0 - s;                        // u_{j+1,k+1}
    c[0][2] = -al * be / 4.0 - s;                       // u_{j+1,k-1}
    c[2][0] = -al * be / 4.0 - s;                       // u_{j-1,k+1}
    c[0][0] = al * be / 4.0 - s;                        // u_{j-1,k-1}
    return u;
}

namespace {

inline double v_at(const Field& u, int j, int k, double al, double be) {
    return -al / 2.0 * (u(j + 1, k) - u(j - 1, k)) - be / 2.0 * (u(j, k + 1) - u(j, k - 1));
}

inline double w_at(const Field& u, int j, int k, double al, double be) {
    return -al * al / 2.0 * (u(j + 1, k) - 2.0 * u(j, k) + u(j - 1, k))
         - be * be / 2.0 * (u(j, k + 1) - 2.0 * u(j, k) + u(j, k - 1))
         - al * be / 4.0 * (u(j + 1, k + 1) - u(j + 1, k - 1) - u(j - 1, k + 1) + u(j - 1, k - 1))
         + (al * al + be * be) / 8.0 *
               (u(j + 1, k + 1) - 2.0 * u(j + 1, k) + u(j + 1, k - 1)
                - 2.0 * u(j, k + 1) + 4.0 * u(j, k) - 2.0 * u(j, k - 1)
                + u(j - 1, k + 1) - 2.0 * u(j - 1, k) + u(j - 1, k - 1));
}

void require_filled(const Field& u, const char* who) {
    if (!u.valid().contains(u.full_box()))
        throw std::invalid_argument(std::string(who) + ": ghost cells are not filled");
}

}  // namespace

Field compute_v(const Field& u, const Params& p) {
    validate(p);
    require_filled(u, "compute_v");
    const double al = p.alpha(), be = p.beta();
    Field r(u.geometry());
    for (int k = 0; k < u.ny(); ++k)
        for (int j = 0; j < u.nx(); ++j) r(j, k) = v_at(u, j, k, al, be);
    return r;
}

Field compute_w(const Field& u, const Params& p) {
    validate(p);
    require_filled(u, "compute_w");
    const double al = p.alpha(), be = p.beta();
    Field r(u.geometry());
    for (int k = 0; k < u.ny(); ++k)
        for (int j = 0; j < u.nx(); ++j) r(j, k) = w_at(u, j, k, al, be);
    return r;
}

Field lw_step(const Field& u, const Params& p, const BoundarySpec& spec) {
    validate(p);
    validate(spec, u.geometry());
    require_filled(u, "lw_step");
    switch (u.geometry().kind) {
        case GeomKind::Periodic:
            break;  // no sign assumption
        case GeomKind::HalfSpace:
            if (!(p.a < 0.0))
                throw std::invalid_argument("lw_step: half-space requires outgoing a < 0");
            break;
        case GeomKind::QuarterSpace:
        case GeomKind::Rectangle:
            if (!(p.a < 0.0) || !(p.b < 0.0))
                throw std::invalid_argument(
                    "lw_step: quarter-space/rectangle requires outgoing a < 0 and b < 0");
            break;
    }

    const double al = p.alpha(), be = p.beta();
    Field r(u.geometry());
    for (int k = 0; k < u.ny(); ++k) {
        for (int j = 0; j < u.nx(); ++j) {
            const double out = u(j, k) - w_at(u, j, k, al, be) + v_at(u, j, k, al, be);
            if (!std::isfinite(out)) throw BlowupError(j, k);
            r(j, k) = out;
        }
    }
    fill_ghosts_inplace(r, spec);
    return r;
}

}  // namespace lw2d

#include <doctest.h>

#include <cmath>
#include <complex>

#include "lw2d/energy.hpp"
#include "lw2d/scheme.hpp"
#include "lw2d/spectral.hpp"
#include "lw2d/stencil.hpp"
#include "support.hpp"

using namespace lw2d;
using namespace lw2d::test;

namespace {

Params make_params(double a, double b, double courant_sq) {
    // equal split of the Courant budget between the two directions
    const double t = std::sqrt(courant_sq / 2.0);
    return {a, b, t / std::abs(a), t / std::abs(b)};
}

}  // namespace

TEST_CASE("params invariants") {
    const Params p = make_params(-2.0, -4.0, 0.25);
    CHECK(p.courant_sq() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.cfl_satisfied());
    CHECK(p.cfl_margin() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_FALSE(make_params(1.0, 1.0, 0.6).cfl_satisfied());
    CHECK_THROWS_AS(validate(Params{1.0, 1.0, -0.1, 0.1}), std::invalid_argument);
}

TEST_CASE("constant fields are fixed points") {
    const Geometry g{GeomKind::Periodic, 8, 8};
    Field c(g);
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 8; ++j) c(j, k) = -2.75;
    fill_ghosts_inplace(c, BoundarySpec::periodic());
    const Params p = make_params(1.3, -0.4, 0.3);
    const Field v = compute_v(c, p), w = compute_w(c, p);
    const Field next = lw_step(c, p, BoundarySpec::periodic());
    for (int k = 0; k < 8; ++k) {
        for (int j = 0; j < 8; ++j) {
            CHECK(v(j, k) == 0.0);
            CHECK(w(j, k) == 0.0);
            CHECK(next(j, k) == -2.75);
        }
    }
}

TEST_CASE("zero Courant numbers: v vanishes") {
    const Geometry g{GeomKind::Periodic, 8, 8};
    const Field u = fill_ghosts(random_field(g, 3), BoundarySpec::periodic());
    const Params p{0.0, 0.0, 0.5, 0.5};
    const Field v = compute_v(u, p);
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 8; ++j) CHECK(v(j, k) == 0.0);
}

TEST_CASE("unit impulse: first-order part") {
    const Geometry g{GeomKind::Periodic, 8, 8};
    Field u(g);
    u(0, 0) = 1.0;
    fill_ghosts_inplace(u, BoundarySpec::periodic());
    const Params p{0.3, 0.0, 1.0, 1.0};  // alpha = 0.3, beta = 0
    const Field v = compute_v(u, p);
    CHECK(v(1, 0) == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(v(7, 0) == doctest::Approx(-0.15).epsilon(1e-15));  // j = -1 wraps to 7
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 8; ++j)
            if (!(k == 0 && (j == 1 || j == 7))) CHECK(v(j, k) == 0.0);
}

TEST_CASE("compute_w against the literal nine-point transcription") {
    const Geometry g{GeomKind::Periodic, 8, 8};
    const Params p = make_params(1.0, -2.0, 0.4);
    for (unsigned seed = 0; seed < 20; ++seed) {
        const Field u = fill_ghosts(random_field(g, 400 + seed), BoundarySpec::periodic());
        const Field w = compute_w(u, p);
        const Field v = compute_v(u, p);
        double scale = 0.0;
        for (int k = 0; k < 8; ++k)
            for (int j = 0; j < 8; ++j) scale = std::max(scale, std::abs(u(j, k)));
        for (int k = 0; k < 8; ++k) {
            for (int j = 0; j < 8; ++j) {
                CHECK(std::abs(w(j, k) - oracle_w(u, p, j, k)) <= 1e-14 * scale);
                CHECK(std::abs(v(j, k) - oracle_v(u, p, j, k)) <= 1e-14 * scale);
            }
        }
    }
}

TEST_CASE("full-update corner coefficient") {
    // coefficient of u_{j-1,k-1} is alpha*beta/4 - (alpha^2+beta^2)/8, which is
    // -(alpha-beta)^2/8 and vanishes when alpha = beta
    SUBCASE("closed forms agree") {
        for (auto [al, be] : {std::pair{0.3, -0.2}, std::pair{0.25, 0.25}, std::pair{-0.4, 0.1}}) {
            const double c = al * be / 4.0 - (al * al + be * be) / 8.0;
            CHECK(c == doctest::Approx(-(al - be) * (al - be) / 8.0).epsilon(1e-14));
        }
    }
    SUBCASE("probed from one step of an impulse") {
        const Geometry g{GeomKind::Periodic, 8, 8};
        Field u(g);
        u(4, 4) = 1.0;
        fill_ghosts_inplace(u, BoundarySpec::periodic());
        const Params p{0.3, 0.5, 1.0, 1.0};
        const Field next = lw_step(u, p, BoundarySpec::periodic());
        const double al = p.alpha(), be = p.beta();
        CHECK(next(5, 5) == doctest::Approx(al * be / 4.0 - (al * al + be * be) / 8.0).epsilon(1e-14));
        const UpdateCoeffs c = update_coefficients(p);
        CHECK(c.c[0][0] == doctest::Approx(next(5, 5)).epsilon(1e-14));

        const Params peq{0.3, 0.3, 1.0, 1.0};
        const Field neq = lw_step(u, peq, BoundarySpec::periodic());
        CHECK(neq(5, 5) == doctest::Approx(0.0).epsilon(1e-16));
    }
}

TEST_CASE("lw_step equals the literal line-by-line update") {
    const Geometry g{GeomKind::Periodic, 12, 10};
    const Params p = make_params(-1.5, 2.5, 0.45);
    for (unsigned seed = 0; seed < 10; ++seed) {
        const Field u = fill_ghosts(random_field(g, 600 + seed), BoundarySpec::periodic());
        const Field next = lw_step(u, p, BoundarySpec::periodic());
        double scale = 0.0;
        for (int k = 0; k < g.ny; ++k)
            for (int j = 0; j < g.nx; ++j) scale = std::max(scale, std::abs(u(j, k)));
        for (int k = 0; k < g.ny; ++k)
            for (int j = 0; j < g.nx; ++j)
                CHECK(std::abs(next(j, k) - oracle_lw_update(u, p, j, k)) <= 1e-14 * scale);
    }
}

TEST_CASE("decomposition exactness: step = u - w + v bitwise") {
    for (auto [kind, spec] : {std::pair{GeomKind::Periodic, BoundarySpec::periodic()},
                              std::pair{GeomKind::QuarterSpace, BoundarySpec::quarter_space()}}) {
        const Geometry g{kind, 9, 8};
        const Params p = make_params(-1.0, -2.0, 0.375);
        const Field u = fill_ghosts(random_field(g, 55), spec);
        const Field next = lw_step(u, p, spec);
        const Field v = compute_v(u, p), w = compute_w(u, p);
        for (int k = 0; k < g.ny; ++k)
            for (int j = 0; j < g.nx; ++j) CHECK(next(j, k) == u(j, k) - w(j, k) + v(j, k));
    }
}

TEST_CASE("translation equivariance on the torus is exact") {
    const Geometry g{GeomKind::Periodic, 8, 8};
    const Params p = make_params(0.7, -1.1, 0.3);
    const Field u = fill_ghosts(random_field(g, 42), BoundarySpec::periodic());
    const int sj = 3, sk = 5;
    Field shifted(g);
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 8; ++j) shifted((j + sj) % 8, (k + sk) % 8) = u(j, k);
    fill_ghosts_inplace(shifted, BoundarySpec::periodic());

    const Field a = lw_step(shifted, p, BoundarySpec::periodic());
    const Field b = lw_step(u, p, BoundarySpec::periodic());
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 8; ++j) CHECK(a((j + sj) % 8, (k + sk) % 8) == b(j, k));
}

TEST_CASE("linearity with homogeneous boundary rules") {
    for (auto [kind, spec] : {std::pair{GeomKind::Periodic, BoundarySpec::periodic()},
                              std::pair{GeomKind::QuarterSpace, BoundarySpec::quarter_space(0.7)}}) {
        const Geometry g{kind, 8, 8};
        const Params p = make_params(-0.9, -1.7, 0.35);
        const Field u1 = fill_ghosts(random_field(g, 71), spec);
        const Field u2 = fill_ghosts(random_field(g, 72), spec);
        const double c1 = 2.5, c2 = -1.25;
        Field combo(g);
        for (int k = 0; k < 8; ++k)
            for (int j = 0; j < 8; ++j) combo(j, k) = c1 * u1(j, k) + c2 * u2(j, k);
        fill_ghosts_inplace(combo, spec);
        const Field lhs = lw_step(combo, p, spec);
        const Field s1 = lw_step(u1, p, spec), s2 = lw_step(u2, p, spec);
        double scale = 0.0;
        for (int k = 0; k < 8; ++k)
            for (int j = 0; j < 8; ++j) scale = std::max(scale, std::abs(lhs(j, k)));
        for (int k = 0; k < 8; ++k)
            for (int j = 0; j < 8; ++j)
                CHECK(std::abs(lhs(j, k) - (c1 * s1(j, k) + c2 * s2(j, k))) <= 1e-13 * scale);
    }
}

TEST_CASE("one step scales a discrete plane wave by the amplification factor") {
    const Geometry g{GeomKind::Periodic, 16, 16};
    const Params p = make_params(1.0, 0.5, 0.45);
    for (auto [mp, mq] : {std::pair{1, 0}, std::pair{3, 2}, std::pair{8, 8}, std::pair{5, 7}}) {
        const double xi = 2.0 * M_PI * mp / 16.0;
        const double eta = 2.0 * M_PI * mq / 16.0;
        Field u(g);
        for (int k = 0; k < 16; ++k)
            for (int j = 0; j < 16; ++j) u(j, k) = std::cos(xi * j + eta * k);
        fill_ghosts_inplace(u, BoundarySpec::periodic());
        const Field next = lw_step(u, p, BoundarySpec::periodic());

        const std::complex<double> gf = amplification_factor(p, Frequency::clamped(xi, eta));
        for (int k = 0; k < 16; ++k) {
            for (int j = 0; j < 16; ++j) {
                const double phase = xi * j + eta * k;
                const double expect = gf.real() * std::cos(phase) - gf.imag() * std::sin(phase);
                CHECK(std::abs(next(j, k) - expect) <= 1e-12);
            }
        }
    }
}

TEST_CASE("per-step dissipation bound on the torus") {
    const Geometry g{GeomKind::Periodic, 16, 16};
    for (double delta : {0.25, 0.5, 0.9}) {
        const Params p = make_params(1.0, -1.0, (1.0 - delta) / 2.0);
        for (unsigned seed = 0; seed < 10; ++seed) {
            const Field u = fill_ghosts(random_field(g, 800 + seed), BoundarySpec::periodic());
            const Field next = lw_step(u, p, BoundarySpec::periodic());
            const double al = p.alpha(), be = p.beta();
            const double diss =
                -delta / 4.0 *
                (al * al * norm_sq(apply_stencil(StencilOp::Lap1, u)) +
                 be * be * norm_sq(apply_stencil(StencilOp::Lap2, u)));
            CHECK(norm_sq(next) - norm_sq(u) <= diss + 1e-10 * norm_sq(u));
        }
    }
}

TEST_CASE("sign preconditions for the outgoing geometries") {
    const Params wrong_a = make_params(1.0, -1.0, 0.25);   // a > 0
    const Params wrong_b = make_params(-1.0, 1.0, 0.25);   // b > 0
    const Params ok = make_params(-1.0, -1.0, 0.25);

    const Field h = fill_ghosts(Field(Geometry{GeomKind::HalfSpace, 6, 6}),
                                BoundarySpec::half_space());
    CHECK_THROWS_AS(lw_step(h, wrong_a, BoundarySpec::half_space()), std::invalid_argument);
    CHECK_NOTHROW(lw_step(h, wrong_b, BoundarySpec::half_space()));  // only a matters here

    const Field q = fill_ghosts(Field(Geometry{GeomKind::QuarterSpace, 6, 6}),
                                BoundarySpec::quarter_space());
    CHECK_THROWS_AS(lw_step(q, wrong_a, BoundarySpec::quarter_space()), std::invalid_argument);
    CHECK_THROWS_AS(lw_step(q, wrong_b, BoundarySpec::quarter_space()), std::invalid_argument);
    CHECK_NOTHROW(lw_step(q, ok, BoundarySpec::quarter_space()));
}

TEST_CASE("unfilled ghosts are a precondition error") {
    const Geometry g{GeomKind::Rectangle, 6, 6};
    const Field u = random_field(g, 1);
    const Params p = make_params(-1.0, -1.0, 0.25);
    CHECK_THROWS_AS(compute_v(u, p), std::invalid_argument);
    CHECK_THROWS_AS(compute_w(u, p), std::invalid_argument);
    CHECK_THROWS_AS(lw_step(u, p, BoundarySpec::rectangle()), std::invalid_argument);
}

TEST_CASE("overflow surfaces as a blow-up signal naming a cell") {
    const Geometry g{GeomKind::Periodic, 6, 6};
    Field huge(g);
    for (int k = 0; k < 6; ++k)
        for (int j = 0; j < 6; ++j) huge(j, k) = (j + k) % 2 ? 1.7e308 : -1.7e308;
    fill_ghosts_inplace(huge, BoundarySpec::periodic());
    const Params p = make_params(1.0, 1.0, 0.25);
    CHECK_THROWS_AS(lw_step(huge, p, BoundarySpec::periodic()), BlowupError);
}

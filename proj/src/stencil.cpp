#include "lw2d/stencil.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "lw2d/energy.hpp"

namespace lw2d {

std::string to_string(StencilOp op) {
    switch (op) {
        case StencilOp::D1Plus: return "D1+";
        case StencilOp::D1Minus: return "D1-";
        case StencilOp::D2Plus: return "D2+";
        case StencilOp::D2Minus: return "D2-";
        case StencilOp::D1Zero: return "D10";
        case StencilOp::D2Zero: return "D20";
        case StencilOp::Lap1: return "Lap1";
        case StencilOp::Lap2: return "Lap2";
        case StencilOp::A1Plus: return "A1+";
        case StencilOp::A1Minus: return "A1-";
        case StencilOp::A2Plus: return "A2+";
        case StencilOp::A2Minus: return "A2-";
    }
    return "?";
}

namespace {

struct Tap {
    int dj, dk;
    double c;
};

// Taps are summed left to right, so every application has one fixed
// summation order per output cell.
struct OpDef {
    std::array<Tap, 3> taps;
    int ntaps;
    int lo1, hi1;  // reach in direction 1 (j): lowest/highest dj read
    int lo2, hi2;
};

OpDef def_of(StencilOp op) {
    switch (op) {
        case StencilOp::D1Plus:  return {{{{1, 0, 1.0}, {0, 0, -1.0}}}, 2, 0, 1, 0, 0};
        case StencilOp::D1Minus: return {{{{0, 0, 1.0}, {-1, 0, -1.0}}}, 2, -1, 0, 0, 0};
        case StencilOp::D2Plus:  return {{{{0, 1, 1.0}, {0, 0, -1.0}}}, 2, 0, 0, 0, 1};
        case StencilOp::D2Minus: return {{{{0, 0, 1.0}, {0, -1, -1.0}}}, 2, 0, 0, -1, 0};
        case StencilOp::D1Zero:  return {{{{1, 0, 0.5}, {-1, 0, -0.5}}}, 2, -1, 1, 0, 0};
        case StencilOp::D2Zero:  return {{{{0, 1, 0.5}, {0, -1, -0.5}}}, 2, 0, 0, -1, 1};
        case StencilOp::Lap1:    return {{{{1, 0, 1.0}, {0, 0, -2.0}, {-1, 0, 1.0}}}, 3, -1, 1, 0, 0};
        case StencilOp::Lap2:    return {{{{0, 1, 1.0}, {0, 0, -2.0}, {0, -1, 1.0}}}, 3, 0, 0, -1, 1};
        case StencilOp::A1Plus:  return {{{{1, 0, 0.5}, {0, 0, 0.5}}}, 2, 0, 1, 0, 0};
        case StencilOp::A1Minus: return {{{{0, 0, 0.5}, {-1, 0, 0.5}}}, 2, -1, 0, 0, 0};
        case StencilOp::A2Plus:  return {{{{0, 1, 0.5}, {0, 0, 0.5}}}, 2, 0, 0, 0, 1};
        case StencilOp::A2Minus: return {{{{0, 0, 0.5}, {0, -1, 0.5}}}, 2, 0, 0, -1, 0};
    }
    throw std::invalid_argument("unknown stencil op");
}

inline int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

}  // namespace

Field apply_stencil(StencilOp op, const Field& f) {
    const Geometry& g = f.geometry();
    const OpDef d = def_of(op);
    const bool px = g.periodic_x();
    const bool py = g.periodic_y();
    const ValidBox in = f.valid();

    ValidBox out = in;
    if (px) {
        out.jlo = 0;
        out.jhi = g.nx - 1;
    } else {
        out.jlo = in.jlo - d.lo1;
        out.jhi = in.jhi - d.hi1;
    }
    if (py) {
        out.klo = 0;
        out.khi = g.ny - 1;
    } else {
        out.klo = in.klo - d.lo2;
        out.khi = in.khi - d.hi2;
    }
    if (out.empty()) {
        std::ostringstream os;
        os << to_string(op) << ": stencil read outside defined cells, input box [" << in.jlo << ","
           << in.jhi << "]x[" << in.klo << "," << in.khi << "] leaves no valid output cell";
        throw std::out_of_range(os.str());
    }

    Field r(g);
    for (int k = out.klo; k <= out.khi; ++k) {
        for (int j = out.jlo; j <= out.jhi; ++j) {
            double acc = 0.0;
            for (int t = 0; t < d.ntaps; ++t) {
                const Tap& tap = d.taps[t];
                const int jj = px ? wrap(j + tap.dj, g.nx) : j + tap.dj;
                const int kk = py ? wrap(k + tap.dk, g.ny) : k + tap.dk;
                acc += tap.c * f(jj, kk);
            }
            r(j, k) = acc;
        }
    }
    r.set_valid(out);

    // re-derive the ghost ring on periodic axes so compositions never shrink
    if (px && py) {
        fill_ghosts_inplace(r, BoundarySpec::periodic());
    } else if (py) {
        for (int j = out.jlo; j <= out.jhi; ++j) {
            r(j, -1) = r(j, g.ny - 1);
            r(j, g.ny) = r(j, 0);
        }
        ValidBox full = out;
        full.klo = -1;
        full.khi = g.ny;
        r.set_valid(full);
    }
    return r;
}

Field apply_stencil(std::span<const StencilOp> ops, const Field& f) {
    if (ops.empty()) return f;
    Field r = apply_stencil(ops[0], f);
    for (size_t i = 1; i < ops.size(); ++i) r = apply_stencil(ops[i], r);
    return r;
}

Field apply_stencil(std::initializer_list<StencilOp> ops, const Field& f) {
    return apply_stencil(std::span<const StencilOp>(ops.begin(), ops.size()), f);
}

double AlgebraReport::worst() const {
    return std::max({skew_adjoint, self_adjoint, commutator, avg_decomposition});
}

AlgebraReport check_operator_algebra(const Field& u, const Field& v) {
    if (u.geometry().kind != GeomKind::Periodic)
        throw std::invalid_argument("check_operator_algebra requires periodic geometry");
    if (!(u.geometry() == v.geometry()))
        throw std::invalid_argument("check_operator_algebra: geometry mismatch");

    const double nu = norm_sq(u);
    const double nv = norm_sq(v);
    const double scale = std::max(nu, nv);

    AlgebraReport rep;
    rep.scale = scale;
    if (scale == 0.0) return rep;

    auto rel = [&](double r) { return std::abs(r) / scale; };

    for (StencilOp d0 : {StencilOp::D1Zero, StencilOp::D2Zero}) {
        const double r = inner_product(apply_stencil(d0, u), v) + inner_product(u, apply_stencil(d0, v));
        rep.skew_adjoint = std::max(rep.skew_adjoint, rel(r));
    }
    for (StencilOp lap : {StencilOp::Lap1, StencilOp::Lap2}) {
        const double r = inner_product(apply_stencil(lap, u), v) - inner_product(u, apply_stencil(lap, v));
        rep.self_adjoint = std::max(rep.self_adjoint, rel(r));
    }

    constexpr std::array<StencilOp, 12> all = {
        StencilOp::D1Plus, StencilOp::D1Minus, StencilOp::D2Plus, StencilOp::D2Minus,
        StencilOp::D1Zero, StencilOp::D2Zero,  StencilOp::Lap1,   StencilOp::Lap2,
        StencilOp::A1Plus, StencilOp::A1Minus, StencilOp::A2Plus, StencilOp::A2Minus,
    };
    for (size_t p = 0; p < all.size(); ++p) {
        for (size_t q = p + 1; q < all.size(); ++q) {
            const Field pq = apply_stencil(all[q], apply_stencil(all[p], u));
            const Field qp = apply_stencil(all[p], apply_stencil(all[q], u));
            double diff = 0.0, mag = 0.0;
            for (int k = 0; k < u.ny(); ++k) {
                for (int j = 0; j < u.nx(); ++j) {
                    diff = std::max(diff, std::abs(pq(j, k) - qp(j, k)));
                    mag = std::max({mag, std::abs(pq(j, k)), std::abs(qp(j, k)), std::abs(u(j, k))});
                }
            }
            if (mag > 0.0) rep.commutator = std::max(rep.commutator, diff / mag);
        }
    }

    // ||Ad W||^2 + 1/4 ||Dd W||^2 = ||W||^2, the telescoping decomposition used
    // to bound the B terms
    const std::pair<StencilOp, StencilOp> pairs[] = {
        {StencilOp::A1Minus, StencilOp::D1Minus},
        {StencilOp::A1Plus, StencilOp::D1Plus},
        {StencilOp::A2Minus, StencilOp::D2Minus},
        {StencilOp::A2Plus, StencilOp::D2Plus},
    };
    for (auto [avg, dif] : pairs) {
        const double r = norm_sq(apply_stencil(avg, u)) + 0.25 * norm_sq(apply_stencil(dif, u)) - nu;
        rep.avg_decomposition = std::max(rep.avg_decomposition, rel(r));
    }
    return rep;
}

AlgebraReport check_operator_algebra(const Field& u) { return check_operator_algebra(u, u); }

}  // namespace lw2d

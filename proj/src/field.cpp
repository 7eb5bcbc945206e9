#include "lw2d/field.hpp"

#include <cmath>
#include <sstream>

namespace lw2d {

std::string to_string(GeomKind kind) {
    switch (kind) {
        case GeomKind::Periodic: return "periodic";
        case GeomKind::HalfSpace: return "half_space";
        case GeomKind::QuarterSpace: return "quarter_space";
        case GeomKind::Rectangle: return "rectangle";
    }
    return "?";
}

void validate(const Geometry& g) {
    if (g.nx < 3 || g.ny < 3) {
        throw std::invalid_argument("geometry: nx and ny must be >= 3, got " +
                                    std::to_string(g.nx) + "x" + std::to_string(g.ny));
    }
}

BoundarySpec BoundarySpec::periodic() {
    BoundarySpec s;
    s.x_lo = s.x_hi = s.y_lo = s.y_hi = SideRule::periodic();
    return s;
}

BoundarySpec BoundarySpec::half_space(double inflow_value) {
    BoundarySpec s;
    s.x_lo = SideRule::extrapolation();
    s.x_hi = SideRule::dirichlet(inflow_value);  // truncation of the far side
    s.y_lo = s.y_hi = SideRule::periodic();
    return s;
}

BoundarySpec BoundarySpec::quarter_space(double delta, double inflow_value) {
    BoundarySpec s;
    s.x_lo = SideRule::extrapolation();
    s.y_lo = SideRule::extrapolation();
    s.x_hi = SideRule::dirichlet(inflow_value);
    s.y_hi = SideRule::dirichlet(inflow_value);
    s.corner_delta = delta;
    return s;
}

BoundarySpec BoundarySpec::rectangle(double delta, MixedCornerPolicy mc, double inflow_value) {
    BoundarySpec s = quarter_space(delta, inflow_value);
    s.mixed_corner = mc;
    return s;
}

void validate(const BoundarySpec& spec, const Geometry& g) {
    validate(g);
    auto bad = [](const std::string& msg) { throw std::invalid_argument("boundary spec: " + msg); };

    if ((spec.x_lo.type == SideType::Periodic) != (spec.x_hi.type == SideType::Periodic))
        bad("periodic sides must come in opposite pairs (x)");
    if ((spec.y_lo.type == SideType::Periodic) != (spec.y_hi.type == SideType::Periodic))
        bad("periodic sides must come in opposite pairs (y)");

    const bool px = spec.x_lo.type == SideType::Periodic;
    const bool py = spec.y_lo.type == SideType::Periodic;
    if (px != g.periodic_x())
        bad("x sides must be " + std::string(g.periodic_x() ? "periodic" : "non-periodic") +
            " on " + to_string(g.kind) + " geometry");
    if (py != g.periodic_y())
        bad("y sides must be " + std::string(g.periodic_y() ? "periodic" : "non-periodic") +
            " on " + to_string(g.kind) + " geometry");

    const bool has_corner = !px && !py;
    if (!has_corner && spec.corner_delta.has_value())
        bad("corner rule set on " + to_string(g.kind) + " geometry, which has no ghost corner");
    if (has_corner && spec.x_lo.type == SideType::Extrapolation &&
        spec.y_lo.type == SideType::Extrapolation && !spec.corner_delta.has_value())
        bad("two extrapolation sides meet at the outflow corner but no corner rule is set");

    for (const SideRule* r : {&spec.x_lo, &spec.x_hi, &spec.y_lo, &spec.y_hi}) {
        if (r->type == SideType::Dirichlet && !std::isfinite(r->value))
            bad("Dirichlet value must be finite");
    }
    if (spec.corner_delta && !std::isfinite(*spec.corner_delta))
        bad("corner delta must be finite");
}

Field::Field(Geometry g) : geom_(g) {
    validate(g);
    valid_ = interior_box();
    val_.assign(static_cast<size_t>(g.nx + 2) * (g.ny + 2), 0.0);
}

double Field::at(int j, int k) const {
    if (j < -1 || j > geom_.nx || k < -1 || k > geom_.ny) {
        std::ostringstream os;
        os << "field access out of range at cell (" << j << "," << k << "), full box is [-1,"
           << geom_.nx << "]x[-1," << geom_.ny << "]";
        throw std::out_of_range(os.str());
    }
    return (*this)(j, k);
}

Field make_field(const Geometry& g, const std::function<double(double, double)>& init,
                 double dx, double dy) {
    if (!(dx > 0.0) || !(dy > 0.0))
        throw std::invalid_argument("make_field: dx and dy must be positive");
    Field f(g);
    for (int k = 0; k < g.ny; ++k) {
        const double y = (k + 0.5) * dy;
        for (int j = 0; j < g.nx; ++j) {
            const double x = (j + 0.5) * dx;
            const double v = init(x, y);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "make_field: initial condition is not finite at cell (" << j << "," << k
                   << "), center (" << x << "," << y << ")";
                throw std::runtime_error(os.str());
            }
            f(j, k) = v;
        }
    }
    return f;
}

namespace {

// Ghost corner where sides sx (x ghost column) and sy (y ghost row) meet.
// (jg,kg) is the ghost corner, (ji,ki) the nearest interior cell.
void fill_corner(Field& f, const BoundarySpec& spec, const SideRule& sx, const SideRule& sy,
                 int jg, int kg, int ji, int ki, bool outflow_corner) {
    const bool ex = sx.type == SideType::Extrapolation;
    const bool ey = sy.type == SideType::Extrapolation;
    if (ex && ey) {
        const double delta = outflow_corner && spec.corner_delta ? *spec.corner_delta : 1.0;
        f(jg, kg) = delta * f(ji, ki);
        return;
    }
    if (!ex && !ey) {  // Dirichlet meets Dirichlet
        f(jg, kg) = sx.value;
        return;
    }
    // mixed corner
    if (spec.mixed_corner == MixedCornerPolicy::Dirichlet) {
        f(jg, kg) = ex ? sy.value : sx.value;
    } else {
        // copy through the extrapolation side into the adjacent (already
        // filled) ghost cell
        f(jg, kg) = ex ? f(ji, kg) : f(jg, ki);
    }
}

}  // namespace

void fill_ghosts_inplace(Field& f, const BoundarySpec& spec) {
    const Geometry& g = f.geometry();
    validate(spec, g);
    if (!f.valid().contains(f.interior_box()))
        throw std::invalid_argument("fill_ghosts: field interior is not fully defined");
    const int nx = g.nx, ny = g.ny;

    // x ghost columns over interior rows
    if (spec.x_lo.type != SideType::Periodic) {
        for (int k = 0; k < ny; ++k) {
            f(-1, k) = spec.x_lo.type == SideType::Extrapolation ? f(0, k) : spec.x_lo.value;
            f(nx, k) = spec.x_hi.type == SideType::Extrapolation ? f(nx - 1, k) : spec.x_hi.value;
        }
    } else {
        for (int k = 0; k < ny; ++k) {
            f(-1, k) = f(nx - 1, k);
            f(nx, k) = f(0, k);
        }
    }

    // y ghost rows; periodic wrap copies whole rows including the x ghosts so
    // the corners come out consistent
    if (spec.y_lo.type != SideType::Periodic) {
        for (int j = 0; j < nx; ++j) {
            f(j, -1) = spec.y_lo.type == SideType::Extrapolation ? f(j, 0) : spec.y_lo.value;
            f(j, ny) = spec.y_hi.type == SideType::Extrapolation ? f(j, ny - 1) : spec.y_hi.value;
        }
    } else {
        for (int j = -1; j <= nx; ++j) {
            f(j, -1) = f(j, ny - 1);
            f(j, ny) = f(j, 0);
        }
    }

    if (spec.x_lo.type != SideType::Periodic && spec.y_lo.type != SideType::Periodic) {
        fill_corner(f, spec, spec.x_lo, spec.y_lo, -1, -1, 0, 0, /*outflow_corner=*/true);
        fill_corner(f, spec, spec.x_hi, spec.y_lo, nx, -1, nx - 1, 0, false);
        fill_corner(f, spec, spec.x_lo, spec.y_hi, -1, ny, 0, ny - 1, false);
        fill_corner(f, spec, spec.x_hi, spec.y_hi, nx, ny, nx - 1, ny - 1, false);
    }

    f.set_valid(f.full_box());
}

Field fill_ghosts(Field f, const BoundarySpec& spec) {
    fill_ghosts_inplace(f, spec);
    return f;
}

void require_half_space_membership(const Field& f) {
    if (f.geometry().kind != GeomKind::HalfSpace)
        throw std::invalid_argument("membership check requires half-space geometry");
    if (!f.valid().contains(f.full_box()))
        throw std::invalid_argument("membership check requires filled ghosts");
    for (int k = 0; k < f.ny(); ++k) {
        if (f(-1, k) != f(0, k))
            throw std::invalid_argument("field is not in the extrapolation trace space: u(-1," +
                                        std::to_string(k) + ") != u(0," + std::to_string(k) + ")");
    }
}

void require_quarter_space_membership(const Field& f) {
    if (f.geometry().kind != GeomKind::QuarterSpace)
        throw std::invalid_argument("membership check requires quarter-space geometry");
    if (!f.valid().contains(f.full_box()))
        throw std::invalid_argument("membership check requires filled ghosts");
    for (int k = 0; k < f.ny(); ++k) {
        if (f(-1, k) != f(0, k))
            throw std::invalid_argument("field is not in the extrapolation trace space: u(-1," +
                                        std::to_string(k) + ") != u(0," + std::to_string(k) + ")");
    }
    for (int j = 0; j < f.nx(); ++j) {
        if (f(j, -1) != f(j, 0))
            throw std::invalid_argument("field is not in the extrapolation trace space: u(" +
                                        std::to_string(j) + ",-1) != u(" + std::to_string(j) + ",0)");
    }
    if (f(-1, -1) != f(0, 0))
        throw std::invalid_argument(
            "field is not in the extrapolation trace space: corner u(-1,-1) != u(0,0)");
}

BlowupError::BlowupError(int j_, int k_)
    : std::runtime_error("non-finite value at cell (" + std::to_string(j_) + "," +
                         std::to_string(k_) + ")"),
      j(j_),
      k(k_) {}

}  // namespace lw2d

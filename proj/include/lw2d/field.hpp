/// @file field.hpp
/// @brief Index sets, grid fields with a one-cell ghost ring, and boundary rules.
///
/// A Field stores interior cells (j,k) in [0,nx) x [0,ny) plus a one-cell ghost
/// ring, row-major over (k,j): value(j,k) lives at flat index
/// (k+1)*(nx+2) + (j+1). The ghost ring is wide enough for the nine-point
/// update; compositions that would need a second ring shrink their valid box
/// instead (see stencil.hpp).
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lw2d {

enum class GeomKind { Periodic, HalfSpace, QuarterSpace, Rectangle };

std::string to_string(GeomKind kind);

struct Geometry {
    GeomKind kind = GeomKind::Periodic;
    int nx = 0;  // interior cells in x
    int ny = 0;  // interior cells in y

    bool periodic_x() const { return kind == GeomKind::Periodic; }
    // The half-space is infinite in the tangential direction; we truncate it
    // to a y-periodic ring so that all k-sums telescope exactly.
    bool periodic_y() const {
        return kind == GeomKind::Periodic || kind == GeomKind::HalfSpace;
    }
    bool operator==(const Geometry&) const = default;
};

/// Throws std::invalid_argument unless nx,ny >= 3 (nine-point stencil must fit).
void validate(const Geometry& g);

enum class SideType { Extrapolation, Dirichlet, Periodic };

struct SideRule {
    SideType type = SideType::Periodic;
    double value = 0.0;  // Dirichlet only

    static SideRule extrapolation() { return {SideType::Extrapolation, 0.0}; }
    static SideRule dirichlet(double v) { return {SideType::Dirichlet, v}; }
    static SideRule periodic() { return {SideType::Periodic, 0.0}; }
};

/// What to do at a ghost corner where a Dirichlet side meets an Extrapolation
/// side (the two "mixed" corners of the rectangle experiment).
enum class MixedCornerPolicy { Dirichlet, Extrapolate };

struct BoundarySpec {
    SideRule x_lo, x_hi, y_lo, y_hi;
    // Corner rule u_{-1,-1} = delta * u_{0,0}; delta = 1 is the plain
    // extrapolation corner. Consulted only where two extrapolation outflow
    // sides meet; must be unset on Periodic/HalfSpace.
    std::optional<double> corner_delta;
    MixedCornerPolicy mixed_corner = MixedCornerPolicy::Dirichlet;

    static BoundarySpec periodic();
    static BoundarySpec half_space(double inflow_value = 0.0);
    static BoundarySpec quarter_space(double delta = 1.0, double inflow_value = 0.0);
    static BoundarySpec rectangle(double delta = 1.0,
                                  MixedCornerPolicy mc = MixedCornerPolicy::Dirichlet,
                                  double inflow_value = 0.0);
};

/// Throws std::invalid_argument on spec/geometry mismatch (periodic sides not
/// paired, corner rule on a cornerless geometry, missing corner rule, ...).
void validate(const BoundarySpec& spec, const Geometry& g);

/// Inclusive index box in full (ghost-including) coordinates.
/// The full range is [-1, nx] x [-1, ny].
struct ValidBox {
    int jlo = 0, jhi = -1, klo = 0, khi = -1;
    bool empty() const { return jlo > jhi || klo > khi; }
    bool contains(int j, int k) const {
        return j >= jlo && j <= jhi && k >= klo && k <= khi;
    }
    bool contains(const ValidBox& o) const {
        return o.empty() || (jlo <= o.jlo && o.jhi <= jhi && klo <= o.klo && o.khi <= khi);
    }
};

class Field {
public:
    explicit Field(Geometry g);

    const Geometry& geometry() const { return geom_; }
    int nx() const { return geom_.nx; }
    int ny() const { return geom_.ny; }

    /// Unchecked access, j in [-1,nx], k in [-1,ny].
    double operator()(int j, int k) const { return val_[flat(j, k)]; }
    double& operator()(int j, int k) { return val_[flat(j, k)]; }

    /// Checked access; throws std::out_of_range naming the cell.
    double at(int j, int k) const;

    /// Box of cells whose values are defined. make_field leaves only the
    /// interior valid; fill_ghosts extends it to the full ring; stencil
    /// applications shrink it on non-periodic axes.
    const ValidBox& valid() const { return valid_; }
    void set_valid(const ValidBox& b) { valid_ = b; }

    ValidBox interior_box() const { return {0, geom_.nx - 1, 0, geom_.ny - 1}; }
    ValidBox full_box() const { return {-1, geom_.nx, -1, geom_.ny}; }

    const std::vector<double>& raw() const { return val_; }

private:
    int flat(int j, int k) const { return (k + 1) * (geom_.nx + 2) + (j + 1); }

    Geometry geom_;
    ValidBox valid_;
    std::vector<double> val_;
};

/// Sample init at cell centers ((j+1/2)*dx, (k+1/2)*dy). Ghosts stay zero and
/// unset until fill_ghosts. Throws std::runtime_error naming the cell if a
/// sample is not finite.
Field make_field(const Geometry& g, const std::function<double(double, double)>& init,
                 double dx, double dy);

/// Set every ghost cell per its side rule, then the four ghost corners.
/// Interior cells are untouched. With all-Extrapolation sides and delta = 1
/// the result satisfies the membership conditions of the trace spaces used by
/// the half-space and quarter-space estimates.
Field fill_ghosts(Field f, const BoundarySpec& spec);
void fill_ghosts_inplace(Field& f, const BoundarySpec& spec);

/// Exact membership tests (u_{-1,k} == u_{0,k} etc., bitwise).
/// On violation they throw std::invalid_argument naming the offending index.
void require_half_space_membership(const Field& f);
void require_quarter_space_membership(const Field& f);

/// Raised by lw_step when an output cell is not finite. run_experiment turns
/// this into a flagged blow-up outcome carrying the step index.
struct BlowupError : std::runtime_error {
    int j, k;
    BlowupError(int j_, int k_);
};

}  // namespace lw2d

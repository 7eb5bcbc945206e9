/// @file experiment.hpp
/// @brief Experiment configuration, simulation driver, convergence study, and
/// corner-coefficient scan.
#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lw2d/energy.hpp"
#include "lw2d/field.hpp"
#include "lw2d/scheme.hpp"

namespace lw2d {

/// Thrown for malformed configuration files or inconsistent settings; the
/// message names the file, line, and key where possible.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InitKind { Gaussian, PlaneWave, Impulse, File };

struct ExperimentConfig {
    GeomKind geometry = GeomKind::Rectangle;
    double Lx = 1.0, Ly = 1.0;  // physical extents
    int nx = 0, ny = 0;
    double a = 0.0, b = 0.0;
    double cfl_target = 0.25;  // value of (lambda a)^2 + (mu b)^2
    std::optional<double> lambda, mu;  // explicit grid ratios, override cfl_target
    int n_steps = 0;

    double corner_delta = 1.0;
    MixedCornerPolicy mixed_corner = MixedCornerPolicy::Dirichlet;
    double dirichlet_value = 0.0;  // inflow sides

    InitKind init = InitKind::Gaussian;
    double ic_center_x = 0.0, ic_center_y = 0.0;  // <= 0 extent means domain center
    double ic_width = 0.0;                        // gaussian exp(-(r/width)^2); 0 means Lx/8
    int ic_mode_x = 1, ic_mode_y = 1;             // plane wave sin(2 pi m x / L) factors
    int ic_cell_j = -1, ic_cell_k = -1;           // impulse cell; -1 means center
    std::string ic_file;

    std::string output_csv;        // relative paths resolve against output_dir
    std::string output_dir = ".";  // LW2D_OUTPUT_DIR environment variable overrides
    bool diagnostics = false;      // per-step energy verification where admissible
    double blowup_threshold = 10.0;  // multiple of the initial norm

    double dx() const { return Lx / nx; }
    double dy() const { return Ly / ny; }

    /// Time step and grid ratios. With explicit lambda/mu, dt = lambda*dx and
    /// mu*dy must agree with it. Otherwise dt is derived from cfl_target so
    /// that one dt serves both directions:
    ///   dt^2 (a^2/dx^2 + b^2/dy^2) = cfl_target.
    double dt() const;
    Params params() const;

    Geometry geom() const { return {geometry, nx, ny}; }
    BoundarySpec boundary() const;
    std::function<double(double, double)> init_fn() const;

    std::string resolved_csv_path() const;

    /// Throws ConfigError on invalid or inconsistent settings.
    void validate_config() const;
};

/// Line-oriented UTF-8 "key = value" text, '#' comments, unknown keys are
/// errors naming the line.
ExperimentConfig parse_config_text(const std::string& text, const std::string& source_name);
ExperimentConfig parse_config_file(const std::string& path);

struct NormTrace {
    struct Row {
        int step;
        double time;
        double l2;       // sqrt(dx dy) * ell^2 norm of the interior
        double trace_x;  // sum_k u(0,k)^2
        double trace_y;  // sum_j u(j,0)^2
        double corner;   // u(0,0)
    };
    std::vector<Row> rows;  // truncates after a flagged blow-up step
    bool blew_up = false;
    int blowup_step = -1;
    bool nonincreasing = true;
    /// (sup_n l2^2 + time-summed trace terms) / (2 l2(0)^2) for the half- and
    /// quarter-space runs with extrapolation boundaries; NaN otherwise.
    double cumulative_bound_ratio = std::numeric_limits<double>::quiet_NaN();

    std::string to_csv() const;  // header step,time,l2,trace_x,trace_y,corner
};

struct RunResult {
    NormTrace trace;
    Field final_field;
    std::vector<VerifyResult> step_reports;  // filled when diagnostics ran
    int exit_code = 0;                       // 0 stable, 2 blow-up
};

RunResult run_experiment(const ExperimentConfig& cfg);

struct ConvergenceRow {
    int n;           // cells per axis in x
    double h;        // dx
    double error;    // L2 distance to the exact transport solution
    double order;    // log2(previous error / error); NaN on the first row
};

/// Refine refinements times from the base grid (fixed lambda, mu, fixed final
/// time) and compare against the transported initial condition. Periodic
/// geometry only.
std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& cfg, int refinements);

struct ScanRow {
    double delta;
    bool stable;         // no blow-up and nonincreasing norm throughout
    double growth_rate;  // least-squares slope of log norm, final quarter of steps
    int blowup_step;     // -1 if none
};

std::vector<ScanRow> corner_scan(const ExperimentConfig& base, std::span<const double> deltas);

}  // namespace lw2d

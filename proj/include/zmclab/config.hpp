#pragma once

#include "zmclab/ck_solver.hpp"
#include "zmclab/series.hpp"

#include <array>
#include <string>
#include <vector>

namespace zmclab {

/// One resolved run: every knob a subcommand reads, with the documented
/// defaults (order 12, box [-0.3,0.3]^2, 101x101 grid, tolerance 1e-9).
/// Command-line flags override file values; validate_config enforces the
/// invariants (order >= 4, sample counts >= 2, tolerances > 0).
struct RunConfig {
    std::string command;
    std::string input;  ///< optional series JSON consumed by export

    int order = 12;
    double x0 = -0.3, x1 = 0.3, y0 = -0.3, y1 = 0.3;
    int nx = 101, ny = 101;
    double tol = 1e-9;
    double band_tol = 1e-9;
    std::string out = "out";
    bool json = false;

    /// Initial data f(x,0), f_y(x,0) as coefficient lists (degree 0 up).
    std::vector<double> u{0.0};
    std::vector<double> v{1.0};
    /// Right-hand side phi as [j, k, c] monomial triplets; empty means 0.
    std::vector<std::array<double, 3>> phi;

    /// Coefficient-function tables: levels 4..k_max integrated on a uniform
    /// y-grid (clipped away from poles of the second coefficient function).
    int k_max = 6;
    double ode_y0 = -0.5, ode_y1 = 0.5, ode_step = 1e-3;

    /// Null-curve evolution: a named curve or three coefficient lists.
    std::string curve = "helicoid_null";
    std::vector<double> c0, c1, c2;
    double t0 = -1.0, t1 = 1.0;

    /// Light-like ruled surface: base curve and director branch.
    std::string base = "ellipse";  ///< "ellipse" or "profile"
    double ellipse_a = 2.0;
    std::vector<double> psi;  ///< profile coefficients for base = "profile"
    std::string branch = "minus";
    double eps = 0.5;

    std::string entry;  ///< gallery entry name; empty means all
};

/// Parse the TOML subset: comments (#), [section] headers (keys become
/// "section.key"), and key = value lines where a value is a quoted string,
/// a boolean, a number, a flat numeric array, or an array of numeric
/// arrays (arrays may span lines).  Unknown keys are rejected.  All
/// failures raise config_error with the offending line.
RunConfig config_from_toml(const std::string& text);

/// Same configuration surface from a JSON object; nested objects provide
/// the section level.  Failures raise config_error.
RunConfig config_from_json(const std::string& text);

/// Read a config file and dispatch on its content (JSON when the first
/// non-space byte is '{', TOML otherwise).  Raises io_error / config_error.
RunConfig load_config(const std::string& path);

/// Enforce the RunConfig invariants; raises config_error.
void validate_config(const RunConfig& cfg);

/// Build phi from the monomial triplets (zero series when empty).
PowerSeries2 phi_series(const RunConfig& cfg);

/// Build the initial curve from the u/v coefficient lists, zero-padded to
/// `order`.  Normalization failures propagate from the InitialCurve ctor.
InitialCurve initial_curve_from(const RunConfig& cfg, int order);

} // namespace zmclab

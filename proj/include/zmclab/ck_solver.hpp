#pragma once

#include <array>
#include <vector>

#include "zmclab/geometry.hpp"
#include "zmclab/series.hpp"

namespace zmclab {

/// Initial data along y = 0 for the graph evolution: u(x) = f(x,0) and
/// v(x) = f_y(x,0).  The base-point normalization forces u(0) = 0,
/// u'(0) = 0, v(0) = 1; construction validates this exactly to 1e-12.
/// The origin is a degenerate light-like point iff the curve velocity
/// (u'(0), v'(0)) vanishes, which here reduces to v'(0) = 0.
struct InitialCurve {
    PowerSeries1 u, v;
    InitialCurve(PowerSeries1 u_in, PowerSeries1 v_in);
    bool degenerate(double tol = 1e-12) const { return std::abs(v[1]) < tol; }
};

/// Initial profile psi(x) = f(x,0) for a light-like graph germ; requires
/// psi(0) = psi'(0) = 0.
struct LightlikeSeed {
    PowerSeries1 psi;
    explicit LightlikeSeed(PowerSeries1 psi_in);
};

/// Solve the graph equation A = phi B^2 as a y-power-series evolution
///
///   f_y = g,
///   g_y = -(2 f_x g g_x + (1 - g^2) f_xx - (1 - f_x^2 - g^2)^2 phi) / (1 - f_x^2),
///
/// with f(x,0) = u, f_y(x,0) = v, truncated at total degree `order`.  The
/// y-degree-(m+2) row of f is read off the y-degree-m row of the right-hand
/// side, which only involves rows already known, so the truncated
/// coefficients are the exact Taylor coefficients of the analytic solution.
/// phi is zero-padded (a polynomial / already-expanded witness) to the
/// working order.  Deterministic: coefficients are bit-identical run to run.
GraphSurface ck_solve(const InitialCurve& gamma, const PowerSeries2& phi, int order);

/// Light-like counterpart: f_y = sqrt(1 - f_x^2) with f(x,0) = psi.  The
/// result has B identically zero through the truncation order.
GraphSurface ck_solve_lightlike(const LightlikeSeed& seed, int order);

/// Read the initial data back off a series germ (rows y^0 and y^1).
InitialCurve initial_curve_of(const GraphSurface& s);

/// Trace of the light-like level set B = 0 through the origin of a
/// nondegenerate germ, by predictor-corrector continuation: Euler predictor
/// along the level direction, Newton corrector along grad B.  `points` runs
/// from the negative side to the positive side; `origin_index` locates o.
struct NullLevelTrace {
    std::vector<std::array<double, 2>> points;
    std::size_t origin_index = 0;
    double max_B_residual = 0;  ///< largest |B| left by the corrector
};

NullLevelTrace trace_null_level(const GraphSurface& s, double step = 1e-3,
                                double newton_tol = 1e-12, int steps_each_side = 300);

/// Ambient point (f(x,y), x, y) of a graph sample.
std::array<double, 3> surface_point(const GraphSurface& s, double x, double y);

} // namespace zmclab

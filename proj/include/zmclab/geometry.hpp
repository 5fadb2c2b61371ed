#pragma once

#include <functional>
#include <optional>
#include <string>

#include "zmclab/series.hpp"

namespace zmclab {

/// Value and derivatives through second order of a graph function at a point.
struct SurfaceJet {
    double f = 0, fx = 0, fy = 0, fxx = 0, fxy = 0, fyy = 0;
};

using JetFn = std::function<SurfaceJet(double, double)>;

/// Graph immersion (f(x,y), x, y) of the Lorentz 3-space with signature
/// (-,+,+), stored as a truncated series, a closed-form jet evaluator, or
/// both.  Construction enforces the base-point normalization f(0,0) = 0,
/// f_x(0,0) = 0, f_y(0,0) = 1 so the origin is a light-like point with the
/// distinguished tangent; use normalized_* to bring raw data into this form.
/// Instances are immutable; derived fields are cached at construction.
class GraphSurface {
public:
    static GraphSurface from_series(PowerSeries2 f, double norm_tol = 1e-9);
    static GraphSurface from_closed_form(JetFn jet, std::string name = "",
                                         double norm_tol = 1e-9);
    static GraphSurface from_series_and_closed_form(PowerSeries2 f, JetFn jet,
                                                    std::string name = "",
                                                    double norm_tol = 1e-9);

    bool has_series() const { return series_.has_value(); }
    bool has_closed_form() const { return static_cast<bool>(jet_); }
    const PowerSeries2& series() const;
    const std::string& name() const { return name_; }

    /// Closed form preferred; falls back to series differentiation.
    SurfaceJet jet_at(double x, double y) const;

    /// Cached series fields (series representation required):
    ///   B = 1 - fx^2 - fy^2                  (causal scalar)
    ///   A = (1-fx^2) fyy + 2 fx fy fxy + (1-fy^2) fxx
    ///   C = fxx fyy - fxy^2                   (Hessian determinant)
    const PowerSeries2& B() const;
    const PowerSeries2& A() const;
    const PowerSeries2& C() const;

private:
    GraphSurface() = default;
    void cache_fields();
    std::optional<PowerSeries2> series_;
    JetFn jet_;
    std::string name_;
    std::optional<PowerSeries2> B_, A_, C_;
};

/// Pointwise field values from the jet.
double B_at(const SurfaceJet& j);
double A_at(const SurfaceJet& j);
double C_at(const SurfaceJet& j);

/// Series fields of a raw graph series (no normalization requirement).
PowerSeries2 field_B(const PowerSeries2& f);
PowerSeries2 field_A(const PowerSeries2& f);
PowerSeries2 field_C(const PowerSeries2& f);

/// Width of the light-like band around B = 0, scaled by the gradient so the
/// tagging is homothety-stable: |B| <= band_tol * (1 + fx^2 + fy^2).
double lightlike_band(const SurfaceJet& j, double band_tol = 1e-9);

/// Mean curvature A / (2 |B|^(3/2)); throws lightlike_point inside the band.
double mean_curvature(const GraphSurface& s, double x, double y, double band_tol = 1e-9);
/// Gauss curvature -C / B^2; throws lightlike_point inside the band.
double gauss_curvature(const GraphSurface& s, double x, double y, double band_tol = 1e-9);

enum class CausalType { spacelike, timelike, lightlike };
const char* to_string(CausalType t) noexcept;

/// One classified sample.  H and K are NaN on the light-like band.
struct CausalSample {
    double x = 0, y = 0, f = 0, B = 0, A = 0, H = 0, K = 0;
    CausalType tag = CausalType::lightlike;
};

CausalSample classify_point(const GraphSurface& s, double x, double y, double band_tol = 1e-9);

enum class Degeneracy { nondegenerate, degenerate };

/// Degeneracy of the light-like origin: nondegenerate iff grad B(0,0) != 0
/// (threshold `tol`), equivalently the initial curve has nonzero velocity.
/// Throws not_lightlike if B(0,0) is outside the light-like band.
Degeneracy lightlike_degeneracy(const GraphSurface& s, double tol = 1e-12,
                                double band_tol = 1e-9);

struct ResidualReport {
    double max_abs = 0;   ///< largest |coefficient| of A - phi B^2
    int order = 0;        ///< order through which the residual was checked
    double tol = 0;
    bool pass = false;
};

/// Coefficient residual of the admissibility identity A = phi B^2 for a
/// given witness phi.  Checked through the order of A (two below the order
/// of f).  Reported, never thrown: a failing residual is a finding.
ResidualReport verify_admissible(const GraphSurface& s, const PowerSeries2& phi,
                                 double tol = 1e-9);

struct AdmissibilityWitness {
    enum class Status { ok, not_admissible, identically_lightlike };
    Status status = Status::not_admissible;
    PowerSeries2 phi{0};
    double residual = 0;  ///< max |coefficient| of A - phi B^2 after the fit
};

/// Recover phi with A = phi B^2 from the series germ by a graded
/// least-squares fit: phi is solved degree by degree against the lowest
/// nonvanishing homogeneous part of B^2, then gated on the full residual.
/// Status identically_lightlike when B^2 vanishes through the truncation
/// order (then A must vanish too and no finite witness exists).
AdmissibilityWitness extract_admissibility_witness(const GraphSurface& s, double tol = 1e-9);

/// Base-point normalization of raw graph data: vertical translation killing
/// f(0,0) and a rotation of the (x,y) plane (a rotation of the ambient
/// space about the t-axis) taking grad f(0,0) to (0,1).  Throws
/// not_normalized when |grad f(0,0)| is not 1 (no light-like base point).
JetFn normalized_closed_form(const JetFn& raw, double tol = 1e-9);
PowerSeries2 normalized_series(const PowerSeries2& raw, double tol = 1e-9);

} // namespace zmclab

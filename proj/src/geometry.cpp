#include "zmclab/geometry.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Dense>

namespace zmclab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_normalized(const SurfaceJet& o, double tol) {
    if (std::abs(o.f) > tol || std::abs(o.fx) > tol || std::abs(o.fy - 1.0) > tol)
        raise(errc::not_normalized,
              "graph base point violates f(0,0)=0, f_x(0,0)=0, f_y(0,0)=1");
}

} // namespace

GraphSurface GraphSurface::from_series(PowerSeries2 f, double norm_tol) {
    GraphSurface s;
    s.series_ = std::move(f);
    check_normalized(s.jet_at(0.0, 0.0), norm_tol);
    s.cache_fields();
    return s;
}

GraphSurface GraphSurface::from_closed_form(JetFn jet, std::string name, double norm_tol) {
    GraphSurface s;
    s.jet_ = std::move(jet);
    s.name_ = std::move(name);
    check_normalized(s.jet_at(0.0, 0.0), norm_tol);
    return s;
}

GraphSurface GraphSurface::from_series_and_closed_form(PowerSeries2 f, JetFn jet,
                                                       std::string name, double norm_tol) {
    GraphSurface s;
    s.series_ = std::move(f);
    s.jet_ = std::move(jet);
    s.name_ = std::move(name);
    check_normalized(s.jet_at(0.0, 0.0), norm_tol);
    // Both representations must share the normalized base point.
    const PowerSeries2& g = *s.series_;
    SurfaceJet sj;
    sj.f = g.eval(0.0, 0.0);
    sj.fx = g.diff(Axis::x).eval(0.0, 0.0);
    sj.fy = g.diff(Axis::y).eval(0.0, 0.0);
    check_normalized(sj, norm_tol);
    s.cache_fields();
    return s;
}

const PowerSeries2& GraphSurface::series() const {
    if (!series_) raise(errc::param_out_of_range, "surface has no series representation");
    return *series_;
}

void GraphSurface::cache_fields() {
    const PowerSeries2& f = *series_;
    B_ = field_B(f);
    A_ = field_A(f);
    C_ = field_C(f);
}

const PowerSeries2& GraphSurface::B() const {
    if (!B_) raise(errc::param_out_of_range, "surface has no series representation");
    return *B_;
}
const PowerSeries2& GraphSurface::A() const {
    if (!A_) raise(errc::param_out_of_range, "surface has no series representation");
    return *A_;
}
const PowerSeries2& GraphSurface::C() const {
    if (!C_) raise(errc::param_out_of_range, "surface has no series representation");
    return *C_;
}

SurfaceJet GraphSurface::jet_at(double x, double y) const {
    if (jet_) return jet_(x, y);
    const PowerSeries2& f = series();
    PowerSeries2 fx = f.diff(Axis::x);
    PowerSeries2 fy = f.diff(Axis::y);
    SurfaceJet j;
    j.f = f.eval(x, y);
    j.fx = fx.eval(x, y);
    j.fy = fy.eval(x, y);
    j.fxx = fx.diff(Axis::x).eval(x, y);
    j.fxy = fx.diff(Axis::y).eval(x, y);
    j.fyy = fy.diff(Axis::y).eval(x, y);
    return j;
}

double B_at(const SurfaceJet& j) { return 1.0 - j.fx * j.fx - j.fy * j.fy; }

double A_at(const SurfaceJet& j) {
    return (1.0 - j.fx * j.fx) * j.fyy + 2.0 * j.fx * j.fy * j.fxy +
           (1.0 - j.fy * j.fy) * j.fxx;
}

double C_at(const SurfaceJet& j) { return j.fxx * j.fyy - j.fxy * j.fxy; }

PowerSeries2 field_B(const PowerSeries2& f) {
    PowerSeries2 fx = f.diff(Axis::x);
    PowerSeries2 fy = f.diff(Axis::y);
    return 1.0 - fx * fx - fy * fy;
}

PowerSeries2 field_A(const PowerSeries2& f) {
    PowerSeries2 fx = f.diff(Axis::x);
    PowerSeries2 fy = f.diff(Axis::y);
    PowerSeries2 fxx = fx.diff(Axis::x);
    PowerSeries2 fxy = fx.diff(Axis::y);
    PowerSeries2 fyy = fy.diff(Axis::y);
    return (1.0 - fx * fx) * fyy + 2.0 * (fx * fy * fxy) + (1.0 - fy * fy) * fxx;
}

PowerSeries2 field_C(const PowerSeries2& f) {
    PowerSeries2 fx = f.diff(Axis::x);
    PowerSeries2 fxx = fx.diff(Axis::x);
    PowerSeries2 fxy = fx.diff(Axis::y);
    PowerSeries2 fyy = f.diff(Axis::y).diff(Axis::y);
    return fxx * fyy - fxy * fxy;
}

double lightlike_band(const SurfaceJet& j, double band_tol) {
    return band_tol * (1.0 + j.fx * j.fx + j.fy * j.fy);
}

double mean_curvature(const GraphSurface& s, double x, double y, double band_tol) {
    SurfaceJet j = s.jet_at(x, y);
    double B = B_at(j);
    if (std::abs(B) <= lightlike_band(j, band_tol))
        raise(errc::lightlike_point, "mean curvature undefined on the light-like set");
    return A_at(j) / (2.0 * std::pow(std::abs(B), 1.5));
}

double gauss_curvature(const GraphSurface& s, double x, double y, double band_tol) {
    SurfaceJet j = s.jet_at(x, y);
    double B = B_at(j);
    if (std::abs(B) <= lightlike_band(j, band_tol))
        raise(errc::lightlike_point, "Gauss curvature undefined on the light-like set");
    return -C_at(j) / (B * B);
}

const char* to_string(CausalType t) noexcept {
    switch (t) {
        case CausalType::spacelike: return "spacelike";
        case CausalType::timelike: return "timelike";
        case CausalType::lightlike: return "lightlike";
    }
    return "?";
}

CausalSample classify_point(const GraphSurface& s, double x, double y, double band_tol) {
    SurfaceJet j = s.jet_at(x, y);
    CausalSample out;
    out.x = x;
    out.y = y;
    out.f = j.f;
    out.B = B_at(j);
    out.A = A_at(j);
    if (std::abs(out.B) <= lightlike_band(j, band_tol)) {
        out.tag = CausalType::lightlike;
        out.H = kNaN;
        out.K = kNaN;
    } else {
        out.tag = out.B > 0 ? CausalType::spacelike : CausalType::timelike;
        out.H = out.A / (2.0 * std::pow(std::abs(out.B), 1.5));
        out.K = -C_at(j) / (out.B * out.B);
    }
    return out;
}

Degeneracy lightlike_degeneracy(const GraphSurface& s, double tol, double band_tol) {
    SurfaceJet j = s.jet_at(0.0, 0.0);
    if (std::abs(B_at(j)) > lightlike_band(j, band_tol))
        raise(errc::not_lightlike, "origin is not a light-like point");
    // grad B = -2 (fx fxx + fy fxy, fx fxy + fy fyy)
    double bx = -2.0 * (j.fx * j.fxx + j.fy * j.fxy);
    double by = -2.0 * (j.fx * j.fxy + j.fy * j.fyy);
    return std::hypot(bx, by) > tol ? Degeneracy::nondegenerate : Degeneracy::degenerate;
}

ResidualReport verify_admissible(const GraphSurface& s, const PowerSeries2& phi, double tol) {
    const PowerSeries2& A = s.A();
    const PowerSeries2& B = s.B();
    PowerSeries2 residual = A - phi.extended(A.order()) * (B * B).extended(A.order());
    ResidualReport r;
    r.order = residual.order();
    r.max_abs = residual.max_abs();
    r.tol = tol;
    r.pass = r.max_abs <= tol;
    return r;
}

namespace {

/// Homogeneous part of degree d as a coefficient vector (index = y-degree).
Eigen::VectorXd homogeneous_part(const PowerSeries2& s, int d) {
    Eigen::VectorXd v(d + 1);
    for (int k = 0; k <= d; ++k) v(k) = s.coeff(d - k, k);
    return v;
}

/// Matrix of multiplication by the degree-D homogeneous form `base`,
/// mapping a degree-d form to a degree-(D+d) form.
Eigen::MatrixXd homogeneous_mul_matrix(const Eigen::VectorXd& base, int d) {
    int D = static_cast<int>(base.size()) - 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(D + d + 1, d + 1);
    for (int q = 0; q <= d; ++q)
        for (int k = 0; k <= D; ++k) m(k + q, q) += base(k);
    return m;
}

} // namespace

AdmissibilityWitness extract_admissibility_witness(const GraphSurface& s, double tol) {
    const PowerSeries2& A = s.A();
    PowerSeries2 B2 = s.B() * s.B();

    double b2_scale = B2.max_abs();
    AdmissibilityWitness w;
    if (b2_scale == 0.0 || s.B().max_abs() <= tol * std::max(1.0, s.series().max_abs())) {
        // Light-like germ: B vanishes identically through the truncation.
        w.status = AdmissibilityWitness::Status::identically_lightlike;
        w.residual = A.max_abs();
        return w;
    }

    // Lowest total degree D at which B^2 is nonzero (relative threshold).
    int D = -1;
    for (int d = 0; d <= B2.order() && D < 0; ++d)
        for (int k = 0; k <= d; ++k)
            if (std::abs(B2.coeff(d - k, k)) > 1e-9 * b2_scale) {
                D = d;
                break;
            }
    if (D < 0) {
        w.status = AdmissibilityWitness::Status::identically_lightlike;
        w.residual = A.max_abs();
        return w;
    }

    int max_phi_degree = A.order() - D;
    if (max_phi_degree < 0) {
        w.status = AdmissibilityWitness::Status::not_admissible;
        w.residual = A.max_abs();
        return w;
    }

    // Graded solve: the degree-(D+d) part of A - phi B^2 couples phi_d with
    // already-known lower phi parts only, so each step is a small least
    // squares against multiplication by the leading form of B^2.
    Eigen::VectorXd lead = homogeneous_part(B2, D);
    PowerSeries2 phi(max_phi_degree);
    for (int d = 0; d <= max_phi_degree; ++d) {
        Eigen::VectorXd rhs = homogeneous_part(A, D + d);
        for (int dp = 0; dp < d; ++dp) {
            Eigen::VectorXd prev = homogeneous_part(phi, dp);
            Eigen::MatrixXd m = homogeneous_mul_matrix(homogeneous_part(B2, D + d - dp), dp);
            rhs -= m * prev;
        }
        Eigen::MatrixXd m = homogeneous_mul_matrix(lead, d);
        Eigen::VectorXd sol = m.colPivHouseholderQr().solve(rhs);
        for (int k = 0; k <= d; ++k) phi.set(d - k, k, sol(k));
    }

    PowerSeries2 residual = A - phi.extended(A.order()) * B2.extended(A.order());
    w.phi = phi;
    w.residual = residual.max_abs();
    double a_scale = std::max(1.0, A.max_abs());
    w.status = (w.residual <= tol * a_scale) ? AdmissibilityWitness::Status::ok
                                             : AdmissibilityWitness::Status::not_admissible;
    return w;
}

JetFn normalized_closed_form(const JetFn& raw, double tol) {
    SurfaceJet o = raw(0.0, 0.0);
    double g = std::hypot(o.fx, o.fy);
    if (std::abs(g - 1.0) > tol)
        raise(errc::not_normalized, "base point is not light-like: |grad f(0,0)| != 1");
    double shift = o.f;
    // Rotation taking grad f(0,0) = (sin, cos) to (0,1): precompose the
    // inverse domain rotation and rotate the reported derivatives.
    double c = o.fy / g, s = o.fx / g;
    return [raw, shift, c, s](double x, double y) {
        double xr = c * x + s * y;
        double yr = -s * x + c * y;
        SurfaceJet j = raw(xr, yr);
        SurfaceJet r;
        r.f = j.f - shift;
        r.fx = c * j.fx - s * j.fy;
        r.fy = s * j.fx + c * j.fy;
        r.fxx = c * c * j.fxx - 2.0 * c * s * j.fxy + s * s * j.fyy;
        r.fxy = c * s * (j.fxx - j.fyy) + (c * c - s * s) * j.fxy;
        r.fyy = s * s * j.fxx + 2.0 * c * s * j.fxy + c * c * j.fyy;
        return r;
    };
}

PowerSeries2 normalized_series(const PowerSeries2& raw, double tol) {
    double fx = raw.diff(Axis::x).eval(0.0, 0.0);
    double fy = raw.diff(Axis::y).eval(0.0, 0.0);
    double g = std::hypot(fx, fy);
    if (std::abs(g - 1.0) > tol)
        raise(errc::not_normalized, "base point is not light-like: |grad f(0,0)| != 1");
    double c = fy / g, s = fx / g;
    PowerSeries2 rot = raw.rotated_arguments(c, -s); // domain rotation by -theta
    return rot + (-rot.coeff(0, 0));
}

} // namespace zmclab

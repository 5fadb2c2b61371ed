#include "zmclab/curves.hpp"

#include <cmath>
#include <utility>

#include "zmclab/errors.hpp"

namespace zmclab {

namespace {

using C3 = std::array<std::complex<double>, 3>;
using R3 = std::array<double, 3>;

double lorentz(const R3& a, const R3& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double euclid2(const R3& a) { return a[0] * a[0] + a[1] * a[1] + a[2] * a[2]; }

R3 cross(const R3& a, const R3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

R3 real_part(const C3& z) { return {z[0].real(), z[1].real(), z[2].real()}; }

// Classical 4th-order centered derivative of a path.
R3 path_slope(const PathFn& g, double t, double h = 1e-4) {
    R3 out{};
    R3 p1 = g(t + h), m1 = g(t - h), p2 = g(t + 2 * h), m2 = g(t - 2 * h);
    for (int i = 0; i < 3; ++i) out[i] = (8 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12 * h);
    return out;
}

} // namespace

NullCurve::NullCurve(std::array<ComplexSeries1, 3> components, double t0, double t1,
                     bool require_nondegenerate, double tol, double nondeg_tol)
    : c_{std::move(components[0]), std::move(components[1]), std::move(components[2])},
      d_{c_[0].derivative(), c_[1].derivative(), c_[2].derivative()},
      dd_{d_[0].derivative(), d_[1].derivative(), d_[2].derivative()},
      a_(t0),
      b_(t1) {
    if (!(a_ < b_)) raise(errc::param_out_of_range, "curve interval is empty");
    const int n = 33;
    for (int i = 0; i < n; ++i) {
        double u = a_ + (b_ - a_) * i / (n - 1);
        C3 v = velocity(u);
        std::complex<double> q = -v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        double scale = 1 + std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
        if (std::abs(q) > tol * scale)
            raise(errc::not_lightlike, "curve velocity is not light-like");
        if (require_nondegenerate) {
            R3 vr = real_part(v);
            R3 ar = real_part(acceleration(u));
            if (euclid2(cross(vr, ar)) < nondeg_tol * nondeg_tol * scale)
                raise(errc::param_out_of_range,
                      "null curve is degenerate: acceleration parallel to velocity");
        }
    }
}

C3 NullCurve::point(std::complex<double> z) const {
    return {c_[0].eval(z), c_[1].eval(z), c_[2].eval(z)};
}
C3 NullCurve::velocity(std::complex<double> z) const {
    return {d_[0].eval(z), d_[1].eval(z), d_[2].eval(z)};
}
C3 NullCurve::acceleration(std::complex<double> z) const {
    return {dd_[0].eval(z), dd_[1].eval(z), dd_[2].eval(z)};
}

NullCurve helicoid_null(double t0, double t1, int order) {
    PowerSeries1 cosd(order), sind(order);
    double fact = 1;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        double c = ((k / 2) % 2 == 0 ? 1.0 : -1.0) / fact;
        if (k % 2 == 0)
            cosd.at(k) = c;
        else
            sind.at(k) = c;
    }
    std::array<ComplexSeries1, 3> sigma = {ComplexSeries1::from_real(PowerSeries1::variable(order)),
                                           ComplexSeries1::from_real(cosd),
                                           ComplexSeries1::from_real(sind)};
    return NullCurve(std::move(sigma), t0, t1);
}

SampledPatch bjorling_reconstruct(const NullCurve& sigma, const PatchGrid& grid,
                                  double imag_tol) {
    if (grid.nu < 2 || grid.nv < 2)
        raise(errc::param_out_of_range, "patch grid needs at least 2 samples per axis");
    SampledPatch out;
    out.grid = grid;
    out.samples.reserve(static_cast<std::size_t>(grid.nu) * static_cast<std::size_t>(grid.nv));
    const std::complex<double> I(0, 1);
    for (int iv = 0; iv < grid.nv; ++iv) {
        double v = grid.v0 + (grid.v1 - grid.v0) * iv / (grid.nv - 1);
        for (int iu = 0; iu < grid.nu; ++iu) {
            double u = grid.u0 + (grid.u1 - grid.u0) * iu / (grid.nu - 1);
            C3 pc, fu, fv;
            if (std::abs(v) <= 1e-12) {
                pc = sigma.point(u);
                fu = sigma.velocity(u);
                C3 acc = sigma.acceleration(u);
                for (int i = 0; i < 3; ++i) fv[i] = -0.5 * acc[i];
            } else if (v > 0) {
                double r = std::sqrt(v);
                C3 pp = sigma.point(u + I * r), pm = sigma.point(u - I * r);
                C3 vp = sigma.velocity(u + I * r), vm = sigma.velocity(u - I * r);
                for (int i = 0; i < 3; ++i) {
                    pc[i] = 0.5 * (pp[i] + pm[i]);
                    fu[i] = 0.5 * (vp[i] + vm[i]);
                    fv[i] = I * (vp[i] - vm[i]) / (4 * r);
                }
            } else {
                double r = std::sqrt(-v);
                C3 pp = sigma.point(u + r), pm = sigma.point(u - r);
                C3 vp = sigma.velocity(u + r), vm = sigma.velocity(u - r);
                for (int i = 0; i < 3; ++i) {
                    pc[i] = 0.5 * (pp[i] + pm[i]);
                    fu[i] = 0.5 * (vp[i] + vm[i]);
                    fv[i] = -(vp[i] - vm[i]) / (4 * r);
                }
            }
            PatchSample s;
            s.u = u;
            s.v = v;
            s.P = real_part(pc);
            double scale = 1 + std::sqrt(euclid2(s.P));
            if (std::abs(pc[0].imag()) > imag_tol * scale ||
                std::abs(pc[1].imag()) > imag_tol * scale ||
                std::abs(pc[2].imag()) > imag_tol * scale)
                raise(errc::imaginary_residue, "evolved sample has a nonreal component");
            R3 fur = real_part(fu), fvr = real_part(fv);
            double E = lorentz(fur, fur), F = lorentz(fur, fvr), G = lorentz(fvr, fvr);
            s.detI = E * G - F * F;
            s.immersed = euclid2(cross(fur, fvr)) >
                         1e-16 * (1 + euclid2(fur)) * (1 + euclid2(fvr));
            out.samples.push_back(s);
        }
    }
    return out;
}

SpacelikeCurve::SpacelikeCurve(PathFn point, PathFn velocity, double t0, double t1, int n_check)
    : p_(std::move(point)), v_(std::move(velocity)), a_(t0), b_(t1) {
    if (!(a_ < b_)) raise(errc::param_out_of_range, "curve interval is empty");
    if (n_check < 2) raise(errc::param_out_of_range, "need at least two validation samples");
    for (int i = 0; i < n_check; ++i) {
        double t = a_ + (b_ - a_) * i / (n_check - 1);
        R3 v = v_(t);
        if (!(lorentz(v, v) > 1e-12 * (1 + euclid2(v))))
            raise(errc::not_spacelike, "curve velocity is not space-like on the interval");
    }
}

SpacelikeCurve SpacelikeCurve::graph_profile(const PowerSeries1& psi, double x0, double x1) {
    PowerSeries1 d = psi.derivative();
    PathFn point = [psi](double x) -> R3 { return {psi.eval(x), x, 0.0}; };
    PathFn velocity = [d](double x) -> R3 { return {d.eval(x), 1.0, 0.0}; };
    return SpacelikeCurve(std::move(point), std::move(velocity), x0, x1);
}

SpacelikeCurve ellipse_curve(double a) {
    PathFn point = [a](double t) -> R3 { return {0.0, a * std::cos(t), std::sin(t)}; };
    PathFn velocity = [a](double t) -> R3 { return {0.0, -a * std::sin(t), std::cos(t)}; };
    return SpacelikeCurve(std::move(point), std::move(velocity), -3.14159265358979323846,
                          3.14159265358979323846);
}

RuledLightlike::RuledLightlike(SpacelikeCurve base, PathFn director, DirectorBranch branch,
                               double eps, int n_check, double tol)
    : base_(std::move(base)), xi_(std::move(director)), branch_(branch), eps_(eps) {
    if (!(eps_ > 0)) raise(errc::param_out_of_range, "strip half-width must be positive");
    for (int i = 0; i < n_check; ++i) {
        double t = base_.t0() + (base_.t1() - base_.t0()) * i / (n_check - 1);
        R3 xi = xi_(t);
        R3 v = base_.velocity(t);
        double scale = 1 + euclid2(xi) + euclid2(v);
        if (std::abs(lorentz(xi, xi)) > tol * scale)
            raise(errc::not_lightlike, "director is not light-like");
        if (std::abs(lorentz(xi, v)) > tol * scale)
            raise(errc::param_out_of_range, "director is not orthogonal to the base velocity");
    }
}

RuledLightlike make_director(const SpacelikeCurve& sigma, DirectorBranch branch, double eps) {
    const double sgn = branch == DirectorBranch::plus ? 1.0 : -1.0;
    PathFn xi = [sigma, sgn](double t) -> R3 {
        R3 v = sigma.velocity(t);
        double p = v[0], q = v[1], r = v[2];
        double w2 = q * q + r * r;
        if (!(w2 > 0)) raise(errc::not_spacelike, "base velocity has no spatial part");
        double w0 = std::sqrt(w2);
        double disc = w2 - p * p;
        double w = std::sqrt(disc > 0 ? disc : 0);
        return {w0, (p * q - sgn * w * r) / w0, (p * r + sgn * w * q) / w0};
    };

    // Shrink the strip until F(t,s) = sigma + s xi has a rank-2 Jacobian on
    // a sample sweep.
    for (int shrink = 0; shrink < 16; ++shrink) {
        bool ok = true;
        for (int i = 0; i < 17 && ok; ++i) {
            double t = sigma.t0() + (sigma.t1() - sigma.t0()) * i / 16;
            R3 xp = path_slope(xi, t);
            for (double s : {-eps, -eps / 2, eps / 2, eps}) {
                R3 ft = sigma.velocity(t);
                for (int k = 0; k < 3; ++k) ft[k] += s * xp[k];
                R3 fs = xi(t);
                if (euclid2(cross(ft, fs)) < 1e-16 * (1 + euclid2(ft)) * (1 + euclid2(fs))) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return RuledLightlike(sigma, xi, branch, eps);
        eps /= 2;
    }
    raise(errc::param_out_of_range, "no strip width gives an immersed ruled patch");
}

std::array<double, 3> ruled_surface_eval(const RuledLightlike& R, double t, double s) {
    if (t < R.base().t0() || t > R.base().t1())
        raise(errc::param_out_of_range, "ruling parameter outside the base interval");
    if (!(std::abs(s) < R.eps()))
        raise(errc::param_out_of_range, "ruling offset outside the strip");
    R3 p = R.base().point(t);
    R3 xi = R.director(t);
    return {p[0] + s * xi[0], p[1] + s * xi[1], p[2] + s * xi[2]};
}

SampledPatch sample_ruled(const RuledLightlike& R, const PatchGrid& grid) {
    if (grid.nu < 2 || grid.nv < 2)
        raise(errc::param_out_of_range, "patch grid needs at least 2 samples per axis");
    PathFn xi = [&R](double t) { return R.director(t); };
    SampledPatch out;
    out.grid = grid;
    out.samples.reserve(static_cast<std::size_t>(grid.nu) * static_cast<std::size_t>(grid.nv));
    for (int iv = 0; iv < grid.nv; ++iv) {
        double s = grid.v0 + (grid.v1 - grid.v0) * iv / (grid.nv - 1);
        for (int iu = 0; iu < grid.nu; ++iu) {
            double t = grid.u0 + (grid.u1 - grid.u0) * iu / (grid.nu - 1);
            PatchSample q;
            q.u = t;
            q.v = s;
            q.P = ruled_surface_eval(R, t, s);
            R3 xp = path_slope(xi, t);
            R3 ft = R.base().velocity(t);
            for (int k = 0; k < 3; ++k) ft[k] += s * xp[k];
            R3 fs = R.director(t);
            double E = lorentz(ft, ft), F = lorentz(ft, fs), G = lorentz(fs, fs);
            q.detI = E * G - F * F;
            q.immersed = euclid2(cross(ft, fs)) > 1e-16 * (1 + euclid2(ft)) * (1 + euclid2(fs));
            out.samples.push_back(q);
        }
    }
    return out;
}

namespace {

struct RuledChart {
    RuledLightlike R;

    std::array<double, 2> solve(double x, double y) const {
        PathFn xi = [this](double t) { return R.director(t); };
        double t = x, s = 0;
        double xi20 = R.director(0.0)[2];
        if (std::abs(xi20) > 0.1) s = y / xi20;
        double target = 1e-12 * (1 + std::abs(x) + std::abs(y));
        for (int it = 0; it < 50; ++it) {
            R3 p = R.base().point(t);
            R3 d = R.director(t);
            double gx = p[1] + s * d[1] - x;
            double gy = p[2] + s * d[2] - y;
            double res = std::hypot(gx, gy);
            if (res <= target) {
                if (std::abs(s) > R.eps() || t < R.base().t0() || t > R.base().t1())
                    raise(errc::not_a_graph, "point projects outside the ruled strip");
                return {t, s};
            }
            R3 v = R.base().velocity(t);
            R3 xp = path_slope(xi, t);
            double j00 = v[1] + s * xp[1], j01 = d[1];
            double j10 = v[2] + s * xp[2], j11 = d[2];
            double det = j00 * j11 - j01 * j10;
            if (std::abs(det) < 1e-14)
                raise(errc::not_a_graph, "projection Jacobian is singular");
            double dt = -(j11 * gx - j01 * gy) / det;
            double ds = -(-j10 * gx + j00 * gy) / det;
            double lam = 1.0;
            bool moved = false;
            for (int half = 0; half < 8 && !moved; ++half) {
                double tn = t + lam * dt, sn = s + lam * ds;
                R3 pn = R.base().point(tn);
                R3 dn = R.director(tn);
                if (std::hypot(pn[1] + sn * dn[1] - x, pn[2] + sn * dn[2] - y) < res) {
                    t = tn;
                    s = sn;
                    moved = true;
                }
                lam /= 2;
            }
            if (!moved) {
                t += dt;
                s += ds;
            }
        }
        raise(errc::not_a_graph, "projection inversion did not converge");
    }

    // f and its first derivatives via the inverted projection Jacobian.
    std::array<double, 3> first(double x, double y) const {
        PathFn xi = [this](double t) { return R.director(t); };
        auto ts = solve(x, y);
        double t = ts[0], s = ts[1];
        R3 v = R.base().velocity(t);
        R3 d = R.director(t);
        R3 xp = path_slope(xi, t);
        double ft0 = v[0] + s * xp[0], fs0 = d[0];
        double j00 = v[1] + s * xp[1], j01 = d[1];
        double j10 = v[2] + s * xp[2], j11 = d[2];
        double det = j00 * j11 - j01 * j10;
        double fx = (ft0 * j11 - fs0 * j10) / det;
        double fy = (-ft0 * j01 + fs0 * j00) / det;
        return {R.base().point(t)[0] + s * d[0], fx, fy};
    }
};

} // namespace

GraphSurface graph_of_ruled(const RuledLightlike& R) {
    {
        R3 v = R.base().velocity(0.0);
        R3 d = R.director(0.0);
        double det = v[1] * d[2] - d[1] * v[2];
        if (std::abs(det) < 1e-8 * (1 + euclid2(v) + euclid2(d)))
            raise(errc::not_a_graph, "projection Jacobian is singular at the origin");
    }
    RuledChart chart{R};
    JetFn jet = [chart](double x, double y) {
        const double h = 1e-3;
        auto c = chart.first(x, y);
        std::array<double, 3> px1 = chart.first(x + h, y), mx1 = chart.first(x - h, y);
        std::array<double, 3> px2 = chart.first(x + 2 * h, y), mx2 = chart.first(x - 2 * h, y);
        std::array<double, 3> py1 = chart.first(x, y + h), my1 = chart.first(x, y - h);
        std::array<double, 3> py2 = chart.first(x, y + 2 * h), my2 = chart.first(x, y - 2 * h);
        auto d4 = [h](double p1, double m1, double p2, double m2) {
            return (8 * (p1 - m1) - (p2 - m2)) / (12 * h);
        };
        SurfaceJet j;
        j.f = c[0];
        j.fx = c[1];
        j.fy = c[2];
        j.fxx = d4(px1[1], mx1[1], px2[1], mx2[1]);
        j.fyy = d4(py1[2], my1[2], py2[2], my2[2]);
        j.fxy = 0.5 * (d4(py1[1], my1[1], py2[1], my2[1]) + d4(px1[2], mx1[2], px2[2], mx2[2]));
        return j;
    };
    return GraphSurface::from_closed_form(std::move(jet), "ruled light-like graph");
}

} // namespace zmclab

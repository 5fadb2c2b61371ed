#include "zmclab/ck_solver.hpp"

#include <cmath>

namespace zmclab {

namespace {

void check_initial_exact(double got, double want, const char* what) {
    if (std::abs(got - want) > 1e-12)
        raise(errc::not_normalized, std::string(what) + " violates the base-point normalization");
}

} // namespace

InitialCurve::InitialCurve(PowerSeries1 u_in, PowerSeries1 v_in)
    : u(std::move(u_in)), v(std::move(v_in)) {
    check_initial_exact(u[0], 0.0, "u(0)");
    check_initial_exact(u[1], 0.0, "u'(0)");
    check_initial_exact(v[0], 1.0, "v(0)");
}

LightlikeSeed::LightlikeSeed(PowerSeries1 psi_in) : psi(std::move(psi_in)) {
    check_initial_exact(psi[0], 0.0, "psi(0)");
    check_initial_exact(psi[1], 0.0, "psi'(0)");
}

GraphSurface ck_solve(const InitialCurve& gamma, const PowerSeries2& phi, int order) {
    if (order < 2) raise(errc::order_too_low, "evolution needs order >= 2");

    PowerSeries2 f(order);
    f.set_y_row(0, gamma.u);
    f.set_y_row(1, gamma.v);
    PowerSeries2 phi_pad = phi.extended(order);

    for (int m = 0; m + 2 <= order; ++m) {
        // All rows of f through y-degree m+1 are final here, which pins the
        // y-degree-m row of the right-hand side exactly.
        PowerSeries2 fx = f.diff(Axis::x);
        PowerSeries2 g = f.diff(Axis::y);
        PowerSeries2 gx = g.diff(Axis::x);
        PowerSeries2 fxx = fx.diff(Axis::x);
        PowerSeries2 one_m_fx2 = 1.0 - fx * fx;
        if (std::abs(one_m_fx2.coeff(0, 0)) <= 1e-13)
            raise(errc::series_blowup, "1 - f_x^2 lost its unit term");
        PowerSeries2 B = one_m_fx2 - g * g;
        PowerSeries2 num = 2.0 * (fx * g * gx) + (1.0 - g * g) * fxx - (B * B) * phi_pad;
        PowerSeries2 rhs = -1.0 * (num * recip(one_m_fx2));

        PowerSeries1 row = rhs.y_row(m);
        PowerSeries1 next(std::max(order - (m + 2), 0));
        double denom = static_cast<double>((m + 1) * (m + 2));
        for (int j = 0; j <= next.order(); ++j) next.at(j) = row[j] / denom;
        f.set_y_row(m + 2, next);
    }
    return GraphSurface::from_series(std::move(f));
}

GraphSurface ck_solve_lightlike(const LightlikeSeed& seed, int order) {
    if (order < 2) raise(errc::order_too_low, "evolution needs order >= 2");

    PowerSeries2 f(order);
    f.set_y_row(0, seed.psi);
    for (int m = 0; m + 1 <= order; ++m) {
        PowerSeries2 fx = f.diff(Axis::x);
        PowerSeries2 rhs = sqrt(1.0 - fx * fx);
        PowerSeries1 row = rhs.y_row(m);
        PowerSeries1 next(std::max(order - (m + 1), 0));
        for (int j = 0; j <= next.order(); ++j) next.at(j) = row[j] / (m + 1);
        f.set_y_row(m + 1, next);
    }
    return GraphSurface::from_series(std::move(f));
}

InitialCurve initial_curve_of(const GraphSurface& s) {
    const PowerSeries2& f = s.series();
    return InitialCurve(f.y_row(0), f.y_row(1));
}

std::array<double, 3> surface_point(const GraphSurface& s, double x, double y) {
    return {s.jet_at(x, y).f, x, y};
}

namespace {

struct GradB {
    double B, bx, by;
};

GradB grad_B(const GraphSurface& s, double x, double y) {
    SurfaceJet j = s.jet_at(x, y);
    return {B_at(j), -2.0 * (j.fx * j.fxx + j.fy * j.fxy),
            -2.0 * (j.fx * j.fxy + j.fy * j.fyy)};
}

} // namespace

NullLevelTrace trace_null_level(const GraphSurface& s, double step, double newton_tol,
                                int steps_each_side) {
    if (lightlike_degeneracy(s) != Degeneracy::nondegenerate)
        raise(errc::param_out_of_range, "level-set trace needs a nondegenerate origin");

    auto march = [&](double dir) {
        std::vector<std::array<double, 2>> pts;
        double x = 0.0, y = 0.0, max_res = 0.0;
        for (int i = 0; i < steps_each_side; ++i) {
            GradB g = grad_B(s, x, y);
            double gn = std::hypot(g.bx, g.by);
            if (gn < 1e-10) break; // level direction lost; stop the march
            // Predictor along the level set, orientation fixed by `dir`.
            double tx = -g.by / gn, ty = g.bx / gn;
            double px = x + dir * step * tx, py = y + dir * step * ty;
            // Newton corrector along grad B.
            for (int it = 0; it < 8; ++it) {
                GradB h = grad_B(s, px, py);
                double hn2 = h.bx * h.bx + h.by * h.by;
                if (hn2 < 1e-20) break;
                double lambda = h.B / hn2;
                px -= lambda * h.bx;
                py -= lambda * h.by;
                if (std::abs(h.B) <= newton_tol) break;
            }
            double res = std::abs(grad_B(s, px, py).B);
            max_res = std::max(max_res, res);
            x = px;
            y = py;
            pts.push_back({x, y});
        }
        return std::pair(pts, max_res);
    };

    auto [neg, res_neg] = march(-1.0);
    auto [pos, res_pos] = march(+1.0);

    NullLevelTrace trace;
    trace.points.reserve(neg.size() + pos.size() + 1);
    for (auto it = neg.rbegin(); it != neg.rend(); ++it) trace.points.push_back(*it);
    trace.origin_index = trace.points.size();
    trace.points.push_back({0.0, 0.0});
    for (const auto& p : pos) trace.points.push_back(p);
    trace.max_B_residual = std::max(res_neg, res_pos);
    return trace;
}

} // namespace zmclab

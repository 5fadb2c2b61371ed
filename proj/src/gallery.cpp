#include "zmclab/gallery.hpp"

#include <cmath>

#include "zmclab/approx.hpp"
#include "zmclab/errors.hpp"

namespace zmclab {

namespace {

PowerSeries1 cos_series(int order) {
    PowerSeries1 s(order);
    double fact = 1;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) fact *= n;
        if (n % 2 == 0) s.at(n) = ((n / 2) % 2 == 0 ? 1.0 : -1.0) / fact;
    }
    return s;
}

PowerSeries1 sin_series(int order) {
    PowerSeries1 s(order);
    double fact = 1;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) fact *= n;
        if (n % 2 == 1) s.at(n) = (((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0) / fact;
    }
    return s;
}

PowerSeries1 cosh_series(int order) {
    PowerSeries1 s(order);
    double fact = 1;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) fact *= n;
        if (n % 2 == 0) s.at(n) = 1.0 / fact;
    }
    return s;
}

PowerSeries1 sinh_series(int order) {
    PowerSeries1 s(order);
    double fact = 1;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) fact *= n;
        if (n % 2 == 1) s.at(n) = 1.0 / fact;
    }
    return s;
}

// Antiderivative-of-derivative expansions of the inverse trigonometric and
// hyperbolic outer functions, all vanishing at 0.
PowerSeries1 arcsin_outer(int order) {
    return sqrt(recip(PowerSeries1::from_coeffs({1, 0, -1}).extended(order - 1)))
        .antiderivative();
}
PowerSeries1 arcsinh_outer(int order) {
    return recip(sqrt(PowerSeries1::from_coeffs({1, 0, 1}).extended(order - 1)))
        .antiderivative();
}
PowerSeries1 atan_outer(int order) {
    return recip(PowerSeries1::from_coeffs({1, 0, 1}).extended(order - 1)).antiderivative();
}
// arccosh(cosh(1) + w) - 1, as a series in w.
PowerSeries1 arccosh_shift_outer(int order) {
    double c = std::cosh(1.0), s = std::sinh(1.0);
    PowerSeries1 d = PowerSeries1::from_coeffs({s * s, 2 * c, 1}).extended(order - 1);
    return recip(sqrt(d)).antiderivative();
}

PowerSeries2 axis(const PowerSeries1& s, Axis a, int order) {
    return PowerSeries2::from_axis_series(s, a, order);
}

GalleryEntry plane_entry() {
    GalleryEntry e;
    e.name = "plane";
    e.kind = GalleryKind::graph;
    e.summary = "light-like plane f = y";
    e.printed_form = "F(x,y) = (y, x, y)";
    e.normalized_form = "f(x,y) = y";
    e.printed_gamma = "(0, 1)";
    e.printed_alpha = "0";
    e.printed_beta = "0";
    e.printed_class = "zeroI (light-like)";
    e.class_tag = "zeroI";
    e.prediction = "indeterminate";
    e.zmc = true;
    e.lightlike = true;
    e.degenerate = true;
    e.jet = [](double, double y) {
        SurfaceJet j;
        j.f = y;
        j.fy = 1;
        return j;
    };
    e.gamma = [](int order) {
        return InitialCurve(PowerSeries1(order), PowerSeries1::constant(1.0, order));
    };
    e.taylor = [](int order) {
        PowerSeries2 f(order);
        f.set(0, 1, 1.0);
        return f;
    };
    e.alpha = [](double) { return 0.0; };
    e.beta = [](double) { return 0.0; };
    return e;
}

GalleryEntry lightcone_entry() {
    GalleryEntry e;
    e.name = "lightcone";
    e.kind = GalleryKind::graph;
    e.summary = "light cone through (-1, 0, -1)";
    e.printed_form = "F(x,y) = (sqrt(x^2 + (1+y)^2) - 1, x, y)";
    e.normalized_form = e.printed_form;
    e.printed_gamma = "(sqrt(1+x^2) - 1, 1/sqrt(1+x^2))";
    e.printed_alpha = "1/(1+y)";
    e.printed_beta = "0";
    e.printed_class = "zeroII (light-like)";
    e.class_tag = "zeroII";
    e.prediction = "indeterminate";
    e.zmc = true;
    e.lightlike = true;
    e.degenerate = true;
    e.jet = [](double x, double y) {
        double Y = 1 + y, rho = std::hypot(x, Y), r3 = rho * rho * rho;
        SurfaceJet j;
        j.f = rho - 1;
        j.fx = x / rho;
        j.fy = Y / rho;
        j.fxx = Y * Y / r3;
        j.fyy = x * x / r3;
        j.fxy = -x * Y / r3;
        return j;
    };
    e.gamma = [](int order) {
        PowerSeries1 w = sqrt(PowerSeries1::from_coeffs({1, 0, 1}).extended(order));
        return InitialCurve(w - PowerSeries1::constant(1.0, order), recip(w));
    };
    e.taylor = [](int order) {
        PowerSeries2 vx = PowerSeries2::variable(Axis::x, order);
        PowerSeries2 vy = PowerSeries2::variable(Axis::y, order);
        PowerSeries1 outer = sqrt(PowerSeries1::from_coeffs({1, 1}).extended(order));
        return compose(outer, vx * vx + 2.0 * vy + vy * vy) + (-1.0);
    };
    e.alpha = [](double y) { return 1 / (1 + y); };
    e.alpha_poles = {-1.0};
    e.beta = [](double) { return 0.0; };
    return e;
}

GalleryEntry parabola_entry() {
    GalleryEntry e;
    e.name = "parabola";
    e.kind = GalleryKind::graph;
    e.summary = "parabolic cylinder f = y + x^2/2";
    e.printed_form = "F(x,y) = (y + x^2/2, x, y)";
    e.normalized_form = e.printed_form;
    e.printed_gamma = "(x^2/2, 0)";
    e.printed_alpha = "1";
    e.printed_beta = "0";
    e.printed_class = "minusIII";
    e.class_tag = "minusIII";
    e.prediction = "no_spacelike_part";
    e.note = "printed initial data has second slot 0; the normalization f_y(x,0) = 1 "
             "forces (x^2/2, 1), which is what the checks use";
    e.zmc = true;
    e.lightlike = false;
    e.degenerate = true;
    e.jet = [](double x, double y) {
        SurfaceJet j;
        j.f = y + x * x / 2;
        j.fx = x;
        j.fy = 1;
        j.fxx = 1;
        return j;
    };
    e.gamma = [](int order) {
        PowerSeries1 u(order);
        u.at(2) = 0.5;
        return InitialCurve(u, PowerSeries1::constant(1.0, order));
    };
    e.taylor = [](int order) {
        PowerSeries2 f(order);
        f.set(0, 1, 1.0);
        f.set(2, 0, 0.5);
        return f;
    };
    e.alpha = [](double) { return 1.0; };
    e.beta = [](double) { return 0.0; };
    return e;
}

GalleryEntry scherk_spacelike_entry() {
    GalleryEntry e;
    e.name = "scherk_spacelike";
    e.kind = GalleryKind::graph;
    e.summary = "space-like Scherk surface";
    e.printed_form = "F(x,y) = (-arccos(cos x sin y) - pi/2, x, y)";
    e.normalized_form = "f(x,y) = arcsin(cos x sin y)";
    e.printed_gamma = "(-pi, cos x)";
    e.printed_alpha = "-tan y";
    e.printed_beta = "0";
    e.printed_class = "plus";
    e.class_tag = "plus";
    e.prediction = "no_timelike_part";
    e.note = "the printed form equals arcsin(cos x sin y) - pi, so its base value is "
             "-pi, not 0; checks use the vertical translate, whose initial data is "
             "(0, cos x)";
    e.zmc = true;
    e.lightlike = false;
    e.degenerate = true;
    e.jet = [](double x, double y) {
        double g = std::cos(x) * std::sin(y), w = std::sqrt(1 - g * g), w3 = w * w * w;
        double gx = -std::sin(x) * std::sin(y), gy = std::cos(x) * std::cos(y);
        SurfaceJet j;
        j.f = std::asin(g);
        j.fx = gx / w;
        j.fy = gy / w;
        j.fxx = -g / w + g * gx * gx / w3;
        j.fxy = -std::sin(x) * std::cos(y) / w + g * gx * gy / w3;
        j.fyy = -g / w + g * gy * gy / w3;
        return j;
    };
    e.gamma = [](int order) {
        return InitialCurve(PowerSeries1(order), cos_series(order));
    };
    e.taylor = [](int order) {
        PowerSeries2 g =
            axis(cos_series(order), Axis::x, order) * axis(sin_series(order), Axis::y, order);
        return compose(arcsin_outer(order), g);
    };
    e.alpha = [](double y) { return -std::tan(y); };
    e.beta = [](double) { return 0.0; };
    return e;
}

GalleryEntry scherk_timelike1_entry() {
    GalleryEntry e;
    e.name = "scherk_timelike1";
    e.kind = GalleryKind::graph;
    e.summary = "time-like Scherk surface, first printed kind";
    e.printed_form = "F(x,y) = (arccosh(cosh x cosh(y+1)) - 1, x, y)";
    e.normalized_form = e.printed_form;
    e.printed_gamma = "(arccosh(cosh x cosh 1) - 1, sinh 1 cosh x / sqrt((cosh 1 cosh x)^2 - 1))";
    e.printed_alpha = "coth y";
    e.printed_beta = "0";
    e.printed_class = "minusI";
    e.class_tag = "minusII";
    e.prediction = "no_spacelike_part";
    e.note = "recomputed second approximation is coth(y+1) (the printed coth y misses "
             "the surface's y-shift), and coth belongs to the minusII family, not "
             "minusI; the printed tags of the two time-like entries are exchanged";
    e.zmc = true;
    e.lightlike = false;
    e.degenerate = true;
    e.jet = [](double x, double y) {
        double g = std::cosh(x) * std::cosh(y + 1);
        double w = std::sqrt(g * g - 1), w3 = w * w * w;
        double gx = std::sinh(x) * std::cosh(y + 1), gy = std::cosh(x) * std::sinh(y + 1);
        SurfaceJet j;
        j.f = std::acosh(g) - 1;
        j.fx = gx / w;
        j.fy = gy / w;
        j.fxx = g / w - g * gx * gx / w3;
        j.fxy = std::sinh(x) * std::sinh(y + 1) / w - g * gx * gy / w3;
        j.fyy = g / w - g * gy * gy / w3;
        return j;
    };
    e.gamma = [](int order) {
        double c = std::cosh(1.0), s = std::sinh(1.0);
        PowerSeries1 ch = cosh_series(order);
        PowerSeries1 u =
            compose(arccosh_shift_outer(order), c * (ch - PowerSeries1::constant(1.0, order)));
        PowerSeries1 d = (c * ch) * (c * ch) - PowerSeries1::constant(1.0, order);
        return InitialCurve(u, s * (ch * recip(sqrt(d))));
    };
    e.taylor = [](int order) {
        double c = std::cosh(1.0), s = std::sinh(1.0);
        PowerSeries2 chx = axis(cosh_series(order), Axis::x, order);
        PowerSeries2 chy1 =
            axis(c * cosh_series(order) + s * sinh_series(order), Axis::y, order);
        return compose(arccosh_shift_outer(order), chx * chy1 + (-c));
    };
    e.alpha = [](double y) { return 1 / std::tanh(y + 1); };
    e.alpha_poles = {-1.0};
    e.beta = [](double) { return 0.0; };
    return e;
}

GalleryEntry scherk_timelike2_entry() {
    GalleryEntry e;
    e.name = "scherk_timelike2";
    e.kind = GalleryKind::graph;
    e.summary = "time-like Scherk surface, second printed kind";
    e.printed_form = "F(x,y) = (arcsinh(cosh x sinh y), x, y)";
    e.normalized_form = e.printed_form;
    e.printed_gamma = "(0, cosh x)";
    e.printed_alpha = "tanh y";
    e.printed_beta = "0";
    e.printed_class = "minusII";
    e.class_tag = "minusI";
    e.prediction = "no_spacelike_part";
    e.note = "tanh y is the minusI profile, so the printed minusII tag belongs to the "
             "other time-like entry";
    e.zmc = true;
    e.lightlike = false;
    e.degenerate = true;
    e.jet = [](double x, double y) {
        double g = std::cosh(x) * std::sinh(y);
        double w = std::sqrt(1 + g * g), w3 = w * w * w;
        double gx = std::sinh(x) * std::sinh(y), gy = std::cosh(x) * std::cosh(y);
        SurfaceJet j;
        j.f = std::asinh(g);
        j.fx = gx / w;
        j.fy = gy / w;
        j.fxx = g / w - g * gx * gx / w3;
        j.fxy = std::sinh(x) * std::cosh(y) / w - g * gx * gy / w3;
        j.fyy = g / w - g * gy * gy / w3;
        return j;
    };
    e.gamma = [](int order) {
        return InitialCurve(PowerSeries1(order), cosh_series(order));
    };
    e.taylor = [](int order) {
        PowerSeries2 g = axis(cosh_series(order), Axis::x, order) *
                         axis(sinh_series(order), Axis::y, order);
        return compose(arcsinh_outer(order), g);
    };
    e.alpha = [](double y) { return std::tanh(y); };
    e.beta = [](double) { return 0.0; };
    return e;
}

GalleryEntry ojm_entry() {
    GalleryEntry e;
    e.name = "ojm";
    e.kind = GalleryKind::series_germ;
    e.summary = "series germ from initial data (0, 1 + 3x^3), causal type change";
    e.printed_form = "gamma(x) = (0, 1 + 3 c x^3), c = 1";
    e.normalized_form = "series evolution of the same data";
    e.printed_gamma = "(0, 1 + 3x^3)";
    e.printed_class = "zeroI";
    e.class_tag = "zeroI";
    e.prediction = "changes_type";
    e.zmc = true;
    e.lightlike = false;
    e.degenerate = true;
    e.gamma = [](int order) {
        PowerSeries1 v = PowerSeries1::constant(1.0, order);
        v.at(3) = 3.0;
        return InitialCurve(PowerSeries1(order), v);
    };
    e.germ = [](int order) {
        PowerSeries1 v = PowerSeries1::constant(1.0, order);
        v.at(3) = 3.0;
        return ck_solve(InitialCurve(PowerSeries1(order), v), PowerSeries2(0), order);
    };
    return e;
}

GalleryEntry helicoid_entry() {
    GalleryEntry e;
    e.name = "helicoid";
    e.kind = GalleryKind::bjorling;
    e.summary = "helicoid evolved from its null curve (u, cos u, sin u)";
    e.printed_form = "F(u,v) = (sigma(u + i sqrt(v)) + sigma(u - i sqrt(v))) / 2";
    e.normalized_form = "f(x,y) = atan2(y, 1+x) near the light-like point (0, 1, 0)";
    e.printed_class = "nondegenerate light-like point";
    e.class_tag = "nondegenerate";
    e.note = "the graph germ recenters the ambient point (0,1,0) at the origin";
    e.zmc = true;
    e.lightlike = false;
    e.degenerate = false;
    e.jet = [](double x, double y) {
        double X = 1 + x, D = X * X + y * y;
        SurfaceJet j;
        j.f = std::atan2(y, X);
        j.fx = -y / D;
        j.fy = X / D;
        j.fxx = 2 * X * y / (D * D);
        j.fyy = -2 * X * y / (D * D);
        j.fxy = (y * y - X * X) / (D * D);
        return j;
    };
    e.gamma = [](int order) {
        return InitialCurve(PowerSeries1(order),
                            recip(PowerSeries1::from_coeffs({1, 1}).extended(order)));
    };
    e.taylor = [](int order) {
        PowerSeries2 w = PowerSeries2::variable(Axis::y, order) *
                         axis(recip(PowerSeries1::from_coeffs({1, 1}).extended(order)),
                              Axis::x, order);
        return compose(atan_outer(order), w);
    };
    e.null_curve = []() { return helicoid_null(); };
    e.patch_rep = [](double u, double v) -> std::array<double, 3> {
        double c = v >= 0 ? std::cosh(std::sqrt(v)) : std::cos(std::sqrt(-v));
        return {u, std::cos(u) * c, std::sin(u) * c};
    };
    return e;
}

GalleryEntry ellipse_entry() {
    GalleryEntry e;
    e.name = "ellipse";
    e.kind = GalleryKind::ruled;
    e.summary = "light-like ruled surface over the ellipse (0, 2 cos t, sin t)";
    e.printed_form = "F(t,s) = sigma(t) + s xi(t), xi = (sqrt(4 sin^2 t + cos^2 t), cos t, 2 sin t)";
    e.normalized_form = "not a graph over the xy-plane near t = 0";
    e.printed_class = "light-like ruled surface";
    e.class_tag = "lightlike_ruled";
    e.zmc = false;
    e.lightlike = true;
    e.degenerate = false;
    e.ruled = []() { return make_director(ellipse_curve(2.0), DirectorBranch::minus, 0.5); };
    e.director_rep = [](double t) -> std::array<double, 3> {
        double st = std::sin(t), ct = std::cos(t);
        return {std::sqrt(4 * st * st + ct * ct), ct, 2 * st};
    };
    return e;
}

} // namespace

const std::vector<GalleryEntry>& gallery_list() {
    static const std::vector<GalleryEntry> entries = {
        plane_entry(),          lightcone_entry(),       parabola_entry(),
        scherk_spacelike_entry(), scherk_timelike1_entry(), scherk_timelike2_entry(),
        ojm_entry(),            helicoid_entry(),        ellipse_entry()};
    return entries;
}

const GalleryEntry& gallery_entry(std::string_view name) {
    for (const GalleryEntry& e : gallery_list())
        if (e.name == name) return e;
    raise(errc::param_out_of_range, "no gallery entry named '" + std::string(name) + "'");
}

namespace {

void add_check(RegressionReport& r, const std::string& name, double value, double tol,
               bool pass, std::string detail = "") {
    r.checks.push_back({name, pass, value, tol, std::move(detail)});
    if (!pass) r.pass = false;
}

void add_residual(RegressionReport& r, const std::string& name, double value, double tol,
                  std::string detail = "") {
    add_check(r, name, value, tol, value <= tol, std::move(detail));
}

// Odd part of f_xx(., y) at four step multiples, combined to cancel the
// h^2, h^4 and h^6 error terms.
double beta_from_jet(const JetFn& jet, double y, double h = 0.02) {
    static const double lam[] = {8.0 / 5, -4.0 / 5, 8.0 / 35, -1.0 / 35};
    double b = 0;
    for (int j = 1; j <= 4; ++j) {
        double o = (jet(j * h, y).fxx - jet(-j * h, y).fxx) / 2;
        b += lam[j - 1] * o / (2 * j * h);
    }
    return b;
}

GraphSurface build_germ(const GalleryEntry& e, int order) {
    if (e.germ) return e.germ(order);
    if (e.taylor && e.jet)
        return GraphSurface::from_series_and_closed_form(e.taylor(order), e.jet, e.name);
    if (e.taylor) return GraphSurface::from_series(e.taylor(order));
    raise(errc::param_out_of_range, "entry '" + e.name + "' has no germ representation");
}

} // namespace

RegressionReport regression_check(const GalleryEntry& e, int grid_n, int order) {
    if (grid_n < 2) raise(errc::param_out_of_range, "regression grid needs at least 2 samples");
    if (order < 4) raise(errc::order_too_low, "regression checks need order >= 4");
    RegressionReport report;
    report.entry = e.name;

    if (e.jet && e.zmc) {
        double worst = 0;
        for (int i = 0; i < grid_n; ++i) {
            double x = -e.box + 2 * e.box * i / (grid_n - 1);
            for (int j = 0; j < grid_n; ++j) {
                double y = -e.box + 2 * e.box * j / (grid_n - 1);
                worst = std::max(worst, std::abs(A_at(e.jet(x, y))));
            }
        }
        add_residual(report, "zmc_residual", worst, 1e-9);
    }
    if (e.jet && e.lightlike) {
        double worst = 0;
        for (int i = 0; i < grid_n; ++i) {
            double x = -e.box + 2 * e.box * i / (grid_n - 1);
            for (int j = 0; j < grid_n; ++j) {
                double y = -e.box + 2 * e.box * j / (grid_n - 1);
                worst = std::max(worst, std::abs(B_at(e.jet(x, y))));
            }
        }
        add_residual(report, "lightlike_residual", worst, 1e-9);
    }

    if (e.jet && e.alpha) {
        double worst_a = 0, worst_b = 0;
        for (int i = 0; i <= 60; ++i) {
            double y = -0.3 + 0.6 * i / 60;
            bool near_pole = false;
            for (double p : e.alpha_poles)
                if (std::abs(y - p) < 0.05) near_pole = true;
            if (near_pole) continue;
            worst_a = std::max(worst_a, std::abs(e.jet(0, y).fxx - e.alpha(y)));
            if (e.beta) worst_b = std::max(worst_b, std::abs(beta_from_jet(e.jet, y) - e.beta(y)));
        }
        add_residual(report, "alpha_recomputed", worst_a, 1e-8);
        if (e.beta) add_residual(report, "beta_recomputed", worst_b, 1e-8);
    }

    if (e.gamma) {
        InitialCurve gamma = e.gamma(order);
        if (e.degenerate) {
            ApproxProfile prof = profile_of(gamma);
            bool fam = to_string(prof.alpha_family) == e.class_tag;
            add_check(report, "family_match", fam ? 0 : 1, 0, fam,
                      std::string("profile family ") + to_string(prof.alpha_family));
            const char* pred = to_string(predict_causal_type(prof));
            bool ok = e.prediction.empty() || pred == e.prediction;
            add_check(report, "prediction_match", ok ? 0 : 1, 0, ok, pred);
        } else {
            GraphSurface g = build_germ(e, order);
            bool nondeg = lightlike_degeneracy(g) == Degeneracy::nondegenerate;
            add_check(report, "degeneracy", nondeg ? 0 : 1, 0, nondeg,
                      "expected a nondegenerate light-like origin");
        }

        GraphSurface evolved = ck_solve(gamma, PowerSeries2(0), order);
        InitialCurve back = initial_curve_of(evolved);
        // The y^1 row of a total-degree-`order` germ keeps x-degrees
        // through order-1 only.
        double rt = 0;
        for (int k = 0; k <= order; ++k) rt = std::max(rt, std::abs(back.u[k] - gamma.u[k]));
        for (int k = 0; k < order; ++k) rt = std::max(rt, std::abs(back.v[k] - gamma.v[k]));
        add_residual(report, "initial_data_round_trip", rt, 1e-12);

        if (e.taylor) {
            PowerSeries2 diff = evolved.series() - e.taylor(order);
            add_residual(report, "evolution_matches_taylor", diff.max_abs(), 1e-10);
        }
    }

    if (e.zmc && (e.taylor || e.germ)) {
        AdmissibilityWitness w = extract_admissibility_witness(build_germ(e, order));
        if (e.lightlike) {
            bool ok = w.status == AdmissibilityWitness::Status::identically_lightlike;
            add_check(report, "witness", ok ? 0 : 1, 0, ok,
                      "expected an identically light-like germ");
        } else {
            bool ok = w.status == AdmissibilityWitness::Status::ok;
            add_check(report, "witness", ok ? w.phi.max_abs() : 1.0, 1e-8,
                      ok && w.phi.max_abs() <= 1e-8, "witness must be the zero function");
        }
    }

    if (e.null_curve && e.patch_rep) {
        SampledPatch patch = bjorling_reconstruct(e.null_curve(), PatchGrid{-1, 1, 21, -0.5, 0.5, 21});
        double worst = 0;
        for (const PatchSample& s : patch.samples) {
            auto want = e.patch_rep(s.u, s.v);
            for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(s.P[i] - want[i]));
        }
        add_residual(report, "evolution_matches_curve_rep", worst, 1e-9);
    }

    if (e.ruled) {
        RuledLightlike R = e.ruled();
        PatchGrid grid{R.base().t0(), R.base().t1(), 33, -0.9 * R.eps(), 0.9 * R.eps(), 9};
        SampledPatch patch = sample_ruled(R, grid);
        double worst = 0;
        for (const PatchSample& s : patch.samples) worst = std::max(worst, std::abs(s.detI));
        add_residual(report, "ruled_degenerate", worst, 1e-10);
        if (e.director_rep) {
            double dworst = 0;
            for (int i = 0; i <= 32; ++i) {
                double t = R.base().t0() + (R.base().t1() - R.base().t0()) * i / 32;
                auto want = e.director_rep(t);
                auto have = R.director(t);
                for (int k = 0; k < 3; ++k)
                    dworst = std::max(dworst, std::abs(have[k] - want[k]));
            }
            add_residual(report, "director_match", dworst, 1e-10);
        }
    }

    return report;
}

} // namespace zmclab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "zmclab/ck_solver.hpp"
#include "zmclab/curves.hpp"
#include "zmclab/errors.hpp"
#include "zmclab/geometry.hpp"

using namespace zmclab;

namespace {

PowerSeries1 cosine_series(int order) {
    PowerSeries1 s(order);
    double fact = 1;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) fact *= n;
        if (n % 2 == 0) s.at(n) = ((n / 2) % 2 == 0 ? 1.0 : -1.0) / fact;
    }
    return s;
}

PowerSeries1 sine_series(int order) {
    PowerSeries1 s(order);
    double fact = 1;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) fact *= n;
        if (n % 2 == 1) s.at(n) = (((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0) / fact;
    }
    return s;
}

errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return errc::param_out_of_range;
}

// The base curve (sqrt(1+t^2)-1, t, 0) whose plus-branch ruling sweeps a
// light cone.
SpacelikeCurve cone_base(double t0 = -0.75, double t1 = 0.75) {
    PathFn point = [](double t) -> std::array<double, 3> {
        return {std::sqrt(1 + t * t) - 1, t, 0.0};
    };
    PathFn velocity = [](double t) -> std::array<double, 3> {
        return {t / std::sqrt(1 + t * t), 1.0, 0.0};
    };
    return SpacelikeCurve(std::move(point), std::move(velocity), t0, t1);
}

// Graph germ of the cone above: f = sqrt(x^2 + (1+y)^2) - 1.
SurfaceJet cone_jet(double x, double y) {
    double Y = 1 + y, rho = std::hypot(x, Y), r3 = rho * rho * rho;
    SurfaceJet j;
    j.f = rho - 1;
    j.fx = x / rho;
    j.fy = Y / rho;
    j.fxx = Y * Y / r3;
    j.fyy = x * x / r3;
    j.fxy = -x * Y / r3;
    return j;
}

} // namespace

TEST_CASE("null curve construction validates the light-like velocity") {
    NullCurve hel = helicoid_null();
    auto p = hel.point(0.0);
    auto v = hel.velocity(0.0);
    CHECK(std::abs(p[0]) < 1e-15);
    CHECK(std::abs(p[1] - 1.0) < 1e-15);
    CHECK(std::abs(p[2]) < 1e-15);
    CHECK(std::abs(v[0] - 1.0) < 1e-15);
    CHECK(std::abs(v[1]) < 1e-15);
    CHECK(std::abs(v[2] - 1.0) < 1e-15);

    // (u, cos u, 2 sin u) has velocity square 3 cos^2 u.
    std::array<ComplexSeries1, 3> bad = {
        ComplexSeries1::from_real(PowerSeries1::variable(30)),
        ComplexSeries1::from_real(cosine_series(30)),
        ComplexSeries1::from_real(2.0 * sine_series(30))};
    CHECK(code_of([&] { NullCurve(bad, -1, 1); }) == errc::not_lightlike);

    // A light-like line is degenerate: acceleration parallel to velocity.
    std::array<ComplexSeries1, 3> line = {
        ComplexSeries1::from_real(PowerSeries1::variable(4)),
        ComplexSeries1::from_real(PowerSeries1::variable(4)),
        ComplexSeries1::from_real(PowerSeries1(4))};
    CHECK(code_of([&] { NullCurve(line, -1, 1); }) == errc::param_out_of_range);
    CHECK_NOTHROW(NullCurve(line, -1, 1, false));

    CHECK(code_of([&] { NullCurve(line, 1, 1, false); }) == errc::param_out_of_range);
    CHECK(code_of([&] { helicoid_null().point(15.0); }) == errc::radius_exceeded);
}

TEST_CASE("evolving the helical null curve reproduces the helicoid") {
    NullCurve hel = helicoid_null();
    PatchGrid grid;
    SampledPatch patch = bjorling_reconstruct(hel, grid);
    REQUIRE(static_cast<int>(patch.samples.size()) == grid.nu * grid.nv);

    for (int iv = 0; iv < grid.nv; ++iv) {
        for (int iu = 0; iu < grid.nu; ++iu) {
            const PatchSample& s = patch.at(iu, iv);
            double c = s.v >= 0 ? std::cosh(std::sqrt(s.v)) : std::cos(std::sqrt(-s.v));
            CHECK(std::abs(s.P[0] - s.u) < 1e-10);
            CHECK(std::abs(s.P[1] - std::cos(s.u) * c) < 1e-10);
            CHECK(std::abs(s.P[2] - std::sin(s.u) * c) < 1e-10);
            CHECK(s.immersed);
            // Space-like sheet above the curve, time-like sheet below.
            if (s.v >= 0.05) CHECK(s.detI > 1e-3);
            if (s.v <= -0.05) CHECK(s.detI < -1e-3);
            if (std::abs(s.v) < 1e-15) CHECK(std::abs(s.detI) < 1e-12);
        }
    }

    // The middle row restricts to the curve itself.
    const PatchSample& mid = patch.at(10, 10);
    CHECK(mid.u == 0.0);
    CHECK(mid.v == 0.0);
    CHECK(std::abs(mid.P[1] - 1.0) < 1e-12);

    CHECK(code_of([&] { bjorling_reconstruct(hel, PatchGrid{0, 1, 1, 0, 1, 5}); }) ==
          errc::param_out_of_range);
}

TEST_CASE("a nonreal component of the evolved patch is rejected") {
    std::array<ComplexSeries1, 3> shifted = {
        ComplexSeries1({{0.0, 0.1}, {1.0, 0.0}}, 0.0, 100.0),
        ComplexSeries1::from_real(cosine_series(30)),
        ComplexSeries1::from_real(sine_series(30))};
    NullCurve sigma(shifted, -1, 1);
    CHECK(code_of([&] { bjorling_reconstruct(sigma, PatchGrid{}); }) ==
          errc::imaginary_residue);
}

TEST_CASE("space-like curve construction rejects non-space-like velocities") {
    PathFn p = [](double t) -> std::array<double, 3> { return {2 * t, t, 0.0}; };
    PathFn v = [](double) -> std::array<double, 3> { return {2.0, 1.0, 0.0}; };
    CHECK(code_of([&] { SpacelikeCurve(p, v, -1, 1); }) == errc::not_spacelike);
    CHECK(code_of([&] { SpacelikeCurve(p, v, 1, -1); }) == errc::param_out_of_range);
    CHECK_NOTHROW(ellipse_curve());
    CHECK_NOTHROW(cone_base());
}

TEST_CASE("the two director branches over the ellipse") {
    SpacelikeCurve ell = ellipse_curve(2.0);
    RuledLightlike minus = make_director(ell, DirectorBranch::minus, 0.5);
    RuledLightlike plus = make_director(ell, DirectorBranch::plus, 0.5);

    for (double t : {0.0, 0.3, 1.0, -2.0, 2.9}) {
        double w0 = std::sqrt(4 * std::sin(t) * std::sin(t) + std::cos(t) * std::cos(t));
        auto xm = minus.director(t);
        CHECK(std::abs(xm[0] - w0) < 1e-12);
        CHECK(std::abs(xm[1] - std::cos(t)) < 1e-12);
        CHECK(std::abs(xm[2] - 2 * std::sin(t)) < 1e-12);
        // The other branch flips the spatial part.
        auto xp = plus.director(t);
        CHECK(std::abs(xp[0] - w0) < 1e-12);
        CHECK(std::abs(xp[1] + std::cos(t)) < 1e-12);
        CHECK(std::abs(xp[2] + 2 * std::sin(t)) < 1e-12);
    }

    // At (t,s) = (0,-1/2) the strip fails to be immersed (F_t vanishes), so
    // the requested half-width 1/2 is cut once.
    CHECK(minus.eps() == doctest::Approx(0.25));

    // A ruling must be light-like and orthogonal to the base velocity.
    PathFn not_null = [&ell](double t) { return ell.velocity(t); };
    CHECK(code_of([&] { RuledLightlike(ell, not_null, DirectorBranch::plus, 0.5); }) ==
          errc::not_lightlike);
    PathFn skew = [](double) -> std::array<double, 3> { return {1.0, 0.0, 1.0}; };
    CHECK(code_of([&] { RuledLightlike(ell, skew, DirectorBranch::plus, 0.5); }) ==
          errc::param_out_of_range);
}

TEST_CASE("branch choice fixes the sign of the graph-profile ruling") {
    PowerSeries1 psi = PowerSeries1::from_coeffs({0, 0, 0, 1});
    SpacelikeCurve base = SpacelikeCurve::graph_profile(psi, -0.5, 0.5);
    RuledLightlike rp = make_director(base, DirectorBranch::plus, 0.5);
    RuledLightlike rm = make_director(base, DirectorBranch::minus, 0.5);
    for (double t : {-0.4, 0.0, 0.3}) {
        double dpsi = 3 * t * t, w = std::sqrt(1 - dpsi * dpsi);
        auto xp = rp.director(t);
        auto xm = rm.director(t);
        CHECK(std::abs(xp[0] - 1.0) < 1e-12);
        CHECK(std::abs(xp[1] - dpsi) < 1e-12);
        CHECK(std::abs(xp[2] - w) < 1e-12);
        CHECK(std::abs(xm[0] - 1.0) < 1e-12);
        CHECK(std::abs(xm[1] - dpsi) < 1e-12);
        CHECK(std::abs(xm[2] + w) < 1e-12);
        // Light-like and orthogonal, directly.
        auto v = base.velocity(t);
        CHECK(std::abs(-xp[0] * xp[0] + xp[1] * xp[1] + xp[2] * xp[2]) < 1e-12);
        CHECK(std::abs(-xp[0] * v[0] + xp[1] * v[1] + xp[2] * v[2]) < 1e-12);
    }
}

TEST_CASE("the ruled strip over the cone profile lies on a light cone") {
    RuledLightlike R = make_director(cone_base(), DirectorBranch::plus, 0.5);
    CHECK(R.eps() == doctest::Approx(0.5));

    auto P = ruled_surface_eval(R, 0.2, 0.1);
    auto sig = R.base().point(0.2);
    auto xi = R.director(0.2);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(P[i] - (sig[i] + 0.1 * xi[i])) < 1e-15);

    CHECK(code_of([&] { ruled_surface_eval(R, 0.8, 0.1); }) == errc::param_out_of_range);
    CHECK(code_of([&] { ruled_surface_eval(R, 0.2, 0.5); }) == errc::param_out_of_range);

    PatchGrid grid{-0.7, 0.7, 15, -0.45, 0.45, 11};
    SampledPatch patch = sample_ruled(R, grid);
    for (const PatchSample& s : patch.samples) {
        // x^2 + (1+y)^2 = (t-coordinate + 1)^2: every ruling point sits on
        // the cone through (-1, 0, -1).
        double lhs = s.P[1] * s.P[1] + (1 + s.P[2]) * (1 + s.P[2]);
        double rhs = (s.P[0] + 1) * (s.P[0] + 1);
        CHECK(std::abs(lhs - rhs) < 1e-12);
        // A light-like ruling has a degenerate first fundamental form.
        CHECK(std::abs(s.detI) < 1e-10);
        CHECK(s.immersed);
    }
    CHECK(code_of([&] { sample_ruled(R, PatchGrid{0, 1, 5, 0, 1, 1}); }) ==
          errc::param_out_of_range);
}

TEST_CASE("the cone strip re-expressed as a graph matches its closed form") {
    RuledLightlike R = make_director(cone_base(), DirectorBranch::plus, 0.5);
    GraphSurface g = graph_of_ruled(R);

    const double pts[][2] = {{0.0, 0.0}, {0.15, -0.1}, {-0.2, 0.2}, {0.1, 0.05}, {-0.12, -0.18}};
    for (auto& q : pts) {
        SurfaceJet have = g.jet_at(q[0], q[1]);
        SurfaceJet want = cone_jet(q[0], q[1]);
        CAPTURE(q[0]);
        CAPTURE(q[1]);
        CHECK(std::abs(have.f - want.f) < 1e-9);
        CHECK(std::abs(have.fx - want.fx) < 1e-8);
        CHECK(std::abs(have.fy - want.fy) < 1e-8);
        CHECK(std::abs(have.fxx - want.fxx) < 1e-6);
        CHECK(std::abs(have.fyy - want.fyy) < 1e-6);
        CHECK(std::abs(have.fxy - want.fxy) < 1e-6);
        // The cone graph is light-like everywhere, and B needs first
        // derivatives only, so it is clean to solver tolerance.
        CHECK(std::abs(B_at(have)) < 1e-10);
    }
}

TEST_CASE("ruled graph over a cubic profile matches the light-like evolution") {
    PowerSeries1 psi = PowerSeries1::from_coeffs({0, 0, 0, 1});
    SpacelikeCurve base = SpacelikeCurve::graph_profile(psi, -0.5, 0.5);
    RuledLightlike R = make_director(base, DirectorBranch::plus, 0.5);
    GraphSurface ruled = graph_of_ruled(R);
    GraphSurface series = ck_solve_lightlike(LightlikeSeed(psi), 26);

    for (double x = -0.1; x <= 0.105; x += 0.05) {
        for (double y = -0.1; y <= 0.105; y += 0.05) {
            SurfaceJet a = ruled.jet_at(x, y);
            SurfaceJet b = series.jet_at(x, y);
            CAPTURE(x);
            CAPTURE(y);
            CHECK(std::abs(a.f - b.f) < 1e-8);
            CHECK(std::abs(a.fx - b.fx) < 1e-7);
            CHECK(std::abs(a.fy - b.fy) < 1e-7);
        }
    }
}

TEST_CASE("the flat ruling gives the plane f = y, and only one branch is normalized") {
    PowerSeries1 flat = PowerSeries1::from_coeffs({0.0});
    SpacelikeCurve base = SpacelikeCurve::graph_profile(flat, -1, 1);
    GraphSurface g = graph_of_ruled(make_director(base, DirectorBranch::plus, 0.5));
    SurfaceJet j = g.jet_at(0.1, 0.2);
    CHECK(std::abs(j.f - 0.2) < 1e-12);
    CHECK(std::abs(j.fx) < 1e-12);
    CHECK(std::abs(j.fy - 1.0) < 1e-12);
    CHECK(std::abs(j.fxx) < 1e-9);
    CHECK(std::abs(B_at(j)) < 1e-12);
    CHECK(classify_point(g, 0.1, 0.2).tag == CausalType::lightlike);

    // The minus branch gives f = -y, which violates f_y(0,0) = 1.
    SpacelikeCurve base2 = SpacelikeCurve::graph_profile(flat, -1, 1);
    CHECK(code_of([&] { graph_of_ruled(make_director(base2, DirectorBranch::minus, 0.5)); }) ==
          errc::not_normalized);
}

TEST_CASE("the ellipse ruling is not a graph near the origin") {
    RuledLightlike R = make_director(ellipse_curve(2.0), DirectorBranch::minus, 0.5);
    CHECK(code_of([&] { graph_of_ruled(R); }) == errc::not_a_graph);
}

TEST_CASE("helicoid germ: zero mean curvature form and causal type flip") {
    // Local graph of the helicoid near (t,x,y) = (0,1,0): f = atan2(y, 1+x).
    JetFn jet = [](double x, double y) {
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
    GraphSurface g = GraphSurface::from_closed_form(jet, "helicoid graph germ");

    for (double x = -0.4; x <= 0.45; x += 0.2) {
        for (double y = -0.4; y <= 0.45; y += 0.2) {
            CHECK(std::abs(A_at(g.jet_at(x, y))) < 1e-12);
        }
    }

    // B = 1 - 1/((1+x)^2 + y^2) changes sign across the unit circle
    // (1+x)^2 + y^2 = 1, which is the projected null curve.
    CHECK(classify_point(g, 0.2, 0.1).tag == CausalType::spacelike);
    CHECK(classify_point(g, -0.5, 0.2).tag == CausalType::timelike);
    CHECK(classify_point(g, 0.0, 0.0).tag == CausalType::lightlike);
    CHECK(std::abs(mean_curvature(g, 0.2, 0.1)) < 1e-12);
    {
        double D = 1.2 * 1.2 + 0.1 * 0.1, B = 1 - 1 / D;
        CHECK(gauss_curvature(g, 0.2, 0.1) == doctest::Approx(1 / (D * D * B * B)));
    }

    // The evolved patch agrees with this graph: t = atan2(y, x) on samples,
    // and the sheet signs match the circle side.
    SampledPatch patch = bjorling_reconstruct(helicoid_null(), PatchGrid{});
    for (const PatchSample& s : patch.samples) {
        CHECK(std::abs(s.P[0] - std::atan2(s.P[2], s.P[1])) < 1e-10);
        double circ = s.P[1] * s.P[1] + s.P[2] * s.P[2] - 1;
        if (std::abs(s.v) >= 0.05) CHECK(circ * s.detI > 0);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "zmclab/series.hpp"

using namespace zmclab;

namespace {

PowerSeries2 random_series2(std::mt19937& rng, int order, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    PowerSeries2 s(order);
    for (int d = 0; d <= order; ++d)
        for (int k = 0; k <= d; ++k) s.set(d - k, k, dist(rng));
    return s;
}

double max_abs_diff(const PowerSeries2& a, const PowerSeries2& b) {
    int n = std::min(a.order(), b.order());
    double m = 0.0;
    for (int d = 0; d <= n; ++d)
        for (int k = 0; k <= d; ++k) m = std::max(m, std::abs(a.coeff(d - k, k) - b.coeff(d - k, k)));
    return m;
}

} // namespace

TEST_CASE("square of y + x^2/2") {
    // (y + x^2/2)^2 = y^2 + x^2 y + x^4/4, worked by hand.
    PowerSeries2 f(4);
    f.set(0, 1, 1.0);
    f.set(2, 0, 0.5);
    PowerSeries2 g = f * f;
    CHECK(g.coeff(0, 2) == 1.0);
    CHECK(g.coeff(2, 1) == 1.0);
    CHECK(g.coeff(4, 0) == 0.25);
    CHECK(g.coeff(0, 0) == 0.0);
    CHECK(g.coeff(1, 1) == 0.0);
    CHECK(g.coeff(3, 0) == 0.0);
}

TEST_CASE("reciprocal of 1 - x^2 is the geometric series") {
    PowerSeries2 a = 1.0 - PowerSeries2::variable(Axis::x, 8) * PowerSeries2::variable(Axis::x, 8);
    PowerSeries2 r = recip(a);
    for (int j = 0; j <= 8; j += 2) CHECK(r.coeff(j, 0) == doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 1; j <= 7; j += 2) CHECK(std::abs(r.coeff(j, 0)) < 1e-14);
    CHECK(std::abs(r.coeff(2, 3)) < 1e-14);
}

TEST_CASE("sqrt of 1 - x^2, binomial coefficients") {
    // sqrt(1 - u) = 1 - u/2 - u^2/8 - u^3/16 - 5 u^4/128 with u = x^2.
    PowerSeries2 x = PowerSeries2::variable(Axis::x, 8);
    PowerSeries2 s = sqrt(1.0 - x * x);
    CHECK(s.coeff(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.coeff(2, 0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(s.coeff(4, 0) == doctest::Approx(-1.0 / 8).epsilon(1e-13));
    CHECK(s.coeff(6, 0) == doctest::Approx(-1.0 / 16).epsilon(1e-13));
    CHECK(s.coeff(8, 0) == doctest::Approx(-5.0 / 128).epsilon(1e-12));
}

TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(20240811u);
    for (int trial = 0; trial < 20; ++trial) {
        PowerSeries2 a = random_series2(rng, 10);
        PowerSeries2 b = random_series2(rng, 10);
        PowerSeries2 c = random_series2(rng, 10);
        double scale = std::max({1.0, a.max_abs(), b.max_abs(), c.max_abs()});
        double tol = 1e-12 * scale * scale * scale;
        CHECK(max_abs_diff(a * b, b * a) <= tol);
        CHECK(max_abs_diff((a * b) * c, a * (b * c)) <= tol);
        CHECK(max_abs_diff(a * (b + c), a * b + a * c) <= tol);
        CHECK(max_abs_diff(a + b, b + a) == 0.0);
    }
}

TEST_CASE("reciprocal and square-root round trips") {
    std::mt19937 rng(77u);
    for (int trial = 0; trial < 10; ++trial) {
        PowerSeries2 a = random_series2(rng, 12, -0.5, 0.5);
        a = a + 2.0; // keep the unit term away from zero
        PowerSeries2 one = a * recip(a);
        CHECK(std::abs(one.coeff(0, 0) - 1.0) < 1e-10);
        one.set(0, 0, 0.0);
        CHECK(one.max_abs() < 1e-10);

        PowerSeries2 s = sqrt(a);
        CHECK(max_abs_diff(s * s, a) < 1e-10);
    }
}

TEST_CASE("reciprocal rejects a vanishing constant term") {
    PowerSeries2 a = PowerSeries2::variable(Axis::y, 4);
    CHECK_THROWS_AS((void)recip(a), Error);
    try {
        (void)recip(a);
    } catch (const Error& e) {
        CHECK(e.code() == errc::zero_constant_term);
    }
    PowerSeries2 b = PowerSeries2::constant(-1.0, 4);
    CHECK_THROWS_AS((void)sqrt(b), Error);
}

TEST_CASE("mixed partials commute exactly") {
    // Coefficients quantized to dyadics so the small-integer derivative
    // factors multiply without rounding and the identity is bit exact.
    std::mt19937 rng(5u);
    PowerSeries2 a = random_series2(rng, 11);
    for (int d = 0; d <= a.order(); ++d)
        for (int k = 0; k <= d; ++k)
            a.set(d - k, k, std::round(a.coeff(d - k, k) * (1 << 26)) / (1 << 26));
    PowerSeries2 dxy = a.diff(Axis::x).diff(Axis::y);
    PowerSeries2 dyx = a.diff(Axis::y).diff(Axis::x);
    CHECK(max_abs_diff(dxy, dyx) == 0.0);
}

TEST_CASE("division by a power of x undoes multiplication exactly") {
    std::mt19937 rng(99u);
    for (int k = 0; k <= 3; ++k) {
        PowerSeries2 h = random_series2(rng, 8);
        PowerSeries2 xpow = PowerSeries2::constant(1.0, 8 + k + 1);
        for (int i = 0; i < k + 1; ++i) xpow = xpow * PowerSeries2::variable(Axis::x, 8 + k + 1);
        PowerSeries2 g = xpow * h.extended(8 + k + 1);
        PowerSeries2 back = divide_by_x_power(g, k);
        CHECK(max_abs_diff(back, h) == 0.0);
    }
}

TEST_CASE("division failure reports the obstruction") {
    PowerSeries2 g = PowerSeries2::variable(Axis::y, 6); // y has x-degree 0
    CHECK_THROWS_AS((void)divide_by_x_power(g, 1), Error);
    try {
        (void)divide_by_x_power(g, 1);
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_divisible);
    }
}

TEST_CASE("second-difference quotient isolates the quadratic jet") {
    // g = f - f(0,y) - x f_x(0,y) for f = y + x^2/2 + x^3/6, then g/x^2
    // starts at the half-Hessian coefficient.
    PowerSeries2 f(6);
    f.set(0, 1, 1.0);
    f.set(2, 0, 0.5);
    f.set(3, 0, 1.0 / 6);
    PowerSeries2 g = f;
    for (int k = 0; k <= 6; ++k) g.set(0, k, 0.0);
    for (int k = 0; k + 1 <= 6; ++k) g.set(1, k, 0.0);
    PowerSeries2 h = divide_by_x_power(g, 1);
    CHECK(h.coeff(0, 0) == 0.5);
    CHECK(h.coeff(1, 0) == 1.0 / 6);
}

TEST_CASE("JSON round trip is bit exact") {
    std::mt19937 rng(123u);
    PowerSeries2 a = random_series2(rng, 9);
    a.set(3, 2, 0.1);             // not representable exactly in binary
    a.set(1, 0, 1.0 / 3.0);
    PowerSeries2 b = series2_from_json(to_json(a));
    REQUIRE(b.order() == a.order());
    CHECK(max_abs_diff(a, b) == 0.0);

    PowerSeries1 u{0.0, 0.1, 2.0 / 3.0};
    PowerSeries1 v = series1_from_json(to_json(u));
    REQUIRE(v.order() == u.order());
    for (int k = 0; k <= u.order(); ++k) CHECK(u[k] == v[k]);
}

TEST_CASE("univariate composition, evaluation, calculus") {
    // arctan(t) = t - t^3/3 + t^5/5 - ... composed with t = 2x.
    PowerSeries1 arctan(7);
    arctan.at(1) = 1.0;
    arctan.at(3) = -1.0 / 3;
    arctan.at(5) = 1.0 / 5;
    arctan.at(7) = -1.0 / 7;
    PowerSeries1 inner = 2.0 * PowerSeries1::variable(7);
    PowerSeries1 f = compose(arctan, inner);
    CHECK(f[1] == doctest::Approx(2.0));
    CHECK(f[3] == doctest::Approx(-8.0 / 3));
    CHECK(f[5] == doctest::Approx(32.0 / 5));

    PowerSeries1 d = f.derivative();
    CHECK(d[0] == doctest::Approx(2.0));
    CHECK(d[2] == doctest::Approx(-8.0));
    PowerSeries1 back = d.antiderivative();
    for (int k = 1; k <= 7; ++k) CHECK(back[k] == doctest::Approx(f[k]).epsilon(1e-15));

    // truncation tail of the degree-7 arctan series at t = 0.2 is ~6e-8
    CHECK(f.eval(0.1) == doctest::Approx(std::atan(0.2)).epsilon(1e-6));
}

TEST_CASE("bivariate evaluation matches the closed form") {
    // exp-like polynomial: sum_{d<=10} (x+y)^d / d!
    PowerSeries2 acc = PowerSeries2::constant(1.0, 10);
    PowerSeries2 xy = PowerSeries2::variable(Axis::x, 10) + PowerSeries2::variable(Axis::y, 10);
    PowerSeries2 pw = PowerSeries2::constant(1.0, 10);
    double fact = 1.0;
    for (int d = 1; d <= 10; ++d) {
        pw = pw * xy;
        fact *= d;
        acc = acc + (1.0 / fact) * pw;
    }
    CHECK(acc.eval(0.1, 0.2) == doctest::Approx(std::exp(0.3)).epsilon(1e-12));
}

TEST_CASE("argument scaling and rotation") {
    std::mt19937 rng(2024u);
    PowerSeries2 a = random_series2(rng, 8);
    PowerSeries2 s = a.scaled_arguments(0.5);
    CHECK(s.eval(0.2, 0.3) == doctest::Approx(a.eval(0.1, 0.15)).epsilon(1e-13));

    double th = 0.7;
    PowerSeries2 r = a.rotated_arguments(std::cos(th), std::sin(th));
    double x = 0.11, y = -0.07;
    double xr = std::cos(th) * x - std::sin(th) * y;
    double yr = std::sin(th) * x + std::cos(th) * y;
    CHECK(r.eval(x, y) == doctest::Approx(a.eval(xr, yr)).epsilon(1e-12));
}

TEST_CASE("complex series eval, radius guard, derivative") {
    // cos t about 0, order 20.
    PowerSeries1 c(20);
    double sign = 1.0, fact = 1.0;
    for (int k = 0; k <= 20; k += 2) {
        c.at(k) = sign / fact;
        sign = -sign;
        fact *= (k + 1) * (k + 2);
    }
    ComplexSeries1 cc = ComplexSeries1::from_real(c);
    CHECK(cc.radius() > 1.5); // entire function, generous ratio estimate
    std::complex<double> z(0.3, 0.4);
    std::complex<double> want = std::cos(z);
    CHECK(std::abs(cc.eval(z) - want) < 1e-12);
    ComplexSeries1 dc = cc.derivative();
    CHECK(std::abs(dc.eval(z) + std::sin(z)) < 1e-10);

    ComplexSeries1 tiny({1.0, 1.0}, 0.0, 0.5);
    CHECK_THROWS_AS((void)tiny.eval(std::complex<double>(1.0, 0.0)), Error);
}

#include "zmclab/approx.hpp"

#include <algorithm>
#include <cmath>

#include "zmclab/errors.hpp"

namespace zmclab {

const char* to_string(AlphaFamily f) noexcept {
    switch (f) {
        case AlphaFamily::plus: return "plus";
        case AlphaFamily::zeroI: return "zeroI";
        case AlphaFamily::zeroII: return "zeroII";
        case AlphaFamily::minusI: return "minusI";
        case AlphaFamily::minusII: return "minusII";
        case AlphaFamily::minusIII: return "minusIII";
    }
    return "?";
}

double family_mu(AlphaFamily f) noexcept {
    switch (f) {
        case AlphaFamily::plus: return 1.0;
        case AlphaFamily::zeroI:
        case AlphaFamily::zeroII: return 0.0;
        default: return -1.0;
    }
}

const char* to_string(CausalPrediction p) noexcept {
    switch (p) {
        case CausalPrediction::changes_type: return "changes_type";
        case CausalPrediction::no_timelike_part: return "no_timelike_part";
        case CausalPrediction::no_spacelike_part: return "no_spacelike_part";
        case CausalPrediction::indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

// Taylor coefficients of the solution of a' = -(a^2 + mu), a(0) = a0.  The
// y^(n+1) coefficient comes from the y^n coefficient of the right-hand
// side, which only uses coefficients already known.
PowerSeries1 alpha_series_ode(double a0, double mu, int order) {
    PowerSeries1 a(order);
    a.at(0) = a0;
    for (int n = 0; n + 1 <= order; ++n) {
        double sq = 0;
        for (int i = 0; i <= n; ++i) sq += a[i] * a[n - i];
        if (n == 0) sq += mu;
        a.at(n + 1) = -sq / (n + 1);
    }
    return a;
}

// Same scheme for b'' = -4 a b' via p = b': p' = -4 a p.
PowerSeries1 beta_series_ode(const PowerSeries1& alpha, double b0, double b1, int order) {
    PowerSeries1 p(order > 0 ? order - 1 : 0);
    p.at(0) = b1;
    for (int n = 0; n + 1 <= p.order(); ++n) {
        double conv = 0;
        for (int i = 0; i <= n; ++i) conv += alpha[i] * p[n - i];
        p.at(n + 1) = -4.0 * conv / (n + 1);
    }
    PowerSeries1 b = p.antiderivative().extended(order).truncated(order);
    b.at(0) = b0;
    return b;
}

double branch_sign(double c) { return c > 0 ? 1.0 : -1.0; }

void check_family_param(AlphaFamily family, double c) {
    switch (family) {
        case AlphaFamily::plus:
            if (!(std::abs(c) < 1.5707963267948966))
                raise(errc::param_out_of_range, "plus family needs |c| < pi/2");
            break;
        case AlphaFamily::zeroII:
        case AlphaFamily::minusII:
            if (c == 0.0)
                raise(errc::param_out_of_range, "family parameter c must be nonzero");
            break;
        case AlphaFamily::minusIII:
            if (c == 0.0)
                raise(errc::param_out_of_range, "branch sign parameter must be nonzero");
            break;
        default:
            break;
    }
}

} // namespace

ProfileFunction alpha_closed_form(AlphaFamily family, double c, int order) {
    if (order < 2) raise(errc::order_too_low, "profile series order must be at least 2");
    check_family_param(family, c);
    ProfileFunction p;
    double a0 = 0;
    switch (family) {
        case AlphaFamily::plus:
            a0 = -std::tan(c);
            p.value = [c](double y) { return -std::tan(y + c); };
            p.slope = [c](double y) {
                double t = std::tan(y + c);
                return -(1.0 + t * t);
            };
            break;
        case AlphaFamily::zeroI:
            p.value = [](double) { return 0.0; };
            p.slope = [](double) { return 0.0; };
            break;
        case AlphaFamily::zeroII:
            a0 = 1.0 / c;
            p.value = [c](double y) { return 1.0 / (y + c); };
            p.slope = [c](double y) { return -1.0 / ((y + c) * (y + c)); };
            break;
        case AlphaFamily::minusI:
            a0 = std::tanh(c);
            p.value = [c](double y) { return std::tanh(y + c); };
            p.slope = [c](double y) {
                double t = std::tanh(y + c);
                return 1.0 - t * t;
            };
            break;
        case AlphaFamily::minusII:
            a0 = 1.0 / std::tanh(c);
            p.value = [c](double y) { return 1.0 / std::tanh(y + c); };
            p.slope = [c](double y) {
                double t = 1.0 / std::tanh(y + c);
                return 1.0 - t * t;
            };
            break;
        case AlphaFamily::minusIII: {
            double s = branch_sign(c);
            a0 = s;
            p.value = [s](double) { return s; };
            p.slope = [](double) { return 0.0; };
            break;
        }
    }
    p.series = alpha_series_ode(a0, family_mu(family), order);
    return p;
}

ProfileFunction beta_closed_form(AlphaFamily family, double c, double c1, double c2, int order) {
    if (order < 2) raise(errc::order_too_low, "profile series order must be at least 2");
    check_family_param(family, c);
    ProfileFunction p;
    switch (family) {
        case AlphaFamily::plus:
            p.value = [c, c1, c2](double y) {
                double s = 1.0 / std::cos(y + c);
                return c1 * (2.0 + s * s) * std::tan(y + c) + c2;
            };
            p.slope = [c, c1](double y) {
                double s = 1.0 / std::cos(y + c);
                return 3.0 * c1 * s * s * s * s;
            };
            break;
        case AlphaFamily::zeroI:
            p.value = [c1, c2](double y) { return c1 * y + c2; };
            p.slope = [c1](double) { return c1; };
            break;
        case AlphaFamily::zeroII:
            p.value = [c, c1, c2](double y) {
                double w = y + c;
                return c1 / (w * w * w) + c2;
            };
            p.slope = [c, c1](double y) {
                double w = y + c;
                return -3.0 * c1 / (w * w * w * w);
            };
            break;
        case AlphaFamily::minusI:
            p.value = [c, c1, c2](double y) {
                double s = 1.0 / std::cosh(y + c);
                return c1 * (2.0 + s * s) * std::tanh(y + c) + c2;
            };
            p.slope = [c, c1](double y) {
                double s = 1.0 / std::cosh(y + c);
                return 3.0 * c1 * s * s * s * s;
            };
            break;
        case AlphaFamily::minusII:
            p.value = [c, c1, c2](double y) {
                double s = 1.0 / std::sinh(y + c);
                return c1 * (2.0 - s * s) / std::tanh(y + c) + c2;
            };
            p.slope = [c, c1](double y) {
                double s = 1.0 / std::sinh(y + c);
                return 3.0 * c1 * s * s * s * s;
            };
            break;
        case AlphaFamily::minusIII: {
            double s = branch_sign(c);
            p.value = [s, c1, c2](double y) { return c1 * std::exp(-4.0 * s * y) + c2; };
            p.slope = [s, c1](double y) { return -4.0 * s * c1 * std::exp(-4.0 * s * y); };
            break;
        }
    }
    PowerSeries1 alpha = alpha_series_ode(
        family == AlphaFamily::zeroI ? 0.0 : alpha_closed_form(family, c, 2).value(0.0),
        family_mu(family), order);
    p.series = beta_series_ode(alpha, p.value(0.0), p.slope(0.0), order);
    return p;
}

ApproxProfile profile_of(const InitialCurve& gamma, int order, double mu_tol) {
    if (!gamma.degenerate())
        raise(errc::not_degenerate, "profile needs a degenerate initial curve");
    if (order < 4) raise(errc::order_too_low, "profile series order must be at least 4");
    auto un = [&](int n) { return n * gamma.u[n]; };
    auto vn = [&](int n) { return n * gamma.v[n]; };
    const double u2 = un(2), u3 = un(3), u4 = un(4);
    const double v2 = vn(2), v3 = vn(3), v4 = vn(4);

    ApproxProfile p;
    // + 0.0 turns a negative zero into plain zero for reporting.
    p.mu = -(u2 * u2 + v2) + 0.0;
    p.delta = 3.0 * u2 * u3 + v3 + 0.0;
    p.Delta = 4.0 * u3 * u3 + 8.0 * u2 * u4 + v2 * v2 + 2.0 * v4 + 0.0;

    if (p.mu > mu_tol) {
        p.alpha_family = AlphaFamily::plus;
        p.c = -std::atan(u2 / std::sqrt(p.mu));
    } else if (p.mu >= -mu_tol) {
        if (std::abs(u2) <= 1e-8) {
            p.alpha_family = AlphaFamily::zeroI;
            p.c = 0;
        } else {
            p.alpha_family = AlphaFamily::zeroII;
            p.c = 1.0 / u2;
        }
    } else {
        const double r = u2 / std::sqrt(-p.mu);
        if (std::abs(std::abs(r) - 1.0) <= 1e-8) {
            p.alpha_family = AlphaFamily::minusIII;
            p.c = branch_sign(r);
        } else if (std::abs(r) < 1.0) {
            p.alpha_family = AlphaFamily::minusI;
            p.c = std::atanh(r);
        } else {
            p.alpha_family = AlphaFamily::minusII;
            p.c = std::atanh(1.0 / r);
        }
    }
    p.c = p.c + 0.0;

    PowerSeries1 alpha = alpha_series_ode(u2, p.mu, order);
    p.a_k.push_back(alpha);
    p.a_k.push_back(beta_series_ode(alpha, u3, v3, order));
    return p;
}

CausalPrediction predict_causal_type(const ApproxProfile& profile, double tol) {
    if (profile.mu > tol) return CausalPrediction::no_timelike_part;
    if (profile.mu < -tol) return CausalPrediction::no_spacelike_part;
    if (std::abs(profile.delta) > tol) return CausalPrediction::changes_type;
    if (profile.Delta < -tol) return CausalPrediction::no_timelike_part;
    if (profile.Delta > tol) return CausalPrediction::no_spacelike_part;
    return CausalPrediction::indeterminate;
}

GraphSurface approximate_surface(const ProfileFunction& alpha, const ProfileFunction& beta,
                                 int order, double tol) {
    if (order < 4) raise(errc::order_too_low, "cubic germ needs order at least 4");
    const PowerSeries1& a = alpha.series;
    const PowerSeries1& b = beta.series;
    if (a.order() < 2 || b.order() < 2)
        raise(errc::order_too_low, "profile series too short for the pair check");

    double scale = 1.0 + a.max_abs() + b.max_abs();
    PowerSeries1 ra = a.derivative().derivative() + 2.0 * (a * a.derivative());
    PowerSeries1 rb = b.derivative().derivative() + 4.0 * (a * b.derivative());
    if (ra.max_abs() > tol * scale || rb.max_abs() > tol * scale)
        raise(errc::not_solution_pair, "profile pair does not solve its governing equations");
    if (std::abs(alpha.value(0) - a[0]) > 1e-9 * scale ||
        std::abs(alpha.slope(0) - a[1]) > 1e-9 * scale ||
        std::abs(beta.value(0) - b[0]) > 1e-9 * scale ||
        std::abs(beta.slope(0) - b[1]) > 1e-9 * scale)
        raise(errc::not_solution_pair, "closed form and series disagree at the base point");

    PowerSeries2 f(order);
    f.set(0, 1, 1.0);
    for (int n = 0; n <= order - 2 && n <= a.order(); ++n) f.set(2, n, a[n] / 2.0);
    for (int n = 0; n <= order - 3 && n <= b.order(); ++n) f.set(3, n, b[n] / 3.0);

    auto av = alpha.value, as = alpha.slope;
    auto bv = beta.value, bs = beta.slope;
    JetFn jet = [av, as, bv, bs](double x, double y) {
        SurfaceJet j;
        double A = av(y), Ap = as(y), B = bv(y), Bp = bs(y);
        double App = -2.0 * A * Ap;   // a'' from a' = -(a^2 + mu)
        double Bpp = -4.0 * A * Bp;   // b'' from its governing equation
        j.f = y + A * x * x / 2.0 + B * x * x * x / 3.0;
        j.fx = A * x + B * x * x;
        j.fy = 1.0 + Ap * x * x / 2.0 + Bp * x * x * x / 3.0;
        j.fxx = A + 2.0 * B * x;
        j.fxy = Ap * x + Bp * x * x;
        j.fyy = App * x * x / 2.0 + Bpp * x * x * x / 3.0;
        return j;
    };
    return GraphSurface::from_series_and_closed_form(std::move(f), std::move(jet),
                                                     "cubic profile germ");
}

GraphSurface homothety_normalize(const GraphSurface& s, double m) {
    if (!(m > 0) || !std::isfinite(m))
        raise(errc::param_out_of_range, "homothety scale must be positive");
    JetFn jet;
    if (s.has_closed_form()) {
        jet = [m, s](double x, double y) {
            SurfaceJet j = s.jet_at(m * x, m * y);
            SurfaceJet out;
            out.f = j.f / m;
            out.fx = j.fx;
            out.fy = j.fy;
            out.fxx = m * j.fxx;
            out.fxy = m * j.fxy;
            out.fyy = m * j.fyy;
            return out;
        };
    }
    if (s.has_series()) {
        PowerSeries2 f = (1.0 / m) * s.series().scaled_arguments(m);
        if (jet) return GraphSurface::from_series_and_closed_form(std::move(f), std::move(jet), s.name());
        return GraphSurface::from_series(std::move(f));
    }
    return GraphSurface::from_closed_form(std::move(jet), s.name());
}

double normalizing_scale(double mu, double mu_tol) {
    if (std::abs(mu) <= mu_tol) return 1.0;
    return 1.0 / std::sqrt(std::abs(mu));
}

std::vector<PowerSeries1> ak_of(const GraphSurface& s, int K) {
    if (K < 2) raise(errc::param_out_of_range, "coefficient index must be at least 2");
    const PowerSeries2& f = s.series();
    if (K > f.order()) raise(errc::order_too_low, "series order too low for requested coefficients");
    std::vector<PowerSeries1> out;
    out.reserve(static_cast<std::size_t>(K) - 1);
    for (int k = 2; k <= K; ++k) out.push_back(static_cast<double>(k) * f.x_col(k));
    return out;
}

PowerSeries1 ak_residual(int k, const std::vector<PowerSeries1>& a) {
    if (k < 4) raise(errc::param_out_of_range, "hierarchy levels start at k = 4");
    if (static_cast<int>(a.size()) < k - 1)
        raise(errc::param_out_of_range, "need a_2 .. a_k to form the level-k residual");
    auto A = [&](int j) -> const PowerSeries1& { return a[static_cast<std::size_t>(j) - 2]; };

    PowerSeries1 P = 0.0 * A(2);
    for (int m = 3; m <= k - 1; ++m) {
        double coef = 2.0 * (k - 2 * m + 3) / static_cast<double>(k - m + 2);
        P = P + coef * (A(m) * A(k - m + 2).derivative());
    }
    PowerSeries1 Q = 0.0 * A(2);
    PowerSeries1 R = 0.0 * A(2);
    for (int m = 2; m <= k - 2; ++m) {
        for (int n = 2; n <= k - m; ++n) {
            double cq = (3.0 * n - k + m - 1) / static_cast<double>(m * n);
            Q = Q + cq * (A(m).derivative() * A(n).derivative() * A(k - m - n + 2));
            double cr = 1.0 / static_cast<double>(k - m - n + 2);
            R = R + cr * (A(m) * A(n) * A(k - m - n + 2).derivative().derivative());
        }
    }
    PowerSeries1 ak = A(k);
    return ak.derivative().derivative() + 2.0 * (k - 1) * (A(2) * ak.derivative()) +
           static_cast<double>(k) * (3 - k) * (A(2).derivative() * ak) +
           static_cast<double>(k) * (P + Q - R);
}

std::vector<PowerSeries1> solve_ak_series(const PowerSeries1& a2, const PowerSeries1& a3,
                                          const std::vector<std::array<double, 2>>& init,
                                          int K, int order) {
    if (K < 4) raise(errc::param_out_of_range, "hierarchy levels start at k = 4");
    if (static_cast<int>(init.size()) != K - 3)
        raise(errc::param_out_of_range, "need one initial pair per level k = 4 .. K");
    if (order < 2) raise(errc::order_too_low, "series order must be at least 2");
    if (a2.order() < order || a3.order() < order)
        raise(errc::order_too_low, "a_2 and a_3 must carry the full working order");

    // Coefficient tables indexed [j-2][n]; all rows have length order+1.
    std::vector<std::vector<double>> tab;
    tab.push_back(std::vector<double>(a2.coeffs().begin(), a2.coeffs().begin() + order + 1));
    tab.push_back(std::vector<double>(a3.coeffs().begin(), a3.coeffs().begin() + order + 1));
    auto d1 = [&](const std::vector<double>& v, int i) {
        return i + 1 < static_cast<int>(v.size()) ? (i + 1) * v[static_cast<std::size_t>(i) + 1] : 0.0;
    };
    auto d2 = [&](const std::vector<double>& v, int i) {
        return i + 2 < static_cast<int>(v.size())
                   ? (i + 1) * (i + 2) * v[static_cast<std::size_t>(i) + 2]
                   : 0.0;
    };

    for (int k = 4; k <= K; ++k) {
        // Driving sum S = P + Q - R at coefficient indices 0 .. order-2,
        // formed from the already-known rows.
        std::vector<double> S(static_cast<std::size_t>(order) - 1, 0.0);
        for (int m = 3; m <= k - 1; ++m) {
            double coef = 2.0 * (k - 2 * m + 3) / static_cast<double>(k - m + 2);
            const auto& am = tab[static_cast<std::size_t>(m) - 2];
            const auto& aj = tab[static_cast<std::size_t>(k - m)];
            for (int n = 0; n < static_cast<int>(S.size()); ++n)
                for (int i = 0; i <= n; ++i)
                    S[static_cast<std::size_t>(n)] += coef * am[static_cast<std::size_t>(i)] * d1(aj, n - i);
        }
        for (int m = 2; m <= k - 2; ++m) {
            for (int q = 2; q <= k - m; ++q) {
                double cq = (3.0 * q - k + m - 1) / static_cast<double>(m * q);
                double cr = 1.0 / static_cast<double>(k - m - q + 2);
                const auto& am = tab[static_cast<std::size_t>(m) - 2];
                const auto& aq = tab[static_cast<std::size_t>(q) - 2];
                const auto& aj = tab[static_cast<std::size_t>(k - m - q)];
                for (int n = 0; n < static_cast<int>(S.size()); ++n)
                    for (int i = 0; i <= n; ++i)
                        for (int j = 0; i + j <= n; ++j) {
                            double tail_q = aj[static_cast<std::size_t>(n - i - j)];
                            S[static_cast<std::size_t>(n)] +=
                                cq * d1(am, i) * d1(aq, j) * tail_q -
                                cr * am[static_cast<std::size_t>(i)] * aq[static_cast<std::size_t>(j)] *
                                    d2(aj, n - i - j);
                        }
            }
        }

        const auto& a2row = tab[0];
        std::vector<double> ck(static_cast<std::size_t>(order) + 1, 0.0);
        ck[0] = init[static_cast<std::size_t>(k) - 4][0];
        ck[1] = init[static_cast<std::size_t>(k) - 4][1];
        for (int n = 0; n + 2 <= order; ++n) {
            double t = k * S[static_cast<std::size_t>(n)];
            for (int i = 0; i <= n; ++i) {
                t += 2.0 * (k - 1) * a2row[static_cast<std::size_t>(i)] * d1(ck, n - i);
                t += k * (3.0 - k) * d1(a2row, i) * ck[static_cast<std::size_t>(n - i)];
            }
            ck[static_cast<std::size_t>(n) + 2] = -t / ((n + 1) * (n + 2));
        }
        tab.push_back(std::move(ck));
    }

    std::vector<PowerSeries1> out;
    for (int k = 4; k <= K; ++k) out.push_back(PowerSeries1::from_coeffs(tab[static_cast<std::size_t>(k) - 2]));
    return out;
}

namespace {

// 4-point Lagrange interpolation of a node table at fractional index.
double table_at(const std::vector<double>& v, double idx) {
    const int n = static_cast<int>(v.size());
    int i0 = static_cast<int>(std::floor(idx)) - 1;
    i0 = std::clamp(i0, 0, n - 4);
    const double xi = idx - i0;
    double out = 0;
    for (int j = 0; j < 4; ++j) {
        double w = 1;
        for (int l = 0; l < 4; ++l)
            if (l != j) w *= (xi - l) / (j - l);
        out += w * v[static_cast<std::size_t>(i0 + j)];
    }
    return out;
}

} // namespace

AkTables solve_ak_recursion(const ProfileFunction& a2, const ProfileFunction& a3,
                            const std::vector<std::array<double, 2>>& init,
                            int K, const YGrid& grid) {
    if (K < 4) raise(errc::param_out_of_range, "hierarchy levels start at k = 4");
    if (static_cast<int>(init.size()) != K - 3)
        raise(errc::param_out_of_range, "need one initial pair per level k = 4 .. K");
    if (!(grid.step > 0) || grid.step > 0.05)
        raise(errc::grid_too_coarse, "grid step must lie in (0, 0.05]");
    if (!(grid.y0 <= 0 && grid.y1 >= 0))
        raise(errc::param_out_of_range, "grid must contain y = 0");
    const double h = grid.step;
    const long n_neg = std::lround(-grid.y0 / h);
    const long n_pos = std::lround(grid.y1 / h);
    const long count = n_neg + n_pos + 1;
    if (count > 4'000'000) raise(errc::grid_too_coarse, "grid exceeds the node budget");
    if (count < 4) raise(errc::grid_too_coarse, "grid needs at least four nodes");

    AkTables t;
    t.origin_index = static_cast<std::size_t>(n_neg);
    t.y.resize(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) t.y[static_cast<std::size_t>(i)] = (i - n_neg) * h;

    const double value_cap = 1.0 / h;
    const double slope_cap = 1.0 / (h * h);
    auto tabulate = [&](const ProfileFunction& p, std::vector<double>& val, std::vector<double>& slo) {
        val.resize(t.y.size());
        slo.resize(t.y.size());
        for (std::size_t i = 0; i < t.y.size(); ++i) {
            val[i] = p.value(t.y[i]);
            slo[i] = p.slope(t.y[i]);
            if (!std::isfinite(val[i]) || !std::isfinite(slo[i]) ||
                std::abs(val[i]) >= value_cap || std::abs(slo[i]) >= slope_cap)
                raise(errc::singular_coefficient, "profile function has a pole inside the grid");
        }
    };

    t.values.resize(static_cast<std::size_t>(K) - 1);
    t.slopes.resize(static_cast<std::size_t>(K) - 1);
    std::vector<std::vector<double>> seconds(static_cast<std::size_t>(K) - 1);
    tabulate(a2, t.values[0], t.slopes[0]);
    tabulate(a3, t.values[1], t.slopes[1]);

    const double mu = -(a2.slope(0.0) + a2.value(0.0) * a2.value(0.0));
    seconds[0].resize(t.y.size());
    seconds[1].resize(t.y.size());
    for (std::size_t i = 0; i < t.y.size(); ++i) {
        double v = t.values[0][i], vp = t.slopes[0][i];
        if (std::abs(vp + v * v + mu) > 1e-8 * (1.0 + v * v))
            raise(errc::not_solution_pair, "a_2 does not solve its governing equation");
        seconds[0][i] = -2.0 * v * vp;
        seconds[1][i] = -4.0 * v * t.slopes[1][i];
    }

    for (int k = 4; k <= K; ++k) {
        // Driving sum S = P + Q - R at the nodes, from the lower rows.
        std::vector<double> S(t.y.size(), 0.0);
        for (int m = 3; m <= k - 1; ++m) {
            double coef = 2.0 * (k - 2 * m + 3) / static_cast<double>(k - m + 2);
            const auto& am = t.values[static_cast<std::size_t>(m) - 2];
            const auto& ajp = t.slopes[static_cast<std::size_t>(k - m)];
            for (std::size_t i = 0; i < S.size(); ++i) S[i] += coef * am[i] * ajp[i];
        }
        for (int m = 2; m <= k - 2; ++m) {
            for (int q = 2; q <= k - m; ++q) {
                double cq = (3.0 * q - k + m - 1) / static_cast<double>(m * q);
                double cr = 1.0 / static_cast<double>(k - m - q + 2);
                const auto& amv = t.values[static_cast<std::size_t>(m) - 2];
                const auto& amp = t.slopes[static_cast<std::size_t>(m) - 2];
                const auto& aqv = t.values[static_cast<std::size_t>(q) - 2];
                const auto& aqp = t.slopes[static_cast<std::size_t>(q) - 2];
                const auto& ajv = t.values[static_cast<std::size_t>(k - m - q)];
                const auto& ajs = seconds[static_cast<std::size_t>(k - m - q)];
                for (std::size_t i = 0; i < S.size(); ++i)
                    S[i] += cq * amp[i] * aqp[i] * ajv[i] - cr * amv[i] * aqv[i] * ajs[i];
            }
        }

        // March a_k'' = G(y, a_k, a_k') outward from y = 0 with the classical
        // 4th-order one-step method, one grid cell per step.
        auto G = [&](double y, double idx, double a, double ap) {
            double sy = table_at(S, idx);
            return -(2.0 * (k - 1) * a2.value(y) * ap + k * (3.0 - k) * a2.slope(y) * a + k * sy);
        };
        std::vector<double>& val = t.values[static_cast<std::size_t>(k) - 2];
        std::vector<double>& slo = t.slopes[static_cast<std::size_t>(k) - 2];
        std::vector<double>& sec = seconds[static_cast<std::size_t>(k) - 2];
        val.assign(t.y.size(), 0.0);
        slo.assign(t.y.size(), 0.0);
        sec.assign(t.y.size(), 0.0);
        const std::size_t o = t.origin_index;
        val[o] = init[static_cast<std::size_t>(k) - 4][0];
        slo[o] = init[static_cast<std::size_t>(k) - 4][1];
        auto march = [&](int dir) {
            const double hs = dir * h;
            long i = static_cast<long>(o);
            while ((dir > 0 && i + 1 < count) || (dir < 0 && i > 0)) {
                double y = t.y[static_cast<std::size_t>(i)];
                double idx = static_cast<double>(i);
                double a = val[static_cast<std::size_t>(i)];
                double ap = slo[static_cast<std::size_t>(i)];
                double k1a = ap, k1p = G(y, idx, a, ap);
                double k2a = ap + hs / 2 * k1p,
                       k2p = G(y + hs / 2, idx + dir * 0.5, a + hs / 2 * k1a, ap + hs / 2 * k1p);
                double k3a = ap + hs / 2 * k2p,
                       k3p = G(y + hs / 2, idx + dir * 0.5, a + hs / 2 * k2a, ap + hs / 2 * k2p);
                double k4a = ap + hs * k3p,
                       k4p = G(y + hs, idx + dir, a + hs * k3a, ap + hs * k3p);
                i += dir;
                val[static_cast<std::size_t>(i)] = a + hs / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
                slo[static_cast<std::size_t>(i)] = ap + hs / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
            }
        };
        march(+1);
        march(-1);
        for (std::size_t i = 0; i < t.y.size(); ++i)
            sec[i] = G(t.y[i], static_cast<double>(i), val[i], slo[i]);
    }
    return t;
}

} // namespace zmclab

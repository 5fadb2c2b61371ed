#pragma once

#include <array>
#include <functional>
#include <vector>

#include "zmclab/ck_solver.hpp"
#include "zmclab/geometry.hpp"
#include "zmclab/series.hpp"

namespace zmclab {

/// Catalog families for the second approximation function: the solutions of
/// a' + a^2 + mu = 0 once the characteristic is normalized to 1, 0 or -1 by
/// a homothety.
///   plus      -tan(y+c)       mu = 1,  |c| < pi/2
///   zeroI     0               mu = 0
///   zeroII    1/(y+c)         mu = 0,  c != 0
///   minusI    tanh(y+c)       mu = -1
///   minusII   coth(y+c)       mu = -1, c != 0
///   minusIII  +1 or -1        mu = -1, the sign of c picks the branch
enum class AlphaFamily { plus, zeroI, zeroII, minusI, minusII, minusIII };
const char* to_string(AlphaFamily f) noexcept;
/// Normalized characteristic of the family: 1, 0 or -1.
double family_mu(AlphaFamily f) noexcept;

/// Scalar function of y carried in three forms: Taylor series at y = 0, a
/// pointwise closed-form value, and its first derivative.
struct ProfileFunction {
    PowerSeries1 series;
    std::function<double(double)> value;
    std::function<double(double)> slope;
};

/// Catalog entry for the family, as a closed form plus its Taylor series.
/// Throws param_out_of_range when c violates the family's domain above.
ProfileFunction alpha_closed_form(AlphaFamily family, double c, int order = 16);

/// Matching third approximation function solving b'' + 4 a b' = 0:
///   plus      c1 (2 + sec^2(y+c)) tan(y+c) + c2
///   zeroI     c1 y + c2
///   zeroII    c1 / (y+c)^3 + c2
///   minusI    c1 (2 + sech^2(y+c)) tanh(y+c) + c2
///   minusII   c1 (2 - csch^2(y+c)) coth(y+c) + c2
///   minusIII  c1 exp(-4 s y) + c2 with s = +-1 the branch sign of alpha
ProfileFunction beta_closed_form(AlphaFamily family, double c, double c1, double c2,
                                 int order = 16);

/// Invariants of a degenerate germ read off its initial curve, with the
/// catalog family matched to the mu-normalized second approximation
/// function.  a_k holds the second and third approximation functions as
/// series generated from the germ's own (un-normalized) characteristic:
/// a_k[0] solves a' + a^2 + mu = 0, a_k[1] solves b'' + 4 a b' = 0.
struct ApproxProfile {
    double mu = 0;
    double delta = 0;
    double Delta = 0;
    AlphaFamily alpha_family = AlphaFamily::zeroI;
    double c = 0;  ///< catalog parameter of the normalized germ (branch sign for minusIII)
    std::vector<PowerSeries1> a_k;
};

/// Reads u_n, v_n off gamma = (0,1) + sum (u_n, v_n) x^n / n and computes
///   mu    = -(u2^2 + v2)
///   delta = 3 u2 u3 + v3
///   Delta = 4 u3^2 + 8 u2 u4 + v2^2 + 2 v4.
/// Throws not_degenerate when gamma'(0) != 0 (that is, v_1 != 0).
/// mu_tol decides mu = 0; the relative threshold for the minusIII boundary
/// |u2| = sqrt(-mu) is 1e-8.
ApproxProfile profile_of(const InitialCurve& gamma, int order = 16, double mu_tol = 1e-10);

enum class CausalPrediction { changes_type, no_timelike_part, no_spacelike_part, indeterminate };
const char* to_string(CausalPrediction p) noexcept;

/// Sign analysis of B(x,0) = mu x^2 - (2 delta/3) x^3 - (Delta/4) x^4 + ...:
///   mu > 0                        no_timelike_part
///   mu < 0                        no_spacelike_part
///   mu = 0, delta != 0            changes_type
///   mu = 0 = delta, Delta < 0     no_timelike_part
///   mu = 0 = delta, Delta > 0     no_spacelike_part
///   all three vanish              indeterminate
CausalPrediction predict_causal_type(const ApproxProfile& profile, double tol = 1e-10);

/// Cubic-in-x germ f = y + a(y) x^2/2 + b(y) x^3/3 from a solution pair of
/// a'' + 2 a a' = 0, b'' + 4 a b' = 0 (residual-checked on the series,
/// throws not_solution_pair beyond tol).  Carries both the series and a
/// closed-form jet.  When mu != 0 the germ is phi-admissible; when mu = 0
/// it generally is not (the x^4 coefficient of A obstructs, as the light
/// cone's cubic truncation shows), but in every case the x-derivatives of A
/// through third order vanish along x = 0, so the cubic agrees with an
/// admissible germ through total degree 3.
GraphSurface approximate_surface(const ProfileFunction& alpha, const ProfileFunction& beta,
                                 int order = 10, double tol = 1e-8);

/// Homothety f(x,y) -> f(m x, m y)/m, which maps graph germs to graph germs
/// and scales the characteristic by mu -> m^2 mu.  Requires m > 0.
GraphSurface homothety_normalize(const GraphSurface& s, double m);

/// The scale m with m^2 |mu| = 1, or 1 when mu is 0 within mu_tol.
double normalizing_scale(double mu, double mu_tol = 1e-10);

/// x-expansion coefficient functions a_k(y) = k [x^k] f of a series germ,
/// for k = 2..K (index k-2 in the result).
std::vector<PowerSeries1> ak_of(const GraphSurface& s, int K);

/// Left-hand side of the k-th level of the zero-mean-curvature hierarchy
///   a_k'' + 2(k-1) a_2 a_k' + k(3-k) a_2' a_k + k (P_k + Q_k - R_k),
/// as a series in y; a[j] holds a_{j+2}.  Vanishes on germs with A = 0.
///   P_k = sum_{m=3}^{k-1} 2(k-2m+3)/(k-m+2) a_m a'_{k-m+2}
///   Q_k = sum_{m=2}^{k-2} sum_{n=2}^{k-m} (3n-k+m-1)/(mn) a'_m a'_n a_{k-m-n+2}
///   R_k = sum_{m=2}^{k-2} sum_{n=2}^{k-m} a_m a_n a''_{k-m-n+2} / (k-m-n+2)
PowerSeries1 ak_residual(int k, const std::vector<PowerSeries1>& a);

/// Solve the hierarchy for a_k as series, k = 4..K, given a_2, a_3 and the
/// initial data init[k-4] = {a_k(0), a_k'(0)}.  Termwise: the y^n
/// coefficient of the level-k equation determines the y^(n+2) coefficient
/// of a_k from lower ones.
std::vector<PowerSeries1> solve_ak_series(const PowerSeries1& a2, const PowerSeries1& a3,
                                          const std::vector<std::array<double, 2>>& init,
                                          int K, int order);

/// Uniform y-grid for the numeric route; must contain 0.
struct YGrid {
    double y0 = -0.5;
    double y1 = 0.5;
    double step = 1e-3;
};

/// Sampled a_k tables on a YGrid, rows k = 2..K (index k-2).
struct AkTables {
    std::vector<double> y;
    std::size_t origin_index = 0;
    std::vector<std::vector<double>> values;
    std::vector<std::vector<double>> slopes;
};

/// Numeric route: classical 4th-order one-step integration of each level
/// from y = 0 outward, step = grid.step.  a_2 must solve a' + a^2 + mu = 0
/// with constant mu (checked pointwise, not_solution_pair otherwise); a_3
/// enters through its governing equation, so its second derivative is taken
/// as -4 a_2 a_3'.  The driving sums P, Q, R are tabulated at the nodes and
/// interpolated (4-point Lagrange) at half steps.  Throws grid_too_coarse
/// when step <= 0, step > 0.05, or the grid exceeds 4e6 nodes, and
/// singular_coefficient when a_2 has a pole inside the grid (detected by
/// |a_2| >= 1/step or |a_2'| >= 1/step^2 or non-finite values).
AkTables solve_ak_recursion(const ProfileFunction& a2, const ProfileFunction& a3,
                            const std::vector<std::array<double, 2>>& init,
                            int K, const YGrid& grid);

} // namespace zmclab

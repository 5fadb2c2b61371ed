#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "zmclab/geometry.hpp"
#include "zmclab/series.hpp"

namespace zmclab {

/// Path in the Lorentz 3-space, components ordered (t, x, y).
using PathFn = std::function<std::array<double, 3>(double)>;

/// Curve with light-like velocity, carried as three complex-analytic
/// component series.  Construction samples the parameter interval and
/// rejects curves whose velocity squared -(s0')^2+(s1')^2+(s2')^2 is not
/// zero (tol, relative to 1 + |velocity|^2), and, when
/// require_nondegenerate is set, curves whose acceleration is parallel to
/// the velocity (cross-product norm below nondeg_tol).  Evaluation outside
/// the trusted disk of any component raises radius_exceeded.
class NullCurve {
public:
    NullCurve(std::array<ComplexSeries1, 3> components, double t0, double t1,
              bool require_nondegenerate = true, double tol = 1e-10,
              double nondeg_tol = 1e-8);

    double t0() const { return a_; }
    double t1() const { return b_; }
    std::array<std::complex<double>, 3> point(std::complex<double> z) const;
    std::array<std::complex<double>, 3> velocity(std::complex<double> z) const;
    std::array<std::complex<double>, 3> acceleration(std::complex<double> z) const;

private:
    std::array<ComplexSeries1, 3> c_, d_, dd_;
    double a_, b_;
};

/// The null curve (u, cos u, sin u) whose evolved surface is a helicoid.
NullCurve helicoid_null(double t0 = -1.0, double t1 = 1.0, int order = 30);

/// Rectangular parameter grid; u varies fastest in sample storage.
struct PatchGrid {
    double u0 = -0.5, u1 = 0.5;
    int nu = 21;
    double v0 = -0.5, v1 = 0.5;
    int nv = 21;
};

struct PatchSample {
    double u = 0, v = 0;
    std::array<double, 3> P{0, 0, 0};  ///< ambient point (t, x, y)
    double detI = 0;                   ///< first-fundamental-form determinant
    bool immersed = true;              ///< rank-2 Jacobian at the sample
};

/// Sampled parametric surface patch; samples[iv * grid.nu + iu].
struct SampledPatch {
    PatchGrid grid;
    std::vector<PatchSample> samples;
    const PatchSample& at(int iu, int iv) const {
        return samples[static_cast<std::size_t>(iv) * static_cast<std::size_t>(grid.nu) +
                       static_cast<std::size_t>(iu)];
    }
};

/// Evolve a null curve into the surface
///   F(u,v) = (sigma(u + i sqrt(v)) + sigma(u - i sqrt(v))) / 2   for v >= 0,
///   F(u,v) = (sigma(u + sqrt(-v)) + sigma(u - sqrt(-v))) / 2     for v < 0,
/// which restricts to sigma on v = 0 and changes causal type across it.
/// The imaginary parts of each sample must cancel to imag_tol (relative to
/// 1 + |P|); a violation raises imaginary_residue.  Samples outside the
/// trusted disk raise radius_exceeded.
SampledPatch bjorling_reconstruct(const NullCurve& sigma, const PatchGrid& grid,
                                  double imag_tol = 1e-10);

/// Curve with space-like velocity, carried as closed-form point and
/// velocity evaluators.  Construction samples the interval and requires
/// -(s0')^2+(s1')^2+(s2')^2 > 0; violations raise not_spacelike.
class SpacelikeCurve {
public:
    SpacelikeCurve(PathFn point, PathFn velocity, double t0, double t1, int n_check = 65);

    /// The profile curve (psi(x), x, 0) of a light-like graph seed.
    static SpacelikeCurve graph_profile(const PowerSeries1& psi, double x0, double x1);

    double t0() const { return a_; }
    double t1() const { return b_; }
    std::array<double, 3> point(double t) const { return p_(t); }
    std::array<double, 3> velocity(double t) const { return v_(t); }

private:
    PathFn p_, v_;
    double a_, b_;
};

/// The ellipse (0, a cos t, sin t) on [-pi, pi].
SpacelikeCurve ellipse_curve(double a = 2.0);

enum class DirectorBranch { plus, minus };

/// Ruled strip F(t,s) = sigma(t) + s xi(t) over a space-like base with a
/// light-like director orthogonal to the base velocity.  Construction
/// validates <xi,xi> = 0 and <xi,sigma'> = 0 at samples (tol, relative);
/// the strip half-width eps bounds |s|.
class RuledLightlike {
public:
    RuledLightlike(SpacelikeCurve base, PathFn director, DirectorBranch branch, double eps,
                   int n_check = 33, double tol = 1e-10);

    const SpacelikeCurve& base() const { return base_; }
    std::array<double, 3> director(double t) const { return xi_(t); }
    DirectorBranch branch() const { return branch_; }
    double eps() const { return eps_; }

private:
    SpacelikeCurve base_;
    PathFn xi_;
    DirectorBranch branch_;
    double eps_;
};

/// Build the light-like ruling over a space-like base.  With the base
/// velocity written sigma' = (p, q, r), the director is
///   xi = ( sqrt(q^2+r^2),  (p q -+ w r) / sqrt(q^2+r^2),  (p r +- w q) / sqrt(q^2+r^2) ),
/// w = sqrt(q^2 + r^2 - p^2), upper signs for the plus branch.  For a graph
/// profile base (psi(x), x, 0) this reduces to (1, psi', +-sqrt(1-psi'^2)).
/// The strip width starts at eps and is halved until the Jacobian of F has
/// rank 2 on a sample sweep; param_out_of_range when no width works.
RuledLightlike make_director(const SpacelikeCurve& sigma, DirectorBranch branch,
                             double eps = 0.5);

/// Point sigma(t) + s xi(t); requires t within the base interval and
/// |s| < eps (param_out_of_range otherwise).
std::array<double, 3> ruled_surface_eval(const RuledLightlike& R, double t, double s);

/// Sample the strip on a (t,s) grid; detI is the first-fundamental-form
/// determinant, which is zero through rounding for a light-like ruling.
SampledPatch sample_ruled(const RuledLightlike& R, const PatchGrid& grid);

/// Re-express the strip as a normalized graph germ over the xy-plane.  The
/// projection (t,s) -> (x,y) is inverted by damped Newton iteration (tol
/// 1e-12, at most 50 steps); second derivatives come from fourth-order
/// differences of the analytically inverted first derivatives (step 1e-3).
/// Raises not_a_graph when the projection Jacobian is singular at the
/// origin, when the iteration fails, or when a requested point projects
/// outside the strip.
GraphSurface graph_of_ruled(const RuledLightlike& R);

} // namespace zmclab

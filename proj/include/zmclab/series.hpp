#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "zmclab/errors.hpp"

namespace zmclab {

/// Truncated Taylor series in one real variable, coefficients c[0..N] for
/// c0 + c1 x + ... + cN x^N.  N is the order of the truncation, not the
/// degree of the underlying function.  Arithmetic truncates to the minimum
/// order of the operands.
class PowerSeries1 {
public:
    PowerSeries1() : c_(1, 0.0) {}
    explicit PowerSeries1(int order) : c_(static_cast<std::size_t>(order) + 1, 0.0) {}
    PowerSeries1(std::initializer_list<double> coeffs);
    static PowerSeries1 from_coeffs(std::vector<double> coeffs);
    static PowerSeries1 constant(double a, int order);
    static PowerSeries1 variable(int order); ///< the series "x"

    int order() const { return static_cast<int>(c_.size()) - 1; }
    /// Coefficient of x^k; zero beyond the truncation order.
    double operator[](int k) const {
        return (k >= 0 && k <= order()) ? c_[static_cast<std::size_t>(k)] : 0.0;
    }
    double& at(int k);

    const std::vector<double>& coeffs() const { return c_; }

    PowerSeries1 truncated(int order) const;  ///< drop coefficients above `order`
    PowerSeries1 extended(int order) const;   ///< zero-pad up to `order`
    double max_abs() const;

    double eval(double x) const; ///< Horner

    PowerSeries1 derivative() const;     ///< order N-1
    PowerSeries1 antiderivative() const; ///< vanishing at 0, order N+1

    /// x -> m x substitution: coefficient k scaled by m^k.
    PowerSeries1 scaled_argument(double m) const;

    PowerSeries1 operator-() const;
    friend PowerSeries1 operator+(const PowerSeries1& a, const PowerSeries1& b);
    friend PowerSeries1 operator-(const PowerSeries1& a, const PowerSeries1& b);
    friend PowerSeries1 operator*(const PowerSeries1& a, const PowerSeries1& b);
    friend PowerSeries1 operator*(double s, const PowerSeries1& a);
    friend PowerSeries1 operator+(const PowerSeries1& a, double s);
    friend PowerSeries1 operator-(double s, const PowerSeries1& a);

private:
    std::vector<double> c_;
};

/// Multiplicative inverse by Newton iteration on the truncated ring.
/// Requires |a[0]| > unit_tol.
PowerSeries1 recip(const PowerSeries1& a, double unit_tol = 1e-13);
/// Principal square root; requires a[0] > unit_tol.
PowerSeries1 sqrt(const PowerSeries1& a, double unit_tol = 1e-13);
/// Composition outer(inner(x)) where inner has no constant term.
PowerSeries1 compose(const PowerSeries1& outer, const PowerSeries1& inner);

enum class Axis { x, y };

/// Truncated Taylor series in two variables, dense triangular storage of
/// all coefficients c(j,k) of x^j y^k with j + k <= order.  Layout is
/// graded: degree d block at offset d(d+1)/2, entry k within the block, so
/// total-degree slices are contiguous.
class PowerSeries2 {
public:
    explicit PowerSeries2(int order);
    static PowerSeries2 constant(double a, int order);
    static PowerSeries2 variable(Axis axis, int order);
    /// Embed a univariate series as a series in x (or in y).
    static PowerSeries2 from_axis_series(const PowerSeries1& s, Axis axis, int order);

    int order() const { return order_; }
    std::size_t coeff_count() const { return c_.size(); }

    double coeff(int j, int k) const {
        return (j >= 0 && k >= 0 && j + k <= order_) ? c_[index(j, k)] : 0.0;
    }
    void set(int j, int k, double value);
    void add_to(int j, int k, double value);

    PowerSeries2 truncated(int order) const;
    PowerSeries2 extended(int order) const;
    double max_abs() const;

    double eval(double x, double y) const;

    PowerSeries2 diff(Axis axis) const; ///< order N-1

    /// Row of fixed y-degree k as a series in x (length min(N-k, len)).
    PowerSeries1 y_row(int k) const;
    /// Column of fixed x-degree j as a series in y.
    PowerSeries1 x_col(int j) const;
    /// Overwrite the y-degree-k row; s is truncated to degree N-k.
    void set_y_row(int k, const PowerSeries1& s);

    /// (x,y) -> (m x, m y) substitution.
    PowerSeries2 scaled_arguments(double m) const;
    /// (x,y) -> (c x - s y, s x + c y) substitution (rotation of the domain).
    PowerSeries2 rotated_arguments(double c, double s) const;

    PowerSeries2 operator-() const;
    friend PowerSeries2 operator+(const PowerSeries2& a, const PowerSeries2& b);
    friend PowerSeries2 operator-(const PowerSeries2& a, const PowerSeries2& b);
    friend PowerSeries2 operator*(const PowerSeries2& a, const PowerSeries2& b);
    friend PowerSeries2 operator*(double s, const PowerSeries2& a);
    friend PowerSeries2 operator+(const PowerSeries2& a, double s);
    friend PowerSeries2 operator-(double s, const PowerSeries2& a);

private:
    std::size_t index(int j, int k) const {
        int d = j + k;
        return static_cast<std::size_t>(d * (d + 1) / 2 + k);
    }
    int order_;
    std::vector<double> c_;
};

PowerSeries2 recip(const PowerSeries2& a, double unit_tol = 1e-13);
PowerSeries2 sqrt(const PowerSeries2& a, double unit_tol = 1e-13);
/// Sum outer[n] * inner^n; inner must have (numerically) no constant term.
PowerSeries2 compose(const PowerSeries1& outer, const PowerSeries2& inner);

/// Exact shift g / x^(k+1).  Requires every coefficient with x-degree <= k
/// to vanish, up to rel_tol * max|coeff| (an all-zero g divides trivially).
PowerSeries2 divide_by_x_power(const PowerSeries2& g, int k, double rel_tol = 1e-9);

/// Serialization: {"order": N, "coeffs": [[j,k,c], ...]} with only nonzero
/// entries, graded order.  Round-trips binary64 exactly.
std::string to_json(const PowerSeries2& s);
PowerSeries2 series2_from_json(const std::string& text);
std::string to_json(const PowerSeries1& s);
PowerSeries1 series1_from_json(const std::string& text);

/// Truncated complex Taylor series about a real expansion point, used for
/// analytic extension of curves.  `radius` bounds the trusted evaluation
/// disk; eval outside it throws radius_exceeded.
class ComplexSeries1 {
public:
    ComplexSeries1() : c_(1, 0.0), t0_(0.0), radius_(0.0) {}
    ComplexSeries1(std::vector<std::complex<double>> coeffs, double t0, double radius);
    /// Promote a real series; the trusted radius defaults to a ratio-test
    /// estimate 0.8 * (|c_N| / |c_1|)^(-1/(N-1)) when both ends are nonzero.
    static ComplexSeries1 from_real(const PowerSeries1& s, double t0 = 0.0, double radius = 0.0);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double t0() const { return t0_; }
    double radius() const { return radius_; }
    const std::vector<std::complex<double>>& coeffs() const { return c_; }

    std::complex<double> eval(std::complex<double> z) const;
    bool in_radius(std::complex<double> z) const { return std::abs(z - t0_) <= radius_; }
    ComplexSeries1 derivative() const;

private:
    std::vector<std::complex<double>> c_;
    double t0_;
    double radius_;
};

double estimate_radius(const PowerSeries1& s);

} // namespace zmclab

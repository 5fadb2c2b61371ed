#include "zmclab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "json.hpp"

namespace zmclab {

// ---------------------------------------------------------------------------
// PowerSeries1

PowerSeries1::PowerSeries1(std::initializer_list<double> coeffs) : c_(coeffs) {
    if (c_.empty()) c_.assign(1, 0.0);
}

PowerSeries1 PowerSeries1::from_coeffs(std::vector<double> coeffs) {
    PowerSeries1 s;
    if (!coeffs.empty()) s.c_ = std::move(coeffs);
    return s;
}

PowerSeries1 PowerSeries1::constant(double a, int order) {
    PowerSeries1 s(order);
    s.c_[0] = a;
    return s;
}

PowerSeries1 PowerSeries1::variable(int order) {
    PowerSeries1 s(std::max(order, 1));
    s.c_[1] = 1.0;
    return s;
}

double& PowerSeries1::at(int k) { return c_.at(static_cast<std::size_t>(k)); }

PowerSeries1 PowerSeries1::truncated(int order) const {
    PowerSeries1 s(std::min(order, this->order()));
    for (int k = 0; k <= s.order(); ++k) s.c_[static_cast<std::size_t>(k)] = (*this)[k];
    return s;
}

PowerSeries1 PowerSeries1::extended(int order) const {
    if (order <= this->order()) return *this;
    PowerSeries1 s(order);
    std::copy(c_.begin(), c_.end(), s.c_.begin());
    return s;
}

double PowerSeries1::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

double PowerSeries1::eval(double x) const {
    double acc = 0.0;
    for (int k = order(); k >= 0; --k) acc = acc * x + c_[static_cast<std::size_t>(k)];
    return acc;
}

PowerSeries1 PowerSeries1::derivative() const {
    if (order() == 0) return PowerSeries1(0);
    PowerSeries1 s(order() - 1);
    for (int k = 0; k <= s.order(); ++k)
        s.c_[static_cast<std::size_t>(k)] = (k + 1) * (*this)[k + 1];
    return s;
}

PowerSeries1 PowerSeries1::antiderivative() const {
    PowerSeries1 s(order() + 1);
    for (int k = 0; k <= order(); ++k)
        s.c_[static_cast<std::size_t>(k) + 1] = (*this)[k] / (k + 1);
    return s;
}

PowerSeries1 PowerSeries1::scaled_argument(double m) const {
    PowerSeries1 s(order());
    double p = 1.0;
    for (int k = 0; k <= order(); ++k, p *= m) s.c_[static_cast<std::size_t>(k)] = p * (*this)[k];
    return s;
}

PowerSeries1 PowerSeries1::operator-() const {
    PowerSeries1 s(order());
    for (int k = 0; k <= order(); ++k) s.c_[static_cast<std::size_t>(k)] = -(*this)[k];
    return s;
}

PowerSeries1 operator+(const PowerSeries1& a, const PowerSeries1& b) {
    PowerSeries1 s(std::min(a.order(), b.order()));
    for (int k = 0; k <= s.order(); ++k) s.c_[static_cast<std::size_t>(k)] = a[k] + b[k];
    return s;
}

PowerSeries1 operator-(const PowerSeries1& a, const PowerSeries1& b) {
    PowerSeries1 s(std::min(a.order(), b.order()));
    for (int k = 0; k <= s.order(); ++k) s.c_[static_cast<std::size_t>(k)] = a[k] - b[k];
    return s;
}

PowerSeries1 operator*(const PowerSeries1& a, const PowerSeries1& b) {
    PowerSeries1 s(std::min(a.order(), b.order()));
    for (int i = 0; i <= std::min(a.order(), s.order()); ++i) {
        double ai = a[i];
        if (ai == 0.0) continue;
        int jmax = std::min(b.order(), s.order() - i);
        for (int j = 0; j <= jmax; ++j) s.c_[static_cast<std::size_t>(i + j)] += ai * b[j];
    }
    return s;
}

PowerSeries1 operator*(double s, const PowerSeries1& a) {
    PowerSeries1 r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.c_[static_cast<std::size_t>(k)] = s * a[k];
    return r;
}

PowerSeries1 operator+(const PowerSeries1& a, double s) {
    PowerSeries1 r = a;
    r.c_[0] += s;
    return r;
}

PowerSeries1 operator-(double s, const PowerSeries1& a) {
    PowerSeries1 r = -a;
    r.c_[0] += s;
    return r;
}

PowerSeries1 recip(const PowerSeries1& a, double unit_tol) {
    if (std::abs(a[0]) <= unit_tol)
        raise(errc::zero_constant_term, "series reciprocal needs an invertible constant term");
    PowerSeries1 b = PowerSeries1::constant(1.0 / a[0], a.order());
    int correct = 0; // accurate through this degree
    while (correct < a.order()) {
        b = b * (2.0 - a * b);
        correct = 2 * correct + 1;
    }
    return b;
}

PowerSeries1 sqrt(const PowerSeries1& a, double unit_tol) {
    if (a[0] <= unit_tol)
        raise(errc::nonpositive_constant_term, "series square root needs a positive constant term");
    PowerSeries1 b = PowerSeries1::constant(std::sqrt(a[0]), a.order());
    int correct = 0;
    while (correct < a.order()) {
        b = 0.5 * (b + a * recip(b, unit_tol));
        correct = 2 * correct + 1;
    }
    return b;
}

PowerSeries1 compose(const PowerSeries1& outer, const PowerSeries1& inner) {
    double scale = std::max(1.0, inner.max_abs());
    if (std::abs(inner[0]) > 1e-12 * scale)
        raise(errc::param_out_of_range, "composition needs an inner series without constant term");
    PowerSeries1 acc = PowerSeries1::constant(outer[outer.order()], inner.order());
    for (int n = outer.order() - 1; n >= 0; --n) acc = acc * inner + outer[n];
    return acc;
}

// ---------------------------------------------------------------------------
// PowerSeries2

PowerSeries2::PowerSeries2(int order)
    : order_(order),
      c_(static_cast<std::size_t>((order + 1) * (order + 2) / 2), 0.0) {
    if (order < 0) raise(errc::order_too_low, "series order must be nonnegative");
}

PowerSeries2 PowerSeries2::constant(double a, int order) {
    PowerSeries2 s(order);
    s.c_[0] = a;
    return s;
}

PowerSeries2 PowerSeries2::variable(Axis axis, int order) {
    PowerSeries2 s(std::max(order, 1));
    if (axis == Axis::x)
        s.set(1, 0, 1.0);
    else
        s.set(0, 1, 1.0);
    return s;
}

PowerSeries2 PowerSeries2::from_axis_series(const PowerSeries1& s, Axis axis, int order) {
    PowerSeries2 r(order);
    for (int k = 0; k <= std::min(order, s.order()); ++k) {
        if (axis == Axis::x)
            r.set(k, 0, s[k]);
        else
            r.set(0, k, s[k]);
    }
    return r;
}

void PowerSeries2::set(int j, int k, double value) {
    if (j < 0 || k < 0 || j + k > order_) throw std::out_of_range("PowerSeries2::set");
    c_[index(j, k)] = value;
}

void PowerSeries2::add_to(int j, int k, double value) {
    if (j < 0 || k < 0 || j + k > order_) throw std::out_of_range("PowerSeries2::add_to");
    c_[index(j, k)] += value;
}

PowerSeries2 PowerSeries2::truncated(int order) const {
    PowerSeries2 s(std::min(order, order_));
    std::copy(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(s.c_.size()), s.c_.begin());
    return s;
}

PowerSeries2 PowerSeries2::extended(int order) const {
    if (order <= order_) return *this;
    PowerSeries2 s(order);
    std::copy(c_.begin(), c_.end(), s.c_.begin());
    return s;
}

double PowerSeries2::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

double PowerSeries2::eval(double x, double y) const {
    double acc = 0.0;
    for (int k = order_; k >= 0; --k) {
        double row = 0.0;
        for (int j = order_ - k; j >= 0; --j) row = row * x + c_[index(j, k)];
        acc = acc * y + row;
    }
    return acc;
}

PowerSeries2 PowerSeries2::diff(Axis axis) const {
    PowerSeries2 s(std::max(order_ - 1, 0));
    for (int d = 0; d <= s.order(); ++d) {
        for (int k = 0; k <= d; ++k) {
            int j = d - k;
            double v = (axis == Axis::x) ? (j + 1) * coeff(j + 1, k)
                                         : (k + 1) * coeff(j, k + 1);
            s.c_[s.index(j, k)] = v;
        }
    }
    return s;
}

PowerSeries1 PowerSeries2::y_row(int k) const {
    int n = std::max(order_ - k, 0);
    PowerSeries1 s(n);
    for (int j = 0; j <= n; ++j) s.at(j) = coeff(j, k);
    return s;
}

PowerSeries1 PowerSeries2::x_col(int j) const {
    int n = std::max(order_ - j, 0);
    PowerSeries1 s(n);
    for (int k = 0; k <= n; ++k) s.at(k) = coeff(j, k);
    return s;
}

void PowerSeries2::set_y_row(int k, const PowerSeries1& s) {
    for (int j = 0; j + k <= order_; ++j) c_[index(j, k)] = s[j];
}

PowerSeries2 PowerSeries2::scaled_arguments(double m) const {
    PowerSeries2 s(order_);
    for (int d = 0; d <= order_; ++d) {
        double p = std::pow(m, d);
        for (int k = 0; k <= d; ++k) s.c_[index(d - k, k)] = p * c_[index(d - k, k)];
    }
    return s;
}

PowerSeries2 PowerSeries2::rotated_arguments(double c, double s) const {
    // Substitute x -> c x - s y, y -> s x + c y and expand binomially.
    PowerSeries2 r(order_);
    std::vector<std::vector<double>> binom(static_cast<std::size_t>(order_) + 1);
    for (int n = 0; n <= order_; ++n) {
        binom[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 1.0);
        for (int i = 1; i < n; ++i)
            binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] =
                binom[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(i) - 1] +
                binom[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(i)];
    }
    for (int j = 0; j <= order_; ++j) {
        for (int k = 0; j + k <= order_; ++k) {
            double cjk = coeff(j, k);
            if (cjk == 0.0) continue;
            for (int p = 0; p <= j; ++p) {
                double term_x = binom[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)] *
                                std::pow(c, p) * std::pow(-s, j - p);
                for (int q = 0; q <= k; ++q) {
                    double term_y =
                        binom[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] *
                        std::pow(s, q) * std::pow(c, k - q);
                    r.add_to(p + q, (j - p) + (k - q), cjk * term_x * term_y);
                }
            }
        }
    }
    return r;
}

PowerSeries2 PowerSeries2::operator-() const {
    PowerSeries2 s(order_);
    for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i] = -c_[i];
    return s;
}

PowerSeries2 operator+(const PowerSeries2& a, const PowerSeries2& b) {
    PowerSeries2 s(std::min(a.order_, b.order_));
    for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] = a.c_[i] + b.c_[i];
    return s;
}

PowerSeries2 operator-(const PowerSeries2& a, const PowerSeries2& b) {
    PowerSeries2 s(std::min(a.order_, b.order_));
    for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] = a.c_[i] - b.c_[i];
    return s;
}

PowerSeries2 operator*(const PowerSeries2& a, const PowerSeries2& b) {
    PowerSeries2 s(std::min(a.order_, b.order_));
    int n = s.order();
    for (int d1 = 0; d1 <= std::min(a.order_, n); ++d1) {
        for (int k1 = 0; k1 <= d1; ++k1) {
            double av = a.c_[a.index(d1 - k1, k1)];
            if (av == 0.0) continue;
            int dmax = std::min(b.order_, n - d1);
            for (int d2 = 0; d2 <= dmax; ++d2) {
                for (int k2 = 0; k2 <= d2; ++k2) {
                    double bv = b.c_[b.index(d2 - k2, k2)];
                    if (bv == 0.0) continue;
                    s.c_[s.index(d1 + d2 - k1 - k2, k1 + k2)] += av * bv;
                }
            }
        }
    }
    return s;
}

PowerSeries2 operator*(double s, const PowerSeries2& a) {
    PowerSeries2 r(a.order_);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = s * a.c_[i];
    return r;
}

PowerSeries2 operator+(const PowerSeries2& a, double s) {
    PowerSeries2 r = a;
    r.c_[0] += s;
    return r;
}

PowerSeries2 operator-(double s, const PowerSeries2& a) {
    PowerSeries2 r = -a;
    r.c_[0] += s;
    return r;
}

PowerSeries2 recip(const PowerSeries2& a, double unit_tol) {
    double a00 = a.coeff(0, 0);
    if (std::abs(a00) <= unit_tol)
        raise(errc::zero_constant_term, "series reciprocal needs an invertible constant term");
    PowerSeries2 b = PowerSeries2::constant(1.0 / a00, a.order());
    int correct = 0;
    while (correct < a.order()) {
        b = b * (2.0 - a * b);
        correct = 2 * correct + 1;
    }
    return b;
}

PowerSeries2 sqrt(const PowerSeries2& a, double unit_tol) {
    double a00 = a.coeff(0, 0);
    if (a00 <= unit_tol)
        raise(errc::nonpositive_constant_term, "series square root needs a positive constant term");
    PowerSeries2 b = PowerSeries2::constant(std::sqrt(a00), a.order());
    int correct = 0;
    while (correct < a.order()) {
        b = 0.5 * (b + a * recip(b, unit_tol));
        correct = 2 * correct + 1;
    }
    return b;
}

PowerSeries2 compose(const PowerSeries1& outer, const PowerSeries2& inner) {
    double scale = std::max(1.0, inner.max_abs());
    if (std::abs(inner.coeff(0, 0)) > 1e-12 * scale)
        raise(errc::param_out_of_range, "composition needs an inner series without constant term");
    PowerSeries2 acc = PowerSeries2::constant(outer[outer.order()], inner.order());
    for (int n = outer.order() - 1; n >= 0; --n) acc = acc * inner + outer[n];
    return acc;
}

PowerSeries2 divide_by_x_power(const PowerSeries2& g, int k, double rel_tol) {
    if (k < 0) raise(errc::param_out_of_range, "divide_by_x_power needs k >= 0");
    double scale = g.max_abs();
    double bound = rel_tol * scale;
    for (int j = 0; j <= std::min(k, g.order()); ++j) {
        for (int q = 0; j + q <= g.order(); ++q) {
            if (std::abs(g.coeff(j, q)) > bound)
                raise(errc::not_divisible, "nonzero coefficient below x-degree " + std::to_string(k + 1));
        }
    }
    int n = g.order() - (k + 1);
    if (n < 0) return PowerSeries2(0);
    PowerSeries2 h(n);
    for (int j = 0; j <= n; ++j)
        for (int q = 0; j + q <= n; ++q) h.set(j, q, g.coeff(j + k + 1, q));
    return h;
}

// ---------------------------------------------------------------------------
// JSON

std::string to_json(const PowerSeries2& s) {
    nlohmann::json j;
    j["order"] = s.order();
    nlohmann::json entries = nlohmann::json::array();
    for (int d = 0; d <= s.order(); ++d) {
        for (int k = 0; k <= d; ++k) {
            double c = s.coeff(d - k, k);
            if (c != 0.0) entries.push_back({d - k, k, c});
        }
    }
    j["coeffs"] = std::move(entries);
    return j.dump();
}

PowerSeries2 series2_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        raise(errc::config_error, "series JSON needs {order, coeffs}");
    PowerSeries2 s(j.at("order").get<int>());
    for (const auto& e : j.at("coeffs")) {
        if (!e.is_array() || e.size() != 3)
            raise(errc::config_error, "series coefficient entries are [j,k,c]");
        s.set(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
    }
    return s;
}

std::string to_json(const PowerSeries1& s) {
    nlohmann::json j;
    j["order"] = s.order();
    j["coeffs"] = s.coeffs();
    return j.dump();
}

PowerSeries1 series1_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("coeffs"))
        raise(errc::config_error, "series JSON needs {coeffs}");
    return PowerSeries1::from_coeffs(j.at("coeffs").get<std::vector<double>>());
}

// ---------------------------------------------------------------------------
// ComplexSeries1

ComplexSeries1::ComplexSeries1(std::vector<std::complex<double>> coeffs, double t0, double radius)
    : c_(std::move(coeffs)), t0_(t0), radius_(radius) {
    if (c_.empty()) c_.assign(1, 0.0);
}

double estimate_radius(const PowerSeries1& s) {
    int hi = -1;
    for (int k = s.order(); k >= 1; --k)
        if (s[k] != 0.0) { hi = k; break; }
    int lo = -1;
    for (int k = 1; k <= s.order(); ++k)
        if (s[k] != 0.0) { lo = k; break; }
    if (hi < 0 || lo < 0 || hi == lo) return std::numeric_limits<double>::infinity();
    double ratio = std::abs(s[hi]) / std::abs(s[lo]);
    return 0.8 * std::pow(ratio, -1.0 / (hi - lo));
}

ComplexSeries1 ComplexSeries1::from_real(const PowerSeries1& s, double t0, double radius) {
    std::vector<std::complex<double>> c(s.coeffs().begin(), s.coeffs().end());
    if (radius <= 0.0) radius = estimate_radius(s);
    return ComplexSeries1(std::move(c), t0, radius);
}

std::complex<double> ComplexSeries1::eval(std::complex<double> z) const {
    if (!in_radius(z))
        raise(errc::radius_exceeded, "complex evaluation outside the trusted disk");
    std::complex<double> w = z - t0_;
    std::complex<double> acc = 0.0;
    for (int k = order(); k >= 0; --k) acc = acc * w + c_[static_cast<std::size_t>(k)];
    return acc;
}

ComplexSeries1 ComplexSeries1::derivative() const {
    std::vector<std::complex<double>> c(std::max<std::size_t>(c_.size() - 1, 1), 0.0);
    for (std::size_t k = 1; k < c_.size(); ++k) c[k - 1] = static_cast<double>(k) * c_[k];
    return ComplexSeries1(std::move(c), t0_, radius_);
}

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::zero_constant_term: return "ZeroConstantTerm";
        case errc::nonpositive_constant_term: return "NonPositiveConstantTerm";
        case errc::not_divisible: return "NotDivisible";
        case errc::not_normalized: return "NotNormalized";
        case errc::lightlike_point: return "LightlikePoint";
        case errc::not_lightlike: return "NotLightlike";
        case errc::identically_lightlike: return "IdenticallyLightlike";
        case errc::not_degenerate: return "NotDegenerate";
        case errc::param_out_of_range: return "ParamOutOfRange";
        case errc::order_too_low: return "OrderTooLow";
        case errc::series_blowup: return "SeriesBlowup";
        case errc::grid_too_coarse: return "GridTooCoarse";
        case errc::singular_coefficient: return "SingularCoefficient";
        case errc::not_solution_pair: return "NotSolutionPair";
        case errc::radius_exceeded: return "RadiusExceeded";
        case errc::imaginary_residue: return "ImaginaryResidue";
        case errc::not_spacelike: return "NotSpacelike";
        case errc::not_a_graph: return "NotAGraph";
        case errc::config_error: return "ConfigError";
        case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

} // namespace zmclab

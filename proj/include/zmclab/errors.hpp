#pragma once

#include <stdexcept>
#include <string>

namespace zmclab {

/// Failure modes surfaced by the library.  Each value corresponds to a
/// documented precondition of some operation; see the operation comments.
enum class errc {
    zero_constant_term,     ///< series reciprocal of a unit-less series
    nonpositive_constant_term, ///< series square root needs a positive constant term
    not_divisible,          ///< low-order coefficients block division by a power of x
    not_normalized,         ///< graph data violates f(0,0)=0, f_x(0,0)=0, f_y(0,0)=1
    lightlike_point,        ///< curvature requested where the induced metric degenerates
    not_lightlike,          ///< degeneracy test at a point that is not light-like
    identically_lightlike,  ///< whole germ is light-like, no finite witness exists
    not_degenerate,         ///< profile requested for a germ with gamma'(0) != 0
    param_out_of_range,     ///< closed-form family parameter outside its domain
    order_too_low,          ///< solver needs truncation order >= 2
    series_blowup,          ///< intermediate series operation lost its unit term
    grid_too_coarse,        ///< integration step too large for the requested grid
    singular_coefficient,   ///< ODE coefficient has a pole inside the grid
    not_solution_pair,      ///< alpha/beta do not satisfy the profile ODEs
    radius_exceeded,        ///< complex evaluation outside the trusted disk
    imaginary_residue,      ///< conjugate-pair average failed to be real
    not_spacelike,          ///< curve fails <c',c'> > 0
    not_a_graph,            ///< ruled patch cannot be inverted as a graph over (x,y)
    config_error,           ///< malformed run configuration
    io_error,               ///< file could not be read or written
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

} // namespace zmclab

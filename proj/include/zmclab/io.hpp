#pragma once

#include "zmclab/curves.hpp"
#include "zmclab/geometry.hpp"

#include <string>
#include <vector>

namespace zmclab {

/// Rectangular sampling window for a graph surface.
struct SampleBox {
    double x0 = -0.3;
    double x1 = 0.3;
    double y0 = -0.3;
    double y1 = 0.3;
    int nx = 101;
    int ny = 101;
};

/// Classify every node of the box in row-major order (y outer, x inner).
/// Rows are computed on the worker pool; the result is independent of the
/// pool size.  Throws grid_too_coarse if either count is below 2.
std::vector<CausalSample> sample_grid(const GraphSurface& surface,
                                      const SampleBox& box,
                                      double band_tol = 1e-9);

/// Shortest decimal form that parses back to the same binary64 value.
/// Used for every number we emit so repeated runs are byte-identical.
std::string format_double(double value);

/// CSV with header x,y,f,B,A,H,K,tag.  Curvatures are "nan" on the
/// light-like band, matching the classification contract.
std::string grid_csv(const std::vector<CausalSample>& rows);

/// CSV with header u,v,P0,P1,P2,detI,immersed for a sampled patch.
std::string patch_csv(const SampledPatch& patch);

/// Wavefront OBJ mesh for a sampled patch.  Vertices keep the sample
/// order (v outer, u inner); faces are quads over consecutive grid cells.
/// Each vertex line carries a trailing 0/1 immersion flag, so degenerate
/// samples stay in the mesh instead of being dropped.
std::string patch_obj(const SampledPatch& patch);

/// Convert a classified graph grid into a patch (P = (f, x, y), detI = B)
/// so the OBJ writer can mesh it.  Band and non-graph samples are kept
/// and flagged rather than removed.
SampledPatch patch_from_grid(const std::vector<CausalSample>& rows,
                             const SampleBox& box);

/// Write content to path, creating parent directories.  Throws io_error.
void write_file(const std::string& path, const std::string& content);

/// Read a whole file.  Throws io_error when it cannot be opened.
std::string read_file(const std::string& path);

} // namespace zmclab

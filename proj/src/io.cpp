#include "zmclab/io.hpp"

#include "zmclab/errors.hpp"
#include "zmclab/parallel.hpp"

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace zmclab {

namespace {

double grid_node(double lo, double hi, int i, int n) {
    // Endpoints exactly, interior nodes by a single fused expression so the
    // sample positions do not depend on traversal order.
    if (i == 0) return lo;
    if (i == n - 1) return hi;
    return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(n - 1));
}

void check_box(const SampleBox& box) {
    if (box.nx < 2 || box.ny < 2) raise(errc::grid_too_coarse, "sample_grid: need at least 2 nodes per axis");
    if (!(box.x0 < box.x1) || !(box.y0 < box.y1))
        raise(errc::param_out_of_range, "sample_grid: box must satisfy x0 < x1 and y0 < y1");
}

} // namespace

std::vector<CausalSample> sample_grid(const GraphSurface& surface, const SampleBox& box,
                                      double band_tol) {
    check_box(box);
    std::size_t nx = static_cast<std::size_t>(box.nx);
    std::size_t ny = static_cast<std::size_t>(box.ny);
    std::vector<CausalSample> rows(nx * ny);
    parallel_for(ny, [&](std::size_t iy) {
        double y = grid_node(box.y0, box.y1, static_cast<int>(iy), box.ny);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            double x = grid_node(box.x0, box.x1, static_cast<int>(ix), box.nx);
            rows[iy * nx + ix] = classify_point(surface, x, y, band_tol);
        }
    });
    return rows;
}

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string grid_csv(const std::vector<CausalSample>& rows) {
    std::string out = "x,y,f,B,A,H,K,tag\n";
    for (const CausalSample& s : rows) {
        out += format_double(s.x);
        out += ',';
        out += format_double(s.y);
        out += ',';
        out += format_double(s.f);
        out += ',';
        out += format_double(s.B);
        out += ',';
        out += format_double(s.A);
        out += ',';
        out += format_double(s.H);
        out += ',';
        out += format_double(s.K);
        out += ',';
        out += to_string(s.tag);
        out += '\n';
    }
    return out;
}

std::string patch_csv(const SampledPatch& patch) {
    std::string out = "u,v,P0,P1,P2,detI,immersed\n";
    for (const PatchSample& s : patch.samples) {
        out += format_double(s.u);
        out += ',';
        out += format_double(s.v);
        out += ',';
        out += format_double(s.P[0]);
        out += ',';
        out += format_double(s.P[1]);
        out += ',';
        out += format_double(s.P[2]);
        out += ',';
        out += format_double(s.detI);
        out += ',';
        out += s.immersed ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string patch_obj(const SampledPatch& patch) {
    int nu = patch.grid.nu;
    int nv = patch.grid.nv;
    if (nu < 2 || nv < 2) raise(errc::grid_too_coarse, "patch_obj: need at least a 2x2 grid");
    if (patch.samples.size() != static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv))
        raise(errc::param_out_of_range, "patch_obj: sample count does not match the grid");

    std::string out;
    out += "# surface patch mesh\n";
    out += "# vertex columns: x y t flag, ambient point (t, x, y), flag 1 = immersed\n";
    out += "# degenerate samples are kept and flagged, not dropped\n";
    for (const PatchSample& s : patch.samples) {
        out += "v ";
        out += format_double(s.P[1]);
        out += ' ';
        out += format_double(s.P[2]);
        out += ' ';
        out += format_double(s.P[0]);
        out += ' ';
        out += s.immersed ? '1' : '0';
        out += '\n';
    }
    for (int iv = 0; iv + 1 < nv; ++iv) {
        for (int iu = 0; iu + 1 < nu; ++iu) {
            int a = iv * nu + iu + 1;
            int b = a + 1;
            int c = (iv + 1) * nu + iu + 2;
            int d = c - 1;
            out += "f ";
            out += std::to_string(a);
            out += ' ';
            out += std::to_string(b);
            out += ' ';
            out += std::to_string(c);
            out += ' ';
            out += std::to_string(d);
            out += '\n';
        }
    }
    return out;
}

SampledPatch patch_from_grid(const std::vector<CausalSample>& rows, const SampleBox& box) {
    check_box(box);
    if (rows.size() != static_cast<std::size_t>(box.nx) * static_cast<std::size_t>(box.ny))
        raise(errc::param_out_of_range, "patch_from_grid: sample count does not match the box");
    SampledPatch patch;
    patch.grid.u0 = box.x0;
    patch.grid.u1 = box.x1;
    patch.grid.nu = box.nx;
    patch.grid.v0 = box.y0;
    patch.grid.v1 = box.y1;
    patch.grid.nv = box.ny;
    patch.samples.reserve(rows.size());
    for (const CausalSample& s : rows) {
        PatchSample p;
        p.u = s.x;
        p.v = s.y;
        p.P = {s.f, s.x, s.y};
        p.detI = s.B;
        // A graph always has a rank-2 Jacobian; detI records where the
        // induced metric degenerates.
        p.immersed = true;
        patch.samples.push_back(p);
    }
    return patch;
}

void write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path(), ec);
        if (ec) raise(errc::io_error, "cannot create directory " + p.parent_path().string());
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) raise(errc::io_error, "cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) raise(errc::io_error, "short write to " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) raise(errc::io_error, "read failure on " + path);
    return ss.str();
}

} // namespace zmclab

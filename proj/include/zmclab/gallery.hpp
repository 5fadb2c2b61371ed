#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "zmclab/ck_solver.hpp"
#include "zmclab/curves.hpp"
#include "zmclab/geometry.hpp"

namespace zmclab {

enum class GalleryKind { graph, series_germ, bjorling, ruled };

/// Built-in example surface.  Closed-form entries carry an exact jet and the
/// Taylor series of the normalized form; the printed_* fields preserve the
/// source text verbatim, and `note` records where the recomputed data
/// deviates from it.  Optional members are empty when the entry has no such
/// representation.
struct GalleryEntry {
    std::string name;
    GalleryKind kind = GalleryKind::graph;
    std::string summary;

    std::string printed_form;     ///< surface formula as printed
    std::string normalized_form;  ///< formula actually used by the checks
    std::string printed_gamma;
    std::string printed_alpha, printed_beta, printed_class;
    std::string class_tag;   ///< recomputed class of the normalized germ
    std::string prediction;  ///< expected causal prediction (degenerate entries)
    std::string note;        ///< printed-vs-recomputed deviations, if any

    bool zmc = true;         ///< mean curvature form vanishes identically
    bool lightlike = false;  ///< induced metric degenerate on the whole germ
    bool degenerate = true;  ///< light-like origin with vanishing gamma'(0)
    double box = 0.3;        ///< half-width of the sample box for checks

    std::function<SurfaceJet(double, double)> jet;
    std::function<InitialCurve(int)> gamma;    ///< initial data at given order
    std::function<PowerSeries2(int)> taylor;   ///< normalized-form Taylor series
    std::function<GraphSurface(int)> germ;     ///< normalized germ factory
    std::function<double(double)> alpha, beta; ///< oracle profile functions
    std::vector<double> alpha_poles;           ///< y-values excluded from checks

    std::function<NullCurve()> null_curve;                          ///< bjorling kind
    std::function<std::array<double, 3>(double, double)> patch_rep; ///< (u,v) closed form
    std::function<RuledLightlike()> ruled;                          ///< ruled kind
    std::function<std::array<double, 3>(double)> director_rep;      ///< printed director
};

/// All built-in entries, fixed order.
const std::vector<GalleryEntry>& gallery_list();
/// Lookup by name; raises param_out_of_range for unknown names.
const GalleryEntry& gallery_entry(std::string_view name);

struct CheckResult {
    std::string check;
    bool pass = false;
    double value = 0;  ///< measured residual / deviation
    double tol = 0;
    std::string detail;
};

struct RegressionReport {
    std::string entry;
    bool pass = true;
    std::vector<CheckResult> checks;
};

/// Run every check the entry has data for: residual of the mean-curvature
/// form (or of B for light-like entries) on a grid_n x grid_n sample box,
/// profile recomputation against the oracle functions, family and causal
/// prediction agreement, evolution round-trips against the stored Taylor
/// form, admissibility witness extraction, and the curve-based
/// reconstruction comparisons.  `order` is the working series order.
RegressionReport regression_check(const GalleryEntry& e, int grid_n = 41, int order = 12);

} // namespace zmclab

#include "zmclab/approx.hpp"
#include "zmclab/ck_solver.hpp"
#include "zmclab/config.hpp"
#include "zmclab/curves.hpp"
#include "zmclab/errors.hpp"
#include "zmclab/gallery.hpp"
#include "zmclab/geometry.hpp"
#include "zmclab/io.hpp"
#include "zmclab/series.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

using zmclab::RunConfig;
using ordered_json = nlohmann::ordered_json;

zmclab::SampleBox box_of(const RunConfig& cfg) {
    return {cfg.x0, cfg.x1, cfg.y0, cfg.y1, cfg.nx, cfg.ny};
}

ordered_json box_json(const RunConfig& cfg) {
    return ordered_json::array({cfg.x0, cfg.x1, cfg.y0, cfg.y1});
}

void emit(const RunConfig& cfg, const ordered_json& doc) {
    if (cfg.json) std::cout << doc.dump(2) << "\n";
}

void note(const std::string& line) { std::cerr << line << "\n"; }

std::string out_path(const RunConfig& cfg, const std::string& file) {
    return cfg.out + "/" + file;
}

ordered_json residual_json(const zmclab::ResidualReport& r) {
    return ordered_json{{"max_abs", r.max_abs}, {"order", r.order}, {"tol", r.tol}, {"pass", r.pass}};
}

/// Germ of a gallery entry at the requested order, preferring the exact
/// closed form when the entry carries one.
zmclab::GraphSurface entry_germ(const zmclab::GalleryEntry& e, int order) {
    if (e.germ) return e.germ(order);
    if (e.taylor && e.jet)
        return zmclab::GraphSurface::from_series_and_closed_form(e.taylor(order), e.jet, e.name);
    if (e.taylor) return zmclab::GraphSurface::from_series(e.taylor(order));
    if (e.jet) return zmclab::GraphSurface::from_closed_form(e.jet, e.name);
    zmclab::raise(zmclab::errc::param_out_of_range,
                  "entry '" + e.name + "' has no graph representation");
}

int cmd_construct(const RunConfig& cfg) {
    zmclab::InitialCurve gamma = zmclab::initial_curve_from(cfg, cfg.order);
    zmclab::PowerSeries2 phi = zmclab::phi_series(cfg);
    zmclab::GraphSurface s = zmclab::ck_solve(gamma, phi, cfg.order);
    zmclab::ResidualReport residual = zmclab::verify_admissible(s, phi, cfg.tol);
    std::vector<zmclab::CausalSample> grid = zmclab::sample_grid(s, box_of(cfg), cfg.band_tol);

    ordered_json doc;
    doc["command"] = "construct";
    doc["order"] = cfg.order;
    doc["u"] = cfg.u;
    doc["v"] = cfg.v;
    doc["phi"] = cfg.phi;
    doc["box"] = box_json(cfg);
    doc["grid"] = ordered_json::array({cfg.nx, cfg.ny});
    doc["residual"] = residual_json(residual);
    doc["series"] = ordered_json::parse(zmclab::to_json(s.series()));

    zmclab::write_file(out_path(cfg, "surface.json"), doc.dump(2) + "\n");
    zmclab::write_file(out_path(cfg, "grid.csv"), zmclab::grid_csv(grid));
    note("construct: wrote " + out_path(cfg, "surface.json") + " and grid.csv, residual " +
         zmclab::format_double(residual.max_abs) + (residual.pass ? " (pass)" : " (FAIL)"));
    emit(cfg, doc);
    return residual.pass ? 0 : 1;
}

int cmd_classify(const RunConfig& cfg) {
    zmclab::InitialCurve gamma = zmclab::initial_curve_from(cfg, cfg.order);
    ordered_json doc;
    doc["command"] = "classify";
    if (gamma.degenerate()) {
        zmclab::ApproxProfile p = zmclab::profile_of(gamma, cfg.order);
        doc["degeneracy"] = "degenerate";
        doc["mu"] = p.mu;
        doc["delta"] = p.delta;
        doc["Delta"] = p.Delta;
        doc["family"] = zmclab::to_string(p.alpha_family);
        doc["c"] = p.c;
        doc["prediction"] = zmclab::to_string(zmclab::predict_causal_type(p));
    } else {
        zmclab::GraphSurface s = zmclab::ck_solve(gamma, zmclab::phi_series(cfg), cfg.order);
        zmclab::NullLevelTrace trace = zmclab::trace_null_level(s);
        doc["degeneracy"] = "nondegenerate";
        ordered_json pts = ordered_json::array();
        for (const auto& p : trace.points) pts.push_back(ordered_json::array({p[0], p[1]}));
        doc["trace"] = ordered_json{{"points", std::move(pts)},
                                    {"origin_index", trace.origin_index},
                                    {"max_B_residual", trace.max_B_residual}};
    }
    zmclab::write_file(out_path(cfg, "classify.json"), doc.dump(2) + "\n");
    note("classify: " + doc["degeneracy"].get<std::string>() + ", wrote " +
         out_path(cfg, "classify.json"));
    emit(cfg, doc);
    return 0;
}

/// Closed forms of the second and third coefficient functions of a
/// degenerate germ, rescaled from the catalog to the germ's own
/// characteristic: a(y) = s a_cat(s y + c) with s = sqrt(|mu|).
struct ProfilePair {
    zmclab::ProfileFunction a2, a3;
    std::vector<double> poles;
};

ProfilePair profile_pair(const zmclab::InitialCurve& gamma, const zmclab::ApproxProfile& p,
                         int order) {
    using zmclab::AlphaFamily;
    double s = 1.0;
    if (p.alpha_family == AlphaFamily::plus) s = std::sqrt(p.mu);
    if (p.alpha_family == AlphaFamily::minusI || p.alpha_family == AlphaFamily::minusII ||
        p.alpha_family == AlphaFamily::minusIII)
        s = std::sqrt(-p.mu);

    zmclab::ProfileFunction cat = zmclab::alpha_closed_form(p.alpha_family, p.c, order);
    ProfilePair out;
    out.a2.series = p.a_k.at(0);
    out.a2.value = [cat, s](double y) { return s * cat.value(s * y); };
    out.a2.slope = [cat, s](double y) { return s * s * cat.slope(s * y); };

    double u3 = 3.0 * gamma.u[3];
    double v3 = 3.0 * gamma.v[3];
    zmclab::ProfileFunction base = zmclab::beta_closed_form(p.alpha_family, p.c, 1.0, 0.0, order);
    double g1 = base.slope(0.0);
    if (std::abs(g1) < 1e-300)
        zmclab::raise(zmclab::errc::singular_coefficient,
                      "third coefficient family has a flat slope at the base point");
    double c1 = (v3 / s) / g1;
    double c2 = u3 - c1 * base.value(0.0);
    zmclab::ProfileFunction full = zmclab::beta_closed_form(p.alpha_family, p.c, c1, c2, order);
    out.a3.series = p.a_k.at(1);
    out.a3.value = [full, s](double y) { return full.value(s * y); };
    out.a3.slope = [full, s](double y) { return s * full.slope(s * y); };

    // Pole locations of a2 in the germ's own coordinate.
    const double pi = 3.14159265358979323846;
    if (p.alpha_family == AlphaFamily::plus) {
        out.poles.push_back((pi / 2 - p.c) / s);
        out.poles.push_back((-pi / 2 - p.c) / s);
    } else if (p.alpha_family == AlphaFamily::zeroII) {
        out.poles.push_back(-p.c);
    } else if (p.alpha_family == AlphaFamily::minusII) {
        out.poles.push_back(-p.c / s);
    }
    return out;
}

int cmd_approx(const RunConfig& cfg) {
    zmclab::InitialCurve gamma = zmclab::initial_curve_from(cfg, std::max(cfg.order, cfg.k_max));
    zmclab::ApproxProfile p = zmclab::profile_of(gamma, std::max(cfg.order, 16));
    ProfilePair pair = profile_pair(gamma, p, std::max(cfg.order, 16));

    // Clip the integration window 0.1 away from poles of a2, then snap the
    // ends to step multiples so 0 stays on a node.
    double y0 = cfg.ode_y0, y1 = cfg.ode_y1;
    for (double pole : pair.poles) {
        if (pole <= 0) y0 = std::max(y0, pole + 0.1);
        if (pole >= 0) y1 = std::min(y1, pole - 0.1);
    }
    double h = cfg.ode_step;
    long m0 = static_cast<long>(std::floor(-y0 / h));
    long m1 = static_cast<long>(std::floor(y1 / h));
    if (m0 < 1 || m1 < 1)
        zmclab::raise(zmclab::errc::singular_coefficient,
                      "coefficient pole within 0.1 of the base point");
    zmclab::YGrid grid{-static_cast<double>(m0) * h, static_cast<double>(m1) * h, h};

    std::vector<std::array<double, 2>> init;
    for (int k = 4; k <= cfg.k_max; ++k)
        init.push_back({static_cast<double>(k) * gamma.u[k],
                        static_cast<double>(k) * gamma.v[k]});
    zmclab::AkTables tables = zmclab::solve_ak_recursion(pair.a2, pair.a3, init, cfg.k_max, grid);

    ordered_json doc;
    doc["command"] = "approx";
    doc["mu"] = p.mu;
    doc["delta"] = p.delta;
    doc["Delta"] = p.Delta;
    doc["family"] = zmclab::to_string(p.alpha_family);
    doc["c"] = p.c;
    doc["prediction"] = zmclab::to_string(zmclab::predict_causal_type(p));
    doc["k"] = cfg.k_max;
    doc["ygrid"] = ordered_json::array({grid.y0, grid.y1});
    doc["step"] = grid.step;

    std::string profile_csv = "mu,delta,Delta,family,c,prediction\n";
    profile_csv += zmclab::format_double(p.mu);
    profile_csv += ',';
    profile_csv += zmclab::format_double(p.delta);
    profile_csv += ',';
    profile_csv += zmclab::format_double(p.Delta);
    profile_csv += ',';
    profile_csv += zmclab::to_string(p.alpha_family);
    profile_csv += ',';
    profile_csv += zmclab::format_double(p.c);
    profile_csv += ',';
    profile_csv += zmclab::to_string(zmclab::predict_causal_type(p));
    profile_csv += '\n';
    zmclab::write_file(out_path(cfg, "approx_profile.csv"), profile_csv);

    ordered_json files = ordered_json::array({"approx_profile.csv"});
    for (int k = 2; k <= cfg.k_max; ++k) {
        const auto& val = tables.values[static_cast<std::size_t>(k) - 2];
        const auto& slo = tables.slopes[static_cast<std::size_t>(k) - 2];
        std::string csv = "y,value,slope\n";
        for (std::size_t i = 0; i < tables.y.size(); ++i) {
            csv += zmclab::format_double(tables.y[i]);
            csv += ',';
            csv += zmclab::format_double(val[i]);
            csv += ',';
            csv += zmclab::format_double(slo[i]);
            csv += '\n';
        }
        std::string name = "approx_a" + std::to_string(k) + ".csv";
        zmclab::write_file(out_path(cfg, name), csv);
        files.push_back(name);
    }
    doc["files"] = files;
    note("approx: wrote " + std::to_string(files.size()) + " tables under " + cfg.out);
    emit(cfg, doc);
    return 0;
}

int cmd_bjorling(const RunConfig& cfg) {
    zmclab::NullCurve curve = [&]() {
        if (cfg.curve == "helicoid_null") return zmclab::helicoid_null(cfg.t0, cfg.t1);
        std::array<zmclab::ComplexSeries1, 3> comps{
            zmclab::ComplexSeries1::from_real(zmclab::PowerSeries1::from_coeffs(cfg.c0)),
            zmclab::ComplexSeries1::from_real(zmclab::PowerSeries1::from_coeffs(cfg.c1)),
            zmclab::ComplexSeries1::from_real(zmclab::PowerSeries1::from_coeffs(cfg.c2))};
        return zmclab::NullCurve(comps, cfg.t0, cfg.t1);
    }();
    zmclab::PatchGrid grid{cfg.x0, cfg.x1, cfg.nx, cfg.y0, cfg.y1, cfg.ny};
    zmclab::SampledPatch patch = zmclab::bjorling_reconstruct(curve, grid);
    zmclab::write_file(out_path(cfg, "patch.csv"), zmclab::patch_csv(patch));
    zmclab::write_file(out_path(cfg, "patch.obj"), zmclab::patch_obj(patch));

    ordered_json doc;
    doc["command"] = "bjorling";
    doc["curve"] = cfg.curve;
    doc["samples"] = patch.samples.size();
    doc["files"] = ordered_json::array({"patch.csv", "patch.obj"});
    note("bjorling: wrote patch.csv and patch.obj under " + cfg.out);
    emit(cfg, doc);
    return 0;
}

int cmd_ruled(const RunConfig& cfg) {
    zmclab::SpacelikeCurve base = [&]() {
        if (cfg.base == "ellipse") return zmclab::ellipse_curve(cfg.ellipse_a);
        zmclab::PowerSeries1 psi =
            cfg.psi.empty() ? zmclab::PowerSeries1(0) : zmclab::PowerSeries1::from_coeffs(cfg.psi);
        return zmclab::SpacelikeCurve::graph_profile(psi, cfg.t0, cfg.t1);
    }();
    zmclab::DirectorBranch branch =
        cfg.branch == "plus" ? zmclab::DirectorBranch::plus : zmclab::DirectorBranch::minus;
    zmclab::RuledLightlike R = zmclab::make_director(base, branch, cfg.eps);
    double half = 0.9 * R.eps();
    zmclab::PatchGrid grid{R.base().t0(), R.base().t1(), cfg.nx, -half, half, cfg.ny};
    zmclab::SampledPatch patch = zmclab::sample_ruled(R, grid);
    zmclab::write_file(out_path(cfg, "ruled.csv"), zmclab::patch_csv(patch));
    zmclab::write_file(out_path(cfg, "ruled.obj"), zmclab::patch_obj(patch));

    ordered_json doc;
    doc["command"] = "ruled";
    doc["base"] = cfg.base;
    doc["branch"] = cfg.branch;
    doc["eps"] = R.eps();
    doc["samples"] = patch.samples.size();
    ordered_json files = ordered_json::array({"ruled.csv", "ruled.obj"});
    try {
        zmclab::GraphSurface g = zmclab::graph_of_ruled(R);
        std::vector<zmclab::CausalSample> gridded =
            zmclab::sample_grid(g, box_of(cfg), cfg.band_tol);
        zmclab::write_file(out_path(cfg, "ruled_graph.csv"), zmclab::grid_csv(gridded));
        files.push_back("ruled_graph.csv");
        doc["graph"] = "ok";
    } catch (const zmclab::Error& e) {
        if (e.code() != zmclab::errc::not_a_graph) throw;
        doc["graph"] = "not_a_graph";
    }
    doc["files"] = files;
    note("ruled: wrote " + std::to_string(files.size()) + " files under " + cfg.out);
    emit(cfg, doc);
    return 0;
}

ordered_json check_json(const zmclab::CheckResult& c) {
    return ordered_json{{"check", c.check},
                        {"pass", c.pass},
                        {"value", c.value},
                        {"tol", c.tol},
                        {"detail", c.detail}};
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<const zmclab::GalleryEntry*> entries;
    if (!cfg.entry.empty()) {
        entries.push_back(&zmclab::gallery_entry(cfg.entry));
    } else {
        for (const auto& e : zmclab::gallery_list()) entries.push_back(&e);
    }
    int grid_n = std::min(cfg.nx, cfg.ny);
    bool all_pass = true;
    ordered_json reports = ordered_json::array();
    for (const auto* e : entries) {
        zmclab::RegressionReport r = zmclab::regression_check(*e, grid_n, cfg.order);
        all_pass = all_pass && r.pass;
        ordered_json checks = ordered_json::array();
        for (const auto& c : r.checks) checks.push_back(check_json(c));
        reports.push_back(
            ordered_json{{"entry", r.entry}, {"pass", r.pass}, {"checks", std::move(checks)}});
        note("verify: " + r.entry + (r.pass ? " pass" : " FAIL"));
    }
    ordered_json doc;
    doc["command"] = "verify";
    doc["pass"] = all_pass;
    doc["entries"] = reports;
    zmclab::write_file(out_path(cfg, "verify.json"), doc.dump(2) + "\n");
    emit(cfg, doc);
    return all_pass ? 0 : 1;
}

ordered_json entry_meta(const zmclab::GalleryEntry& e) {
    const char* kind = "graph";
    if (e.kind == zmclab::GalleryKind::series_germ) kind = "series_germ";
    if (e.kind == zmclab::GalleryKind::bjorling) kind = "bjorling";
    if (e.kind == zmclab::GalleryKind::ruled) kind = "ruled";
    ordered_json j;
    j["name"] = e.name;
    j["kind"] = kind;
    j["summary"] = e.summary;
    j["printed_form"] = e.printed_form;
    j["normalized_form"] = e.normalized_form;
    j["printed_gamma"] = e.printed_gamma;
    j["printed_alpha"] = e.printed_alpha;
    j["printed_beta"] = e.printed_beta;
    j["printed_class"] = e.printed_class;
    j["class_tag"] = e.class_tag;
    j["prediction"] = e.prediction;
    j["note"] = e.note;
    j["zmc"] = e.zmc;
    j["lightlike"] = e.lightlike;
    j["degenerate"] = e.degenerate;
    return j;
}

/// Files for one entry: series JSON when a Taylor form exists, classified
/// grid + mesh when a graph germ exists, patch files for the curve kinds.
ordered_json dump_entry(const RunConfig& cfg, const zmclab::GalleryEntry& e) {
    ordered_json files = ordered_json::array();
    if (e.taylor) {
        std::string name = e.name + "_series.json";
        zmclab::write_file(out_path(cfg, name),
                           ordered_json::parse(zmclab::to_json(e.taylor(cfg.order))).dump(2) + "\n");
        files.push_back(name);
    }
    if (e.germ || e.taylor || e.jet) {
        zmclab::GraphSurface g = entry_germ(e, cfg.order);
        std::vector<zmclab::CausalSample> grid = zmclab::sample_grid(g, box_of(cfg), cfg.band_tol);
        zmclab::write_file(out_path(cfg, e.name + "_grid.csv"), zmclab::grid_csv(grid));
        zmclab::write_file(out_path(cfg, e.name + ".obj"),
                           zmclab::patch_obj(zmclab::patch_from_grid(grid, box_of(cfg))));
        files.push_back(e.name + "_grid.csv");
        files.push_back(e.name + ".obj");
    }
    if (e.null_curve) {
        zmclab::PatchGrid grid{cfg.x0, cfg.x1, cfg.nx, cfg.y0, cfg.y1, cfg.ny};
        zmclab::SampledPatch patch = zmclab::bjorling_reconstruct(e.null_curve(), grid);
        zmclab::write_file(out_path(cfg, e.name + "_patch.csv"), zmclab::patch_csv(patch));
        zmclab::write_file(out_path(cfg, e.name + "_patch.obj"), zmclab::patch_obj(patch));
        files.push_back(e.name + "_patch.csv");
        files.push_back(e.name + "_patch.obj");
    }
    if (e.ruled) {
        zmclab::RuledLightlike R = e.ruled();
        double half = 0.9 * R.eps();
        zmclab::PatchGrid grid{R.base().t0(), R.base().t1(), cfg.nx, -half, half, cfg.ny};
        zmclab::SampledPatch patch = zmclab::sample_ruled(R, grid);
        zmclab::write_file(out_path(cfg, e.name + "_ruled.csv"), zmclab::patch_csv(patch));
        zmclab::write_file(out_path(cfg, e.name + "_ruled.obj"), zmclab::patch_obj(patch));
        files.push_back(e.name + "_ruled.csv");
        files.push_back(e.name + "_ruled.obj");
    }
    return files;
}

int cmd_gallery(const RunConfig& cfg) {
    ordered_json doc;
    doc["command"] = "gallery";
    if (cfg.entry.empty()) {
        ordered_json list = ordered_json::array();
        for (const auto& e : zmclab::gallery_list()) list.push_back(entry_meta(e));
        doc["entries"] = list;
        zmclab::write_file(out_path(cfg, "gallery.json"), doc.dump(2) + "\n");
        note("gallery: listed " + std::to_string(list.size()) + " entries");
    } else {
        const zmclab::GalleryEntry& e = zmclab::gallery_entry(cfg.entry);
        doc["entry"] = entry_meta(e);
        doc["files"] = dump_entry(cfg, e);
        zmclab::RegressionReport r =
            zmclab::regression_check(e, std::min(cfg.nx, cfg.ny), cfg.order);
        ordered_json checks = ordered_json::array();
        for (const auto& c : r.checks) checks.push_back(check_json(c));
        doc["report"] = ordered_json{{"pass", r.pass}, {"checks", std::move(checks)}};
        zmclab::write_file(out_path(cfg, e.name + ".json"), doc.dump(2) + "\n");
        note("gallery: dumped " + e.name + (r.pass ? " (checks pass)" : " (checks FAIL)"));
    }
    emit(cfg, doc);
    return 0;
}

int cmd_export(const RunConfig& cfg) {
    ordered_json doc;
    doc["command"] = "export";
    if (!cfg.entry.empty()) {
        const zmclab::GalleryEntry& e = zmclab::gallery_entry(cfg.entry);
        doc["entry"] = e.name;
        doc["files"] = dump_entry(cfg, e);
    } else {
        zmclab::GraphSurface s = [&]() {
            if (!cfg.input.empty()) {
                // Accept either a bare series document or a construct
                // report with the series nested under "series".
                std::string text = zmclab::read_file(cfg.input);
                ordered_json doc = ordered_json::parse(text, nullptr, false);
                if (doc.is_object() && doc.contains("series")) text = doc["series"].dump();
                return zmclab::GraphSurface::from_series(zmclab::series2_from_json(text));
            }
            return zmclab::ck_solve(zmclab::initial_curve_from(cfg, cfg.order),
                                    zmclab::phi_series(cfg), cfg.order);
        }();
        std::vector<zmclab::CausalSample> grid = zmclab::sample_grid(s, box_of(cfg), cfg.band_tol);
        zmclab::write_file(out_path(cfg, "surface.json"),
                           ordered_json::parse(zmclab::to_json(s.series())).dump(2) + "\n");
        zmclab::write_file(out_path(cfg, "surface_grid.csv"), zmclab::grid_csv(grid));
        zmclab::write_file(out_path(cfg, "surface.obj"),
                           zmclab::patch_obj(zmclab::patch_from_grid(grid, box_of(cfg))));
        doc["files"] = ordered_json::array({"surface.json", "surface_grid.csv", "surface.obj"});
    }
    note("export: wrote files under " + cfg.out);
    emit(cfg, doc);
    return 0;
}

int dispatch(const RunConfig& cfg) {
    if (cfg.command == "construct") return cmd_construct(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "approx") return cmd_approx(cfg);
    if (cfg.command == "bjorling") return cmd_bjorling(cfg);
    if (cfg.command == "ruled") return cmd_ruled(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "gallery") return cmd_gallery(cfg);
    if (cfg.command == "export") return cmd_export(cfg);
    zmclab::raise(zmclab::errc::config_error, "unknown command '" + cfg.command + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-mean-curvature surface laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir, entry, input;
    int order = 0, k_levels = 0;
    double tol = 0;
    std::vector<double> box;
    std::vector<int> grid;
    bool json = false;

    const char* names[] = {"construct", "classify", "approx", "bjorling",
                           "ruled",     "verify",   "gallery", "export"};
    const char* blurbs[] = {"solve the graph evolution from initial data",
                            "invariants and causal-type prediction of initial data",
                            "coefficient-function tables on a y-grid",
                            "evolve a null curve into a surface patch",
                            "light-like ruled strip over a space-like base",
                            "run the built-in example checks",
                            "list or dump the built-in examples",
                            "emit series JSON, sample CSV and OBJ mesh"};
    for (int i = 0; i < 8; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", config_path, "TOML or JSON config file");
        sub->add_option("--order", order, "series truncation order");
        sub->add_option("--box", box, "sample box x0,x1,y0,y1")->delimiter(',')->expected(4);
        sub->add_option("--grid", grid, "sample counts nx,ny")->delimiter(',')->expected(2);
        sub->add_option("--tol", tol, "residual tolerance");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_flag("--json", json, "print the run report as JSON on stdout");
        sub->add_option("--entry", entry, "gallery entry name");
        sub->add_option("--input", input, "input series JSON file");
        sub->add_option("--k", k_levels, "highest coefficient-function level");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = zmclab::load_config(config_path);
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        if (sub->count("--order")) cfg.order = order;
        if (sub->count("--box")) {
            cfg.x0 = box[0];
            cfg.x1 = box[1];
            cfg.y0 = box[2];
            cfg.y1 = box[3];
        }
        if (sub->count("--grid")) {
            cfg.nx = grid[0];
            cfg.ny = grid[1];
        }
        if (sub->count("--tol")) cfg.tol = tol;
        if (sub->count("--out")) cfg.out = out_dir;
        if (sub->count("--json")) cfg.json = true;
        if (sub->count("--entry")) cfg.entry = entry;
        if (sub->count("--input")) cfg.input = input;
        if (sub->count("--k")) cfg.k_max = k_levels;
        zmclab::validate_config(cfg);
        return dispatch(cfg);
    } catch (const zmclab::Error& e) {
        std::cerr << "zmclab: " << e.what() << "\n";
        return e.code() == zmclab::errc::config_error ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "zmclab: " << e.what() << "\n";
        return 3;
    }
}

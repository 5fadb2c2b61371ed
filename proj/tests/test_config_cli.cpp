#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zmclab/config.hpp"
#include "zmclab/errors.hpp"
#include "zmclab/io.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

using namespace zmclab;
namespace fs = std::filesystem;

namespace {

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return errc::io_error;
}

struct RunResult {
    int exit_code = -1;
    std::string out, err;
};

/// Run the installed binary with the given arguments, capturing both
/// streams.  The working directory is left alone; output paths in `args`
/// should be absolute.
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / "zmclab_cli_streams";
    fs::create_directories(dir);
    fs::path out = dir / ("out" + std::to_string(counter));
    fs::path err = dir / ("err" + std::to_string(counter));
    ++counter;
    std::string cmd = std::string(ZMCLAB_BIN) + " " + args + " >" + out.string() + " 2>" +
                      err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out.string());
    r.err = read_file(err.string());
    return r;
}

std::string cfg_path(const std::string& name) {
    return std::string(ZMCLAB_CONFIG_DIR) + "/" + name;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "zmclab_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("toml parsing covers every key kind") {
    std::string text = R"(# full-surface config
command = "construct"   # trailing comment
input = "series.json"
order = 10
box = [-0.2, 0.2, -0.1, 0.1]
grid = [11, 21]
tol = 1e-8
band_tol = 1e-10
out = "runs/demo"
json = true
phi = [
  [0, 0, 1.0],
  [1, 0, 2.5],
]
k = 5
ygrid = [-0.4, 0.6]
step = 0.002
curve = "coeffs"
c0 = [0, 1]
c1 = [1, 0, -0.5]
c2 = [0, 1, 0]
t0 = -0.5
t1 = 0.5
base = "profile"
ellipse_a = 3
psi = [0, 0, 0, 1]
branch = "plus"
eps = 0.25
entry = "helicoid"

[initial]
u = [0, 0, 0.5]
v = [1, 0, -0.5]
)";
    RunConfig cfg = config_from_toml(text);
    CHECK(cfg.command == "construct");
    CHECK(cfg.input == "series.json");
    CHECK(cfg.order == 10);
    CHECK(cfg.x0 == -0.2);
    CHECK(cfg.x1 == 0.2);
    CHECK(cfg.y0 == -0.1);
    CHECK(cfg.y1 == 0.1);
    CHECK(cfg.nx == 11);
    CHECK(cfg.ny == 21);
    CHECK(cfg.tol == 1e-8);
    CHECK(cfg.band_tol == 1e-10);
    CHECK(cfg.out == "runs/demo");
    CHECK(cfg.json);
    REQUIRE(cfg.phi.size() == 2);
    CHECK(cfg.phi[1][0] == 1.0);
    CHECK(cfg.phi[1][2] == 2.5);
    CHECK(cfg.k_max == 5);
    CHECK(cfg.ode_y0 == -0.4);
    CHECK(cfg.ode_y1 == 0.6);
    CHECK(cfg.ode_step == 0.002);
    CHECK(cfg.curve == "coeffs");
    CHECK(cfg.c1 == std::vector<double>{1, 0, -0.5});
    CHECK(cfg.t0 == -0.5);
    CHECK(cfg.t1 == 0.5);
    CHECK(cfg.base == "profile");
    CHECK(cfg.ellipse_a == 3);
    CHECK(cfg.psi == std::vector<double>{0, 0, 0, 1});
    CHECK(cfg.branch == "plus");
    CHECK(cfg.eps == 0.25);
    CHECK(cfg.entry == "helicoid");
    CHECK(cfg.u == std::vector<double>{0, 0, 0.5});
    CHECK(cfg.v == std::vector<double>{1, 0, -0.5});
    validate_config(cfg);

    PowerSeries2 phi = phi_series(cfg);
    CHECK(phi.coeff(0, 0) == 1.0);
    CHECK(phi.coeff(1, 0) == 2.5);

    InitialCurve gamma = initial_curve_from(cfg, 8);
    CHECK(gamma.u.order() >= 8);
    CHECK(gamma.u[2] == 0.5);
    CHECK(gamma.v[2] == -0.5);
}

TEST_CASE("toml rejections") {
    auto bad = [](const std::string& text) {
        return code_of([&] { config_from_toml(text); });
    };
    CHECK(bad("order = twelve\n") == errc::config_error);
    CHECK(bad("order 12\n") == errc::config_error);
    CHECK(bad("order = 12\norder = 14\n") == errc::config_error);
    CHECK(bad("mystery = 1\n") == errc::config_error);
    CHECK(bad("out = \"unterminated\n") == errc::config_error);
    CHECK(bad("u = [0, 1\n") == errc::config_error);
    CHECK(bad("u = [0, [1, 2]]\n") == errc::config_error);
    CHECK(bad("phi = [[0, [1], 2]]\n") == errc::config_error);
    CHECK(bad("phi = [[0, 0]]\n") == errc::config_error);
    CHECK(bad("box = [1, 2, 3]\n") == errc::config_error);
    CHECK(bad("grid = [10.5, 10]\n") == errc::config_error);
    CHECK(bad("json = yes\n") == errc::config_error);
    CHECK(bad("[initial\nu = [0]\n") == errc::config_error);
    CHECK(bad("[bad name]\n") == errc::config_error);
    CHECK(bad("u = [0] trailing\n") == errc::config_error);

    // Comments inside and after values, and arrays spanning lines, parse.
    RunConfig cfg = config_from_toml(
        "u = [0, # inline\n 0, 0.5]\nv = [1] # done\n# only a comment\n");
    CHECK(cfg.u == std::vector<double>{0, 0, 0.5});
}

TEST_CASE("json config mirrors toml") {
    std::string text = R"({
  "command": "construct",
  "order": 10,
  "box": [-0.2, 0.2, -0.1, 0.1],
  "grid": [11, 21],
  "phi": [[0, 0, 1.0]],
  "initial": {"u": [0, 0, 0.5], "v": [1, 0, -0.5]}
})";
    RunConfig cfg = config_from_json(text);
    CHECK(cfg.order == 10);
    CHECK(cfg.nx == 11);
    CHECK(cfg.phi.size() == 1);
    CHECK(cfg.u[2] == 0.5);

    CHECK(code_of([] { config_from_json("{\"order\": 12"); }) == errc::config_error);
    CHECK(code_of([] { config_from_json("[1, 2]"); }) == errc::config_error);
    CHECK(code_of([] { config_from_json("{\"order\": \"ten\"}"); }) == errc::config_error);
    CHECK(code_of([] { config_from_json("{\"mystery\": 1}"); }) == errc::config_error);
}

TEST_CASE("validation rejects out-of-contract values") {
    RunConfig good = config_from_toml("command = \"construct\"\nu = [0]\nv = [1]\n");
    validate_config(good);

    auto reject = [&](const std::string& line) {
        RunConfig cfg = config_from_toml("command = \"construct\"\nu = [0]\nv = [1]\n" + line);
        return code_of([&] { validate_config(cfg); });
    };
    CHECK(reject("order = 3\n") == errc::config_error);
    CHECK(reject("grid = [1, 5]\n") == errc::config_error);
    CHECK(reject("tol = 0\n") == errc::config_error);
    CHECK(reject("band_tol = -1\n") == errc::config_error);
    CHECK(reject("box = [0.3, -0.3, -0.3, 0.3]\n") == errc::config_error);
    CHECK(reject("phi = [[0, -1, 1]]\n") == errc::config_error);
    CHECK(reject("phi = [[0.5, 0, 1]]\n") == errc::config_error);
    CHECK(reject("k = 3\n") == errc::config_error);
    CHECK(reject("step = 0\n") == errc::config_error);
    CHECK(reject("ygrid = [0.1, 0.5]\n") == errc::config_error);
    CHECK(reject("t0 = 1\nt1 = -1\n") == errc::config_error);
    CHECK(reject("branch = \"sideways\"\n") == errc::config_error);
    CHECK(reject("base = \"parabola\"\n") == errc::config_error);
    CHECK(reject("eps = 0\n") == errc::config_error);
    CHECK(reject("ellipse_a = 0\n") == errc::config_error);
    CHECK(reject("curve = \"circle\"\n") == errc::config_error);
    CHECK(reject("curve = \"coeffs\"\n") == errc::config_error);

    RunConfig unknown = config_from_toml("command = \"fly\"\nu = [0]\nv = [1]\n");
    CHECK(code_of([&] { validate_config(unknown); }) == errc::config_error);
}

TEST_CASE("load_config dispatches on content") {
    fs::path dir = fresh_dir("load_config");
    std::string toml_path = (dir / "a.toml").string();
    std::string json_path = (dir / "a.json").string();
    write_file(toml_path, "command = \"classify\"\nu = [0]\nv = [1]\n");
    write_file(json_path, "{\"command\": \"classify\", \"u\": [0], \"v\": [1]}");
    CHECK(load_config(toml_path).command == "classify");
    CHECK(load_config(json_path).command == "classify");
    CHECK(code_of([&] { load_config((dir / "missing.toml").string()); }) == errc::io_error);
}

TEST_CASE("construct: plane config, silent stdout, deterministic bytes") {
    fs::path dir = fresh_dir("construct_plane");
    RunResult r = run_cli("construct --config " + cfg_path("plane.toml") + " --out " +
                          (dir / "run1").string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());

    std::string surface = read_file((dir / "run1" / "surface.json").string());
    auto doc = nlohmann::json::parse(surface);
    CHECK(doc["residual"]["pass"].get<bool>());
    CHECK(doc["residual"]["max_abs"].get<double>() == 0.0);

    std::string grid = read_file((dir / "run1" / "grid.csv").string());
    CHECK(grid.substr(0, 22) == "x,y,f,B,A,H,K,tag\n-0.3");

    RunResult r2 = run_cli("construct --config " + cfg_path("plane.toml") + " --out " +
                           (dir / "run2").string());
    CHECK(r2.exit_code == 0);
    CHECK(read_file((dir / "run2" / "surface.json").string()) == surface);
    CHECK(read_file((dir / "run2" / "grid.csv").string()) == grid);
}

TEST_CASE("construct: json config and --json stdout report") {
    fs::path dir = fresh_dir("construct_json");
    RunResult r = run_cli("construct --config " + cfg_path("plane.json") + " --json --out " +
                          (dir / "run").string());
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["command"] == "construct");
    CHECK(doc["residual"]["pass"].get<bool>());
}

TEST_CASE("exit codes: malformed config, bad flags, solver errors") {
    fs::path dir = fresh_dir("exit_codes");
    RunResult bad_cfg = run_cli("construct --config " + cfg_path("malformed.toml") + " --out " +
                                (dir / "a").string());
    CHECK(bad_cfg.exit_code == 2);
    CHECK(!bad_cfg.err.empty());

    CHECK(run_cli("construct --no-such-flag").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);

    // Initial data violating the v(0) = 1 normalization is a solver error.
    write_file((dir / "bad_init.toml").string(), "command = \"construct\"\nu = [0]\nv = [2]\n");
    RunResult solver = run_cli("construct --config " + (dir / "bad_init.toml").string() +
                               " --out " + (dir / "b").string());
    CHECK(solver.exit_code == 3);

    // Unknown gallery entry is likewise a runtime failure, not a config one.
    CHECK(run_cli("gallery --entry nonsense --out " + (dir / "c").string()).exit_code == 3);
}

TEST_CASE("classify: cubic-invariant and light-cone configs") {
    fs::path dir = fresh_dir("classify");
    RunResult r = run_cli("classify --config " + cfg_path("ojm.toml") + " --json --out " +
                          (dir / "ojm").string());
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["degeneracy"] == "degenerate");
    CHECK(doc["mu"].get<double>() == 0.0);
    CHECK(doc["delta"].get<double>() == 9.0);
    CHECK(doc["family"] == "zeroI");
    CHECK(doc["prediction"] == "changes_type");

    RunResult lc = run_cli("classify --config " + cfg_path("lightcone.toml") + " --json --out " +
                           (dir / "lightcone").string());
    REQUIRE(lc.exit_code == 0);
    auto lcdoc = nlohmann::json::parse(lc.out);
    CHECK(lcdoc["mu"].get<double>() == 0.0);
    CHECK(lcdoc["family"] == "zeroII");
    CHECK(lcdoc["c"].get<double>() == doctest::Approx(1.0));

    // Nonzero curve velocity: nondegenerate, with the level-set trace.
    write_file((dir / "ndeg.toml").string(), "command = \"classify\"\nu = [0]\nv = [1, 0.5]\n");
    RunResult nd = run_cli("classify --config " + (dir / "ndeg.toml").string() + " --json --out " +
                           (dir / "ndeg").string());
    REQUIRE(nd.exit_code == 0);
    auto nddoc = nlohmann::json::parse(nd.out);
    CHECK(nddoc["degeneracy"] == "nondegenerate");
    CHECK(nddoc["trace"]["points"].size() == 601);
    CHECK(nddoc["trace"]["max_B_residual"].get<double>() <= 1e-10);
}

TEST_CASE("approx: six tables for levels up to 6") {
    fs::path dir = fresh_dir("approx");
    RunResult r = run_cli("approx --config " + cfg_path("scherk_approx.toml") + " --json --out " +
                          (dir / "run").string());
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["mu"].get<double>() == 1.0);
    CHECK(doc["family"] == "plus");
    CHECK(doc["prediction"] == "no_timelike_part");
    CHECK(doc["files"].size() == 6);
    for (const auto& f : doc["files"]) {
        CHECK(fs::exists(dir / "run" / f.get<std::string>()));
    }
    // Sampled second coefficient function is -tan y: spot-check the ends.
    std::string a2 = read_file((dir / "run" / "approx_a2.csv").string());
    CHECK(a2.substr(0, 14) == "y,value,slope\n");
    CHECK(a2.find("-0.5,0.5463024898437905,") != std::string::npos);
}

TEST_CASE("bjorling and ruled commands write patch files") {
    fs::path dir = fresh_dir("curve_cmds");
    RunResult bj = run_cli("bjorling --config " + cfg_path("helicoid_bjorling.toml") +
                           " --json --out " + (dir / "bj").string());
    REQUIRE(bj.exit_code == 0);
    auto bjdoc = nlohmann::json::parse(bj.out);
    CHECK(bjdoc["samples"].get<int>() == 41 * 41);
    std::string obj = read_file((dir / "bj" / "patch.obj").string());
    CHECK(obj.find("\nf 1 2 43 42\n") != std::string::npos);

    RunResult ru = run_cli("ruled --config " + cfg_path("ellipse_ruled.toml") + " --json --out " +
                           (dir / "ru").string());
    REQUIRE(ru.exit_code == 0);
    auto rudoc = nlohmann::json::parse(ru.out);
    CHECK(rudoc["graph"] == "not_a_graph");
    CHECK(rudoc["files"].size() == 2);
    // detI of a light-like ruling vanishes: every sample row ends immersed.
    std::string csv = read_file((dir / "ru" / "ruled.csv").string());
    CHECK(csv.find(",1\n") != std::string::npos);

    // A shallow cubic profile base does re-express as a graph.
    write_file((dir / "cubic.toml").string(),
               "command = \"ruled\"\nbase = \"profile\"\npsi = [0, 0, 0, 1]\n"
               "branch = \"plus\"\nt0 = -0.3\nt1 = 0.3\ngrid = [9, 9]\n"
               "box = [-0.05, 0.05, -0.05, 0.05]\n");
    RunResult gr = run_cli("ruled --config " + (dir / "cubic.toml").string() + " --json --out " +
                           (dir / "gr").string());
    REQUIRE(gr.exit_code == 0);
    auto grdoc = nlohmann::json::parse(gr.out);
    CHECK(grdoc["graph"] == "ok");
    CHECK(fs::exists(dir / "gr" / "ruled_graph.csv"));
}

TEST_CASE("verify and gallery commands") {
    fs::path dir = fresh_dir("verify_gallery");
    RunResult v = run_cli("verify --entry plane --json --out " + (dir / "v").string());
    CHECK(v.exit_code == 0);
    auto vdoc = nlohmann::json::parse(v.out);
    CHECK(vdoc["pass"].get<bool>());
    CHECK(vdoc["entries"].size() == 1);

    RunResult g = run_cli("gallery --json --out " + (dir / "g").string());
    REQUIRE(g.exit_code == 0);
    auto gdoc = nlohmann::json::parse(g.out);
    REQUIRE(gdoc["entries"].size() == 9);
    CHECK(gdoc["entries"][0]["name"] == "plane");
    CHECK(gdoc["entries"][8]["name"] == "ellipse");

    RunResult one = run_cli("gallery --entry scherk_timelike1 --json --grid 21,21 --out " +
                            (dir / "one").string());
    REQUIRE(one.exit_code == 0);
    auto onedoc = nlohmann::json::parse(one.out);
    CHECK(onedoc["entry"]["printed_alpha"] == "coth y");
    CHECK(onedoc["entry"]["note"].get<std::string>().size() > 0);
    CHECK(onedoc["report"]["pass"].get<bool>());
    CHECK(fs::exists(dir / "one" / "scherk_timelike1_grid.csv"));
}

TEST_CASE("export round-trips a constructed surface") {
    fs::path dir = fresh_dir("export");
    RunResult c = run_cli("construct --config " + cfg_path("case_iii.toml") + " --out " +
                          (dir / "run").string());
    REQUIRE(c.exit_code == 0);
    RunResult e = run_cli("export --input " + (dir / "run" / "surface.json").string() +
                          " --out " + (dir / "exp").string());
    REQUIRE(e.exit_code == 0);
    // The exported grid reproduces the construct grid byte for byte.
    CHECK(read_file((dir / "exp" / "surface_grid.csv").string()) ==
          read_file((dir / "run" / "grid.csv").string()));
    std::string obj = read_file((dir / "exp" / "surface.obj").string());
    CHECK(obj.find("v ") != std::string::npos);

    RunResult ge = run_cli("export --entry ellipse --out " + (dir / "gexp").string());
    CHECK(ge.exit_code == 0);
    CHECK(fs::exists(dir / "gexp" / "ellipse_ruled.obj"));
}

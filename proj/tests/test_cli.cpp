#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "amoebakit/json_io.hpp"
#include "cli.hpp"

using namespace amoebakit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("amoebakit_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string out(const std::string& sub) const { return (path / sub).string(); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

int run(std::vector<std::string> args) { return cli::run(args); }

}  // namespace

TEST_CASE("cli: tropical writes curve, subdivision and balancing files") {
    TempDir d("tropical");
    REQUIRE(run({"tropical", "1+z+w", "--out", d.out("a")}) == cli::kOk);
    const auto curve = read_json(d.path / "a" / "tropical_curve.json");
    int rays = 0;
    for (const auto& e : curve["curve"]["edges"]) rays += e["kind"] == "ray";
    CHECK(rays == 3);
    CHECK(read_json(d.path / "a" / "balancing.json")["balancing"]["balanced"] == true);
    CHECK(fs::exists(d.path / "a" / "tropical_subdivision.json"));
    const auto prov = curve["provenance"];
    CHECK(prov["version"] == "0.3.0");
    CHECK(prov["config_hash"].get<std::string>().size() == 16);
    CHECK(prov["polynomial_hash"].is_string());
}

TEST_CASE("cli: exit codes") {
    TempDir d("codes");
    CHECK(run({"tropical", "1+z+", "--out", d.out("p")}) == cli::kParseError);
    CHECK(run({"tropical", "1+z+w", "--bogus"}) == cli::kParseError);
    CHECK(run({}) == cli::kParseError);
    CHECK(run({"--resolution", "0", "tropical", "1+z+w", "--out", d.out("r")}) == cli::kParseError);
    CHECK(run({"--tolerance", "0.5", "amoeba", "1+z+w", "--out", d.out("t")}) == cli::kParseError);
    CHECK(run({"--t-schedule", "0.9,0.1,0.01,0.001", "deform", "1+z+w", "--out", d.out("s")}) == cli::kParseError);
    CHECK(run({"tropical", "1+z+w", "--perturb-weight", "0", "--out", d.out("b")}) == cli::kBalancingViolation);
    CHECK(run({"--resolution", "128", "amoeba", "1+z+w", "--probe", "0,0", "--out", d.out("o")}) == cli::kAmbiguousOrder);
    CHECK(read_json(d.path / "o" / "amoeba_report.json").contains("error"));
    CHECK(run({"--resolution", "128", "amoeba", "1+z+w", "--probe=-3,-3", "--out", d.out("q")}) == cli::kOk);
    CHECK(read_json(d.path / "q" / "amoeba_report.json")["probe"]["order"] == json::array({0, 0}));
    // a window inside one complement component sees only one of three components
    CHECK(run({"--resolution", "64", "--window", "5,6,5,6", "verify-solid", "1+z+w", "--out", d.out("f")}) == cli::kFalsification);
    CHECK(run({"--resolution", "128", "verify-solid", "1+z+w", "--out", d.out("v")}) == cli::kOk);
    CHECK(run({"--resolution", "256", "verify-solid", "--out", d.out("x"), "--", "-z*w^2 + z^3*w - 7*z*w + 6*w + z"}) == cli::kOk);
    const auto r = read_json(d.path / "x" / "verify_solid.json")["results"][0];
    CHECK(r["maximally_sparse"] == false);
    CHECK(r["solid"] == false);
}

TEST_CASE("cli: reruns are byte-identical") {
    TempDir d("determinism");
    const std::vector<std::vector<std::string>> cmds{
        {"--resolution", "128", "amoeba", "1 + z + w + 2.718281828459045*z*w"},
        {"--resolution", "128", "spine", "1+z+w"},
        {"--resolution", "128", "coamoeba", "z + w + z^2*w^2"},
        {"--resolution", "128", "--seed", "3", "verify-solid", "--random", "2"},
        {"--resolution", "128", "deform", "1+z+w"},
        {"--resolution", "128", "standard-coamoeba", "--samples", "20000"},
        {"puiseux-demo", "--k", "3"},
    };
    for (const auto& base : cmds) {
        CAPTURE(base[base.size() > 2 ? 2 : 0]);
        auto a = base, b = base;
        a.insert(a.end(), {"--out", d.out("a")});
        b.insert(b.end(), {"--out", d.out("b")});
        REQUIRE(run(a) == cli::kOk);
        REQUIRE(run(b) == cli::kOk);
    }
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(d.path / "a")) {
        CAPTURE(e.path().filename().string());
        CHECK(slurp(e.path()) == slurp(d.path / "b" / e.path().filename()));
        ++compared;
    }
    CHECK(compared >= 9);
    CHECK(fs::exists(d.path / "a" / "trace.csv"));
    CHECK(fs::exists(d.path / "a" / "coamoeba.pgm"));
    // no temporary files left behind by the atomic writer
    for (const auto& e : fs::directory_iterator(d.path / "a")) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("cli: configuration file and flag precedence") {
    TempDir d("config");
    {
        std::ofstream cfg(d.path / "run.cfg");
        cfg << "# test config\nresolution = 96\nseed=11\nout=" << d.out("from_config") << "\n";
    }
    const auto cfgfile = (d.path / "run.cfg").string();
    REQUIRE(run({"--config", cfgfile, "amoeba", "1+z+w"}) == cli::kOk);
    CHECK(read_json(d.path / "from_config" / "amoeba_report.json")["report"]["rows"] == 96);

    // command-line flags override the file
    REQUIRE(run({"--config", cfgfile, "--resolution", "80", "amoeba", "1+z+w", "--out", d.out("flag")}) == cli::kOk);
    CHECK(read_json(d.path / "flag" / "amoeba_report.json")["report"]["rows"] == 80);

    // the config hash tracks settings that change results
    const auto h1 = read_json(d.path / "from_config" / "amoeba_report.json")["provenance"]["config_hash"];
    const auto h2 = read_json(d.path / "flag" / "amoeba_report.json")["provenance"]["config_hash"];
    CHECK(h1 != h2);

    {
        std::ofstream bad(d.path / "bad.cfg");
        bad << "resolution 96\n";
    }
    CHECK(run({"--config", (d.path / "bad.cfg").string(), "amoeba", "1+z+w"}) == cli::kParseError);
    {
        std::ofstream unknown(d.path / "unknown.cfg");
        unknown << "colour = blue\n";
    }
    CHECK(run({"--config", (d.path / "unknown.cfg").string(), "amoeba", "1+z+w"}) == cli::kParseError);
    CHECK(run({"--config", (d.path / "missing.cfg").string(), "amoeba", "1+z+w"}) == cli::kParseError);
}

TEST_CASE("cli: RunConfig") {
    cli::RunConfig c;
    CHECK(c.t_schedule.size() == 4);
    CHECK(c.t_schedule[0] == std::exp(-1.0));
    cli::apply_setting(c, "t_schedule", "e^-1, e^-3");
    CHECK(c.t_schedule[1] == std::exp(-3.0));
    CHECK_THROWS_AS(cli::apply_setting(c, "seed", "-1"), std::invalid_argument);
    CHECK_THROWS_AS(cli::apply_setting(c, "resolution", "abc"), std::invalid_argument);
    cli::RunConfig d;
    CHECK(c.canonical() != d.canonical());
    CHECK_NOTHROW(d.validate());
}

TEST_CASE("cli: puiseux-demo roots and transform-coamoeba matrices") {
    TempDir d("misc");
    REQUIRE(run({"puiseux-demo", "--k", "1", "--a0", R"({"order": null, "terms": [[-1, 1, 0]]})", "--out", d.out("p")}) == cli::kOk);
    const auto roots = read_json(d.path / "p" / "puiseux_demo.json")["univariate"]["W_roots"];
    REQUIRE(roots.size() == 1);
    CHECK(roots[0][0].get<double>() == doctest::Approx(-std::exp(1.0)).epsilon(1e-14));
    CHECK(run({"puiseux-demo", "--a0", "{not json", "--out", d.out("p")}) == cli::kParseError);

    REQUIRE(run({"--resolution", "256", "transform-coamoeba", "--matrix", "1,1;-2,1", "--denominator", "3", "--out", d.out("t")}) == cli::kOk);
    const auto t = read_json(d.path / "t" / "transform_coamoeba.json");
    CHECK(t["determinant"] == 3);
    CHECK(std::abs(t["volume_over_pi2"].get<double>() - 1.0) <= 0.03);
    CHECK(run({"transform-coamoeba", "--matrix", "1,1;1,1", "--out", d.out("t")}) == cli::kParseError);
    CHECK(run({"transform-coamoeba", "--matrix", "1,1", "--out", d.out("t")}) == cli::kParseError);
}

#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "amoebakit/amoeba.hpp"
#include "amoebakit/coam.hpp"
#include "amoebakit/deform.hpp"
#include "amoebakit/json_io.hpp"
#include "amoebakit/puiseux.hpp"
#include "amoebakit/random_poly.hpp"
#include "amoebakit/spine.hpp"
#include "amoebakit/trop.hpp"

namespace amoebakit::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

double parse_double(const std::string& s) {
    // "e^-k" is accepted for schedule entries
    if (s.rfind("e^", 0) == 0) return std::exp(parse_double(s.substr(2)));
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& s) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
}

std::string join_numbers(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
    return s;
}

FiberSolveConfig fiber_config(const RunConfig& cfg) {
    FiberSolveConfig f;
    f.angle_samples = cfg.angle_samples;
    f.root_tolerance = cfg.root_tolerance;
    f.max_iterations = cfg.max_iterations;
    f.validate();
    return f;
}

Window resolve_window(const RunConfig& cfg, const LaurentPolynomial& f) {
    if (cfg.window == "auto") return auto_window(f);
    const auto parts = split(cfg.window, ',');
    if (parts.size() != 4) throw UsageError("window must be 'auto' or x_min,x_max,y_min,y_max");
    const Window w{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[3])};
    if (!w.valid()) throw UsageError("window is empty");
    return w;
}

LaurentPolynomial parse_input(const std::string& text) {
    auto f = parse_polynomial(text, {.allow_negative_exponents = true, .dimension = 0});
    if (f.dimension() != 2) throw UsageError("expected a polynomial in z, w");
    return f;
}

struct Context {
    std::string command;
    RunConfig cfg;

    json header(const std::string& poly_text) const {
        json j;
        j["command"] = command;
        j["provenance"] = provenance(command + ";" + cfg.canonical(), poly_text);
        return j;
    }

    void write_json(const std::string& name, const json& j) const {
        std::filesystem::create_directories(cfg.out);
        write_file_atomic(cfg.out / name, j.dump(2) + "\n");
    }

    void write_text(const std::string& name, const std::string& text) const {
        std::filesystem::create_directories(cfg.out);
        write_file_atomic(cfg.out / name, text);
    }

    void write_grid(const std::string& name, const Grid& g) const {
        std::filesystem::create_directories(cfg.out);
        write_pgm(cfg.out / name, g);
    }
};

int cmd_tropical(const Context& ctx, const std::string& poly, const std::string& coeffs,
                 std::optional<std::size_t> perturb) {
    const auto f = parse_input(poly);
    std::optional<TropicalPolynomial> g;
    if (coeffs.empty()) {
        g = tropicalize(f);
    } else {
        const auto vals = split(coeffs, ',');
        const auto supp = f.support();
        if (vals.size() != supp.size())
            throw UsageError("--coeffs needs one value per monomial (" + std::to_string(supp.size()) + ")");
        TropicalPolynomial::TermMap terms;
        for (std::size_t i = 0; i < supp.size(); ++i) terms[supp[i]] = parse_double(vals[i]);
        g.emplace(2, std::move(terms));
    }
    auto dual = tropical_dual(*g);
    if (perturb) {
        if (*perturb >= dual.curve.edges.size()) throw UsageError("--perturb-weight edge index out of range");
        dual.curve.edges[*perturb].weight += 1;
    }
    const auto bal = balancing_check(dual.curve);

    auto j = ctx.header(f.to_string());
    j["polynomial"] = to_json(f);
    j["tropical_polynomial"] = to_json(*g);
    j["curve"] = to_json(dual.curve);
    ctx.write_json("tropical_curve.json", j);
    auto s = ctx.header(f.to_string());
    s["subdivision"] = to_json(dual.subdivision);
    ctx.write_json("tropical_subdivision.json", s);
    auto b = ctx.header(f.to_string());
    b["balancing"] = to_json(bal);
    ctx.write_json("balancing.json", b);

    std::size_t rays = 0;
    for (const auto& e : dual.curve.edges) rays += e.kind == EdgeKind::ray;
    std::cout << "tropical: " << dual.curve.vertices.size() << " vertices, " << dual.curve.edges.size() << " edges ("
              << rays << " rays), balanced=" << (bal.balanced ? "true" : "false") << "\n";
    return bal.balanced ? kOk : kBalancingViolation;
}

int cmd_amoeba(const Context& ctx, const std::string& poly, const std::string& probe) {
    const auto f = parse_input(poly);
    const auto fc = fiber_config(ctx.cfg);
    const auto window = resolve_window(ctx.cfg, f);
    std::optional<Point2> probe_point;
    if (!probe.empty()) {
        const auto parts = split(probe, ',');
        if (parts.size() != 2) throw UsageError("probe must be 'x,y'");
        probe_point = Point2{parse_double(parts[0]), parse_double(parts[1])};
    }
    const auto raster = rasterize_amoeba(f, window, ctx.cfg.resolution, ctx.cfg.resolution, fc);
    ctx.write_grid("amoeba.pgm", raster.occupancy);
    auto j = ctx.header(f.to_string());
    j["polynomial"] = to_json(f);
    j["failed_fibers"] = raster.failed_fibers;
    try {
        if (probe_point) {
            j["probe"] = {{"point", *probe_point}};
            j["probe"]["order"] = order_of_point(f, *probe_point, fc, 0.0);
        }
        const auto rep = component_report(f, raster, fc);
        j["report"] = to_json(rep);
        ctx.write_json("amoeba_report.json", j);
        std::cout << "amoeba: " << rep.total << " complement components, " << j["report"]["bounded"] << " bounded";
        if (probe_point) std::cout << "; probe order " << j["probe"]["order"].dump();
        std::cout << "\n";
        return kOk;
    } catch (const OrderError& e) {
        if (e.kind() != OrderError::Kind::ambiguous) throw;
        j["error"] = e.what();
        ctx.write_json("amoeba_report.json", j);
        std::cerr << e.what() << "\n";
        return kAmbiguousOrder;
    }
}

int cmd_verify_solid(const Context& ctx, const std::string& poly, std::size_t random_n) {
    std::vector<LaurentPolynomial> inputs;
    if (random_n > 0) {
        if (!poly.empty()) throw UsageError("give either a polynomial or --random, not both");
        inputs = random_sparse_batch(random_n, ctx.cfg.seed);
    } else {
        if (poly.empty()) throw UsageError("verify-solid needs a polynomial or --random N");
        inputs.push_back(parse_input(poly));
    }
    const auto fc = fiber_config(ctx.cfg);
    std::string all_text;
    for (const auto& f : inputs) all_text += f.to_string() + ";";
    auto j = ctx.header(all_text);
    j["seed"] = random_n > 0 ? json(ctx.cfg.seed) : json(nullptr);
    json results = json::array();
    int code = kOk;
    std::size_t falsified = 0, ambiguous = 0;
    for (const auto& f : inputs) {
        json r{{"polynomial", f.to_string()}};
        try {
            const std::optional<Window> w =
                ctx.cfg.window == "auto" ? std::nullopt : std::optional<Window>(resolve_window(ctx.cfg, f));
            const auto res = verify_solid(f, ctx.cfg.resolution, fc, w);
            r["maximally_sparse"] = res.maximally_sparse;
            r["solid"] = res.solid;
            r["components"] = res.components;
            r["vertices"] = res.vertices;
            r["noise_regions"] = res.report.noise_regions;
            r["window"] = to_json(res.report.window);
            if (res.maximally_sparse && !res.solid) {
                r["falsification"] = true;
                ++falsified;
                code = kFalsification;
            }
        } catch (const OrderError& e) {
            if (e.kind() != OrderError::Kind::ambiguous) throw;
            r["error"] = e.what();
            ++ambiguous;
            if (code == kOk) code = kAmbiguousOrder;
        }
        results.push_back(std::move(r));
    }
    j["results"] = results;
    ctx.write_json("verify_solid.json", j);
    std::cout << "verify-solid: " << inputs.size() << " inputs, " << falsified << " falsifications, " << ambiguous
              << " ambiguous\n";
    return code;
}

int cmd_spine(const Context& ctx, const std::string& poly) {
    const auto f = parse_input(poly);
    const auto fc = fiber_config(ctx.cfg);
    const auto rep = component_report(f, resolve_window(ctx.cfg, f), ctx.cfg.resolution, fc);
    const auto spine = build_spine(f, rep, ctx.cfg.quad_n, fc);
    auto j = ctx.header(f.to_string());
    j["polynomial"] = to_json(f);
    j["quad_n"] = ctx.cfg.quad_n;
    j["spine"] = to_json(spine);
    ctx.write_json("spine.json", j);
    std::cout << "spine: " << spine.c.size() << " constants, " << spine.spine.vertices.size() << " vertices\n";
    return kOk;
}

int cmd_deform(const Context& ctx, const std::string& poly) {
    const auto f = parse_input(poly);
    const auto fc = fiber_config(ctx.cfg);
    const auto window = resolve_window(ctx.cfg, f);
    const auto rep = component_report(f, window, ctx.cfg.resolution, fc);
    const auto spine = build_spine(f, rep, ctx.cfg.quad_n, fc);
    const auto nu = pr_function(spine, newton_polytope(f));
    const auto fam = make_family(f, nu, ctx.cfg.t_schedule);
    const auto trace = convergence_study(fam, window, {ctx.cfg.resolution, ctx.cfg.quad_n, fc});
    ctx.write_text("trace.csv", trace_csv(trace));
    auto j = ctx.header(f.to_string());
    j["family"] = to_json(fam);
    j["limit_curve"] = to_json(limit_curve(fam).curve);
    j["trace"] = to_json(trace);
    ctx.write_json("deform.json", j);
    std::cout << "deform: " << trace.rows.size() << " rows\n";
    for (const auto& r : trace.rows)
        std::cout << "  t=" << format_number(r.t) << " d_H=" << format_number(r.d_H)
                  << " bounded_cell_mass=" << format_number(r.bounded_cell_mass) << (r.error.empty() ? "" : " error")
                  << "\n";
    return kOk;
}

CoamoebaOptions coamoeba_options(const Context& ctx) {
    CoamoebaOptions o;
    o.fiber = fiber_config(ctx.cfg);
    return o;
}

int cmd_coamoeba(const Context& ctx, const std::string& poly) {
    const auto f = parse_input(poly);
    const auto r = rasterize_coamoeba(f, ctx.cfg.resolution, coamoeba_options(ctx));
    ctx.write_grid("coamoeba.pgm", r.occupancy);
    const double vol = raster_volume(r);
    auto j = ctx.header(f.to_string());
    j["polynomial"] = to_json(f);
    j["resolution"] = ctx.cfg.resolution;
    j["samples_used"] = r.samples_used;
    j["volume"] = vol;
    j["volume_over_pi2"] = vol / (std::numbers::pi * std::numbers::pi);
    ctx.write_json("coamoeba.json", j);
    std::cout << "coamoeba: volume = " << format_number(vol / (std::numbers::pi * std::numbers::pi)) << " pi^2\n";
    return kOk;
}

int cmd_standard_coamoeba(const Context& ctx, int n, std::size_t mc_samples) {
    const auto model = standard_model(n);
    auto j = ctx.header("");
    j["model"] = to_json(model);
    j["formula_volume"] = standard_volume_formula(n);
    j["monte_carlo"] = {{"samples", mc_samples},
                        {"seed", ctx.cfg.seed},
                        {"volume", monte_carlo_volume(model, mc_samples, ctx.cfg.seed)}};
    // n = 3 counts on a coarser cube grid to bound memory
    const std::size_t piece_grid = n == 2 ? ctx.cfg.resolution : std::min<std::size_t>(ctx.cfg.resolution, 96);
    j["piece_grid"] = piece_grid;
    j["piece_count"] = model_piece_count(model, piece_grid);
    if (n == 2) {
        const auto r = rasterize_model(model, ctx.cfg.resolution);
        ctx.write_grid("standard_coamoeba.pgm", r.occupancy);
        j["raster_volume"] = raster_volume(r);
    }
    ctx.write_json("standard_coamoeba.json", j);
    std::cout << "standard-coamoeba: n=" << n << " volume=" << format_number(model.volume())
              << " pieces=" << j["piece_count"] << "\n";
    return kOk;
}

std::vector<std::vector<std::int64_t>> parse_matrix(const std::string& s) {
    std::vector<std::vector<std::int64_t>> m;
    for (const auto& row : split(s, ';')) {
        std::vector<std::int64_t> r;
        for (const auto& x : split(row, ',')) r.push_back(parse_int(x));
        m.push_back(std::move(r));
    }
    if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) throw UsageError("matrix must be 'a,b;c,d'");
    return m;
}

int cmd_transform_coamoeba(const Context& ctx, const std::string& poly, const std::string& matrix,
                           std::int64_t denominator, const std::string& translation, const std::string& compare) {
    UnimodularTransformData T;
    std::string poly_text;
    if (!matrix.empty()) {
        if (!poly.empty()) throw UsageError("give either a trinomial or --matrix, not both");
        std::vector<double> v{0.0, 0.0};
        if (!translation.empty()) {
            const auto parts = split(translation, ',');
            if (parts.size() != 2) throw UsageError("translation must be 'x,y'");
            v = {parse_double(parts[0]), parse_double(parts[1])};
        }
        try {
            T = transform_from_inverse(parse_matrix(matrix), denominator, v);
        } catch (const UsageError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else {
        if (poly.empty()) throw UsageError("transform-coamoeba needs a trinomial or --matrix");
        const auto f = parse_input(poly);
        poly_text = f.to_string();
        T = trinomial_transform(f);
    }
    const auto model = standard_model(2);
    const auto r = transform_coamoeba(model, T, ctx.cfg.resolution);
    ctx.write_grid("transform_coamoeba.pgm", r.occupancy);
    auto j = ctx.header(poly_text);
    j["tL"] = T.tL;
    j["translation"] = T.translation;
    j["determinant"] = T.determinant();
    j["volume"] = raster_volume(r);
    j["volume_over_pi2"] = raster_volume(r) / (std::numbers::pi * std::numbers::pi);
    if (!compare.empty()) {
        const auto g = parse_input(compare);
        const auto s = rasterize_coamoeba(g, ctx.cfg.resolution, coamoeba_options(ctx));
        ctx.write_grid("compare_coamoeba.pgm", s.occupancy);
        j["compare"] = {{"polynomial", g.to_string()},
                        {"volume", raster_volume(s)},
                        {"pixel_hausdorff", pixel_hausdorff(r.occupancy, s.occupancy, true)}};
    }
    ctx.write_json("transform_coamoeba.json", j);
    std::cout << "transform-coamoeba: det=" << T.determinant() << " volume=" << format_number(j["volume_over_pi2"])
              << " pi^2\n";
    return kOk;
}

int cmd_extra_pieces(const Context& ctx, const std::string& sparse_text, const std::string& deformed_text) {
    const auto fs = parse_input(sparse_text), fd = parse_input(deformed_text);
    const auto opts = coamoeba_options(ctx);
    const auto s = rasterize_coamoeba(fs, ctx.cfg.resolution, opts);
    const auto d = rasterize_coamoeba(fd, ctx.cfg.resolution, opts);
    const auto rep = extra_piece_report(s, d);
    const auto self = extra_piece_report(s, s);
    ctx.write_grid("sparse_coamoeba.pgm", s.occupancy);
    ctx.write_grid("deformed_coamoeba.pgm", d.occupancy);
    ctx.write_grid("extra_pieces.pgm", grid_minus(d.occupancy, dilate(s.occupancy, kExtraPieceDilation, true)));
    auto j = ctx.header(fs.to_string() + ";" + fd.to_string());
    j["sparse"] = fs.to_string();
    j["deformed"] = fd.to_string();
    j["report"] = to_json(rep);
    j["largest_over_pi2"] = rep.largest_piece_area / (std::numbers::pi * std::numbers::pi);
    j["self_control"] = to_json(self);
    ctx.write_json("extra_pieces.json", j);
    std::cout << "extra-pieces: " << rep.piece_count << " pieces, largest "
              << format_number(rep.largest_piece_area / (std::numbers::pi * std::numbers::pi)) << " pi^2; control "
              << self.piece_count << "\n";
    return kOk;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

int cmd_puiseux_demo(const Context& ctx, int k, const std::string& a0_text) {
    std::vector<PuiseuxScalar> demo{
        PuiseuxScalar::monomial(1.0, 3.0),
        PuiseuxScalar({{-2.0, 3.0}, {1.0, 1.0}}),
        PuiseuxScalar::monomial(-1.0, 1.0),
        PuiseuxScalar::monomial(Complex(0.0, 1.0), 0.0),
    };
    auto j = ctx.header("");
    json scalars = json::array();
    for (const auto& a : demo)
        scalars.push_back({{"scalar", to_json(a)}, {"text", a.to_string()}, {"val", val(a)}, {"w", complex_json(w_map(a))}});
    j["scalars"] = scalars;
    j["zero_val"] = "-inf";

    PuiseuxScalar a0 = PuiseuxScalar::monomial(1.0, 0.0);
    if (!a0_text.empty()) {
        try {
            a0 = puiseux_from_json(json::parse(a0_text));
        } catch (const json::exception& e) {
            throw UsageError(std::string("a0 must be {\"order\": ..., \"terms\": [[e, re, im], ...]}: ") + e.what());
        }
    }
    json roots = json::array();
    for (const auto& z : univariate_W_roots(k, a0)) roots.push_back(complex_json(z));
    j["univariate"] = {{"k", k}, {"a0", to_json(a0)}, {"W_roots", roots}};
    ctx.write_json("puiseux_demo.json", j);
    std::cout << "puiseux-demo: " << k << " roots on |z| = " << format_number(std::exp(val(a0) / k)) << "\n";
    return kOk;
}

}  // namespace

RunConfig::RunConfig() {
    for (int k = 1; k <= 4; ++k) t_schedule.push_back(std::exp(-static_cast<double>(k)));
    if (const char* env = std::getenv("AMOEBAKIT_OUT"); env && *env) out = env;
}

void RunConfig::validate() const {
    if (resolution < 16) throw std::invalid_argument("resolution must be at least 16");
    if (!(root_tolerance > 0.0)) throw std::invalid_argument("root_tolerance must be positive");
    if (angle_samples < 16) throw std::invalid_argument("angle_samples must be at least 16");
    if (quad_n < 64) throw std::invalid_argument("quad_n must be at least 64");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
    const double top = std::exp(-1.0) * (1.0 + 1e-12);
    for (const double t : t_schedule)
        if (!(t > 0.0 && t <= top)) throw std::invalid_argument("t_schedule entries must lie in (0, 1/e]");
    fiber_config(*this);
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os << "resolution=" << resolution << ";window=" << window << ";angle_samples=" << angle_samples
       << ";quad_n=" << quad_n << ";t_schedule=" << join_numbers(t_schedule) << ";seed=" << seed
       << ";root_tolerance=" << format_number(root_tolerance) << ";max_iterations=" << max_iterations;
    return os.str();
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "resolution") {
        const auto v = parse_int(value);
        if (v <= 0) throw UsageError("resolution must be positive");
        cfg.resolution = static_cast<std::size_t>(v);
    } else if (key == "window") {
        cfg.window = value;
    } else if (key == "angle_samples") {
        cfg.angle_samples = static_cast<int>(parse_int(value));
    } else if (key == "quad_n" || key == "quad") {
        cfg.quad_n = static_cast<int>(parse_int(value));
    } else if (key == "t_schedule") {
        cfg.t_schedule.clear();
        for (const auto& x : split(value, ',')) cfg.t_schedule.push_back(parse_double(x));
    } else if (key == "seed") {
        const auto v = parse_int(value);
        if (v < 0) throw UsageError("seed must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "root_tolerance") {
        cfg.root_tolerance = parse_double(value);
    } else if (key == "max_iterations") {
        cfg.max_iterations = static_cast<int>(parse_int(value));
    } else if (key == "out") {
        cfg.out = value;
    } else {
        throw UsageError("unknown config key '" + key + "'");
    }
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"amoebakit: amoebas, coamoebas, tropical curves, spines and deformations"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file, out_dir, window, t_schedule;
    std::size_t resolution = 0, random_n = 0;
    int quad = 0, angle_samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    auto* o_config = app.add_option("--config", config_file, "flat key=value config file");
    auto* o_res = app.add_option("--resolution", resolution, "raster size per axis");
    auto* o_window = app.add_option("--window", window, "auto or x_min,x_max,y_min,y_max");
    auto* o_quad = app.add_option("--quad", quad, "quadrature grid per axis");
    auto* o_sched = app.add_option("--t-schedule", t_schedule, "comma-separated t values, e.g. e^-1,e^-2");
    auto* o_seed = app.add_option("--seed", seed, "generator seed");
    auto* o_angles = app.add_option("--angle-samples", angle_samples, "angular samples per fiber sweep");
    auto* o_tol = app.add_option("--tolerance", tolerance, "root backward-error tolerance");
    auto* o_out = app.add_option("--out", out_dir, "output directory");

    std::string poly, poly2, coeffs, matrix, translation, compare, a0, probe;
    std::optional<std::size_t> perturb;
    int n = 2, k = 2;
    std::int64_t denominator = 1;
    std::size_t mc_samples = 400000;

    auto* tropical = app.add_subcommand("tropical", "corner locus, dual subdivision and balancing report");
    tropical->add_option("polynomial", poly)->required();
    tropical->add_option("--coeffs", coeffs, "max-plus coefficients in support order (default log|a|)");
    tropical->add_option("--perturb-weight", perturb, "debug: add 1 to the weight of this edge")->group("Debug");

    auto* amoeba = app.add_subcommand("amoeba", "amoeba raster and complement components");
    amoeba->add_option("polynomial", poly)->required();
    amoeba->add_option("--probe", probe, "also report the order of the point x,y");

    auto* solid = app.add_subcommand("verify-solid", "compare complement components with Newton polygon vertices");
    solid->add_option("polynomial", poly);
    solid->add_option("--random", random_n, "random maximally sparse batch size");

    auto* spine = app.add_subcommand("spine", "spine constants and spine curve");
    spine->add_option("polynomial", poly)->required();

    auto* deform = app.add_subcommand("deform", "convergence trace of the deformation family");
    deform->add_option("polynomial", poly)->required();

    auto* coamoeba = app.add_subcommand("coamoeba", "coamoeba raster and volume");
    coamoeba->add_option("polynomial", poly)->required();

    auto* standard = app.add_subcommand("standard-coamoeba", "polyhedral model of the coamoeba of 1 + z1 + ... + zn");
    standard->add_option("--n", n, "dimension (2 or 3)")->check(CLI::Range(2, 3));
    standard->add_option("--samples", mc_samples, "Monte Carlo samples");

    auto* transform = app.add_subcommand("transform-coamoeba", "image of the standard model under tL");
    transform->add_option("polynomial", poly, "trinomial whose transform is built");
    transform->add_option("--matrix", matrix, "integer numerators of tL^-1 as 'a,b;c,d'");
    transform->add_option("--denominator", denominator, "common denominator of tL^-1");
    transform->add_option("--translation", translation, "translation 'x,y'");
    transform->add_option("--compare", compare, "polynomial whose sampled coamoeba is compared");

    auto* extra = app.add_subcommand("extra-pieces", "coamoeba pieces present in DEFORMED but not in SPARSE");
    extra->add_option("sparse", poly)->required();
    extra->add_option("deformed", poly2)->required();

    auto* puiseux = app.add_subcommand("puiseux-demo", "valuation, w map and univariate W roots");
    puiseux->add_option("--k", k, "degree of z^k + a0")->check(CLI::PositiveNumber);
    puiseux->add_option("--a0", a0, "a0 as JSON {\"order\": null, \"terms\": [[e, re, im], ...]}");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParseError;
    }

    Context ctx;
    ctx.command = app.get_subcommands().front()->get_name();
    try {
        if (o_config->count()) load_config_file(ctx.cfg, config_file);
        if (o_res->count()) apply_setting(ctx.cfg, "resolution", std::to_string(resolution));
        if (o_window->count()) ctx.cfg.window = window;
        if (o_quad->count()) ctx.cfg.quad_n = quad;
        if (o_sched->count()) apply_setting(ctx.cfg, "t_schedule", t_schedule);
        if (o_seed->count()) ctx.cfg.seed = seed;
        if (o_angles->count()) ctx.cfg.angle_samples = angle_samples;
        if (o_tol->count()) ctx.cfg.root_tolerance = tolerance;
        if (o_out->count()) ctx.cfg.out = out_dir;
        ctx.cfg.validate();
        if (ctx.cfg.window != "auto") resolve_window(ctx.cfg, parse_polynomial("1+z+w"));
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kParseError;
    }

    try {
        const auto& c = ctx.command;
        if (c == "tropical") return cmd_tropical(ctx, poly, coeffs, perturb);
        if (c == "amoeba") return cmd_amoeba(ctx, poly, probe);
        if (c == "verify-solid") return cmd_verify_solid(ctx, poly, random_n);
        if (c == "spine") return cmd_spine(ctx, poly);
        if (c == "deform") return cmd_deform(ctx, poly);
        if (c == "coamoeba") return cmd_coamoeba(ctx, poly);
        if (c == "standard-coamoeba") return cmd_standard_coamoeba(ctx, n, mc_samples);
        if (c == "transform-coamoeba")
            return cmd_transform_coamoeba(ctx, poly, matrix, denominator, translation, compare);
        if (c == "extra-pieces") return cmd_extra_pieces(ctx, poly, poly2);
        if (c == "puiseux-demo") return cmd_puiseux_demo(ctx, k, a0);
    } catch (const ParseError& e) {
        std::cerr << "parse error at position " << e.position() << ": " << e.what() << "\n";
        return kParseError;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kParseError;
    } catch (const OrderError& e) {
        std::cerr << "order error: " << e.what() << "\n";
        return e.kind() == OrderError::Kind::ambiguous ? kAmbiguousOrder : kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

}  // namespace amoebakit::cli
